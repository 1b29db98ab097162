#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "padyn/hensel.hpp"
#include "padyn/poly.hpp"
#include "padyn/projective.hpp"

namespace padyn {

namespace fp {

// Dense polynomials over F_p with entries in [0, p); just enough for the
// gcd computation reduction theory needs.
using FpPoly = std::vector<long>;

inline void trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int deg(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

inline long pow_mod(long b, long e, long p) {
    long long r = 1, base = ((b % p) + p) % p;
    while (e > 0) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<long>(r);
}

inline long inv_mod(long a, long p) { return pow_mod(a, p - 2, p); }

inline FpPoly rem(FpPoly f, const FpPoly& g, long p) {
    long lead_inv = inv_mod(g.back(), p);
    while (deg(f) >= deg(g)) {
        long long c = static_cast<long long>(f.back()) * lead_inv % p;
        int shift = deg(f) - deg(g);
        for (std::size_t i = 0; i < g.size(); ++i) {
            long long t = f[i + shift] - c * g[i] % p;
            f[i + shift] = static_cast<long>(((t % p) + p) % p);
        }
        trim(f);
        if (f.empty()) break;
    }
    return f;
}

inline FpPoly gcd(FpPoly a, FpPoly b, long p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        FpPoly r = rem(a, b, p);
        a = b;
        b = r;
    }
    if (!a.empty()) {
        long s = inv_mod(a.back(), p);
        for (long& c : a) c = static_cast<long>(static_cast<long long>(c) * s % p);
    }
    return a;
}

inline long eval(const FpPoly& f, long x, long p) {
    long long acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
    return static_cast<long>(acc);
}

} // namespace fp

// Moebius transformation z -> (a z + b) / (c z + d) with rational entries.
struct Mobius {
    mpq_class a, b, c, d;

    Mobius(mpq_class a_, mpq_class b_, mpq_class c_, mpq_class d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        if (a * d - b * c == 0) throw std::invalid_argument("Mobius: singular matrix");
    }

    Mobius inverse() const { return Mobius(d, -b, -c, a); }

    static Mobius reciprocal() { return Mobius(0, 1, 1, 0); }
    /// z -> 1/(z - c), sending c to infinity and infinity to 0.
    static Mobius inverted_shift(const mpq_class& c) { return Mobius(0, 1, 1, -c); }
};

inline ProjPoint apply_mobius(const Mobius& h, const ProjPoint& pt) {
    FieldContext ctx = pt.context();
    FieldElement a(ctx, h.a), b(ctx, h.b), c(ctx, h.c), d(ctx, h.d);
    return ProjPoint::of(a * pt.x() + b * pt.y(), c * pt.x() + d * pt.y());
}

// Result of reducing a normalized pair mod the maximal ideal.
struct ReductionReport {
    std::vector<long> num_residues, den_residues;  // univariate coefficients mod p, ascending
    int formal_degree = 0;
    int induced_degree = 0;
    bool good = false;
    mpq_class res;  // formal resultant of the normalized pair
    Valuation res_valuation = Valuation::inf();
    std::string rendered;  // homogeneous pair over F_p, e.g. "[-X*Y, 0]"
};

namespace detail {

/// Renders sum of c_j X^j Y^{d-j} with symmetric residue lifts.
inline std::string homogeneous_str(const std::vector<long>& coeffs, int d, long p) {
    std::string out;
    for (int j = d; j >= 0; --j) {
        long c = j < static_cast<int>(coeffs.size()) ? coeffs[j] : 0;
        if (c == 0) continue;
        long lifted = c > p / 2 ? c - p : c;  // symmetric representative
        bool neg = lifted < 0;
        long mag = neg ? -lifted : lifted;
        std::string mon;
        int yexp = d - j;
        if (j > 0) mon += j == 1 ? "X" : "X^" + std::to_string(j);
        if (j > 0 && yexp > 0) mon += "*";
        if (yexp > 0) mon += yexp == 1 ? "Y" : "Y^" + std::to_string(yexp);
        std::string term = mon.empty() ? std::to_string(mag)
                                       : (mag == 1 ? mon : std::to_string(mag) + "*" + mon);
        if (out.empty()) out = (neg ? "-" : "") + term;
        else out += (neg ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

} // namespace detail

// Rational self-map of P^1 stored as a normalized coprime pair: numerator
// and denominator share no factor over Q and the minimum coefficient
// valuation across both polynomials is 0, so reduction mod p is immediate.
class RationalMap {
    FieldContext ctx_;
    Poly num_, den_;
    int degree_ = 0;

    static std::pair<Poly, Poly> normalize(const FieldContext& ctx, Poly f, Poly g) {
        bool first = true;
        long m = 0;
        for (const Poly* h : {&f, &g})
            for (int i = 0; i <= h->degree(); ++i) {
                if (h->coeff(i) == 0) continue;
                long v = vp_rational(h->coeff(i), ctx.prime).finite_value().whole_value();
                if (first || v < m) { m = v; first = false; }
            }
        mpq_class s = pow_p(ctx.prime, -m);
        return {f * s, g * s};
    }

public:
    RationalMap(const FieldContext& ctx, Poly num, Poly den) : ctx_(ctx) {
        if (den.is_zero())
            throw std::invalid_argument("RationalMap: zero denominator");
        if (num.is_zero())
            throw std::invalid_argument("RationalMap: zero numerator is not a self-map of P^1");
        Poly g = poly_gcd(num, den);
        if (g.degree() > 0)
            throw std::invalid_argument("RationalMap: numerator and denominator share the factor " + g.str());
        degree_ = std::max(num.degree(), den.degree());
        if (degree_ < 1)
            throw std::invalid_argument("RationalMap: constant map");
        auto [f, h] = normalize(ctx_, std::move(num), std::move(den));
        num_ = std::move(f);
        den_ = std::move(h);
    }

    /// Builds the map after dividing out any common factor; for composition
    /// results and other raw pairs.
    static RationalMap reduced(const FieldContext& ctx, const Poly& num, const Poly& den) {
        if (num.is_zero() || den.is_zero())
            return RationalMap(ctx, num, den);  // reuse the constructor diagnostics
        Poly g = poly_gcd(num, den);
        if (g.degree() > 0)
            return RationalMap(ctx, num.divrem(g).first, den.divrem(g).first);
        return RationalMap(ctx, num, den);
    }

    const FieldContext& context() const { return ctx_; }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    int degree() const { return degree_; }

    /// Same map of P^1 (normalized pairs agree up to a scalar).
    bool same_map(const RationalMap& o) const {
        return ctx_.prime == o.ctx_.prime && num_ * o.den_ == o.num_ * den_;
    }

    ProjPoint eval(const ProjPoint& pt) const {
        FieldContext ctx = unify(ctx_, pt.context());
        int d = degree_;
        std::vector<FieldElement> xp(static_cast<std::size_t>(d) + 1, FieldElement::one(ctx));
        std::vector<FieldElement> yp(xp);
        for (int i = 1; i <= d; ++i) {
            xp[static_cast<std::size_t>(i)] = xp[static_cast<std::size_t>(i - 1)] * pt.x();
            yp[static_cast<std::size_t>(i)] = yp[static_cast<std::size_t>(i - 1)] * pt.y();
        }
        FieldElement fx = FieldElement::zero(ctx), gx = FieldElement::zero(ctx);
        for (int j = 0; j <= d; ++j) {
            FieldElement mono = xp[static_cast<std::size_t>(j)] * yp[static_cast<std::size_t>(d - j)];
            if (num_.coeff(j) != 0) fx = fx + FieldElement(ctx, num_.coeff(j)) * mono;
            if (den_.coeff(j) != 0) gx = gx + FieldElement(ctx, den_.coeff(j)) * mono;
        }
        return ProjPoint::of(fx, gx);
    }

    ProjPoint eval(const FieldElement& z) const { return eval(ProjPoint::finite(z)); }

    /// Finite evaluation; throws if z is a pole.
    FieldElement eval_value(const FieldElement& z) const {
        ProjPoint img = eval(z);
        if (img.is_infinite())
            throw std::domain_error("RationalMap: pole at z = " + z.str());
        return img.value();
    }

    ProjPoint iterate(ProjPoint pt, int n) const {
        for (int i = 0; i < n; ++i) pt = eval(pt);
        return pt;
    }

    /// Derivative R'(z) at a finite non-pole point.
    FieldElement derivative_at(const FieldElement& z) const {
        FieldElement f = num_.eval(z), g = den_.eval(z);
        if (g.is_zero())
            throw std::domain_error("RationalMap: derivative at the pole z = " + z.str());
        FieldElement fp = num_.derivative().eval(z), gp = den_.derivative().eval(z);
        return (fp * g - f * gp) / (g * g);
    }

    /// Composition (this o other) as a reduced normalized map.
    RationalMap compose(const RationalMap& other) const {
        FieldContext ctx = unify(ctx_, other.ctx_);
        int d = degree_;
        std::vector<Poly> up(static_cast<std::size_t>(d) + 1), vp(static_cast<std::size_t>(d) + 1);
        up[0] = Poly::constant(1);
        vp[0] = Poly::constant(1);
        for (int i = 1; i <= d; ++i) {
            up[static_cast<std::size_t>(i)] = up[static_cast<std::size_t>(i - 1)] * other.num_;
            vp[static_cast<std::size_t>(i)] = vp[static_cast<std::size_t>(i - 1)] * other.den_;
        }
        Poly f, g;
        for (int j = 0; j <= d; ++j) {
            Poly mono = up[static_cast<std::size_t>(j)] * vp[static_cast<std::size_t>(d - j)];
            if (num_.coeff(j) != 0) f = f + mono * num_.coeff(j);
            if (den_.coeff(j) != 0) g = g + mono * den_.coeff(j);
        }
        return reduced(ctx, f, g);
    }

    /// n-fold composition with a degree guard (degree grows like d^n).
    RationalMap pow_compose(int n, int degree_cap) const {
        if (n < 1) throw std::invalid_argument("RationalMap: iterate count must be >= 1");
        RationalMap acc = *this;
        for (int i = 1; i < n; ++i) {
            if (static_cast<long long>(acc.degree_) * degree_ > degree_cap)
                throw std::length_error("RationalMap: degree cap " + std::to_string(degree_cap) +
                                        " exceeded while composing");
            acc = acc.compose(*this);
        }
        return acc;
    }

    /// Conjugate h o R o h^{-1} by a Moebius transformation.
    RationalMap conjugate(const Mobius& h) const {
        FieldContext ctx = ctx_;
        auto as_map = [&ctx](const Mobius& m) {
            return RationalMap(ctx, Poly({m.b, m.a}), Poly({m.d, m.c}));
        };
        return as_map(h).compose(*this).compose(as_map(h.inverse()));
    }

    /// The mirror map 1 / R(1/z), i.e. conjugation by z -> 1/z.
    RationalMap reciprocal_conjugate() const { return conjugate(Mobius::reciprocal()); }

    ReductionReport reduction() const {
        ReductionReport rep;
        rep.formal_degree = degree_;
        long p = ctx_.prime;
        fp::FpPoly fn, fd;
        for (int i = 0; i <= degree_; ++i) {
            rep.num_residues.push_back(residue_mod_p(num_.coeff(i), p));
            rep.den_residues.push_back(residue_mod_p(den_.coeff(i), p));
        }
        fn = rep.num_residues;
        fd = rep.den_residues;
        fp::trim(fn);
        fp::trim(fd);
        int top = std::max(fp::deg(fn), fp::deg(fd));
        int common = fp::deg(fp::gcd(fn, fd, p));  // gcd(h, 0) = monic h, so one-sided vanishing gives 0
        rep.induced_degree = top - common;
        rep.good = rep.induced_degree == degree_;
        rep.res = resultant_formal(num_, den_, degree_, degree_);
        rep.res_valuation = vp_rational(rep.res, p);
        rep.rendered = "[" + detail::homogeneous_str(rep.num_residues, degree_, p) + ", " +
                       detail::homogeneous_str(rep.den_residues, degree_, p) + "]";
        return rep;
    }
};

enum class CycleClass { SuperAttracting, Attracting, Indifferent, Repelling };

inline std::string cycle_class_str(CycleClass c) {
    switch (c) {
        case CycleClass::SuperAttracting: return "super-attracting";
        case CycleClass::Attracting: return "attracting";
        case CycleClass::Indifferent: return "indifferent";
        case CycleClass::Repelling: return "repelling";
    }
    return "?";
}

inline CycleClass classify(const FieldElement& lambda) {
    if (lambda.is_zero()) return CycleClass::SuperAttracting;
    Valuation v = vp(lambda);
    if (v > Valuation::whole(0)) return CycleClass::Attracting;
    if (v == Valuation::whole(0)) return CycleClass::Indifferent;
    return CycleClass::Repelling;
}

/// Multiplier of a cycle: the chain-rule product of R' along the orbit.
/// Orbits through infinity are moved by an integer-shift inversion
/// z -> 1/(z - c) with c chosen off the orbit; the multiplier is invariant.
inline FieldElement multiplier(const RationalMap& R, const std::vector<ProjPoint>& orbit) {
    if (orbit.empty()) throw std::invalid_argument("multiplier: empty orbit");
    std::size_t n = orbit.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(R.eval(orbit[i]) == orbit[(i + 1) % n]))
            throw std::invalid_argument("multiplier: orbit is not a cycle of the map (breaks at index " +
                                        std::to_string(i) + ")");
        for (std::size_t j = i + 1; j < n; ++j)
            if (orbit[i] == orbit[j])
                throw std::invalid_argument("multiplier: orbit points repeat");
    }

    bool has_inf = std::any_of(orbit.begin(), orbit.end(),
                               [](const ProjPoint& q) { return q.is_infinite(); });
    const FieldContext& ctx = R.context();
    RationalMap M = R;
    std::vector<ProjPoint> pts = orbit;
    if (has_inf) {
        long c = 0;
        auto collides = [&](long cc) {
            FieldElement v(ctx, mpq_class(cc));
            return std::any_of(orbit.begin(), orbit.end(), [&](const ProjPoint& q) {
                return !q.is_infinite() && q.value() == v;
            });
        };
        while (collides(c)) ++c;
        Mobius h = Mobius::inverted_shift(mpq_class(c));
        M = R.conjugate(h);
        for (auto& q : pts) q = apply_mobius(h, q);
    }

    FieldElement lambda = FieldElement::one(ctx);
    for (const ProjPoint& q : pts) lambda = lambda * M.derivative_at(q.value());
    return lambda;
}

struct PeriodicOrbit {
    std::vector<ProjPoint> points;
    int period = 0;  // minimal period; divides the requested n
    FieldElement lambda;
    CycleClass cls = CycleClass::Indifferent;
};

struct PeriodicPointsResult {
    int n = 0;
    Poly equation;  // fixed-point polynomial of R^n
    std::vector<PeriodicOrbit> orbits;
    std::vector<PadicApprox> lifted;
    std::vector<std::pair<mpq_class, int>> residual;
    bool infinity_periodic = false;
};

/// Points of period dividing n: solves the fixed-point equation of R^n,
/// assembles rational roots (plus infinity) into orbits with multipliers,
/// and certifies the rest by Hensel lift or Newton polygon.
inline PeriodicPointsResult periodic_points(const RationalMap& R, int n, int precision,
                                            int degree_cap = 256) {
    if (n < 1) throw std::invalid_argument("periodic_points: period must be >= 1");
    const FieldContext& ctx = R.context();
    RationalMap Rn = R.pow_compose(n, degree_cap);
    Poly phi = Rn.num() - Poly({mpq_class(0), mpq_class(1)}) * Rn.den();
    if (phi.is_zero())
        throw std::domain_error("periodic_points: the n-th iterate is the identity");

    PeriodicPointsResult out;
    out.n = n;
    out.equation = phi;

    RootAnalysis roots = padic_roots(phi, ctx, precision);
    out.lifted = roots.lifted;
    out.residual = roots.residual;

    std::vector<ProjPoint> seeds;
    for (const RationalRoot& r : roots.rational_roots)
        seeds.push_back(ProjPoint::finite(FieldElement(ctx, r.value)));
    ProjPoint inf = ProjPoint::infinity(ctx);
    if (Rn.eval(inf) == inf) {
        out.infinity_periodic = true;
        seeds.push_back(inf);
    }

    std::vector<ProjPoint> used;
    auto seen = [&used](const ProjPoint& q) {
        return std::any_of(used.begin(), used.end(), [&](const ProjPoint& u) { return u == q; });
    };
    for (const ProjPoint& seed : seeds) {
        if (seen(seed)) continue;
        std::vector<ProjPoint> orbit{seed};
        ProjPoint cur = R.eval(seed);
        while (!(cur == seed)) {
            if (static_cast<int>(orbit.size()) > n)
                throw std::logic_error("periodic_points: orbit fails to close");
            orbit.push_back(cur);
            cur = R.eval(cur);
        }
        int m = static_cast<int>(orbit.size());
        if (n % m != 0)
            throw std::logic_error("periodic_points: orbit length does not divide n");
        for (const ProjPoint& q : orbit) used.push_back(q);
        PeriodicOrbit po;
        po.points = orbit;
        po.period = m;
        po.lambda = multiplier(R, orbit);
        po.cls = classify(po.lambda);
        out.orbits.push_back(std::move(po));
    }
    return out;
}

} // namespace padyn
