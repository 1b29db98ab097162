#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "padyn/newton.hpp"
#include "padyn/poly.hpp"

namespace padyn {

// Truncated p-adic number: a residue known modulo p^precision.
struct PadicApprox {
    mpz_class residue;
    int precision = 0;
    long p = 0;

    std::string str() const {
        mpz_class mod;
        mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(precision));
        return residue.get_str() + " mod " + mod.get_str();
    }

    /// Valuation of the approximated root; exact whenever residue != 0.
    Valuation valuation() const {
        if (residue == 0) return Valuation::whole(precision);
        return Valuation::whole(vp_int(residue, p));
    }
};

namespace detail {

/// Coefficients of f reduced mod M; denominators must be prime to M.
inline std::vector<mpz_class> coeffs_mod(const Poly& f, const mpz_class& M) {
    std::vector<mpz_class> out;
    for (int i = 0; i <= f.degree(); ++i) {
        mpq_class c = f.coeff(i);
        mpz_class den(c.get_den()), inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t()) == 0)
            throw std::invalid_argument("hensel: coefficient denominator not prime to p");
        mpz_class r = mpz_class(c.get_num()) * inv;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), M.get_mpz_t());
        out.push_back(r);
    }
    return out;
}

inline mpz_class horner_mod(const std::vector<mpz_class>& cs, const mpz_class& x, const mpz_class& M) {
    mpz_class acc(0);
    for (std::size_t i = cs.size(); i-- > 0;) {
        acc = acc * x + cs[i];
        mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), M.get_mpz_t());
    }
    return acc;
}

/// Rescales f by a power of p so that min_i v_p(a_i) = 0; same roots.
inline Poly p_normalize(const Poly& f, long p) {
    if (f.is_zero()) return f;
    bool first = true;
    long m = 0;
    for (int i = 0; i <= f.degree(); ++i) {
        if (f.coeff(i) == 0) continue;
        long v = vp_rational(f.coeff(i), p).finite_value().whole_value();
        if (first || v < m) { m = v; first = false; }
    }
    return f * pow_p(p, -m);
}

} // namespace detail

/// Newton lift of a simple residue root a0 of f to precision p^N.
/// Requires f(a0) = 0 mod p and f'(a0) a unit mod p; quadratic convergence
/// doubles the known digits each step.
inline PadicApprox hensel_lift(const Poly& f, long a0, long p, int N) {
    if (N < 1) throw std::invalid_argument("hensel_lift: precision must be >= 1");
    if (f.is_zero()) throw std::invalid_argument("hensel_lift: zero polynomial");
    Poly g = detail::p_normalize(f, p);
    Poly gp = g.derivative();

    mpz_class pz(p);
    auto g_p = detail::coeffs_mod(g, pz);
    auto gp_p = detail::coeffs_mod(gp, pz);
    mpz_class x(a0);
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t());
    if (detail::horner_mod(g_p, x, pz) != 0)
        throw std::invalid_argument("hensel_lift: a0 is not a residue root");
    mpz_class d0 = detail::horner_mod(gp_p, x, pz);
    if (d0 == 0)
        throw std::domain_error("hensel_lift: residue root is not simple");

    int m = 1;
    while (m < N) {
        m = std::min(2 * m, N);
        mpz_class M;
        mpz_ui_pow_ui(M.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m));
        auto gm = detail::coeffs_mod(g, M);
        auto gpm = detail::coeffs_mod(gp, M);
        mpz_class fx = detail::horner_mod(gm, x, M);
        mpz_class dfx = detail::horner_mod(gpm, x, M), inv;
        if (mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), M.get_mpz_t()) == 0)
            throw std::logic_error("hensel_lift: derivative lost invertibility");
        x = x - fx * inv;
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), M.get_mpz_t());
    }
    mpz_class MN;
    mpz_ui_pow_ui(MN.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(N));
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), MN.get_mpz_t());
    return PadicApprox{x, N, p};
}

struct RationalRoot {
    mpq_class value;
    int multiplicity = 0;
};

// Splitting of the root set of f over Q_p: exact rational roots, Hensel
// lifts of the simple residue roots of what remains, and a Newton-polygon
// valuation certificate for everything else (roots living in extensions or
// clustered residues).
struct RootAnalysis {
    std::vector<RationalRoot> rational_roots;
    std::vector<PadicApprox> lifted;
    std::vector<std::pair<mpq_class, int>> residual;  // (valuation, count)
    Poly remaining;  // factor left once rational roots are divided out
};

namespace detail {

inline std::vector<mpz_class> divisors_of(const mpz_class& n_in) {
    mpz_class n = abs(n_in);
    std::vector<std::pair<mpz_class, int>> factors;
    mpz_class d(2);
    while (n > 1 && d * d <= n && d < 1000000) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            factors.emplace_back(d, e);
        }
        d += (d == 2) ? 1 : 2;
    }
    if (n > 1) factors.emplace_back(n, 1);

    std::vector<mpz_class> divs{mpz_class(1)};
    for (const auto& [q, e] : factors) {
        std::size_t base = divs.size();
        mpz_class pw(1);
        for (int k = 1; k <= e; ++k) {
            pw *= q;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pw);
        }
    }
    return divs;
}

/// Candidate rational roots num/den with num | f(0) and den | lead(f),
/// both signs, for a primitive integer polynomial with nonzero constant term.
inline std::vector<mpq_class> rational_root_candidates(const Poly& f) {
    mpz_class c0(f.coeff(0).get_num());
    mpz_class cl(f.leading().get_num());
    std::set<mpq_class> cand;
    for (const mpz_class& n : divisors_of(c0))
        for (const mpz_class& d : divisors_of(cl)) {
            mpq_class q(n, d);
            q.canonicalize();
            cand.insert(q);
            cand.insert(mpq_class(-q));
        }
    return {cand.begin(), cand.end()};
}

} // namespace detail

/// Full root analysis of a nonzero polynomial over Q_p at the given
/// precision.  Root search is bounded by the divisors of the constant and
/// leading coefficients (after clearing denominators), which is exhaustive
/// for rational roots.
inline RootAnalysis padic_roots(const Poly& f, const FieldContext& ctx, int precision) {
    if (f.is_zero()) throw std::invalid_argument("padic_roots: zero polynomial");
    long p = ctx.prime;
    RootAnalysis out;

    Poly g = f;
    int zero_order = g.ord();
    if (zero_order > 0) {
        out.rational_roots.push_back({mpq_class(0), zero_order});
        std::vector<mpq_class> shifted(g.coeffs().begin() + zero_order, g.coeffs().end());
        g = Poly(std::move(shifted));
    }

    if (g.degree() >= 1) {
        // Integer model for the candidate bound.
        mpz_class denlcm(1);
        for (int i = 0; i <= g.degree(); ++i) {
            mpz_class den(g.coeff(i).get_den());
            mpz_lcm(denlcm.get_mpz_t(), denlcm.get_mpz_t(), den.get_mpz_t());
        }
        Poly gi = g * mpq_class(denlcm);
        for (const mpq_class& r : detail::rational_root_candidates(gi)) {
            int mult = 0;
            while (!g.is_zero() && g.degree() >= 1 && g.eval(r) == 0) {
                g = g.divrem(Poly({-r, mpq_class(1)})).first;
                ++mult;
            }
            if (mult > 0) out.rational_roots.push_back({r, mult});
        }
        std::sort(out.rational_roots.begin(), out.rational_roots.end(),
                  [](const RationalRoot& a, const RationalRoot& b) { return a.value < b.value; });
    }
    out.remaining = g;

    // Hensel stage on the remaining factor.
    std::vector<std::pair<mpq_class, int>> np_vals;
    if (g.degree() >= 1) {
        Poly h = detail::p_normalize(g, p);
        np_vals = newton_polygon(h, p).root_valuations();
        mpz_class pz(p);
        auto hp = detail::coeffs_mod(h, pz);
        auto hpp = detail::coeffs_mod(h.derivative(), pz);
        for (long a = 0; a < p; ++a) {
            mpz_class az(a);
            if (detail::horner_mod(hp, az, pz) != 0) continue;
            if (detail::horner_mod(hpp, az, pz) == 0) continue;  // stays in the certificate
            out.lifted.push_back(hensel_lift(h, a, p, precision));
        }
        // Remove the lifted roots from the certificate: a unit residue root
        // has valuation 0; the residue root at 0, when simple, is the unique
        // positive-valuation root.
        for (const PadicApprox& ap : out.lifted) {
            bool unit = ap.residue % p != 0;
            for (auto& [val, count] : np_vals) {
                if (count == 0) continue;
                if ((unit && val == 0) || (!unit && val > 0)) { --count; break; }
            }
        }
        for (const auto& [val, count] : np_vals)
            if (count > 0) out.residual.emplace_back(val, count);
    }
    return out;
}

} // namespace padyn
