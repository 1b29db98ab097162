#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "padyn/geometry.hpp"
#include "padyn/hensel.hpp"
#include "padyn/newton.hpp"
#include "padyn/ratmap.hpp"
#include "padyn/report.hpp"

// Deterministic in-process property suites behind the `selftest` command.
namespace padyn::selftest {

namespace detail {

// Bounded draw that does not depend on std::uniform_int_distribution's
// implementation-defined stream.
inline long draw(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long long>(hi - lo + 1));
}

// n * p^e / d with d coprime to p; zero when n lands on it.
inline mpq_class random_rational(std::mt19937_64& rng, long p) {
    long n = draw(rng, -999, 999);
    if (n == 0) return mpq_class(0);
    long d = draw(rng, 1, 60);
    while (d % p == 0) ++d;
    long e = draw(rng, -5, 5);
    mpq_class q(n, d);
    q.canonicalize();
    return q * pow_p(p, e);
}

inline FieldElement random_element(std::mt19937_64& rng, const FieldContext& ctx, bool allow_sqrt = true) {
    mpq_class a = random_rational(rng, ctx.prime);
    mpq_class b = allow_sqrt && draw(rng, 0, 2) == 0 ? random_rational(rng, ctx.prime) : mpq_class(0);
    return FieldElement(ctx, a, b);
}

inline void record_failure(Check& c, const std::string& label, const std::string& detail) {
    if (c.witnesses.size() < 5) c.witness(label, detail);
    c.pass = false;
}

} // namespace detail

/// |x+y| <= max(|x|,|y|) with equality when |x| != |y|; |xy| = |x||y|;
/// |x| = 0 iff x = 0.  1000 random pairs in Q(sqrt 5).
inline Check ultrametric_suite(int pairs = 1000, unsigned long long seed = 11) {
    FieldContext ctx(5, 2);
    std::mt19937_64 rng(seed);
    Check c;
    c.name = "ultrametric-laws";
    c.pass = true;
    for (int i = 0; i < pairs; ++i) {
        FieldElement x = detail::random_element(rng, ctx);
        FieldElement y = detail::random_element(rng, ctx);
        Valuation vx = vp(x), vy = vp(y), vs = vp(x + y), vm = vp(x * y);
        if (vs < min(vx, vy))
            detail::record_failure(c, "subadditivity", "v(x+y) = " + vs.str() + " below min at x = " + x.str() + ", y = " + y.str());
        if (vx != vy && vs != min(vx, vy))
            detail::record_failure(c, "isosceles", "x = " + x.str() + ", y = " + y.str());
        Valuation want = (vx.infinite || vy.infinite) ? Valuation::inf() : vx + vy;
        if (vm != want)
            detail::record_failure(c, "multiplicativity", "x = " + x.str() + ", y = " + y.str());
        if (vx.infinite != x.is_zero())
            detail::record_failure(c, "separation", "x = " + x.str());
    }
    c.note = std::to_string(pairs) + " random pairs";
    return c;
}

/// Newton polygon of a fully factored polynomial recovers the multiset of
/// root valuations.  100 random factored polynomials.
inline Check newton_suite(int count = 100, unsigned long long seed = 23) {
    long p = 5;
    std::mt19937_64 rng(seed);
    Check c;
    c.name = "newton-polygon-roots";
    c.pass = true;
    for (int i = 0; i < count; ++i) {
        int nroots = static_cast<int>(detail::draw(rng, 1, 4));
        Poly f = Poly::constant(detail::random_rational(rng, p) + 1); // nonzero lead
        int zeros = 0;
        std::vector<mpq_class> expected;
        for (int k = 0; k < nroots; ++k) {
            mpq_class r = detail::random_rational(rng, p);
            f = f * Poly({-r, mpq_class(1)});
            if (r == 0) ++zeros;
            else expected.push_back(vp_rational(r, p).finite_value().to_rational());
        }
        NewtonPolygon np = newton_polygon(f, p);
        std::vector<mpq_class> got;
        for (const NewtonSegment& s : np.segments)
            for (long k = 0; k < s.length; ++k) got.push_back(-s.slope);
        std::sort(expected.begin(), expected.end());
        std::sort(got.begin(), got.end());
        if (np.zero_order != zeros || got != expected)
            detail::record_failure(c, "mismatch", "f = " + f.str());
    }
    c.note = std::to_string(count) + " factored polynomials";
    return c;
}

/// Lifting a simple residue root to precision N leaves vp(f(x)) >= N.
/// 100 random lifts.
inline Check hensel_suite(int count = 100, unsigned long long seed = 37) {
    long p = 5;
    std::mt19937_64 rng(seed);
    Check c;
    c.name = "hensel-residue-identity";
    c.pass = true;
    int done = 0, guard = 0;
    while (done < count && ++guard < count * 50) {
        long a = detail::draw(rng, 0, p - 1);
        // f = (z - a - p*k) * g with g(a) a unit mod p: a stays a simple root.
        long k = detail::draw(rng, -20, 20);
        int dg = static_cast<int>(detail::draw(rng, 1, 3));
        std::vector<mpq_class> gc;
        for (int j = 0; j <= dg; ++j) gc.emplace_back(detail::draw(rng, -25, 25));
        Poly g(gc);
        if (g.is_zero() || g.eval(mpq_class(a)) == 0 ||
            vp_rational(g.eval(mpq_class(a)), p) != Valuation::whole(0))
            continue;
        Poly f = Poly({mpq_class(-a - p * k), mpq_class(1)}) * g;
        int N = static_cast<int>(detail::draw(rng, 4, 10));
        PadicApprox x = hensel_lift(f, a, p, N);
        mpq_class value = f.eval(mpq_class(x.residue));
        if (value != 0 && vp_rational(value, p) < Valuation::whole(x.precision))
            detail::record_failure(c, "shallow-root", "f = " + f.str() + ", x = " + x.str());
        if (x.precision < N)
            detail::record_failure(c, "short-lift", "f = " + f.str());
        ++done;
    }
    if (done < count) detail::record_failure(c, "generation", "could not build enough instances");
    c.note = std::to_string(done) + " lifts to precision >= 4";
    return c;
}

/// On a disk avoiding the pole, a Moebius map scales all distances by one
/// constant ratio; the disk image is computed from that consensus.  50
/// injective-disk instances.
inline Check ratio_suite(int count = 50, unsigned long long seed = 41) {
    FieldContext ctx(5, 2);
    std::mt19937_64 rng(seed);
    Check c;
    c.name = "disk-image-ratio";
    c.pass = true;
    int done = 0, guard = 0;
    while (done < count && ++guard < count * 80) {
        mpq_class a = detail::random_rational(rng, 5), b = detail::random_rational(rng, 5);
        mpq_class cc = detail::random_rational(rng, 5), d = detail::random_rational(rng, 5);
        if (a * d - b * cc == 0) continue;
        FieldElement center = detail::random_element(rng, ctx, false);
        HalfInt rexp = HalfInt::whole(detail::draw(rng, -3, 3));
        if (!(cc == 0)) {
            // keep the pole -d/c strictly outside the closed ball
            FieldElement pole(ctx, -d / cc);
            if (!(vp(center - pole) < Valuation::of(rexp))) continue;
        } else if (a == 0 || d == 0) {
            continue;
        }
        RationalMap m(ctx, Poly({b, a}), Poly({d, cc}));
        if (m.degree() != 1) continue;
        Region disk = Region::ball(center, rexp);
        try {
            DiskImage im = disk_image(m, disk, 6, 7 + done);
            // spot-check the scaling on two extra pairs
            auto pts = sample_region(disk, 4, 1000 + done);
            for (std::size_t j = 0; j + 1 < pts.size(); j += 2) {
                Norm lhs = pnorm(m.eval_value(pts[j]) - m.eval_value(pts[j + 1]));
                Norm rhs = im.stretch * pnorm(pts[j] - pts[j + 1]);
                if (!(lhs == rhs))
                    detail::record_failure(c, "ratio", "map disagrees with consensus stretch at " + pts[j].str());
            }
            if (!(im.image.radius_exp() == rexp + im.stretch.val))
                detail::record_failure(c, "radius", "image radius off for " + disk.str());
        } catch (const MapImageError& e) {
            detail::record_failure(c, "image", std::string("unexpected failure: ") + e.what());
        }
        ++done;
    }
    if (done < count) detail::record_failure(c, "generation", "could not build enough instances");
    c.note = std::to_string(done) + " injective-disk instances";
    return c;
}

/// good reduction <=> the formal resultant of the normalized pair is a
/// p-adic unit.  50 random maps of degree <= 3.
inline Check resultant_suite(int count = 50, unsigned long long seed = 53) {
    FieldContext ctx(5, 2);
    std::mt19937_64 rng(seed);
    Check c;
    c.name = "good-reduction-unit-resultant";
    c.pass = true;
    int done = 0, guard = 0;
    while (done < count && ++guard < count * 80) {
        auto rand_poly = [&](int dmax) {
            std::vector<mpq_class> cs;
            for (int j = 0; j <= dmax; ++j) {
                mpq_class q(detail::draw(rng, -50, 50));
                if (detail::draw(rng, 0, 3) == 0) q *= pow_p(5, detail::draw(rng, -1, 2));
                cs.push_back(q);
            }
            return Poly(cs);
        };
        try {
            RationalMap m(ctx, rand_poly(static_cast<int>(detail::draw(rng, 0, 3))),
                               rand_poly(static_cast<int>(detail::draw(rng, 0, 3))));
            ReductionReport red = m.reduction();
            if (red.good != (red.res_valuation == Valuation::whole(0)))
                detail::record_failure(c, "equivalence",
                                       "map " + m.num().str() + " / " + m.den().str() +
                                       ": good=" + (red.good ? "1" : "0") +
                                       " but v(Res) = " + red.res_valuation.str());
            ++done;
        } catch (const std::invalid_argument&) {
            continue; // degenerate draw
        }
    }
    if (done < count) detail::record_failure(c, "generation", "could not build enough instances");
    c.note = std::to_string(done) + " random maps of degree <= 3";
    return c;
}

inline VerificationReport run_all() {
    VerificationReport rep;
    rep.title = "property selftest";
    rep.checks.push_back(ultrametric_suite());
    rep.checks.push_back(newton_suite());
    rep.checks.push_back(hensel_suite());
    rep.checks.push_back(ratio_suite());
    rep.checks.push_back(resultant_suite());
    return rep;
}

} // namespace padyn::selftest
