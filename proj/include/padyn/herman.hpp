#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "padyn/geometry.hpp"
#include "padyn/hensel.hpp"
#include "padyn/ratmap.hpp"
#include "padyn/region.hpp"
#include "padyn/report.hpp"

namespace padyn {

// Data of the ring construction: the marked point z0 in D_0 and the
// modulus mu; the deleted radius is r = |mu| and the new pole sits at
// z0 + mu, on the boundary sphere of the deleted ball.
struct HermanParams {
    FieldElement z0;
    FieldElement mu;

    Norm r() const { return pnorm(mu); }
};

struct HypothesisOutcome {
    VerificationReport report;
    bool periodic = false;   // R^n(z0) = z0 exactly
    bool returning = false;  // |R^n(z0) - z0| <= r (includes the periodic case)
};

/// Hypotheses of the ring construction against a verified disk cycle:
/// finite disks, z0 in D_0 with 0 < |mu| < rho_0, rational data (the new
/// map keeps rational coefficients), and the orbit of z0 returning into
/// the deleted ball after one cycle period.
inline HypothesisOutcome verify_construction_hypotheses(const RationalMap& R, const SiegelCycle& cyc,
                                                        const HermanParams& prm) {
    HypothesisOutcome out;
    out.report.title = "construction-hypotheses";
    long p = R.context().prime;
    int n = cyc.period();

    Check& base = out.report.add("ambient-cycle");
    if (!cyc.verified) base.fail("unverified", "the disk cycle did not pass verification");
    if (!cyc.map.same_map(R)) base.fail("map-mismatch", "cycle was verified for a different map");

    Check& fin = out.report.add("finite-disks");
    for (const Region& d : cyc.disks)
        if (!d.is_finite_disk())
            fin.fail("not-finite", d.str() + " is not a finite disk; conjugate infinity away first");
    if (!fin.pass) return out;

    Check& pt = out.report.add("base-point");
    if (!cyc.disks[0].contains(prm.z0))
        pt.fail("outside", "z0 = " + prm.z0.str() + " is not in " + cyc.disks[0].str());

    Check& rad = out.report.add("deleted-radius");
    if (prm.mu.is_zero())
        rad.fail("mu-zero", "mu must be nonzero");
    else if (!(prm.r() < cyc.disks[0].radius()))
        rad.fail("too-large", "r = " + prm.r().str(p) + " must be smaller than rho_0 = " +
                                  cyc.disks[0].radius().str(p));

    Check& rat = out.report.add("rational-data");
    if (!prm.z0.is_rational() || !prm.mu.is_rational())
        rat.fail("irrational", "z0 and mu must be rational so the new map has rational coefficients");

    Check& ret = out.report.add("orbit-return");
    if (pt.pass && rad.pass) {
        ProjPoint w = R.iterate(ProjPoint::finite(prm.z0), n);
        if (w.is_infinite()) {
            ret.fail("pole", "R^" + std::to_string(n) + "(z0) is infinite");
        } else {
            FieldElement diff = w.value() - prm.z0;
            if (diff.is_zero()) {
                out.periodic = true;
                out.returning = true;
                ret.note = "z0 is " + std::to_string(n) + "-periodic";
            } else if (pnorm(diff) <= prm.r()) {
                out.returning = true;
                ret.note = "z0 merely returns: |R^" + std::to_string(n) + "(z0) - z0| = " +
                           pnorm(diff).str(p) + " <= r, R^" + std::to_string(n) + "(z0) = " +
                           w.value().str();
            } else {
                ret.fail("escapes", "|R^" + std::to_string(n) + "(z0) - z0| = " +
                                        pnorm(diff).str(p) + " exceeds r = " + prm.r().str(p));
            }
        }
    }
    return out;
}

/// The degree d+1 map
///   Q(z) = ((z - z0) / (z - z0 - mu)) (R(z) - R(z0)) + R(z0):
/// Q agrees with R at z0, differs from it by the small Moebius prefactor,
/// and acquires exactly one new pole at z0 + mu.
inline RationalMap construct_herman_map(const RationalMap& R, const HermanParams& prm) {
    if (prm.mu.is_zero()) throw std::invalid_argument("construct_herman_map: mu must be nonzero");
    if (!prm.z0.is_rational() || !prm.mu.is_rational())
        throw std::invalid_argument("construct_herman_map: rational z0 and mu required");
    mpq_class z0 = prm.z0.rational_value();
    mpq_class mu = prm.mu.rational_value();

    ProjPoint image = R.eval(prm.z0);
    if (image.is_infinite())
        throw std::domain_error("construct_herman_map: z0 is a pole of R");
    mpq_class c = image.value().rational_value();

    const Poly& f = R.num();
    const Poly& g = R.den();
    Poly lin_z0({-z0, mpq_class(1)});        // z - z0
    Poly lin_pole({-z0 - mu, mpq_class(1)}); // z - z0 - mu
    Poly N = lin_z0 * (f - g * c) + c * (lin_pole * g);
    Poly D = lin_pole * g;

    RationalMap Q = RationalMap::reduced(R.context(), N, D);
    if (Q.degree() != R.degree() + 1)
        throw std::domain_error("construct_herman_map: construction degenerated (degree " +
                                std::to_string(Q.degree()) + ", expected " +
                                std::to_string(R.degree() + 1) + ")");
    if (!(Q.eval(prm.z0) == image))
        throw std::logic_error("construct_herman_map: Q(z0) != R(z0)");
    return Q;
}

/// The candidate 1-Herman ring cycle: A_j is D_j minus the closed ball of
/// radius r * rho_j / rho_0 around the orbit point R^j(z0).
inline std::vector<Region> herman_rings(const RationalMap& R, const SiegelCycle& cyc,
                                        const HermanParams& prm) {
    int n = cyc.period();
    for (const Region& d : cyc.disks)
        if (!d.is_finite_disk())
            throw std::invalid_argument("herman_rings: finite disks required");
    HalfInt r_exp = vp(prm.mu).finite_value();
    HalfInt rho0 = cyc.disks[0].radius_exp();

    std::vector<Region> rings;
    FieldElement w = prm.z0;
    for (int j = 0; j < n; ++j) {
        const Region& dj = cyc.disks[static_cast<std::size_t>(j)];
        if (!dj.contains(w))
            throw std::logic_error("herman_rings: orbit point " + w.str() + " left " + dj.str());
        HalfInt inner = r_exp + dj.radius_exp() - rho0;
        rings.push_back(Region::annulus(w, inner, dj.radius_exp(), true,
                                        dj.kind() == RegionKind::Disk));
        if (j + 1 < n) w = R.eval_value(w);
    }
    return rings;
}

// A cycle of candidate 1-Herman rings for the constructed map, carrying its
// construction data.  `returning` distinguishes a merely returning z0 from
// a periodic one.
struct HermanCycle {
    RationalMap base;  // R
    RationalMap map;   // Q
    std::vector<Region> rings;
    HermanParams params;
    bool periodic = false;
    bool returning = false;
    bool verified = false;
    VerificationReport report;

    int period() const { return static_cast<int>(rings.size()); }
};

/// Exact closeness of Q to R on each ring: |Q(z) - R(z)| equals
/// r * rho_1 / rho_0 on A_0 and r on every later ring, with the cyclic
/// bound |Q - R| <= r * rho_{j+1} / rho_0 (equality allowed; at j = n-1
/// the bound wraps to ring 0 and is attained).
inline VerificationReport verify_proximity(const RationalMap& R, const RationalMap& Q,
                                           const SiegelCycle& cyc, const HermanParams& prm,
                                           int samples = 8, std::uint64_t seed = 0) {
    VerificationReport rep;
    rep.title = "rq-proximity";
    long p = R.context().prime;
    int n = cyc.period();
    std::vector<Region> rings = herman_rings(R, cyc, prm);
    Norm r = prm.r();

    Check& sep = rep.add("separation-bounds");
    for (int j = 0; j < n; ++j) {
        Norm expected = j == 0 ? r * cyc.radii[static_cast<std::size_t>(1 % n)] / cyc.radii[0] : r;
        Norm bound = r * cyc.radii[static_cast<std::size_t>((j + 1) % n)] / cyc.radii[0];
        if (!(expected <= bound))
            sep.fail("bound", "ring " + std::to_string(j) + ": |Q - R| = " + expected.str(p) +
                                  " exceeds r * rho_" + std::to_string(j + 1) + " / rho_0 = " +
                                  bound.str(p));
    }

    for (int j = 0; j < n; ++j) {
        Check& chk = rep.add("proximity-ring-" + std::to_string(j));
        Norm expected = j == 0 ? r * cyc.radii[static_cast<std::size_t>(1 % n)] / cyc.radii[0] : r;
        chk.note = "expected |Q - R| = " + expected.str(p) + " on " +
                   rings[static_cast<std::size_t>(j)].str();
        for (const FieldElement& z : sample_region(rings[static_cast<std::size_t>(j)], samples, seed)) {
            ProjPoint rw = R.eval(z), qw = Q.eval(z);
            if (rw.is_infinite() || qw.is_infinite()) {
                chk.fail("pole", "sample z = " + z.str() + " hits a pole");
                continue;
            }
            Norm got = distance(qw.value(), rw.value());
            if (!(got == expected))
                chk.fail("mismatch", "|Q(z) - R(z)| = " + got.str(p) + " at z = " + z.str() +
                                         ", expected " + expected.str(p));
        }
    }
    return rep;
}

// Affine-rescaled reduction of a map between two disks: conjugate by the
// coordinate charts that blow each disk up to the unit ball, then reduce.
struct ScaledReduction {
    RationalMap scaled;
    ReductionReport reduction;
    int degree = 0;
};

/// psi_t o M o psi_r^{-1} where psi_r(z) = (z - center(source)) / s_r and
/// |s_r| = radius(source) (likewise for the target); requires integral
/// radius exponents so the scales stay rational.  Checks that the center
/// and sampled interior points of the source land in the target (the
/// boundary sphere is excluded: poles of M may lawfully sit there, and the
/// rescaled reduction itself describes the sphere), then reports the
/// induced degree of that reduction (an error if it is constant).
inline ScaledReduction scaled_reduction(const RationalMap& M, const Region& source,
                                        const Region& target, int samples = 8,
                                        std::uint64_t seed = 0) {
    if (!source.is_finite_disk() || !target.is_finite_disk())
        throw std::invalid_argument("scaled_reduction: finite disks only");
    if (!source.radius_exp().is_integer() || !target.radius_exp().is_integer())
        throw std::invalid_argument("scaled_reduction: radius exponents must be integral");
    if (!source.center().is_rational() || !target.center().is_rational())
        throw std::invalid_argument("scaled_reduction: rational centers required");
    long p = M.context().prime;

    Region interior = Region::disk(source.center(), source.radius_exp());
    std::vector<FieldElement> pts = sample_region(interior, samples < 3 ? 3 : samples, seed);
    pts.insert(pts.begin(), source.center());
    for (const FieldElement& z : pts) {
        ProjPoint w = M.eval(z);
        if (!target.contains(w))
            throw MapImageError("image escapes: M(" + z.str() + ") = " + w.str() +
                                " is not in " + target.str());
    }

    mpq_class sr = pow_p(p, source.radius_exp().whole_value());
    mpq_class st = pow_p(p, target.radius_exp().whole_value());
    mpq_class cs = source.center().rational_value();
    mpq_class ct = target.center().rational_value();

    RationalMap unpack(M.context(), Poly({cs, sr}), Poly::constant(1));        // psi_r^{-1}
    RationalMap pack(M.context(), Poly({-ct / st, 1 / st}), Poly::constant(1)); // psi_t
    RationalMap scaled = pack.compose(M).compose(unpack);

    ScaledReduction out{scaled, scaled.reduction(), 0};
    out.degree = out.reduction.induced_degree;
    if (out.degree == 0)
        throw std::domain_error("scaled_reduction: reduction is constant");
    return out;
}

/// Certifies a cycle of 1-Herman rings for Q = cyc.map: each ring maps into
/// the next (sampled membership), the return map is an exact isometry on
/// A_0, the designed pole z0 + mu sits inside the deleted ball of A_0, and
/// no pole of Q lies inside any ring (Newton-polygon audit of the shifted
/// denominator, with rational poles named when available).
inline VerificationReport verify_herman_cycle(const HermanCycle& cyc, int pairs = 16,
                                              std::uint64_t seed = 0) {
    VerificationReport rep;
    rep.title = "herman-cycle";
    const RationalMap& Q = cyc.map;
    long p = Q.context().prime;
    int n = cyc.period();
    if (n == 0) {
        rep.add("ring-shape").fail("empty", "no rings");
        return rep;
    }

    Check& shape = rep.add("ring-shape");
    for (const Region& a : cyc.rings)
        if (a.kind() != RegionKind::Annulus)
            shape.fail("bad-kind", a.str() + " is not an annulus");
    if (!shape.pass) return rep;

    Check& chain = rep.add("ring-chain");
    for (int j = 0; j < n; ++j) {
        const Region& src = cyc.rings[static_cast<std::size_t>(j)];
        const Region& tgt = cyc.rings[static_cast<std::size_t>((j + 1) % n)];
        int miss = 0;
        for (const FieldElement& z : sample_region(src, pairs, seed)) {
            ProjPoint w = Q.eval(z);
            if (!tgt.contains(w)) {
                ++miss;
                chain.fail("escape", "Q(" + z.str() + ") = " + w.str() + " is not in " + tgt.str());
            }
        }
        if (miss == 0)
            chain.witness("step", src.str() + " -> " + tgt.str());
    }

    Check& ret = rep.add("return-isometry");
    IsometryResult iso = verify_isometry(Q, n, cyc.rings[0], pairs, seed);
    if (!iso.isometric() || iso.pole_events > 0) {
        for (const Witness& w : iso.report.checks.front().witnesses)
            ret.fail(w.label, w.detail);
    } else {
        ret.note = std::to_string(pairs) + " sample pairs, exact equality";
    }

    Check& pole = rep.add("pole-audit");
    FieldElement designed = cyc.params.z0 + cyc.params.mu;
    {
        const Region& a0 = cyc.rings[0];
        Valuation v = vp(designed - a0.center());
        if (!(v >= Valuation::of(a0.inner_exp())))
            pole.fail("designed-pole", "z0 + mu = " + designed.str() +
                                           " is not inside the deleted ball of " + a0.str());
        else
            pole.witness("designed-pole", "z0 + mu = " + designed.str() +
                                              " lies in the deleted ball of " + a0.str());
    }
    RootAnalysis den_roots = padic_roots(Q.den(), Q.context(), 1);
    for (int j = 0; j < n; ++j) {
        const Region& a = cyc.rings[static_cast<std::size_t>(j)];
        Poly shifted = Q.den().shift(a.center().rational_value());
        NewtonPolygon np = newton_polygon(shifted, p);
        for (const auto& [val, count] : np.root_valuations()) {
            // A pole inside the ring has outer_exp < v < inner_exp up to
            // the strictness flags; valuations here are rationals from the
            // polygon, compared exactly.
            mpq_class inner = a.inner_exp().to_rational();
            mpq_class outer = a.outer_exp().to_rational();
            bool above = a.inner_strict() ? val < inner : val <= inner;
            bool below = a.outer_strict() ? val > outer : val >= outer;
            if (above && below) {
                std::string name = "valuation " + rational_str(val);
                for (const RationalRoot& rr : den_roots.rational_roots) {
                    FieldElement pole_pt(Q.context(), rr.value);
                    if (a.contains(pole_pt)) name += ", pole at z = " + rational_str(rr.value);
                }
                pole.fail("pole-in-ring", "ring " + std::to_string(j) + " (" + a.str() +
                                              ") contains " + std::to_string(count) +
                                              " pole(s) of Q: " + name);
            }
        }
    }
    return rep;
}

} // namespace padyn
