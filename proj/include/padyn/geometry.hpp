#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "padyn/ratmap.hpp"
#include "padyn/region.hpp"
#include "padyn/report.hpp"

namespace padyn {

namespace detail {

/// k-th positive integer prime to p (k from 0): 1, 2, ..., p-1, p+1, ...
inline long coprime_unit(long k, long p) {
    return k + 1 + k / (p - 1);
}

/// Valuations available for |z - c| inside the region, on the value grid of
/// the context, nearest the outer boundary first.  Annuli can be empty at
/// the context granularity, which is an error.
inline std::vector<HalfInt> valuation_schedule(const Region& g, int depth) {
    const HalfInt step = g.context().step();
    auto grid_above = [&](HalfInt bound, bool strict) {
        // smallest multiple of step that is > bound (or >= when not strict)
        long long s = step.twice;
        long long b = bound.twice;
        long long q = b / s;
        HalfInt m(q * s);
        while (m < bound || (strict && m == bound)) m += step;
        return m;
    };

    std::vector<HalfInt> sched;
    switch (g.kind()) {
        case RegionKind::Disk:
        case RegionKind::Ball: {
            HalfInt m = grid_above(g.radius_exp(), g.kind() == RegionKind::Disk);
            for (int i = 0; i < depth; ++i, m += step) sched.push_back(m);
            break;
        }
        case RegionKind::Annulus: {
            HalfInt m = grid_above(g.outer_exp(), g.outer_strict());
            for (int i = 0; i < depth; ++i, m += step) {
                bool below = g.inner_strict() ? m < g.inner_exp() : m <= g.inner_exp();
                if (!below) break;
                sched.push_back(m);
            }
            if (sched.empty())
                throw std::domain_error("sample_region: " + g.str() +
                                        " has no points at the context granularity");
            break;
        }
        case RegionKind::AroundInfinity:
            throw std::logic_error("valuation_schedule: mirror the region first");
    }
    return sched;
}

} // namespace detail

/// Deterministic exact sample points of a region: center + u * pi^m over a
/// schedule of admissible valuations m and integer units u prime to p.  The
/// same (region, count, seed) always yields the same list; all points are
/// distinct and membership is by construction.  Neighborhoods of infinity
/// are sampled in the mirror chart and inverted back.
inline std::vector<FieldElement> sample_region(const Region& g, int count, std::uint64_t seed) {
    if (count <= 0) return {};
    const FieldContext& ctx = g.context();

    if (g.kind() == RegionKind::AroundInfinity) {
        std::vector<FieldElement> out;
        for (const FieldElement& w : sample_region(g.mirrored(), count, seed))
            out.push_back(w.inverse());
        return out;
    }

    std::vector<HalfInt> sched = detail::valuation_schedule(g, 4);
    long offset = static_cast<long>(seed % 997);
    std::vector<FieldElement> out;
    for (int i = 0; i < count; ++i) {
        HalfInt m = sched[static_cast<std::size_t>(i) % sched.size()];
        long k = offset + static_cast<long>(static_cast<std::size_t>(i) / sched.size());
        long u = detail::coprime_unit(k, ctx.prime);
        FieldElement x = g.center() + FieldElement(ctx, mpq_class(u)) * FieldElement::pi_power(ctx, m);
        out.push_back(x);
    }
    return out;
}

// Image data of a disk under a map that is injective on it: the image disk
// and the exact stretch factor t/r (Norm), certified by ratio consensus
// over deterministic sample pairs.
struct DiskImage {
    Region image;
    Norm stretch;
};

/// Image of a finite disk.  A map with no poles or critical collisions on
/// the disk scales all distances by one exact ratio; three or more sample
/// pairs plus the center pin that ratio down or produce a witness.
inline DiskImage disk_image(const RationalMap& R, const Region& disk, int samples = 8,
                            std::uint64_t seed = 0) {
    if (!disk.is_finite_disk())
        throw std::invalid_argument("disk_image: finite disks only; use the mirror chart");
    int n = samples < 3 ? 3 : samples;
    std::vector<FieldElement> pts = sample_region(disk, n, seed);
    pts.insert(pts.begin(), disk.center());

    std::vector<ProjPoint> imgs;
    for (const FieldElement& z : pts) {
        ProjPoint w = R.eval(z);
        if (w.is_infinite())
            throw MapImageError("pole inside " + disk.str() + ": R(" + z.str() + ") = inf");
        imgs.push_back(w);
    }

    bool have = false;
    HalfInt ratio{};
    FieldElement first_a, first_b;
    auto feed = [&](std::size_t i, std::size_t j) {
        FieldElement dz = pts[i] - pts[j];
        FieldElement dw = imgs[i].value() - imgs[j].value();
        if (dw.is_zero())
            throw MapImageError("not injective on " + disk.str() + ": R(" + pts[i].str() +
                                ") = R(" + pts[j].str() + ")");
        HalfInt q = vp(dw).finite_value() - vp(dz).finite_value();
        if (!have) {
            have = true;
            ratio = q;
            first_a = pts[i];
            first_b = pts[j];
        } else if (q != ratio) {
            throw MapImageError("stretch ratio disagrees on " + disk.str() + ": pair (" +
                                first_a.str() + ", " + first_b.str() + ") gives p^(" + (-ratio).str() +
                                ") but (" + pts[i].str() + ", " + pts[j].str() + ") gives p^(" +
                                (-q).str() + ")");
        }
    };
    for (std::size_t j = 1; j < pts.size(); ++j) feed(0, j);
    for (std::size_t j = 1; j + 1 < pts.size(); ++j) feed(j, j + 1);

    HalfInt image_exp = disk.radius_exp() + ratio;
    FieldElement center = imgs[0].value();
    Region image = disk.kind() == RegionKind::Disk ? Region::disk(center, image_exp)
                                                   : Region::ball(center, image_exp);
    return DiskImage{image, Norm::exp(ratio)};
}

struct IsometryResult {
    VerificationReport report;
    int pairs = 0;
    int failures = 0;
    int pole_events = 0;

    bool isometric() const { return failures == 0; }
};

/// Checks |R^n(z1) - R^n(z2)| = |z1 - z2| exactly on sampled pairs of G.
/// Pole events are reported but only distance mismatches count as failures.
/// Neighborhoods of infinity are tested in the mirror chart with the
/// mirror-conjugated map.
inline IsometryResult verify_isometry(const RationalMap& R, int n, const Region& g, int pairs,
                                      std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("verify_isometry: n must be >= 1");
    RationalMap M = R;
    Region dom = g;
    if (g.kind() == RegionKind::AroundInfinity) {
        M = R.reciprocal_conjugate();
        dom = g.mirrored();
    }

    IsometryResult res;
    res.pairs = pairs;
    Check& chk = res.report.add("exact-isometry");
    std::vector<FieldElement> pts = sample_region(dom, 2 * pairs, seed);
    for (int i = 0; i < pairs; ++i) {
        const FieldElement& z1 = pts[static_cast<std::size_t>(2 * i)];
        const FieldElement& z2 = pts[static_cast<std::size_t>(2 * i + 1)];
        ProjPoint w1 = M.iterate(ProjPoint::finite(z1), n);
        ProjPoint w2 = M.iterate(ProjPoint::finite(z2), n);
        if (w1.is_infinite() || w2.is_infinite()) {
            ++res.pole_events;
            chk.witness("pole-event", "orbit of " + (w1.is_infinite() ? z1.str() : z2.str()) +
                                          " reaches infinity; pair skipped");
            continue;
        }
        Norm before = distance(z1, z2);
        Norm after = distance(w1.value(), w2.value());
        if (!(before == after)) {
            ++res.failures;
            chk.fail("distance-mismatch", "|z1 - z2| = " + before.str(R.context().prime) +
                                              " but |R^n(z1) - R^n(z2)| = " +
                                              after.str(R.context().prime) + " at z1 = " +
                                              z1.str() + ", z2 = " + z2.str());
        }
    }
    if (res.pole_events > 0)
        res.report.notes.push_back(std::to_string(res.pole_events) + " pole event(s) during isometry sampling");
    return res;
}

// A verified cycle of disk-like Fatou components with exact radii.  The
// report records which hypotheses held; `verified` is its conjunction.
struct SiegelCycle {
    RationalMap map;
    std::vector<Region> disks;
    std::vector<Norm> radii;
    bool verified = false;
    VerificationReport report;

    int period() const { return static_cast<int>(disks.size()); }
};

/// Certifies a cycle of disks D_0 -> D_1 -> ... -> D_0: pairwise disjoint,
/// each maps exactly onto the next (image + stretch from disk_image), the
/// return map is an isometry on D_0 with no pole excursions, and the
/// labeling starts at a disk of minimal radius.
inline SiegelCycle verify_siegel_cycle(const RationalMap& R, const std::vector<Region>& disks,
                                       int pairs = 16, std::uint64_t seed = 0) {
    if (disks.empty()) throw std::invalid_argument("verify_siegel_cycle: no disks");
    SiegelCycle cyc{R, disks, {}, false, {}};
    cyc.report.title = "siegel-cycle";
    int n = static_cast<int>(disks.size());
    long p = R.context().prime;

    Check& shape = cyc.report.add("cycle-shape");
    for (const Region& d : disks)
        if (d.kind() == RegionKind::Annulus)
            shape.fail("bad-kind", "annulus " + d.str() + " cannot be a cycle component");
    if (!shape.pass) {
        cyc.report.notes.push_back("cycle rejected before dynamical checks");
        return cyc;
    }
    for (const Region& d : disks) cyc.radii.push_back(d.radius());

    Check& disjoint = cyc.report.add("pairwise-disjoint");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (regions_intersect(disks[static_cast<std::size_t>(i)], disks[static_cast<std::size_t>(j)]))
                disjoint.fail("overlap", disks[static_cast<std::size_t>(i)].str() + " meets " +
                                             disks[static_cast<std::size_t>(j)].str());

    RationalMap recip(R.context(), Poly::constant(1), Poly({mpq_class(0), mpq_class(1)}));
    Check& chain = cyc.report.add("disk-chain");
    for (int j = 0; j < n; ++j) {
        const Region& src0 = disks[static_cast<std::size_t>(j)];
        const Region& tgt0 = disks[static_cast<std::size_t>((j + 1) % n)];
        RationalMap M = R;
        Region src = src0, tgt = tgt0;
        if (src0.kind() == RegionKind::AroundInfinity) {
            M = M.compose(recip);
            src = src0.mirrored();
        }
        if (tgt0.kind() == RegionKind::AroundInfinity) {
            M = recip.compose(M);
            tgt = tgt0.mirrored();
        }
        try {
            DiskImage im = disk_image(M, src, 8, seed);
            if (!im.image.same_set(tgt))
                chain.fail("image-mismatch", "R(" + src0.str() + ") = " + im.image.str() +
                                                 " (in chart), expected " + tgt0.str());
            else
                chain.witness("step", src0.str() + " -> " + tgt0.str() + ", stretch " +
                                          im.stretch.str(p));
        } catch (const MapImageError& e) {
            chain.fail("image-error", e.what());
        }
    }

    Check& ret = cyc.report.add("return-isometry");
    IsometryResult iso = verify_isometry(R, n, disks[0], pairs, seed);
    if (!iso.isometric() || iso.pole_events > 0) {
        for (const Witness& w : iso.report.checks.front().witnesses)
            ret.fail(w.label, w.detail);
        if (iso.pole_events > 0)
            ret.fail("pole-event", "the return orbit leaves the affine chart of " + disks[0].str());
    } else {
        ret.note = std::to_string(pairs) + " sample pairs, exact equality";
    }

    Check& label = cyc.report.add("radius-labeling");
    for (int j = 1; j < n; ++j)
        if (!(cyc.radii[0] <= cyc.radii[static_cast<std::size_t>(j)]))
            label.fail("not-minimal", "rho_0 = " + cyc.radii[0].str(p) + " exceeds rho_" +
                                          std::to_string(j) + " = " +
                                          cyc.radii[static_cast<std::size_t>(j)].str(p));

    cyc.verified = cyc.report.pass();
    return cyc;
}

} // namespace padyn
