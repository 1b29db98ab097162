#pragma once

#include <stdexcept>
#include <string>

#include "padyn/projective.hpp"

namespace padyn {

enum class RegionKind { Disk, Ball, AroundInfinity, Annulus };

// Ultrametric region of P^1.  Radii are powers of p kept as exponents:
// radius = p^{-radius_exp}, so membership tests are pure valuation
// comparisons and never leave the value group.
//
//   Disk            |z - c| <  p^{-k}      (open)
//   Ball            |z - c| <= p^{-k}      (closed)
//   AroundInfinity  |z| > p^{-k}  plus the point at infinity (open means
//                   strict inequality; closed admits |z| = p^{-k})
//   Annulus         p^{-k_in} (<,<=) |z - c| (<,<=) p^{-k_out}
class Region {
    RegionKind kind_;
    FieldElement center_;     // unused for AroundInfinity
    FieldContext ctx_;
    HalfInt rexp_{};          // Disk/Ball/AroundInfinity
    HalfInt inner_{}, outer_{};
    bool inner_strict_ = true, outer_strict_ = true;

    Region(RegionKind k, FieldElement c, FieldContext ctx)
        : kind_(k), center_(std::move(c)), ctx_(ctx) {}

public:
    static Region disk(const FieldElement& center, HalfInt radius_exp) {
        Region g(RegionKind::Disk, center, center.context());
        g.rexp_ = radius_exp;
        return g;
    }
    static Region ball(const FieldElement& center, HalfInt radius_exp) {
        Region g(RegionKind::Ball, center, center.context());
        g.rexp_ = radius_exp;
        return g;
    }
    static Region around_infinity(const FieldContext& ctx, HalfInt radius_exp, bool open = true) {
        Region g(RegionKind::AroundInfinity, FieldElement::zero(ctx), ctx);
        g.rexp_ = radius_exp;
        g.outer_strict_ = open;
        return g;
    }
    static Region annulus(const FieldElement& center, HalfInt inner_exp, HalfInt outer_exp,
                          bool inner_strict = true, bool outer_strict = true) {
        bool ordered = outer_exp < inner_exp ||
                       (outer_exp == inner_exp && !inner_strict && !outer_strict);
        if (!ordered)
            throw std::invalid_argument("Region: annulus radii out of order");
        Region g(RegionKind::Annulus, center, center.context());
        g.inner_ = inner_exp;
        g.outer_ = outer_exp;
        g.inner_strict_ = inner_strict;
        g.outer_strict_ = outer_strict;
        return g;
    }

    RegionKind kind() const { return kind_; }
    const FieldContext& context() const { return ctx_; }
    const FieldElement& center() const {
        if (kind_ == RegionKind::AroundInfinity)
            throw std::logic_error("Region: neighborhood of infinity has no finite center");
        return center_;
    }
    bool is_finite_disk() const { return kind_ == RegionKind::Disk || kind_ == RegionKind::Ball; }
    bool boundary_included() const { return kind_ == RegionKind::Ball || (kind_ == RegionKind::AroundInfinity && !outer_strict_); }

    HalfInt radius_exp() const {
        if (kind_ == RegionKind::Annulus) throw std::logic_error("Region: annulus has two radii");
        return rexp_;
    }
    HalfInt inner_exp() const {
        if (kind_ != RegionKind::Annulus) throw std::logic_error("Region: not an annulus");
        return inner_;
    }
    HalfInt outer_exp() const {
        if (kind_ != RegionKind::Annulus) throw std::logic_error("Region: not an annulus");
        return outer_;
    }
    bool inner_strict() const { return inner_strict_; }
    bool outer_strict() const { return outer_strict_; }

    Norm radius() const { return Norm::exp(radius_exp()); }
    Norm inner_radius() const { return Norm::exp(inner_exp()); }
    Norm outer_radius() const { return Norm::exp(outer_exp()); }

    bool contains(const FieldElement& z) const {
        switch (kind_) {
            case RegionKind::Disk:
                return vp(z - center_) > Valuation::of(rexp_);
            case RegionKind::Ball:
                return vp(z - center_) >= Valuation::of(rexp_);
            case RegionKind::AroundInfinity: {
                Valuation v = vp(z);
                return outer_strict_ ? v < Valuation::of(rexp_) : v <= Valuation::of(rexp_);
            }
            case RegionKind::Annulus: {
                Valuation v = vp(z - center_);
                bool above = inner_strict_ ? v < Valuation::of(inner_) : v <= Valuation::of(inner_);
                bool below = outer_strict_ ? v > Valuation::of(outer_) : v >= Valuation::of(outer_);
                return above && below;
            }
        }
        return false;
    }

    bool contains_infinity() const { return kind_ == RegionKind::AroundInfinity; }

    bool contains(const ProjPoint& pt) const {
        return pt.is_infinite() ? contains_infinity() : contains(pt.value());
    }

    /// The image under z -> 1/z: swaps a neighborhood of infinity with a
    /// disk around 0 of reciprocal radius.  Used to transport geometry into
    /// a finite chart.
    Region mirrored() const {
        switch (kind_) {
            case RegionKind::AroundInfinity:
                return outer_strict_ ? disk(FieldElement::zero(ctx_), -rexp_)
                                     : ball(FieldElement::zero(ctx_), -rexp_);
            case RegionKind::Disk:
                if (!center_.is_zero()) break;
                return around_infinity(ctx_, -rexp_, true);
            case RegionKind::Ball:
                if (!center_.is_zero()) break;
                return around_infinity(ctx_, -rexp_, false);
            default: break;
        }
        throw std::logic_error("Region: no mirror chart for this region");
    }

    /// Exact set equality.  Disks of equal radius agree exactly when each
    /// center lies in the other (ultrametric recentering); annuli recenter
    /// freely within the inner ball.
    bool same_set(const Region& o) const {
        if (ctx_.prime != o.ctx_.prime) return false;
        if (kind_ == RegionKind::AroundInfinity || o.kind_ == RegionKind::AroundInfinity)
            return kind_ == o.kind_ && rexp_ == o.rexp_ && outer_strict_ == o.outer_strict_;
        if (kind_ == RegionKind::Annulus || o.kind_ == RegionKind::Annulus) {
            if (kind_ != o.kind_) return false;
            return inner_ == o.inner_ && outer_ == o.outer_ &&
                   inner_strict_ == o.inner_strict_ && outer_strict_ == o.outer_strict_ &&
                   vp(center_ - o.center_) >= Valuation::of(inner_);
        }
        return kind_ == o.kind_ && rexp_ == o.rexp_ && contains(o.center_);
    }

    std::string str() const {
        long p = ctx_.prime;
        switch (kind_) {
            case RegionKind::Disk:
                return "D_" + radius().str(p) + "(" + center_.str() + ")";
            case RegionKind::Ball:
                return "B_" + radius().str(p) + "(" + center_.str() + ")";
            case RegionKind::AroundInfinity:
                return std::string("{|z| ") + (outer_strict_ ? ">" : ">=") + " " + radius().str(p) + "} U {inf}";
            case RegionKind::Annulus:
                return "A(" + center_.str() + "; " + inner_radius().str(p) +
                       (inner_strict_ ? " < " : " <= ") + "|z-c|" +
                       (outer_strict_ ? " < " : " <= ") + outer_radius().str(p) + ")";
        }
        return "?";
    }
};

/// Whether two regions meet, for the disk-like kinds used in cycles.  The
/// value group is dense enough (half-integers, and conceptually all of Q in
/// C_p) that interval logic on valuations decides this exactly.
inline bool regions_intersect(const Region& a, const Region& b) {
    if (a.kind() == RegionKind::Annulus || b.kind() == RegionKind::Annulus)
        throw std::invalid_argument("regions_intersect: annuli not supported here");
    bool ainf = a.kind() == RegionKind::AroundInfinity;
    bool binf = b.kind() == RegionKind::AroundInfinity;
    if (ainf && binf) return true;  // both contain infinity
    if (ainf || binf) {
        const Region& inf = ainf ? a : b;
        const Region& fin = ainf ? b : a;
        // Points of the finite disk have |z| <= max(|c|, r), with equality
        // structure that collapses by the isosceles rule.
        Valuation vc = vp(fin.center());
        Valuation cutoff = Valuation::of(inf.radius_exp());
        bool center_in = inf.outer_strict() ? vc < cutoff : vc <= cutoff;
        if (center_in) return true;
        // Otherwise a meeting point needs |z - c| > |c|, where the isosceles
        // rule gives |z| = |z - c|; such norms fill the disk radius range.
        Valuation r = Valuation::of(fin.radius_exp());
        if (fin.kind() == RegionKind::Ball && !inf.outer_strict()) return r <= cutoff;
        return r < cutoff;
    }
    return a.contains(b.center()) || b.contains(a.center());
}

/// Ultrametric distance between disjoint finite disks: the distance of the
/// centers (any two representatives give the same value).
inline Norm region_distance(const Region& a, const Region& b) {
    if (!a.is_finite_disk() || !b.is_finite_disk())
        throw std::invalid_argument("region_distance: finite disks only");
    if (regions_intersect(a, b)) return Norm::zero_value();
    return distance(a.center(), b.center());
}

} // namespace padyn
