#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "padyn/poly.hpp"

namespace padyn {

struct NewtonSegment {
    mpq_class slope;
    int length = 0;  // horizontal extent = number of roots attached

    bool operator==(const NewtonSegment&) const = default;
};

// Newton polygon of a nonzero polynomial: the lower convex hull of the
// points (i, v_p(a_i)) over nonzero coefficients a_i.  A segment of slope s
// and length l certifies exactly l roots of valuation -s (with multiplicity),
// plus zero_order roots at 0.
struct NewtonPolygon {
    int zero_order = 0;
    std::vector<NewtonSegment> segments;

    /// Valuations of the nonzero roots as (valuation, count), slopes negated.
    std::vector<std::pair<mpq_class, int>> root_valuations() const {
        std::vector<std::pair<mpq_class, int>> out;
        for (const auto& seg : segments) out.emplace_back(mpq_class(-seg.slope), seg.length);
        return out;
    }

    int total_roots() const {
        int n = zero_order;
        for (const auto& seg : segments) n += seg.length;
        return n;
    }
};

inline NewtonPolygon newton_polygon(const Poly& f, long p) {
    if (f.is_zero())
        throw std::invalid_argument("newton_polygon: zero polynomial");

    struct Pt { long x; long y; };
    std::vector<Pt> pts;
    int lo = f.ord();
    for (int i = lo; i <= f.degree(); ++i) {
        if (f.coeff(i) == 0) continue;
        Valuation v = vp_rational(f.coeff(i), p);
        pts.push_back({i, static_cast<long>(v.finite_value().whole_value())});
    }

    std::vector<Pt> hull;
    for (const Pt& pt : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull[hull.size() - 1];
            mpz_class cross = mpz_class(b.x - a.x) * mpz_class(pt.y - a.y) -
                              mpz_class(b.y - a.y) * mpz_class(pt.x - a.x);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }

    NewtonPolygon np;
    np.zero_order = lo;
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        mpq_class slope(hull[i + 1].y - hull[i].y, hull[i + 1].x - hull[i].x);
        slope.canonicalize();
        np.segments.push_back({slope, static_cast<int>(hull[i + 1].x - hull[i].x)});
    }
    return np;
}

inline NewtonPolygon newton_polygon(const Poly& f, const FieldContext& ctx) {
    return newton_polygon(f, ctx.prime);
}

} // namespace padyn
