#pragma once

#include <stdexcept>
#include <string>

#include "padyn/field.hpp"

namespace padyn {

// Point of P^1 over Q(sqrt(p)) in homogeneous coordinates [X : Y], kept in
// the canonical scaling min(v(X), v(Y)) = 0 so reduction mod the maximal
// ideal can be read off directly.
class ProjPoint {
    FieldElement x_, y_;

    ProjPoint(FieldElement x, FieldElement y) : x_(std::move(x)), y_(std::move(y)) {}

public:
    static ProjPoint of(const FieldElement& x, const FieldElement& y) {
        if (x.is_zero() && y.is_zero())
            throw std::invalid_argument("ProjPoint: [0 : 0] is not a point");
        FieldContext ctx = unify(x.context(), y.context());
        HalfInt m = min(vp(x), vp(y)).finite_value();
        FieldElement scale = FieldElement::pi_power(ctx, -m);
        return ProjPoint(x * scale, y * scale);
    }

    static ProjPoint finite(const FieldElement& z) {
        return of(z, FieldElement::one(z.context()));
    }
    static ProjPoint infinity(const FieldContext& ctx) {
        return ProjPoint(FieldElement::one(ctx), FieldElement::zero(ctx));
    }

    const FieldElement& x() const { return x_; }
    const FieldElement& y() const { return y_; }
    const FieldContext& context() const { return x_.context(); }

    bool is_infinite() const { return y_.is_zero(); }

    FieldElement value() const {
        if (is_infinite()) throw std::logic_error("ProjPoint: value of the point at infinity");
        return x_ / y_;
    }

    bool operator==(const ProjPoint& o) const {
        return (x_ * o.y_ - o.x_ * y_).is_zero();
    }

    std::string str() const { return is_infinite() ? "inf" : value().str(); }
};

/// Chordal distance on P^1: |X1 Y2 - X2 Y1| / (max(|X1|,|Y1|) max(|X2|,|Y2|)).
/// With canonical representatives both max factors are 1.
inline Norm chordal(const ProjPoint& a, const ProjPoint& b) {
    Norm cross = pnorm(a.x() * b.y() - b.x() * a.y());
    Norm ma = max(pnorm(a.x()), pnorm(a.y()));
    Norm mb = max(pnorm(b.x()), pnorm(b.y()));
    return cross / (ma * mb);
}

// Value on the residue sphere P^1(F_p) = F_p plus a point at infinity.
struct ResidueValue {
    bool infinite = false;
    long value = 0;

    static ResidueValue inf() { return ResidueValue{true, 0}; }
    static ResidueValue of(long v) { return ResidueValue{false, v}; }

    bool operator==(const ResidueValue&) const = default;

    std::string str() const { return infinite ? "inf" : std::to_string(value); }
};

/// Reduction of a point mod the maximal ideal.  On the canonical
/// representative at least one coordinate is a unit, so the image is well
/// defined: [X : Y] with v(Y) > 0 lands at infinity, otherwise at X/Y mod p.
inline ResidueValue reduce_point(const ProjPoint& pt) {
    if (vp(pt.y()) > Valuation::whole(0)) return ResidueValue::inf();
    return ResidueValue::of((pt.x() / pt.y()).residue());
}

inline ResidueValue reduce_value(const FieldElement& z) {
    return reduce_point(ProjPoint::finite(z));
}

} // namespace padyn
