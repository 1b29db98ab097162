#pragma once

#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "padyn/rational.hpp"
#include "padyn/valuation.hpp"

namespace padyn {

// Ambient field for all exact arithmetic.  ramification = 1 works inside Q
// viewed in Q_p; ramification = 2 adjoins sqrt(p), so valuations live in
// (1/2)Z and the uniformizer is pi = sqrt(p).
struct FieldContext {
    long prime = 5;
    int ramification = 1;

    FieldContext() = default;
    FieldContext(long p, int ram) : prime(p), ramification(ram) {
        if (p < 2) throw std::invalid_argument("FieldContext: prime must be >= 2");
        mpz_class pz(p);
        if (mpz_probab_prime_p(pz.get_mpz_t(), 40) == 0)
            throw std::invalid_argument("FieldContext: " + std::to_string(p) + " is not prime");
        if (ram != 1 && ram != 2)
            throw std::invalid_argument("FieldContext: ramification must be 1 or 2");
    }
    explicit FieldContext(long p) : FieldContext(p, 1) {}

    bool operator==(const FieldContext&) const = default;

    /// Valuation of the uniformizer.
    HalfInt step() const { return ramification == 2 ? HalfInt::halves(1) : HalfInt::whole(1); }
};

inline FieldContext unify(const FieldContext& a, const FieldContext& b) {
    if (a.prime != b.prime)
        throw std::invalid_argument("FieldContext: mixing elements over p=" +
                                    std::to_string(a.prime) + " and p=" + std::to_string(b.prime));
    return FieldContext(a.prime, a.ramification > b.ramification ? a.ramification : b.ramification);
}

// Element a + b*sqrt(p) of Q(sqrt(p)) with exact rational coordinates.
// b is identically zero in an unramified context.
class FieldElement {
    FieldContext ctx_;
    mpq_class a_, b_;

public:
    FieldElement() : ctx_(), a_(0), b_(0) {}

    FieldElement(FieldContext ctx, mpq_class a, mpq_class b = mpq_class(0))
        : ctx_(ctx), a_(std::move(a)), b_(std::move(b)) {
        a_.canonicalize();
        b_.canonicalize();
        if (b_ != 0 && ctx_.ramification != 2)
            throw std::invalid_argument("FieldElement: sqrt(p) part requires a ramified context");
    }

    static FieldElement zero(const FieldContext& ctx) { return FieldElement(ctx, 0); }
    static FieldElement one(const FieldContext& ctx) { return FieldElement(ctx, 1); }

    const FieldContext& context() const { return ctx_; }
    const mpq_class& rational_part() const { return a_; }
    const mpq_class& radical_part() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    /// The rational value; only valid when is_rational().
    const mpq_class& rational_value() const {
        if (!is_rational()) throw std::logic_error("FieldElement: not rational");
        return a_;
    }

    FieldElement operator+(const FieldElement& o) const {
        return FieldElement(unify(ctx_, o.ctx_), a_ + o.a_, b_ + o.b_);
    }
    FieldElement operator-(const FieldElement& o) const {
        return FieldElement(unify(ctx_, o.ctx_), a_ - o.a_, b_ - o.b_);
    }
    FieldElement operator-() const { return FieldElement(ctx_, -a_, -b_); }
    FieldElement operator*(const FieldElement& o) const {
        FieldContext ctx = unify(ctx_, o.ctx_);
        mpq_class p(ctx.prime);
        return FieldElement(ctx, a_ * o.a_ + p * b_ * o.b_, a_ * o.b_ + b_ * o.a_);
    }

    FieldElement conjugate() const { return FieldElement(ctx_, a_, -b_); }

    FieldElement inverse() const {
        if (is_zero()) throw std::domain_error("FieldElement: inverse of zero");
        mpq_class p(ctx_.prime);
        mpq_class n = a_ * a_ - p * b_ * b_;  // nonzero: sqrt(p) is irrational
        return FieldElement(ctx_, a_ / n, -b_ / n);
    }
    FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }

    bool operator==(const FieldElement& o) const {
        if (ctx_.prime != o.ctx_.prime) return false;
        return a_ == o.a_ && b_ == o.b_;
    }

    /// v_p, with v(sqrt(p)) = 1/2; min of the two coordinate valuations.
    /// The two coordinates can never share a valuation (one is integral, the
    /// other is not), so no cancellation correction is needed.
    Valuation valuation() const {
        Valuation va = vp_rational(a_, ctx_.prime);
        Valuation vb = vp_rational(b_, ctx_.prime) + Valuation::halves(1);
        return min(va, vb);
    }

    Norm norm() const { return Norm::of(valuation()); }

    bool is_integral() const { return Valuation::whole(0) <= valuation(); }

    /// Residue in F_p = {0..p-1}; requires v >= 0.  The sqrt(p) coordinate
    /// contributes nothing: its valuation is >= 1/2, hence it reduces to 0.
    long residue() const {
        if (!is_integral()) throw std::invalid_argument("FieldElement: residue of non-integral element");
        return residue_mod_p(a_, ctx_.prime);
    }

    /// pi^m for the context uniformizer; half-integral m needs ramification 2.
    static FieldElement pi_power(const FieldContext& ctx, HalfInt m) {
        if (m.is_integer()) return FieldElement(ctx, pow_p(ctx.prime, m.whole_value()));
        if (ctx.ramification != 2)
            throw std::invalid_argument("FieldElement: half-integral power needs ramification 2");
        return FieldElement(ctx, 0, pow_p(ctx.prime, (m.twice - 1) / 2));
    }

    std::string str() const {
        if (b_ == 0) return rational_str(a_);
        std::string radical;
        mpq_class abs_b = b_ < 0 ? mpq_class(-b_) : b_;
        if (abs_b == 1)
            radical = "sqrt(" + std::to_string(ctx_.prime) + ")";
        else
            radical = rational_str(abs_b) + "*sqrt(" + std::to_string(ctx_.prime) + ")";
        if (a_ == 0) return (b_ < 0 ? "-" : "") + radical;
        return rational_str(a_) + (b_ < 0 ? " - " : " + ") + radical;
    }

    /// Parses "a", "a + c*sqrt(p)", "a - c*sqrt(p)", "c*sqrt(p)", "sqrt(p)"
    /// with rational a, c.  The prime inside sqrt() must match the context.
    static FieldElement parse(const FieldContext& ctx, const std::string& text) {
        std::string s;
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
        auto root = s.find("sqrt(");
        if (root == std::string::npos)
            return FieldElement(ctx, parse_rational(s));

        auto close = s.find(')', root);
        if (close == std::string::npos || close + 1 != s.size())
            throw std::invalid_argument("FieldElement: malformed sqrt term in '" + text + "'");
        std::string inside = s.substr(root + 5, close - root - 5);
        if (parse_rational(inside) != mpq_class(ctx.prime))
            throw std::invalid_argument("FieldElement: sqrt argument must be the context prime");

        // Split "A[+-]Bsqrt(p)" at the sign joining the two terms (if any).
        std::string head = s.substr(0, root);  // e.g. "1/5+2*" or "-" or ""
        mpq_class a(0), b;
        std::string coeff = head;
        for (std::size_t i = head.size(); i-- > 0;) {
            if ((head[i] == '+' || head[i] == '-') && i > 0) {
                char prev = head[i - 1];
                if (prev == '+' || prev == '-' || prev == '/') continue;
                a = parse_rational(head.substr(0, i));
                coeff = head.substr(i);
                break;
            }
        }
        if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
        if (coeff.empty() || coeff == "+") b = 1;
        else if (coeff == "-") b = -1;
        else b = parse_rational(coeff);
        return FieldElement(ctx, a, b);
    }
};

inline Valuation vp(const FieldElement& x) { return x.valuation(); }
inline Norm pnorm(const FieldElement& x) { return x.norm(); }

/// |x - y|; the ultrametric distance on the field.
inline Norm distance(const FieldElement& x, const FieldElement& y) { return pnorm(x - y); }

} // namespace padyn
