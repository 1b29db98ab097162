#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace padyn {

// Half-integer, i.e. an element of (1/2)Z.  Stored as twice its value so all
// arithmetic stays in integers.  This is the value group of the fields we
// work with: valuations of nonzero elements of Q(sqrt(p)) land in (1/2)Z.
struct HalfInt {
    long long twice = 0;

    HalfInt() = default;
    explicit HalfInt(long long twice_value) : twice(twice_value) {}

    static HalfInt whole(long long n) { return HalfInt{2 * n}; }
    static HalfInt halves(long long t) { return HalfInt{t}; }

    bool is_integer() const { return twice % 2 == 0; }

    /// Integer value; only valid when is_integer().
    long long whole_value() const {
        if (!is_integer()) throw std::logic_error("HalfInt: not an integer");
        return twice / 2;
    }

    HalfInt operator+(HalfInt o) const { return HalfInt{twice + o.twice}; }
    HalfInt operator-(HalfInt o) const { return HalfInt{twice - o.twice}; }
    HalfInt operator-() const { return HalfInt{-twice}; }
    HalfInt& operator+=(HalfInt o) { twice += o.twice; return *this; }
    HalfInt& operator-=(HalfInt o) { twice -= o.twice; return *this; }

    auto operator<=>(const HalfInt&) const = default;

    mpq_class to_rational() const {
        mpq_class q(static_cast<long>(twice), 2);
        q.canonicalize();
        return q;
    }

    std::string str() const {
        if (is_integer()) return std::to_string(twice / 2);
        return std::to_string(twice) + "/2";
    }

    /// Parses "k" or "t/2" (sign allowed).  Used by the region schema where
    /// radius exponents may be half-integral.
    static HalfInt parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos)
                return HalfInt::whole(std::stoll(s));
            long long num = std::stoll(s.substr(0, slash));
            long long den = std::stoll(s.substr(slash + 1));
            if (den == 2) return HalfInt::halves(num);
            if (den == 1) return HalfInt::whole(num);
            if (den == -2) return HalfInt::halves(-num);
            if (den == -1) return HalfInt::whole(-num);
        } catch (const std::exception&) {
            throw std::invalid_argument("HalfInt: cannot parse '" + s + "'");
        }
        throw std::invalid_argument("HalfInt: denominator must be 1 or 2 in '" + s + "'");
    }
};

inline HalfInt min(HalfInt a, HalfInt b) { return a < b ? a : b; }
inline HalfInt max(HalfInt a, HalfInt b) { return a < b ? b : a; }

// Valuation of a field element: either a half-integer or +infinity (the
// valuation of 0).  Addition absorbs infinity, matching v(xy) = v(x) + v(y).
struct Valuation {
    bool infinite = false;
    HalfInt v{};

    static Valuation inf() { return Valuation{true, HalfInt{}}; }
    static Valuation of(HalfInt h) { return Valuation{false, h}; }
    static Valuation whole(long long n) { return Valuation{false, HalfInt::whole(n)}; }
    static Valuation halves(long long t) { return Valuation{false, HalfInt::halves(t)}; }

    bool is_finite() const { return !infinite; }

    HalfInt finite_value() const {
        if (infinite) throw std::logic_error("Valuation: infinite");
        return v;
    }

    Valuation operator+(Valuation o) const {
        if (infinite || o.infinite) return inf();
        return of(v + o.v);
    }
    Valuation operator-(Valuation o) const {
        if (o.infinite) throw std::logic_error("Valuation: cannot subtract infinity");
        if (infinite) return inf();
        return of(v - o.v);
    }

    bool operator==(const Valuation& o) const {
        if (infinite != o.infinite) return false;
        return infinite || v == o.v;
    }
    bool operator<(const Valuation& o) const {
        if (infinite) return false;
        if (o.infinite) return true;
        return v < o.v;
    }
    bool operator<=(const Valuation& o) const { return *this < o || *this == o; }
    bool operator>(const Valuation& o) const { return o < *this; }
    bool operator>=(const Valuation& o) const { return o <= *this; }

    std::string str() const { return infinite ? "inf" : v.str(); }
};

inline Valuation min(Valuation a, Valuation b) { return a < b ? a : b; }

// Absolute value |x| = p^{-v(x)}, kept symbolically as the exponent so every
// comparison is exact.  |0| is the distinguished zero value.
struct Norm {
    bool zero = false;
    HalfInt val{};  // |x| = p^{-val}

    static Norm of(Valuation v) {
        return v.infinite ? Norm{true, HalfInt{}} : Norm{false, v.v};
    }
    static Norm one() { return Norm{false, HalfInt{}}; }
    static Norm zero_value() { return Norm{true, HalfInt{}}; }
    /// The norm p^{-k}.
    static Norm exp(HalfInt k) { return Norm{false, k}; }

    bool is_zero() const { return zero; }

    Valuation valuation() const { return zero ? Valuation::inf() : Valuation::of(val); }

    Norm operator*(const Norm& o) const {
        if (zero || o.zero) return zero_value();
        return Norm{false, val + o.val};
    }
    Norm operator/(const Norm& o) const {
        if (o.zero) throw std::domain_error("Norm: division by zero norm");
        if (zero) return zero_value();
        return Norm{false, val - o.val};
    }

    bool operator==(const Norm& o) const {
        if (zero != o.zero) return false;
        return zero || val == o.val;
    }
    bool operator<(const Norm& o) const {
        if (o.zero) return false;
        if (zero) return true;
        return val > o.val;  // larger exponent means smaller norm
    }
    bool operator<=(const Norm& o) const { return *this < o || *this == o; }
    bool operator>(const Norm& o) const { return o < *this; }
    bool operator>=(const Norm& o) const { return o <= *this; }

    /// Exact rendering: rational when the exponent is integral, otherwise
    /// "p^(-k/2)".
    std::string str(long p) const {
        if (zero) return "0";
        if (val.is_integer()) {
            long long e = val.whole_value();
            mpz_class pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>(e < 0 ? -e : e));
            if (e <= 0) return pw.get_str();
            return "1/" + pw.get_str();
        }
        return std::to_string(p) + "^(" + (-val).str() + ")";
    }
};

inline Norm max(const Norm& a, const Norm& b) { return a < b ? b : a; }
inline Norm min(const Norm& a, const Norm& b) { return a < b ? a : b; }

} // namespace padyn
