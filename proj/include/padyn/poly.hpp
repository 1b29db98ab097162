#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "padyn/field.hpp"
#include "padyn/rational.hpp"

namespace padyn {

// Univariate polynomial over Q, coefficients ascending.  The zero polynomial
// has the distinguished degree -1.
class Poly {
    std::vector<mpq_class> c_;

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

public:
    Poly() = default;
    explicit Poly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
        for (auto& q : c_) q.canonicalize();
        trim();
    }
    static Poly constant(const mpq_class& a) { return Poly({a}); }
    static Poly zero() { return Poly(); }
    /// The monomial a * z^k.
    static Poly monomial(const mpq_class& a, int k) {
        std::vector<mpq_class> v(static_cast<std::size_t>(k) + 1, mpq_class(0));
        v.back() = a;
        return Poly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    mpq_class coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return mpq_class(0);
        return c_[static_cast<std::size_t>(i)];
    }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    mpq_class leading() const {
        if (is_zero()) throw std::logic_error("Poly: leading coefficient of zero");
        return c_.back();
    }

    /// Order of vanishing at 0; -1 for the zero polynomial.
    int ord() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) return static_cast<int>(i);
        return -1;
    }

    bool operator==(const Poly& o) const { return c_ == o.c_; }

    Poly operator+(const Poly& o) const {
        std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()), mpq_class(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const {
        std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()), mpq_class(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(static_cast<int>(i)) - o.coeff(static_cast<int>(i));
        return Poly(std::move(r));
    }
    Poly operator-() const {
        std::vector<mpq_class> r(c_);
        for (auto& q : r) q = -q;
        return Poly(std::move(r));
    }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<mpq_class> r(c_.size() + o.c_.size() - 1, mpq_class(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] += c_[i] * o.c_[j];
        return Poly(std::move(r));
    }
    Poly operator*(const mpq_class& s) const {
        std::vector<mpq_class> r(c_);
        for (auto& q : r) q *= s;
        return Poly(std::move(r));
    }

    Poly pow(int e) const {
        if (e < 0) throw std::invalid_argument("Poly: negative power");
        Poly r = constant(1);
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    /// Euclidean division over Q: returns (quotient, remainder).
    std::pair<Poly, Poly> divrem(const Poly& d) const {
        if (d.is_zero()) throw std::invalid_argument("Poly: division by zero polynomial");
        Poly q, r = *this;
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int k = r.degree() - d.degree();
            mpq_class s = r.leading() / d.leading();
            Poly t = monomial(s, k);
            q = q + t;
            r = r - t * d;
        }
        return {q, r};
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<mpq_class> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r[i - 1] = c_[i] * mpq_class(static_cast<long>(i));
        return Poly(std::move(r));
    }

    mpq_class eval(const mpq_class& z) const {
        mpq_class acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + c_[i];
        return acc;
    }
    FieldElement eval(const FieldElement& z) const {
        FieldElement acc = FieldElement::zero(z.context());
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * z + FieldElement(z.context(), c_[i]);
        return acc;
    }

    /// f(z + c).
    Poly shift(const mpq_class& c) const {
        Poly result, power = constant(1), lin({c, 1});
        for (std::size_t i = 0; i < c_.size(); ++i) {
            result = result + power * c_[i];
            power = power * lin;
        }
        return result;
    }

    /// f(s * z).
    Poly scale_arg(const mpq_class& s) const {
        std::vector<mpq_class> r(c_);
        mpq_class pw(1);
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] *= pw;
            pw *= s;
        }
        return Poly(std::move(r));
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * (mpq_class(1) / leading());
    }

    std::string str(const std::string& var = "z") const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            mpq_class a = coeff(i);
            if (a == 0) continue;
            bool neg = a < 0;
            mpq_class mag = neg ? mpq_class(-a) : a;
            std::string term;
            if (i == 0) term = rational_str(mag);
            else {
                std::string power = i == 1 ? var : var + "^" + std::to_string(i);
                term = (mag == 1) ? power : rational_str(mag) + "*" + power;
            }
            if (out.empty()) out = (neg ? "-" : "") + term;
            else out += (neg ? " - " : " + ") + term;
        }
        return out;
    }
};

inline Poly operator*(const mpq_class& s, const Poly& f) { return f * s; }

/// Monic gcd over Q; gcd(0, 0) = 0 and nonzero results are monic.
inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.divrem(b).second;
        a = b;
        b = r;
    }
    return a.monic();
}

namespace detail {

/// Determinant by exact fraction Gaussian elimination.
inline mpq_class determinant(std::vector<std::vector<mpq_class>> m) {
    std::size_t n = m.size();
    mpq_class det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return mpq_class(0);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        mpq_class inv = mpq_class(1) / m[col][col];
        for (std::size_t row = col + 1; row < n; ++row) {
            if (m[row][col] == 0) continue;
            mpq_class f = m[row][col] * inv;
            for (std::size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
        }
    }
    return det;
}

} // namespace detail

/// Resultant of f and g considered at formal degrees df >= deg f and
/// dg >= deg g (Sylvester determinant with zero-padded rows).  The formal
/// view is what reduction theory needs for homogeneous coefficient pairs.
inline mpq_class resultant_formal(const Poly& f, const Poly& g, int df, int dg) {
    if (df < 0 || dg < 0 || df < f.degree() || dg < g.degree())
        throw std::invalid_argument("resultant_formal: formal degree below actual degree");
    int n = df + dg;
    if (n == 0) return mpq_class(1);
    std::vector<std::vector<mpq_class>> m(static_cast<std::size_t>(n),
                                          std::vector<mpq_class>(static_cast<std::size_t>(n), mpq_class(0)));
    for (int row = 0; row < dg; ++row)
        for (int k = 0; k <= df; ++k)
            m[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + k)] = f.coeff(df - k);
    for (int row = 0; row < df; ++row)
        for (int k = 0; k <= dg; ++k)
            m[static_cast<std::size_t>(dg + row)][static_cast<std::size_t>(row + k)] = g.coeff(dg - k);
    return detail::determinant(std::move(m));
}

/// Resultant at the actual degrees.
inline mpq_class resultant(const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero())
        throw std::invalid_argument("resultant: zero polynomial");
    return resultant_formal(f, g, std::max(f.degree(), 0), std::max(g.degree(), 0));
}

} // namespace padyn
