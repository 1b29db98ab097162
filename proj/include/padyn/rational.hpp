#pragma once

#include <cctype>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "padyn/valuation.hpp"

namespace padyn {

/// p-adic valuation of a nonzero integer.
inline long vp_int(const mpz_class& n, long p) {
    if (n == 0) throw std::invalid_argument("vp_int: zero");
    mpz_class rest;
    mpz_class pz(p);
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

/// p-adic valuation of a rational; v(0) = +infinity.
inline Valuation vp_rational(const mpq_class& q, long p) {
    if (q == 0) return Valuation::inf();
    long vn = vp_int(mpz_class(q.get_num()), p);
    long vd = vp_int(mpz_class(q.get_den()), p);
    return Valuation::whole(vn - vd);
}

/// p^e as an exact rational (e may be negative).
inline mpq_class pow_p(long p, long long e) {
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0) return mpq_class(pw);
    mpq_class r(1, pw);
    r.canonicalize();
    return r;
}

/// Residue in {0, ..., p-1} of a rational with v_p >= 0.
inline long residue_mod_p(const mpq_class& q, long p) {
    if (vp_rational(q, p) < Valuation::whole(0))
        throw std::invalid_argument("residue_mod_p: negative valuation");
    mpz_class pz(p), den_inv, num_mod;
    mpz_class den(q.get_den());
    if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()) == 0)
        throw std::logic_error("residue_mod_p: denominator not invertible");
    mpz_class r = mpz_class(q.get_num()) * den_inv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pz.get_mpz_t());
    return r.get_si();
}

/// Parses "a" or "a/b" with optional leading sign.  Rejects everything else;
/// in particular a zero denominator is an error rather than a GMP abort.
inline mpq_class parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("rational: empty string");

    auto parse_int = [](const std::string& t) -> mpz_class {
        std::size_t i = 0;
        if (t[i] == '+' || t[i] == '-') ++i;
        if (i == t.size()) throw std::invalid_argument("rational: bare sign");
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                throw std::invalid_argument("rational: bad digit in '" + t + "'");
        return mpz_class(t[0] == '+' ? t.substr(1) : t);  // mpz rejects a leading '+'
    };

    auto slash = s.find('/');
    mpz_class num, den;
    if (slash == std::string::npos) {
        num = parse_int(s);
        den = 1;
    } else {
        num = parse_int(s.substr(0, slash));
        den = parse_int(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

/// Canonical rendering "a" or "a/b" with b > 0 and gcd(a, b) = 1.
inline std::string rational_str(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    return c.get_str();
}

} // namespace padyn
