#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace mcm {

// Exact arbitrary-precision rational. mpq_class keeps the canonical form
// (reduced, denominator > 0) as long as values are canonicalized on entry;
// every constructor path below goes through rat_parse or integer ctors.
using Rational = mpq_class;

inline bool rat_is_zero(const Rational& r) { return sgn(r) == 0; }

// Parse "num/den" or a plain integer string. Rejects zero denominators and
// garbage; result is canonicalized.
inline Rational rat_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rational: empty string");
    std::size_t pos = 0;
    auto digits_ok = [&](std::size_t from, std::size_t to) {
        if (from >= to) return false;
        if (s[from] == '-' || s[from] == '+') ++from;
        if (from >= to) return false;
        for (std::size_t i = from; i < to; ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    pos = s.find('/');
    if (pos == std::string::npos) {
        if (!digits_ok(0, s.size()))
            throw std::invalid_argument("rational: bad integer '" + s + "'");
        return Rational(mpz_class(s));
    }
    if (!digits_ok(0, pos) || !digits_ok(pos + 1, s.size()))
        throw std::invalid_argument("rational: bad fraction '" + s + "'");
    mpz_class num(s.substr(0, pos));
    mpz_class den(s.substr(pos + 1));
    if (den == 0) throw std::invalid_argument("rational: zero denominator in '" + s + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rational& r) { return r.get_str(); }

// base^e for integer e (negative allowed, base must be nonzero then).
inline Rational rat_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    bool inv = e < 0;
    unsigned long n = inv ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
    if (inv && rat_is_zero(base)) throw std::domain_error("rat_pow: negative power of zero");
    Rational acc(1), b = base;
    while (n) {
        if (n & 1ul) acc *= b;
        b *= b;
        n >>= 1;
    }
    if (inv) acc = Rational(1) / acc;
    return acc;
}

}  // namespace mcm
