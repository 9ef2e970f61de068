#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "errors.hpp"

namespace jordan {

/// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
/// positive denominator) after every arithmetic operation.
using Rational = mpq_class;

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Parses "p", "-p" or "p/q"; rejects a zero denominator.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    mpz_class num, den(1);
    try {
        if (slash == std::string::npos) {
            num = mpz_class(s, 10);
        } else {
            num = mpz_class(s.substr(0, slash), 10);
            den = mpz_class(s.substr(slash + 1), 10);
        }
    } catch (const std::invalid_argument&) {
        throw Error("malformed rational '" + s + "'");
    }
    if (den == 0) throw Error("zero denominator in '" + s + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational factorial_inverse(int n) {
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rational(mpz_class(1), f);
}

} // namespace jordan
