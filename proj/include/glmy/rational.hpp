#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "glmy/errors.hpp"

namespace glmy {

using Rational = mpq_class;
using Integer = mpz_class;

/// Dense vector of exact rationals.
using RationalVector = std::vector<Rational>;

/// Canonical fraction string: "p/q", or "p" when the denominator is 1.
inline std::string to_fraction_string(const Rational& q) { return q.get_str(); }

inline Rational parse_fraction(std::string_view text) {
    Rational q;
    if (text.empty() || q.set_str(std::string(text), 10) != 0 || q.get_den() == 0)
        throw InvalidArgument("not a fraction: '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

inline Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace glmy
