#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>
#include <type_traits>

#include "rigid/errors.hpp"

namespace rigid {

/// Arbitrary-precision rational scalar used by the exact pipeline.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

template <class T>
inline constexpr bool is_exact_v = false;
template <>
inline constexpr bool is_exact_v<Rational> = true;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

/// Every finite double is a dyadic rational; the conversion is exact.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) {
        throw ExactModeUnavailable("non-finite value has no rational representation");
    }
    return Rational(x);
}

template <class T>
T scalar_from_double(double x) {
    if constexpr (is_exact_v<T>) {
        return rational_from_double(x);
    } else {
        return x;
    }
}

inline double abs_value(double x) { return std::abs(x); }
inline Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }

template <class T>
bool is_zero(const T& x) {
    return x == T(0);
}

/// Parses either a plain decimal or a "p/q" fraction literal.
inline Rational rational_from_string(const std::string& s) {
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw SchemaError("cannot parse rational literal '" + s + "'");
    }
}

} // namespace rigid
