#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace qhz {

/// Exact coefficient field of the default backend. Every identity in the
/// library holds bit-exact over this type.
using Rational = boost::multiprecision::cpp_rational;

/// Comparison policy for the floating backend. Exact-backend code never
/// consults it.
struct FloatTolerance {
    double rel = 1e-9;
    double abs = 1e-12;
};

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool is_exact = true;

    static bool is_zero(const Rational& v) { return v.is_zero(); }
    static bool near(const Rational& a, const Rational& b) { return a == b; }
    static double to_double(const Rational& v) { return v.convert_to<double>(); }
    static Rational from_int(long long v) { return Rational(v); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool is_exact = false;

    // Process-wide policy, adjustable from the CLI (--tolerance).
    static inline FloatTolerance tolerance{};

    static bool is_zero(double v) { return std::fabs(v) <= tolerance.abs; }
    static bool near(double a, double b) {
        const double diff = std::fabs(a - b);
        if (diff <= tolerance.abs) return true;
        return diff <= tolerance.rel * std::max(std::fabs(a), std::fabs(b));
    }
    static double to_double(double v) { return v; }
    static double from_int(long long v) { return static_cast<double>(v); }
};

}  // namespace qhz
