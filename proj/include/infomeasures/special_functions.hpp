#pragma once

// Log-gamma, digamma and trigamma on the positive half-line.
//
// All three kernels shift the argument upward with the standard recurrences
// until x >= 10 and then evaluate a truncated Stirling-type asymptotic
// series. At x = 10 the first omitted term is below 1e-17 relative for
// log_gamma (8 Bernoulli terms), 1e-16 for digamma and 1e-15 for trigamma,
// so the working accuracy is set by the long double accumulation of the
// shift sums.
//
// Accuracy degrades for x < 1e-6, where the results are dominated by the
// pole terms -log x, -1/x and 1/x^2; values there are still returned.

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace infomeasures {

namespace detail {

inline constexpr long double kAsymptoticThreshold = 10.0L;
inline constexpr long double kHalfLog2Pi = 0.918938533204672741780329736405617639861L;

inline void require_positive(double x, const char* fn) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(fn) + ": argument must be finite and > 0");
    }
}

}  // namespace detail

inline double log_gamma(double x) {
    detail::require_positive(x, "log_gamma");
    if (x == 1.0 || x == 2.0) return 0.0;
    long double z = x;
    long double shift_product = 1.0L;
    long double shift_log = 0.0L;
    while (z < detail::kAsymptoticThreshold) {
        shift_product *= z;
        if (shift_product > 1e300L) {
            shift_log += std::log(shift_product);
            shift_product = 1.0L;
        }
        z += 1.0L;
    }
    shift_log += std::log(shift_product);

    // B_{2k} / (2k (2k-1)), k = 1..8
    static constexpr long double kCoeff[] = {
        1.0L / 12.0L,        -1.0L / 360.0L,    1.0L / 1260.0L,       -1.0L / 1680.0L,
        1.0L / 1188.0L,      -691.0L / 360360.0L, 1.0L / 156.0L,      -3617.0L / 122400.0L,
    };
    const long double inv = 1.0L / z;
    const long double inv2 = inv * inv;
    long double series = 0.0L;
    for (int k = 7; k >= 0; --k) series = series * inv2 + kCoeff[k];
    series *= inv;

    const long double stirling = (z - 0.5L) * std::log(z) - z + detail::kHalfLog2Pi + series;
    return static_cast<double>(stirling - shift_log);
}

inline double digamma(double x) {
    detail::require_positive(x, "digamma");
    long double z = x;
    long double shift = 0.0L;
    while (z < detail::kAsymptoticThreshold) {
        shift += 1.0L / z;
        z += 1.0L;
    }
    // B_{2k} / (2k), k = 1..7
    static constexpr long double kCoeff[] = {
        1.0L / 12.0L,  -1.0L / 120.0L,   1.0L / 252.0L, -1.0L / 240.0L,
        1.0L / 132.0L, -691.0L / 32760.0L, 1.0L / 12.0L,
    };
    const long double inv2 = 1.0L / (z * z);
    long double series = 0.0L;
    for (int k = 6; k >= 0; --k) series = series * inv2 + kCoeff[k];
    series *= inv2;
    return static_cast<double>(std::log(z) - 0.5L / z - series - shift);
}

inline double trigamma(double x) {
    detail::require_positive(x, "trigamma");
    long double z = x;
    long double shift = 0.0L;
    while (z < detail::kAsymptoticThreshold) {
        shift += 1.0L / (z * z);
        z += 1.0L;
    }
    // B_{2k}, k = 1..7
    static constexpr long double kCoeff[] = {
        1.0L / 6.0L,  -1.0L / 30.0L,     1.0L / 42.0L, -1.0L / 30.0L,
        5.0L / 66.0L, -691.0L / 2730.0L, 7.0L / 6.0L,
    };
    const long double inv = 1.0L / z;
    const long double inv2 = inv * inv;
    long double series = 0.0L;
    for (int k = 6; k >= 0; --k) series = series * inv2 + kCoeff[k];
    series *= inv2 * inv;
    return static_cast<double>(inv + 0.5L * inv2 + series + shift);
}

}  // namespace infomeasures
