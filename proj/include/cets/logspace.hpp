#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace cets {

/// ln(2 cosh x) without overflow for any finite x.
inline double log_two_cosh(double x) {
    const double a = std::abs(x);
    return a + std::log1p(std::exp(-2.0 * a));
}

/// ln(sum_i exp(x_i)), max-shifted. Summation order is the input order,
/// so the result is deterministic.
inline double log_sum_exp(std::span<const double> xs) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : xs) m = std::max(m, x);
    if (!std::isfinite(m)) return m; // all -inf (or an inf/nan input)
    double acc = 0.0;
    for (double x : xs) acc += std::exp(x - m);
    return m + std::log(acc);
}

} // namespace cets
