#pragma once

/// \file
/// Partial sums S_n = sum_{j=1..n} prod_{i=j+1..n} p_i, shared by the error
/// bounds and the divergence witnesses.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>

namespace hu_shadow {

/// S_n by the recurrence S <- S p_i + 1; rates[i-1] = p_i. S_0 = 0.
inline double partial_sum_S(std::span<const double> rates, std::size_t n) {
  if (rates.size() < n) throw std::invalid_argument("partial_sum_S: rates shorter than n");
  double s = 0.0;
  for (std::size_t i = 1; i <= n; ++i) s = s * rates[i - 1] + 1.0;
  return s;
}

/// ln S_n from log rates; stays finite where S_n itself overflows.
inline double log_partial_sum_S(std::span<const double> log_rates, std::size_t n) {
  if (log_rates.size() < n) throw std::invalid_argument("log_partial_sum_S: rates shorter than n");
  if (n == 0) return -std::numeric_limits<double>::infinity();
  double ls = 0.0;  // ln S_1 = ln 1
  for (std::size_t i = 2; i <= n; ++i) {
    const double x = ls + log_rates[i - 1];  // ln(S p_i); add ln 1 = 0
    ls = std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
  }
  return ls;
}

}  // namespace hu_shadow
