#pragma once

/// \file
/// Witnesses that shadowing fails when the scaled average growth rate is
/// (pre)periodic with every value below one.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "hu_shadow/core_systems.hpp"
#include "hu_shadow/error.hpp"
#include "hu_shadow/growth_analysis.hpp"
#include "hu_shadow/products.hpp"

namespace hu_shadow {

inline constexpr double kLogDomainThreshold = 690.7755278982137;  // ln 1e300

struct LowerBound {
  double log_value = 0.0;
  double value = 0.0;     ///< +inf when overflow is set
  bool overflow = false;  ///< value exceeds 1e300; use log_value
};

/// (K_q/K_p)^{km} K_q^q / (C_p K_p^{p+m}), evaluated in the log domain.
inline LowerBound divergence_lower_bound(double K_p, double K_q, std::size_t p_idx,
                                         std::size_t q_idx, std::size_t m, double C_p,
                                         std::size_t k) {
  if (!(K_p >= 1.0)) throw std::invalid_argument("divergence bound needs K_p >= 1");
  if (!(K_q > K_p)) throw HypothesisError("no divergence witness: K_q must exceed K_p");
  if (!(C_p > 0.0)) throw std::invalid_argument("C_p must be positive");
  const double lp = std::log(K_p);
  const double lq = std::log(K_q);
  const auto km = static_cast<double>(k * m);
  LowerBound b;
  b.log_value = km * (lq - lp) + static_cast<double>(q_idx) * lq - std::log(C_p) -
                static_cast<double>(p_idx + m) * lp;
  b.overflow = b.log_value > kLogDomainThreshold;
  b.value = b.overflow ? std::numeric_limits<double>::infinity() : std::exp(b.log_value);
  return b;
}

struct WitnessSample {
  std::size_t k = 0;
  std::size_t n = 0;             ///< n = k m + p_idx
  double lower_bound = 0.0;      ///< analytic bound on S_n (multiply by eps for the error)
  double S_n = 0.0;              ///< sum_{j<=n} prod_{i=j+1..n} p_i
  double observed_error = 0.0;   ///< |b_{n+1} - a_{n+1}|, NaN when log_domain
  double log10_lower_bound = 0.0;
  double log10_S_n = 0.0;
  double log10_observed = 0.0;
  bool log_domain = false;
};

/// Residue classes are numbered 1..m with n = k m + l.
struct DivergenceWitness {
  std::size_t m = 0;
  std::size_t p_idx = 0;
  std::size_t q_idx = 0;
  double K_p = 0.0;
  double K_q = 0.0;
  double C_p = 0.0;
  double epsilon = 0.0;
  std::vector<WitnessSample> samples;
  PseudoOrbit pseudo;
  std::vector<Complex> b;
};

/// Largest horizon whose witness lower bound times eps stays below 1e300.
inline std::size_t default_witness_horizon(const PeriodicStructure& per, double eps,
                                           std::size_t max_horizon = 100000) {
  const auto vals = per.values();
  const auto p = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  const auto q = static_cast<std::size_t>(std::max_element(per.K.begin(), per.K.end()) - per.K.begin());
  if (!(per.K[q] > per.K[p])) return 0;
  const double log_eps = eps > 0.0 ? std::log(eps) : 0.0;
  std::size_t last = 0;
  for (std::size_t k = 0;; ++k) {
    const std::size_t n = k * per.period + p + 1;
    if (n + 1 > max_horizon) break;
    const auto lb = divergence_lower_bound(per.K[p], per.K[q], p + 1, q + 1, per.period,
                                           per.constants[p], k);
    if (lb.log_value + log_eps >= kLogDomainThreshold) break;
    last = n + 1;
  }
  return last;
}

/// Pseudo-orbit with r = eps, b_1 = a_1, and the observed error along
/// n = k m + p_idx next to S_n and the analytic lower bound.
///
/// Sample n records |b_{n+1} - a_{n+1}|, the error after step n, which the
/// telescoping identity puts at eps * S_n for positive linear multipliers.
/// p_idx is the class with the largest value 1/K_l; q_idx the class with the
/// largest K_l, which maximises K_q / K_p.
inline DivergenceWitness witness_divergence(const MapSystem& sys, double eps, std::size_t horizon,
                                            const Classification& cls, Complex a1 = {1.0, 0.0}) {
  if (cls.kind != ClassKind::PeriodicBelowOne || !cls.periodic)
    throw HypothesisError(std::string("classification is ") + class_kind_name(cls.kind) +
                          ", no witness");
  const auto& per = *cls.periodic;
  DivergenceWitness w;
  w.m = per.period;
  const auto vals = per.values();
  const auto p = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  const auto q = static_cast<std::size_t>(std::max_element(per.K.begin(), per.K.end()) - per.K.begin());
  if (!(per.K[q] > per.K[p])) throw HypothesisError("no divergence witness: all K_l equal");
  w.p_idx = p + 1;
  w.q_idx = q + 1;
  w.K_p = per.K[p];
  w.K_q = per.K[q];
  w.C_p = per.constants[p];
  w.epsilon = eps;

  w.pseudo = generate_pseudo_orbit(sys, a1, eps, {ResidualKind::ConstantReal, 0.0}, horizon);
  w.b = true_orbit(sys, a1, w.pseudo.size());
  const auto log_rates = log_growth_rates(sys, horizon);

  constexpr double kLog10e = 0.4342944819032518;
  // ln S_n by the log-domain recurrence, advanced to each sample index.
  double log_S = -std::numeric_limits<double>::infinity();
  std::size_t s_index = 0;
  for (std::size_t k = 0;; ++k) {
    const std::size_t n = k * w.m + w.p_idx;
    if (n + 1 > horizon) break;
    for (; s_index < n; ++s_index) {
      const double x = log_S + log_rates[s_index];
      log_S = s_index == 0 ? 0.0 : std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
    }
    WitnessSample s;
    s.k = k;
    s.n = n;
    const auto lb = divergence_lower_bound(w.K_p, w.K_q, w.p_idx, w.q_idx, w.m, w.C_p, k);
    s.lower_bound = lb.value;
    s.log10_lower_bound = lb.log_value * kLog10e;
    s.log10_S_n = log_S * kLog10e;
    s.S_n = log_S > kLogDomainThreshold ? std::numeric_limits<double>::infinity() : std::exp(log_S);
    if (n + 1 <= w.pseudo.size()) {
      s.observed_error = std::abs(w.b[n] - w.pseudo.a[n]);
      s.log10_observed = s.observed_error > 0.0 ? std::log10(s.observed_error)
                                                : -std::numeric_limits<double>::infinity();
    } else {
      // Orbit overflowed; for positive linear multipliers the error is eps * S_n.
      s.log_domain = true;
      s.observed_error = std::numeric_limits<double>::quiet_NaN();
      s.log10_observed = eps > 0.0 ? std::log10(eps) + s.log10_S_n
                                   : -std::numeric_limits<double>::infinity();
    }
    s.log_domain = s.log_domain || lb.overflow;
    w.samples.push_back(s);
  }
  return w;
}

/// Smallest sup_{n<=horizon} |b_n - a_n| over a grid x grid lattice of b_1
/// inside the disk of the given radius around a_1. A stable equation would
/// admit some b_1 with a small sup error; a witness keeps it large.
inline double best_initial_condition_sup(const MapSystem& sys, const PseudoOrbit& pseudo,
                                         double radius, std::size_t grid) {
  if (grid < 2) throw std::invalid_argument("grid must be >= 2");
  const Complex c = pseudo.a[0];
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid; ++i) {
    for (std::size_t j = 0; j < grid; ++j) {
      const double x = -radius + 2.0 * radius * static_cast<double>(i) / static_cast<double>(grid - 1);
      const double y = -radius + 2.0 * radius * static_cast<double>(j) / static_cast<double>(grid - 1);
      if (x * x + y * y > radius * radius) continue;
      Complex b = c + Complex{x, y};
      double sup = std::abs(b - pseudo.a[0]);
      for (std::size_t n = 1; n < pseudo.size(); ++n) {
        b = eval_map(sys, n, b);
        sup = std::max(sup, std::abs(b - pseudo.a[n]));
      }
      best = std::min(best, sup);
    }
  }
  return best;
}

}  // namespace hu_shadow
