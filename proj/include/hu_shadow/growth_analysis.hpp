#pragma once

/// \file
/// Geometric-average growth rates in the log domain, classification of a
/// growth profile (convergent below/above one, periodic below one), and the
/// scalar utilities that go with them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hu_shadow/core_systems.hpp"

namespace hu_shadow {

/// log_partial[n-1] = L_n = sum_{j<=n} ln p_j, avg[n-1] = s_n = exp(L_n / n).
struct GrowthProfile {
  std::vector<double> log_partial;
  std::vector<double> avg;
  std::size_t horizon = 0;

  /// L_n with L_0 = 0.
  [[nodiscard]] double L(std::size_t n) const { return n == 0 ? 0.0 : log_partial[n - 1]; }
};

/// Profile from per-step log rates. Neumaier-compensated accumulation.
inline GrowthProfile build_profile_from_logs(std::span<const double> log_rates) {
  GrowthProfile g;
  g.horizon = log_rates.size();
  g.log_partial.resize(g.horizon);
  g.avg.resize(g.horizon);
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t i = 0; i < g.horizon; ++i) {
    const double x = log_rates[i];
    if (!std::isfinite(x)) throw std::invalid_argument("log growth rate must be finite");
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
    g.log_partial[i] = sum + comp;
    g.avg[i] = std::exp(g.log_partial[i] / static_cast<double>(i + 1));
  }
  return g;
}

inline GrowthProfile build_profile(std::span<const double> rates) {
  std::vector<double> logs(rates.size());
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (!(rates[i] > 0.0) || !std::isfinite(rates[i]))
      throw std::invalid_argument("growth rate must be positive, got " + std::to_string(rates[i]) +
                                  " at n=" + std::to_string(i + 1));
    logs[i] = std::log(rates[i]);
  }
  return build_profile_from_logs(logs);
}

inline GrowthProfile build_profile(const MapSystem& sys, std::size_t horizon) {
  const auto logs = log_growth_rates(sys, horizon);
  return build_profile_from_logs(logs);
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

enum class ClassKind { ConvergentBelowOne, ConvergentAboveOne, PeriodicBelowOne, Undetermined };

inline const char* class_kind_name(ClassKind k) {
  switch (k) {
    case ClassKind::ConvergentBelowOne: return "ConvergentBelowOne";
    case ClassKind::ConvergentAboveOne: return "ConvergentAboveOne";
    case ClassKind::PeriodicBelowOne: return "PeriodicBelowOne";
    case ClassKind::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

/// ln prod_{j<=n} p_j = ln C_l - n ln K_l along n = k m + l, n > prefix.
struct PeriodicStructure {
  std::size_t period = 0;
  std::size_t prefix = 0;
  std::vector<double> K;          ///< K_l, l = 1..m
  std::vector<double> constants;  ///< C_l, smallest normalised to 1
  std::vector<double> max_residual;

  /// The periodic values 1/K_l.
  [[nodiscard]] std::vector<double> values() const {
    std::vector<double> v(K.size());
    for (std::size_t i = 0; i < K.size(); ++i) v[i] = 1.0 / K[i];
    return v;
  }
};

struct Classification {
  ClassKind kind = ClassKind::Undetermined;
  std::optional<double> K;
  std::optional<PeriodicStructure> periodic;
  std::size_t smoothing_period = 0;  ///< period used by the convergence estimator
  double tail_spread = 0.0;
  std::string reason;
};

struct ClassifyOptions {
  std::size_t window = 32;
  double tol = 1e-4;
  std::size_t max_period = 8;
};

namespace detail {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

// Least squares y ~ slope * x + intercept with centred abscissae.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const auto k = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i)
    f.max_residual = std::max(f.max_residual, std::abs(y[i] - (f.slope * x[i] + f.intercept)));
  return f;
}

}  // namespace detail

/// Looks for a period m >= 2 and prefix N such that ln prod p_j is affine in n
/// on every residue class n = k m + l (n > N) with at least two distinct
/// slopes. Smallest m first, then smallest N.
inline std::optional<PeriodicStructure> detect_periodic_scaled(const GrowthProfile& profile,
                                                               std::size_t max_period, double tol) {
  const std::size_t H = profile.horizon;
  if (max_period < 2 || H < 4 * max_period)
    throw std::invalid_argument("detect_periodic_scaled needs horizon >= 4 * max_period");

  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t m = 2; m <= max_period; ++m) {
    for (std::size_t N = 0; N <= H / 4; ++N) {
      PeriodicStructure s;
      s.period = m;
      s.prefix = N;
      bool fits = true;
      std::vector<double> slopes;
      std::vector<double> intercepts;
      for (std::size_t l = 1; l <= m && fits; ++l) {
        xs.clear();
        ys.clear();
        for (std::size_t n = l; n <= H; n += m) {
          if (n <= N) continue;
          xs.push_back(static_cast<double>(n));
          ys.push_back(profile.L(n));
        }
        if (xs.size() < 3) {
          fits = false;
          break;
        }
        const auto f = detail::fit_line(xs, ys);
        if (!(f.max_residual < tol)) fits = false;
        slopes.push_back(f.slope);
        intercepts.push_back(f.intercept);
        s.max_residual.push_back(f.max_residual);
      }
      if (!fits) continue;
      const auto [lo, hi] = std::minmax_element(slopes.begin(), slopes.end());
      // A clean fit with one common slope is a convergent profile; a longer
      // prefix will not separate the slopes.
      if (!(*hi - *lo > tol)) break;
      for (std::size_t l = 0; l < m; ++l) {
        s.K.push_back(std::exp(-slopes[l]));
        s.constants.push_back(std::exp(intercepts[l]));
      }
      const double cmin = *std::min_element(s.constants.begin(), s.constants.end());
      for (auto& c : s.constants) c /= cmin;
      return s;
    }
  }
  return std::nullopt;
}

/// Dispatches a profile to the regime whose hypotheses it meets.
///
/// The limit of s_n is estimated from block slopes (L_N - L_{N-W}) / W, with W
/// a multiple of a candidate period m, averaged over m consecutive end points.
/// That cancels period-m oscillation in the increments, which otherwise biases
/// a tail mean of L_n / n by O(1/n). The candidate m with the smallest spread
/// over the last `window` end points is used; convergence means that spread is
/// below `tol`.
inline Classification classify(const GrowthProfile& profile, const MapSystem& sys,
                               const ClassifyOptions& opts = {}) {
  const std::size_t H = profile.horizon;
  if (opts.window < 1 || H < 4 * opts.window)
    throw std::invalid_argument("classify needs horizon >= 4 * window");
  Classification out;

  const std::size_t max_period = std::min(opts.max_period, H / 4);
  if (max_period >= 2) {
    if (auto per = detect_periodic_scaled(profile, max_period, opts.tol)) {
      const auto vals = per->values();
      const bool all_below = std::all_of(vals.begin(), vals.end(),
                                         [&](double v) { return v < 1.0 - opts.tol; });
      out.periodic = std::move(per);
      if (!all_below) {
        out.reason = "periodic scaled rates with a value not below one";
        return out;
      }
      if (sys.rate_kind != RateKind::ContractingBound) {
        out.reason = "periodic rates below one need contracting-rate bounds";
        return out;
      }
      out.kind = ClassKind::PeriodicBelowOne;
      return out;
    }
  }

  double best_spread = std::numeric_limits<double>::infinity();
  double best_rate = 0.0;
  std::size_t best_m = 0;
  for (std::size_t m = 1; m <= std::max<std::size_t>(opts.max_period, 1); ++m) {
    const std::size_t W = m * ((opts.window + m - 1) / m);
    if (H < opts.window + (m - 1) + W) break;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double sum = 0.0;
    for (std::size_t N = H - opts.window + 1; N <= H; ++N) {
      double sm = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        sm += (profile.L(N - i) - profile.L(N - i - W)) / static_cast<double>(W);
      sm /= static_cast<double>(m);
      lo = std::min(lo, sm);
      hi = std::max(hi, sm);
      sum += sm;
    }
    if (hi - lo < best_spread) {
      best_spread = hi - lo;
      best_rate = sum / static_cast<double>(opts.window);
      best_m = m;
    }
  }
  out.smoothing_period = best_m;
  out.tail_spread = best_spread;
  if (!(best_spread < opts.tol)) {
    out.reason = "tail of the average growth rate has not converged";
    return out;
  }
  const double limit = std::exp(best_rate);
  if (limit < 1.0 - opts.tol) {
    if (sys.rate_kind != RateKind::ContractingBound) {
      out.reason = "limit below one needs contracting-rate bounds";
      return out;
    }
    out.kind = ClassKind::ConvergentBelowOne;
    out.K = std::exp(-best_rate);
  } else if (limit > 1.0 + opts.tol) {
    if (sys.rate_kind != RateKind::ExpandingBound) {
      out.reason = "limit above one needs expanding-rate bounds";
      return out;
    }
    out.kind = ClassKind::ConvergentAboveOne;
    out.K = std::exp(best_rate);
  } else {
    out.reason = "limit within tol of one";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scalar utilities
// ---------------------------------------------------------------------------

/// t_n K^n / sum_{j<n} t_j K^j, with K^n factored out. t[j-1] = t_j.
inline double ratio_check(std::span<const double> t, double K, std::size_t n) {
  if (n < 2) throw std::invalid_argument("ratio_check needs n >= 2");
  if (!(K > 1.0)) throw std::invalid_argument("ratio_check needs K > 1");
  if (t.size() < n) throw std::invalid_argument("ratio_check: sequence shorter than n");
  const double lnK = std::log(K);
  double denom = 0.0;
  for (std::size_t j = 1; j < n; ++j)
    denom += t[j - 1] * std::exp(-static_cast<double>(n - j) * lnK);
  return t[n - 1] / denom;
}

struct Envelope {
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
};

/// (1/sqrt(4k+1), prod_{j<=k} (2j-1)/(2j), 1/sqrt(3k+1)).
inline Envelope double_factorial_envelope(std::size_t k) {
  if (k < 1) throw std::invalid_argument("double_factorial_envelope needs k >= 1");
  double v = 1.0;
  for (std::size_t j = 1; j <= k; ++j)
    v *= static_cast<double>(2 * j - 1) / static_cast<double>(2 * j);
  const auto dk = static_cast<double>(k);
  return {1.0 / std::sqrt(4.0 * dk + 1.0), v, 1.0 / std::sqrt(3.0 * dk + 1.0)};
}

}  // namespace hu_shadow
