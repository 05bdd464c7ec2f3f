#pragma once

/// \file
/// Exact orbits that shadow a pseudo-orbit, and the explicit error bounds
/// that go with contracting and expanding rate profiles.
///
/// Contracting profiles shadow forward from b_1 = a_1. Expanding profiles
/// never propagate b forward: the differences d_n = b_n - a_n are summed from
/// the tail series d_n = sum_{j>=n} r_j prod_{i=n..j} 1/q_i by a backward
/// recurrence, since forward propagation amplifies rounding by prod p_i.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hu_shadow/core_systems.hpp"
#include "hu_shadow/error.hpp"
#include "hu_shadow/products.hpp"

namespace hu_shadow {

enum class ShadowMethod { ContractingDirect, ExpandingTailSeries };

inline const char* shadow_method_name(ShadowMethod m) {
  return m == ShadowMethod::ContractingDirect ? "ContractingDirect" : "ExpandingTailSeries";
}

struct ShadowMeta {
  std::size_t truncation = 0;       ///< last series index J (expanding only)
  bool truncation_capped = false;   ///< J hit horizon + 200 before the tail bound was met
  double tail_bound = 0.0;          ///< analytic bound on the discarded tail
  std::size_t iterations = 0;
  double residual_sup = 0.0;        ///< sup_n |b_{n+1} - F(n, b_n)|
  double contraction_modulus = 0.0; ///< eps * sum_j prod_{i<=j} 1/p_i (expanding only)
  double sound_bound_sup = 0.0;     ///< sup_n of the always-valid product bound (contracting only)
  std::size_t bound_holds_from = 0; ///< earliest n0 with |d_n| <= bound for n0..horizon; 0 if none
};

/// b[n-1] = b_n, d[n-1] = b_n - a_n.
struct ShadowResult {
  std::vector<Complex> b;
  std::vector<Complex> d;
  double bound = 0.0;  ///< the asymptotic bound G(eps)
  ShadowMethod method = ShadowMethod::ContractingDirect;
  ShadowMeta meta;
  double sup_error = 0.0;
  bool bound_holds = false;  ///< sup_error <= bound * (1 + 1e-6)
};

// ---------------------------------------------------------------------------
// Closed-form bounds
// ---------------------------------------------------------------------------

/// p^{n-1} gap + (1 - p^{n-1}) / (1 - p) eps for a uniform contraction 0 < p < 1.
inline double uniform_contraction_bound(double p, std::size_t n, double eps, double gap) {
  if (!(p > 0.0 && p < 1.0)) throw HypothesisError("uniform contraction bound needs 0 < p < 1");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const double pk = std::pow(p, static_cast<double>(n - 1));
  return pk * gap + (1.0 - pk) / (1.0 - p) * eps;
}

/// (prod_{j<n} p_j) gap + S_{n-1} eps: bounds |b_n - a_n| for any rate
/// profile. rates[j-1] = p_j.
inline double variable_rate_bound(std::span<const double> rates, std::size_t n, double eps,
                                  double gap) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (rates.size() + 1 < n) throw std::invalid_argument("rates must cover indices 1..n-1");
  double prod = 1.0;
  for (std::size_t j = 1; j < n; ++j) prod *= rates[j - 1];
  const double gap_term = gap == 0.0 ? 0.0 : prod * gap;
  return gap_term + partial_sum_S(rates, n - 1) * eps;
}

/// M eps / (m (K - 1)) when t_n = prod p_j / K^n stays within [m, M].
inline double expanding_bound_bounded_t(double m_low, double M_high, double K, double eps) {
  if (!(K > 1.0)) throw HypothesisError("bounded-t expanding bound needs K > 1");
  if (!(m_low > 0.0 && m_low <= M_high)) throw std::invalid_argument("need 0 < m <= M");
  return M_high * eps / (m_low * (K - 1.0));
}

/// Bound on |b_N - a_N| for an early index N < n_star, where the asymptotic
/// 2 eps / ln K bound is taken to hold from n_star + 1 on:
/// eps [sum_{j=N..n*} prod_{i=N..j} 1/p_i + prod_{i=N..n*} 1/p_i * 2/ln K].
inline double early_index_bound(std::span<const double> rates, std::size_t N, std::size_t n_star,
                                double K, double eps) {
  if (!(N >= 1 && N < n_star)) throw std::invalid_argument("need 1 <= N < n_star");
  if (rates.size() < n_star) throw std::invalid_argument("rates must cover indices N..n_star");
  if (!(K > 1.0)) throw HypothesisError("early index bound needs K > 1");
  double sum = 0.0;
  double prod = 1.0;
  for (std::size_t j = N; j <= n_star; ++j) {
    prod /= rates[j - 1];
    sum += prod;
  }
  return eps * (sum + prod * 2.0 / std::log(K));
}

// ---------------------------------------------------------------------------
// Telescoping identity
// ---------------------------------------------------------------------------

/// (prod_{j<n} q_j) gap - sum_{j<n} r_j prod_{i=j+1..n-1} q_i, written out
/// term by term with suffix products. q[j-1] = q_j, r[j-1] = r_j; uses the
/// first n-1 entries. Generic over the scalar so the exact oracle can run the
/// same expression in rational arithmetic.
template <typename Scalar>
Scalar telescope_rhs(std::span<const Scalar> q, std::span<const Scalar> r, const Scalar& gap,
                     std::size_t n) {
  if (n < 1 || q.size() + 1 < n || r.size() + 1 < n)
    throw std::invalid_argument("telescope_rhs: sequences must cover 1..n-1");
  std::vector<Scalar> suffix(n);  // suffix[j] = prod_{i=j+1..n-1} q_i, j = 0..n-1
  suffix[n - 1] = Scalar(1);
  for (std::size_t j = n - 1; j >= 1; --j) suffix[j - 1] = suffix[j] * q[j - 1];
  Scalar acc = suffix[0] * gap;
  for (std::size_t j = 1; j < n; ++j) acc = acc - r[j - 1] * suffix[j];
  return acc;
}

struct TelescopeResult {
  Complex value;
  bool overflow = false;
};

/// Right-hand side of the telescoping identity for b_n - a_n, with b
/// propagated from b1 and q_j = q_j(b_j, a_j).
inline TelescopeResult telescope_difference(const MapSystem& sys, const PseudoOrbit& pseudo,
                                            Complex b1, std::size_t n) {
  if (n < 1 || n > pseudo.size()) throw std::invalid_argument("telescope_difference: n out of range");
  const auto b = true_orbit(sys, b1, n);
  std::vector<Complex> q(n - 1);
  for (std::size_t j = 1; j < n; ++j) q[j - 1] = eval_q(sys, j, b[j - 1], pseudo.a[j - 1]);
  TelescopeResult out;
  out.value = telescope_rhs<Complex>(q, std::span<const Complex>(pseudo.r).first(n - 1),
                                     b1 - pseudo.a[0], n);
  out.overflow = !detail::representable(out.value);
  return out;
}

namespace detail {

inline std::size_t earliest_hold(std::span<const Complex> d, double bound) {
  std::size_t from = 0;
  for (std::size_t i = d.size(); i >= 1; --i) {
    if (std::abs(d[i - 1]) <= bound) {
      from = i;
    } else {
      break;
    }
  }
  return from;
}

inline double sup_abs(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& x : v) s = std::max(s, std::abs(x));
  return s;
}

inline double orbit_residual_sup(const MapSystem& sys, std::span<const Complex> b) {
  double s = 0.0;
  for (std::size_t n = 1; n < b.size(); ++n)
    s = std::max(s, std::abs(b[n] - eval_map(sys, n, b[n - 1])));
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Contracting construction
// ---------------------------------------------------------------------------

/// b_1 = a_1, forward propagation, asymptotic bound K eps / (K - 1).
///
/// Every |d_n| is checked against variable_rate_bound, which holds for any
/// rate profile; a violation means the stated rates do not bound the map and
/// raises HypothesisError. The asymptotic bound is only reported via
/// bound_holds: finite partial sums of an oscillating profile can exceed it.
inline ShadowResult shadow_contracting(const MapSystem& sys, const PseudoOrbit& pseudo, double K) {
  if (!(K > 1.0)) throw HypothesisError("contracting construction needs K > 1");
  const std::size_t H = pseudo.size();
  ShadowResult res;
  res.method = ShadowMethod::ContractingDirect;
  res.bound = K * pseudo.epsilon / (K - 1.0);
  res.b = true_orbit(sys, pseudo.a[0], H);
  res.d.resize(H);
  const auto rates = growth_rates(sys, H);
  double S = 0.0;  // S_{n-1}
  for (std::size_t n = 1; n <= H; ++n) {
    if (n >= 2) S = S * rates[n - 2] + 1.0;
    res.d[n - 1] = res.b[n - 1] - pseudo.a[n - 1];
    // Gap is zero, so the sound bound is S_{n-1} eps.
    const double sound = S * pseudo.epsilon;
    res.meta.sound_bound_sup = std::max(res.meta.sound_bound_sup, sound);
    const double slack = 1e-12 * std::max(1.0, std::abs(pseudo.a[n - 1])) + 1e-9 * sound;
    if (std::abs(res.d[n - 1]) > sound + slack)
      throw HypothesisError("measured error " + std::to_string(std::abs(res.d[n - 1])) +
                            " exceeds the product bound " + std::to_string(sound) +
                            " at n=" + std::to_string(n) + "; rates do not bound the map");
  }
  res.meta.iterations = 1;
  res.meta.residual_sup = detail::orbit_residual_sup(sys, res.b);
  res.sup_error = detail::sup_abs(res.d);
  res.bound_holds = res.sup_error <= res.bound * (1.0 + 1e-6);
  res.meta.bound_holds_from = detail::earliest_hold(res.d, res.bound * (1.0 + 1e-6));
  return res;
}

// ---------------------------------------------------------------------------
// Expanding construction
// ---------------------------------------------------------------------------

struct ExpandingOptions {
  double tol = 1e-12;  ///< scaled by max(1, |a_1|)
  std::size_t max_iter = 100;
  double tail_fraction = 1e-3;
  std::size_t cap_extra = 200;  ///< J <= horizon + cap_extra
};

namespace detail {

inline constexpr double kDegenerateQuotient = 1e-300;

struct Truncation {
  std::size_t J = 0;
  bool capped = false;
  double tail_bound = 0.0;
};

// tail(J) = eps * max_{n<=H} prod_{i=n..H-1} 1/p_i * sum_{j>J} prod_{i=H..j} 1/p_i
// bounds what truncating the series at J discards from any d_n, n <= H.
inline Truncation choose_truncation(const MapSystem& sys, std::size_t H, double eps, double K,
                                    double target, std::size_t cap) {
  double log_pref = 0.0;
  double log_M = 0.0;  // n = H gives the empty product
  for (std::size_t n = H - 1; n >= 1; --n) {
    log_pref -= log_growth_rate(sys, n);
    log_M = std::max(log_M, log_pref);
  }
  // log u_j = -sum_{i=H..j} ln p_i for j = H .. far
  const std::size_t far = cap + 2000;
  std::vector<double> log_u;
  log_u.reserve(far - H + 1);
  double acc = 0.0;
  for (std::size_t j = H; j <= far; ++j) {
    acc -= log_growth_rate(sys, j);
    log_u.push_back(acc);
  }
  // Geometric remainder past `far` at ratio 1/K.
  const double ratio = 1.0 / K;
  std::vector<double> tail(log_u.size() + 1, 0.0);  // tail[k] = sum_{idx>=k} u
  tail[log_u.size()] = std::exp(log_u.back()) * ratio / (1.0 - ratio);
  for (std::size_t k = log_u.size(); k >= 1; --k) tail[k - 1] = tail[k] + std::exp(log_u[k - 1]);
  const double scale = eps * std::exp(log_M);
  Truncation t;
  // Series terms j = n..J; tail after J is tail[J - H + 1].
  for (std::size_t J = H - 1; J <= cap; ++J) {
    const double tb = scale * tail[J - H + 1];
    if (tb < target) {
      t.J = J;
      t.tail_bound = tb;
      return t;
    }
  }
  t.J = cap;
  t.capped = true;
  t.tail_bound = scale * tail[cap - H + 1];
  return t;
}

}  // namespace detail

/// Analytic bound on what truncating the tail series at J discards from d_n.
inline double expanding_tail_bound(const MapSystem& sys, std::size_t n, std::size_t J, double eps,
                                   double K, std::size_t lookahead = 4000) {
  if (n < 1 || J + 1 < n) throw std::invalid_argument("expanding_tail_bound: need n <= J + 1");
  double log_prod = 0.0;
  for (std::size_t i = n; i <= J; ++i) log_prod -= log_growth_rate(sys, i);
  double sum = 0.0;
  double lp = log_prod;
  for (std::size_t j = J + 1; j <= J + lookahead; ++j) {
    lp -= log_growth_rate(sys, j);
    sum += std::exp(lp);
  }
  const double ratio = 1.0 / K;
  sum += std::exp(lp) * ratio / (1.0 - ratio);
  return eps * sum;
}

/// Tail-series construction for profiles whose average growth rate tends to
/// K > 1. Bound 2 eps / ln K.
///
/// Linear families take one pass (q is point independent). The sinusoid
/// family iterates b -> q(b, a) -> d until the sup-norm change drops below
/// tol; three consecutive increases of that change, or max_iter passes,
/// raise HypothesisError.
inline ShadowResult shadow_expanding(const MapSystem& sys, const PseudoOrbit& pseudo, double K,
                                     const ExpandingOptions& opts = {}) {
  if (!(K > 1.0)) throw HypothesisError("expanding construction needs K > 1");
  const std::size_t H = pseudo.size();
  const double eps = pseudo.epsilon;
  const double bound = 2.0 * eps / std::log(K);

  ShadowResult res;
  res.method = ShadowMethod::ExpandingTailSeries;
  res.bound = bound;

  const std::size_t cap = H + opts.cap_extra;
  const auto trunc = eps > 0.0
                         ? detail::choose_truncation(sys, H, eps, K, opts.tail_fraction * bound, cap)
                         : detail::Truncation{H - 1, false, 0.0};
  std::size_t J = std::max<std::size_t>(trunc.J, 1);

  // Residuals and pseudo-orbit points out to J (+1 for a_{J+1}).
  std::vector<Complex> r(J);
  for (std::size_t j = 1; j <= J; ++j) r[j - 1] = pseudo.residual(j, sys.domain_kind);
  std::vector<Complex> a(pseudo.a);
  if (!sys.is_linear()) {
    a.reserve(J + 1);
    while (a.size() < J + 1) {
      const std::size_t n = a.size();
      const Complex next = eval_map(sys, n, a.back()) + r[n - 1];
      if (!detail::representable(next)) break;
      a.push_back(next);
    }
    if (a.size() < J + 1) J = a.size() - 1;
  }
  res.meta.truncation = J;
  res.meta.truncation_capped = trunc.capped;
  res.meta.tail_bound = trunc.tail_bound;

  // Contraction modulus of the fixed-point map: eps * sum_j prod_{i<=j} 1/p_i.
  {
    double lp = 0.0;
    double sum = 0.0;
    for (std::size_t j = 1; j <= cap; ++j) {
      lp -= log_growth_rate(sys, j);
      sum += std::exp(lp);
    }
    sum += std::exp(lp) * (1.0 / K) / (1.0 - 1.0 / K);
    res.meta.contraction_modulus = eps * sum;
    if (!(res.meta.contraction_modulus < 1.0))
      throw HypothesisError("eps too large for the fixed-point construction: contraction modulus " +
                            std::to_string(res.meta.contraction_modulus));
  }

  std::vector<Complex> d(J + 1, Complex{});  // d[n-1] = d_n, n = 1..J+1; d_{J+1} = 0
  std::vector<Complex> q(J);
  auto backward = [&](std::vector<Complex>& out) {
    out.assign(J + 1, Complex{});
    for (std::size_t n = J; n >= 1; --n) {
      if (std::abs(q[n - 1]) < detail::kDegenerateQuotient)
        throw HypothesisError("degenerate difference quotient at n=" + std::to_string(n));
      out[n - 1] = (out[n] + r[n - 1]) / q[n - 1];
    }
  };

  const double tol = opts.tol * std::max(1.0, std::abs(pseudo.a[0]));
  if (sys.is_linear() || eps == 0.0) {
    for (std::size_t i = 1; i <= J; ++i) q[i - 1] = eval_q(sys, i, a[i - 1], a[i - 1]);
    backward(d);
    res.meta.iterations = 1;
  } else {
    std::vector<Complex> next;
    double prev_change = std::numeric_limits<double>::infinity();
    int increases = 0;
    bool converged = false;
    for (std::size_t it = 1; it <= opts.max_iter; ++it) {
      for (std::size_t i = 1; i <= J; ++i) q[i - 1] = eval_q(sys, i, a[i - 1] + d[i - 1], a[i - 1]);
      backward(next);
      double change = 0.0;
      for (std::size_t i = 0; i < H; ++i) change = std::max(change, std::abs(next[i] - d[i]));
      d.swap(next);
      res.meta.iterations = it;
      if (change < tol) {
        converged = true;
        break;
      }
      increases = change > prev_change ? increases + 1 : 0;
      if (increases >= 3)
        throw HypothesisError("fixed-point iteration is not contracting; eps too large");
      prev_change = change;
    }
    if (!converged)
      throw HypothesisError("fixed-point iteration did not converge in " +
                            std::to_string(opts.max_iter) + " iterations");
  }

  res.d.assign(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(H));
  res.b.resize(H);
  for (std::size_t n = 0; n < H; ++n) res.b[n] = pseudo.a[n] + res.d[n];
  res.meta.residual_sup = detail::orbit_residual_sup(sys, res.b);
  res.sup_error = detail::sup_abs(res.d);
  res.bound_holds = res.sup_error <= bound * (1.0 + 1e-6);
  res.meta.bound_holds_from = detail::earliest_hold(res.d, bound * (1.0 + 1e-6));
  return res;
}

}  // namespace hu_shadow
