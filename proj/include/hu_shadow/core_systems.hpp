#pragma once

/// \file
/// Time-indexed map families z_{n+1} = F(n, z_n), their growth rates and
/// difference quotients, and pseudo-orbit generation.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace hu_shadow {

using Complex = std::complex<double>;

/// Exact rational with 64-bit parts; den > 0.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  [[nodiscard]] double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

/// Exact conversion of a finite double to a Ratio. Every finite double is a
/// dyadic rational; returns nullopt when the denominator does not fit.
inline std::optional<Ratio> ratio_from_double(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  if (x == 0.0) return Ratio{0, 1};
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, 0.5 <= |mant| < 1
  auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  int shift = exp - 53;
  while (shift < 0 && (m % 2) == 0) {
    m /= 2;
    ++shift;
  }
  if (shift >= 0) {
    if (shift > 62) return std::nullopt;
    const std::int64_t scale = std::int64_t{1} << shift;
    if (std::abs(m) > std::numeric_limits<std::int64_t>::max() / scale) return std::nullopt;
    return Ratio{m * scale, 1};
  }
  if (-shift > 62) return std::nullopt;
  return Ratio{m, std::int64_t{1} << (-shift)};
}

enum class Family { PeriodicLinear, IndexScaledLinear, PowerTwoParity, AffineSinusoid };
enum class RateKind { ContractingBound, ExpandingBound };
enum class DomainKind { ComplexPlane, RealLine };

/// F(n, z) = c_{((n-1) mod m)} z.
struct PeriodicLinearParams {
  std::vector<Ratio> coeffs;
};

/// F(n, z) = odd_factor * n * z for odd n, z / (even_factor * n) for even n.
struct IndexScaledLinearParams {
  std::int64_t odd_factor = 3;
  std::int64_t even_factor = 2;
};

/// F(n, z) = 2^(n + odd_shift) z for odd n, 2^-(n + even_shift) z for even n.
struct PowerTwoParityParams {
  std::int64_t odd_shift = 0;
  std::int64_t even_shift = 3;
};

/// F(n, x) = linear * x + sin(x / n) / n on the real line.
struct AffineSinusoidParams {
  double linear = 3.0;
};

using FamilyParams = std::variant<PeriodicLinearParams, IndexScaledLinearParams,
                                  PowerTwoParityParams, AffineSinusoidParams>;

struct MapSystem {
  FamilyParams params;
  RateKind rate_kind = RateKind::ContractingBound;
  DomainKind domain_kind = DomainKind::ComplexPlane;

  [[nodiscard]] Family family() const { return static_cast<Family>(params.index()); }
  [[nodiscard]] bool is_linear() const { return family() != Family::AffineSinusoid; }
};

inline const char* family_name(Family f) {
  switch (f) {
    case Family::PeriodicLinear: return "periodic_linear";
    case Family::IndexScaledLinear: return "index_scaled_linear";
    case Family::PowerTwoParity: return "power_two_parity";
    case Family::AffineSinusoid: return "affine_sinusoid";
  }
  return "unknown";
}

inline const char* rate_kind_name(RateKind k) {
  return k == RateKind::ContractingBound ? "contracting" : "expanding";
}

/// Throws std::invalid_argument if the parameter record cannot give p_n > 0
/// for every n.
inline void validate(const MapSystem& sys) {
  std::visit(
      [](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, PeriodicLinearParams>) {
          if (p.coeffs.empty()) throw std::invalid_argument("coeffs must not be empty");
          for (const auto& c : p.coeffs) {
            if (c.den <= 0) throw std::invalid_argument("coefficient denominator must be positive");
            if (c.num == 0) throw std::invalid_argument("growth rate must be positive");
          }
        } else if constexpr (std::is_same_v<P, IndexScaledLinearParams>) {
          if (p.odd_factor <= 0 || p.even_factor <= 0)
            throw std::invalid_argument("growth rate must be positive");
        } else if constexpr (std::is_same_v<P, AffineSinusoidParams>) {
          if (!(p.linear > 1.0) || !std::isfinite(p.linear))
            throw std::invalid_argument("affine_sinusoid linear term must exceed 1");
        }
      },
      sys.params);
}

inline MapSystem make_periodic_linear(std::vector<Ratio> coeffs,
                                      RateKind kind = RateKind::ContractingBound) {
  MapSystem sys{PeriodicLinearParams{std::move(coeffs)}, kind, DomainKind::ComplexPlane};
  validate(sys);
  return sys;
}

inline MapSystem make_index_scaled_linear(std::int64_t odd_factor = 3, std::int64_t even_factor = 2) {
  MapSystem sys{IndexScaledLinearParams{odd_factor, even_factor}, RateKind::ExpandingBound,
                DomainKind::ComplexPlane};
  validate(sys);
  return sys;
}

inline MapSystem make_power_two_parity(std::int64_t odd_shift = 0, std::int64_t even_shift = 3) {
  return MapSystem{PowerTwoParityParams{odd_shift, even_shift}, RateKind::ContractingBound,
                   DomainKind::ComplexPlane};
}

inline MapSystem make_affine_sinusoid(double linear = 3.0) {
  MapSystem sys{AffineSinusoidParams{linear}, RateKind::ExpandingBound, DomainKind::RealLine};
  validate(sys);
  return sys;
}

// Built-in systems.
inline MapSystem alternating_contraction() { return make_periodic_linear({{2, 1}, {1, 3}}); }
inline MapSystem index_scaled_expansion() { return make_index_scaled_linear(3, 2); }
inline MapSystem parity_power_instability() { return make_power_two_parity(0, 3); }
inline MapSystem sinusoid_expansion() { return make_affine_sinusoid(3.0); }

namespace detail {

inline void require_index(std::size_t n) {
  if (n < 1) throw std::invalid_argument("time index n must be >= 1");
}

inline bool is_odd(std::size_t n) { return (n % 2) == 1; }

}  // namespace detail

/// Multiplier c(n) of a linear family. Empty for the nonlinear family.
inline std::optional<double> linear_coefficient(const MapSystem& sys, std::size_t n) {
  detail::require_index(n);
  const auto dn = static_cast<double>(n);
  return std::visit(
      [&](const auto& p) -> std::optional<double> {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, PeriodicLinearParams>) {
          return p.coeffs[(n - 1) % p.coeffs.size()].value();
        } else if constexpr (std::is_same_v<P, IndexScaledLinearParams>) {
          return detail::is_odd(n) ? static_cast<double>(p.odd_factor) * dn
                                   : 1.0 / (static_cast<double>(p.even_factor) * dn);
        } else if constexpr (std::is_same_v<P, PowerTwoParityParams>) {
          const auto e = static_cast<int>(static_cast<std::int64_t>(n) +
                                          (detail::is_odd(n) ? p.odd_shift : p.even_shift));
          return detail::is_odd(n) ? std::ldexp(1.0, e) : std::ldexp(1.0, -e);
        } else {
          return std::nullopt;
        }
      },
      sys.params);
}

/// F(n, z).
inline Complex eval_map(const MapSystem& sys, std::size_t n, Complex z) {
  detail::require_index(n);
  if (const auto c = linear_coefficient(sys, n)) return *c * z;
  const auto& p = std::get<AffineSinusoidParams>(sys.params);
  const double dn = static_cast<double>(n);
  if (z.imag() == 0.0) {
    return {p.linear * z.real() + std::sin(z.real() / dn) / dn, 0.0};
  }
  return p.linear * z + std::sin(z / dn) / dn;
}

/// Difference quotient (F(n,u) - F(n,v)) / (u - v); the derivative at u when
/// u == v. Symmetric in (u, v) bit for bit.
inline Complex eval_q(const MapSystem& sys, std::size_t n, Complex u, Complex v) {
  detail::require_index(n);
  if (const auto c = linear_coefficient(sys, n)) return {*c, 0.0};

  // Canonical argument order makes q(u,v) and q(v,u) run identical arithmetic.
  if (std::make_pair(v.real(), v.imag()) < std::make_pair(u.real(), u.imag())) std::swap(u, v);

  const auto& p = std::get<AffineSinusoidParams>(sys.params);
  const double dn = static_cast<double>(n);
  const double inv_n2 = 1.0 / (dn * dn);
  // sin a - sin b = 2 cos((a+b)/2) sin((a-b)/2), so the sine part of the
  // quotient is cos((u+v)/2n) * sinc((u-v)/2n) / n^2.
  if (u.imag() == 0.0 && v.imag() == 0.0) {
    const double mid = (u.real() + v.real()) / (2.0 * dn);
    const double half = (u.real() - v.real()) / (2.0 * dn);
    const double sinc = half == 0.0 ? 1.0 : std::sin(half) / half;
    return {p.linear + inv_n2 * std::cos(mid) * sinc, 0.0};
  }
  const Complex mid = (u + v) / (2.0 * dn);
  const Complex half = (u - v) / (2.0 * dn);
  const Complex sinc = half == Complex{} ? Complex{1.0} : std::sin(half) / half;
  return p.linear + inv_n2 * std::cos(mid) * sinc;
}

/// ln p_n, finite for every n (the power-of-two family under/overflows p_n
/// itself past n ~ 1000).
inline double log_growth_rate(const MapSystem& sys, std::size_t n) {
  detail::require_index(n);
  const auto dn = static_cast<double>(n);
  return std::visit(
      [&](const auto& p) -> double {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, PeriodicLinearParams>) {
          return std::log(std::abs(p.coeffs[(n - 1) % p.coeffs.size()].value()));
        } else if constexpr (std::is_same_v<P, IndexScaledLinearParams>) {
          return detail::is_odd(n) ? std::log(static_cast<double>(p.odd_factor) * dn)
                                   : -std::log(static_cast<double>(p.even_factor) * dn);
        } else if constexpr (std::is_same_v<P, PowerTwoParityParams>) {
          const auto e = static_cast<double>(static_cast<std::int64_t>(n) +
                                             (detail::is_odd(n) ? p.odd_shift : p.even_shift));
          return (detail::is_odd(n) ? e : -e) * std::numbers::ln2;
        } else {
          return std::log(p.linear - 1.0 / (dn * dn));
        }
      },
      sys.params);
}

/// p_n: |c(n)| for linear families, linear - 1/n^2 for the sinusoid family.
inline double growth_rate(const MapSystem& sys, std::size_t n) {
  if (const auto c = linear_coefficient(sys, n)) return std::abs(*c);
  const auto& p = std::get<AffineSinusoidParams>(sys.params);
  const auto dn = static_cast<double>(n);
  return p.linear - 1.0 / (dn * dn);
}

inline std::vector<double> growth_rates(const MapSystem& sys, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t n = 1; n <= count; ++n) out[n - 1] = growth_rate(sys, n);
  return out;
}

inline std::vector<double> log_growth_rates(const MapSystem& sys, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t n = 1; n <= count; ++n) out[n - 1] = log_growth_rate(sys, n);
  return out;
}

// ---------------------------------------------------------------------------
// Residual policies and pseudo-orbits
// ---------------------------------------------------------------------------

enum class ResidualKind { ConstantReal, ConstantPhase, LowDiscrepancyPhase, Zero };

inline const char* residual_kind_name(ResidualKind k) {
  switch (k) {
    case ResidualKind::ConstantReal: return "constant_real";
    case ResidualKind::ConstantPhase: return "constant_phase";
    case ResidualKind::LowDiscrepancyPhase: return "low_discrepancy_phase";
    case ResidualKind::Zero: return "zero";
  }
  return "unknown";
}

/// r_n is a pure function of (policy, epsilon, n, domain).
struct ResidualPolicy {
  ResidualKind kind = ResidualKind::ConstantReal;
  double theta = 0.0;  // ConstantPhase only

  friend bool operator==(const ResidualPolicy&, const ResidualPolicy&) = default;
};

inline constexpr double kGoldenFraction = 0.6180339887498949;  // (sqrt(5) - 1) / 2

inline Complex residual_at(const ResidualPolicy& policy, double epsilon, std::size_t n,
                           DomainKind domain) {
  double phase = 0.0;
  switch (policy.kind) {
    case ResidualKind::Zero: return {0.0, 0.0};
    case ResidualKind::ConstantReal: return {epsilon, 0.0};
    case ResidualKind::ConstantPhase: phase = policy.theta; break;
    case ResidualKind::LowDiscrepancyPhase:
      phase = 2.0 * std::numbers::pi * std::fmod(static_cast<double>(n) * kGoldenFraction, 1.0);
      break;
  }
  // Real-line systems keep the real part only, so |r_n| <= epsilon still holds.
  if (domain == DomainKind::RealLine) return {epsilon * std::cos(phase), 0.0};
  return std::polar(epsilon, phase);
}

/// a[n-1] holds a_n; r[n-1] holds r_n = a_{n+1} - F(n, a_n).
struct PseudoOrbit {
  std::vector<Complex> a;
  std::vector<Complex> r;
  double epsilon = 0.0;
  std::size_t horizon = 0;                ///< requested length
  std::optional<ResidualPolicy> policy;   ///< empty for explicitly supplied residuals
  bool overflow = false;                  ///< a was truncated at the last finite index

  [[nodiscard]] std::size_t size() const { return a.size(); }

  /// r_n for any n >= 1: stored values inside the orbit, the policy beyond it
  /// (zero when residuals were supplied explicitly).
  [[nodiscard]] Complex residual(std::size_t n, DomainKind domain) const {
    if (n >= 1 && n <= r.size()) return r[n - 1];
    if (policy) return residual_at(*policy, epsilon, n, domain);
    return {0.0, 0.0};
  }
};

namespace detail {

inline bool representable(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag()) &&
         std::abs(z) < std::numeric_limits<double>::max();
}

}  // namespace detail

/// Forward propagation a_{n+1} = F(n, a_n) + r_n with r_n supplied by `next`.
template <typename ResidualFn>
PseudoOrbit propagate_pseudo_orbit(const MapSystem& sys, Complex a1, double epsilon,
                                   std::size_t horizon, ResidualFn&& next) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");
  PseudoOrbit out;
  out.epsilon = epsilon;
  out.horizon = horizon;
  out.a.reserve(horizon);
  out.r.reserve(horizon - 1);
  out.a.push_back(a1);
  for (std::size_t n = 1; n < horizon; ++n) {
    const Complex r = next(n);
    const Complex a_next = eval_map(sys, n, out.a.back()) + r;
    if (!detail::representable(a_next)) {
      out.overflow = true;
      break;
    }
    out.r.push_back(r);
    out.a.push_back(a_next);
  }
  return out;
}

inline PseudoOrbit generate_pseudo_orbit(const MapSystem& sys, Complex a1, double epsilon,
                                         const ResidualPolicy& policy, std::size_t horizon) {
  if (sys.domain_kind == DomainKind::RealLine && a1.imag() != 0.0)
    throw std::invalid_argument("real-line system needs a real a1");
  auto out = propagate_pseudo_orbit(sys, a1, epsilon, horizon, [&](std::size_t n) {
    return residual_at(policy, epsilon, n, sys.domain_kind);
  });
  out.policy = policy;
  return out;
}

/// Pseudo-orbit from an explicit residual list; r.size() + 1 points.
inline PseudoOrbit pseudo_orbit_from_residuals(const MapSystem& sys, Complex a1,
                                               std::span<const Complex> residuals) {
  double eps = 0.0;
  for (const auto& r : residuals) eps = std::max(eps, std::abs(r));
  return propagate_pseudo_orbit(sys, a1, eps, residuals.size() + 1,
                                [&](std::size_t n) { return residuals[n - 1]; });
}

/// Exact orbit b_{n+1} = F(n, b_n), `count` points starting at b1.
inline std::vector<Complex> true_orbit(const MapSystem& sys, Complex b1, std::size_t count) {
  std::vector<Complex> b;
  if (count == 0) return b;
  b.reserve(count);
  b.push_back(b1);
  for (std::size_t n = 1; n < count; ++n) b.push_back(eval_map(sys, n, b.back()));
  return b;
}

}  // namespace hu_shadow
