#pragma once

/// \file
/// Independent ground truth: exact rational propagation of the linear
/// families, exact double-factorial checks, and a brute-force grid search
/// for the best shadowing initial condition.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <variant>
#include <vector>

#include "hu_shadow/core_systems.hpp"

namespace hu_shadow::oracle {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Complex number over exact rationals.
struct ExactComplex {
  Rational re;
  Rational im;

  ExactComplex() = default;
  ExactComplex(int v) : re(v) {}  // NOLINT(google-explicit-constructor): Scalar(1) in templates
  ExactComplex(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}

  friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }

  [[nodiscard]] Complex to_complex() const {
    return {re.convert_to<double>(), im.convert_to<double>()};
  }
};

/// Exact value of a finite double.
inline Rational exact(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("oracle: non-finite value");
  if (x == 0.0) return Rational(0);
  int e = 0;
  const double mant = std::frexp(x, &e);
  const auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  Rational r(m);
  const int shift = e - 53;
  BigInt pow2 = BigInt(1) << std::abs(shift);
  return shift >= 0 ? r * Rational(pow2) : r / Rational(pow2);
}

inline ExactComplex exact(Complex z) { return {exact(z.real()), exact(z.imag())}; }

inline Rational exact(const Ratio& r) { return Rational(r.num, r.den); }

/// c(n) of a linear family as an exact rational. Throws for the sinusoid.
inline Rational exact_coefficient(const MapSystem& sys, std::size_t n) {
  if (n < 1) throw std::invalid_argument("time index n must be >= 1");
  const bool odd = (n % 2) == 1;
  return std::visit(
      [&](const auto& p) -> Rational {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, PeriodicLinearParams>) {
          return exact(p.coeffs[(n - 1) % p.coeffs.size()]);
        } else if constexpr (std::is_same_v<P, IndexScaledLinearParams>) {
          const auto dn = static_cast<std::int64_t>(n);
          return odd ? Rational(p.odd_factor * dn) : Rational(1, p.even_factor * dn);
        } else if constexpr (std::is_same_v<P, PowerTwoParityParams>) {
          const std::int64_t e = static_cast<std::int64_t>(n) + (odd ? p.odd_shift : p.even_shift);
          const BigInt pow2 = BigInt(1) << static_cast<unsigned>(std::abs(e));
          const bool positive = odd ? e >= 0 : e < 0;
          return positive ? Rational(pow2) : Rational(BigInt(1), pow2);
        } else {
          throw std::invalid_argument("oracle: family is not rational-linear");
        }
      },
      sys.params);
}

/// Exact orbit data; index n-1 holds step n.
struct RationalOrbit {
  std::vector<ExactComplex> a;
  std::vector<ExactComplex> r;
  std::vector<Rational> prod;  ///< prod_{j<=n} p_j
  std::vector<Rational> S;     ///< S_n = sum_{j<=n} prod_{i=j+1..n} p_i
};

/// a_{n+1} = c(n) a_n + r_n in exact arithmetic, with the given residuals.
inline RationalOrbit exact_propagate(const MapSystem& sys, const ExactComplex& a1,
                                     std::span<const ExactComplex> residuals) {
  RationalOrbit o;
  const std::size_t H = residuals.size() + 1;
  o.a.reserve(H);
  o.a.push_back(a1);
  o.r.assign(residuals.begin(), residuals.end());
  Rational prod(1);
  Rational S(0);
  for (std::size_t n = 1; n <= H; ++n) {
    const Rational c = exact_coefficient(sys, n);
    const Rational p = c < 0 ? Rational(-c) : c;
    prod *= p;
    S = S * p + 1;
    o.prod.push_back(prod);
    o.S.push_back(S);
    if (n < H) o.a.push_back(ExactComplex(c) * o.a.back() + residuals[n - 1]);
  }
  return o;
}

/// Constant real residual r_n = eps.
inline RationalOrbit exact_propagate(const MapSystem& sys, const ExactComplex& a1,
                                     const Rational& eps, std::size_t horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  std::vector<ExactComplex> r(horizon - 1, ExactComplex(eps));
  return exact_propagate(sys, a1, r);
}

/// Exact b_{n+1} = c(n) b_n.
inline std::vector<ExactComplex> exact_true_orbit(const MapSystem& sys, const ExactComplex& b1,
                                                  std::size_t count) {
  std::vector<ExactComplex> b;
  if (count == 0) return b;
  b.push_back(b1);
  for (std::size_t n = 1; n < count; ++n) b.push_back(ExactComplex(exact_coefficient(sys, n)) * b.back());
  return b;
}

/// Largest |x - exact| / max(|exact|, floor) over the orbit, per component.
inline double max_relative_deviation(std::span<const Complex> approx,
                                     std::span<const ExactComplex> truth, double floor = 0.0) {
  if (approx.size() > truth.size()) throw std::invalid_argument("oracle: approx longer than truth");
  double worst = 0.0;
  for (std::size_t i = 0; i < approx.size(); ++i) {
    const Complex t = truth[i].to_complex();
    const double scale = std::max(std::abs(t), floor);
    if (scale == 0.0) {
      worst = std::max(worst, std::abs(approx[i]) == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
      continue;
    }
    worst = std::max(worst, std::abs(approx[i] - t) / scale);
  }
  return worst;
}

/// First k in 1..k_max where 1/(4k+1) <= ((2k-1)!!/(2k)!!)^2 <= 1/(3k+1)
/// fails in exact integer arithmetic, or 0 when it holds throughout.
inline std::size_t double_factorial_envelope_violation(std::size_t k_max) {
  BigInt num_sq(1);  // ((2k-1)!!)^2
  BigInt den_sq(1);  // ((2k)!!)^2
  for (std::size_t k = 1; k <= k_max; ++k) {
    const BigInt odd(2 * k - 1);
    const BigInt even(2 * k);
    num_sq *= odd * odd;
    den_sq *= even * even;
    const bool lower_ok = den_sq <= num_sq * BigInt(4 * k + 1);
    const bool upper_ok = num_sq * BigInt(3 * k + 1) <= den_sq;
    if (!lower_ok || !upper_ok) return k;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Grid search
// ---------------------------------------------------------------------------

struct SearchRegion {
  Complex center;
  double radius = 0.0;
};

struct SearchResult {
  Complex b1;
  double sup_error = 0.0;
  double cell_size = 0.0;          ///< lattice spacing of the last round
  std::vector<double> round_best;  ///< incumbent sup error after each round
};

/// sup_{n<=horizon} |b_n - a_n| for the exact orbit through b1.
inline double shadow_sup_error(const MapSystem& sys, const PseudoOrbit& pseudo, Complex b1,
                               std::size_t horizon) {
  const std::size_t H = std::min(horizon, pseudo.size());
  Complex b = b1;
  double sup = std::abs(b - pseudo.a[0]);
  for (std::size_t n = 1; n < H; ++n) {
    b = eval_map(sys, n, b);
    sup = std::max(sup, std::abs(b - pseudo.a[n]));
  }
  return sup;
}

/// grid x grid lattice over the disk, then `refinements` rounds that shrink
/// the radius 4x around the incumbent. The incumbent only changes on strict
/// improvement, so round_best is nonincreasing.
inline SearchResult best_b1_search(const MapSystem& sys, const PseudoOrbit& pseudo,
                                   std::size_t horizon, SearchRegion region, std::size_t grid = 64,
                                   std::size_t refinements = 6) {
  if (grid < 2) throw std::invalid_argument("grid must be >= 2");
  if (!(region.radius >= 0.0)) throw std::invalid_argument("radius must be nonnegative");
  SearchResult best;
  best.b1 = region.center;
  best.sup_error = shadow_sup_error(sys, pseudo, region.center, horizon);
  Complex center = region.center;
  double radius = region.radius;
  for (std::size_t round = 0; round <= refinements; ++round) {
    const double step = 2.0 * radius / static_cast<double>(grid - 1);
    // Real-line systems search the real segment only.
    const std::size_t rows = sys.domain_kind == DomainKind::RealLine ? 1 : grid;
    for (std::size_t i = 0; i < grid; ++i) {
      for (std::size_t j = 0; j < rows; ++j) {
        const double y = rows == 1 ? 0.0 : -radius + step * static_cast<double>(j);
        const Complex off{-radius + step * static_cast<double>(i), y};
        if (std::norm(off) > radius * radius) continue;
        const Complex b1 = center + off;
        const double e = shadow_sup_error(sys, pseudo, b1, horizon);
        if (e < best.sup_error) {
          best.sup_error = e;
          best.b1 = b1;
        }
      }
    }
    best.round_best.push_back(best.sup_error);
    best.cell_size = step;
    center = best.b1;
    radius /= 4.0;
  }
  return best;
}

}  // namespace hu_shadow::oracle
