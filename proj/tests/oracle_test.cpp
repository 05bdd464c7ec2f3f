#include <gtest/gtest.h>

#include <cmath>

#include "hu_shadow/oracle.hpp"
#include "hu_shadow/shadowing.hpp"

using namespace hu_shadow;
using oracle::ExactComplex;
using oracle::Rational;

TEST(ExactPropagate, AlternatingFiveSteps) {
  const auto sys = alternating_contraction();
  const auto o = oracle::exact_propagate(sys, ExactComplex(1), Rational(1, 1000), 5);
  // S[n-1] sums n products, so the sum 2/9 + 2/3 + 1/3 + 1 is S[3].
  EXPECT_EQ(o.S[3], Rational(20, 9));
  EXPECT_EQ(o.a[4], ExactComplex(Rational(4, 9) + Rational(20, 9) * Rational(1, 1000)));
}

TEST(ExactPropagate, ZeroEpsilonIsPureProduct) {
  const auto sys = index_scaled_expansion();
  const ExactComplex a1(Rational(3, 7), Rational(-1, 5));
  const auto o = oracle::exact_propagate(sys, a1, Rational(0), 12);
  for (std::size_t n = 1; n <= 12; ++n) {
    Rational prod(1);
    for (std::size_t j = 1; j < n; ++j) prod *= oracle::exact_coefficient(sys, j);
    EXPECT_EQ(o.a[n - 1], ExactComplex(prod) * a1) << n;
  }
}

TEST(ExactPropagate, ParityPowerProduct) {
  const auto sys = parity_power_instability();
  const auto o = oracle::exact_propagate(sys, ExactComplex(1), Rational(0), 20);
  EXPECT_EQ(o.prod[19], Rational(oracle::BigInt(1), oracle::BigInt(1) << 40));
}

TEST(ExactPropagate, SinusoidUnsupported) {
  EXPECT_THROW(oracle::exact_propagate(sinusoid_expansion(), ExactComplex(1), Rational(0), 5),
               std::invalid_argument);
}

TEST(ExactPropagate, FloatingPointAgrees) {
  for (const auto& sys : {alternating_contraction(), parity_power_instability()}) {
    const double eps = 1e-3;
    const auto fp = generate_pseudo_orbit(sys, {1.0, 0.0}, eps, {ResidualKind::ConstantReal, 0.0}, 50);
    const auto ex = oracle::exact_propagate(sys, ExactComplex(1), oracle::exact(eps), 50);
    EXPECT_LE(oracle::max_relative_deviation(fp.a, ex.a), 1e-12);
  }
}

TEST(ExactPropagate, DyadicPartialSums) {
  const auto sys = parity_power_instability();
  const auto ex = oracle::exact_propagate(sys, ExactComplex(1), Rational(0), 60);
  const auto rates = growth_rates(sys, 60);
  // Exact while the sum fits in 53 bits; a few roundings after that.
  for (std::size_t n = 1; n <= 60; ++n) {
    const double exact = ex.S[n - 1].convert_to<double>();
    if (n <= 6) {
      EXPECT_EQ(oracle::exact(partial_sum_S(rates, n)), ex.S[n - 1]) << n;
    }
    EXPECT_NEAR(partial_sum_S(rates, n) / exact, 1.0, 1e-14) << n;
  }
}

TEST(ExactValue, RoundTrip) {
  for (double x : {0.1, -3.75, 1e-300, 6.02e23, 1.0 / 3.0}) EXPECT_EQ(oracle::exact(x).convert_to<double>(), x);
  EXPECT_THROW(oracle::exact(std::nan("")), std::invalid_argument);
}

TEST(DoubleFactorialOracle, HoldsExactly) { EXPECT_EQ(oracle::double_factorial_envelope_violation(3000), 0u); }

TEST(Search, DoublingOptimumNearEpsilon) {
  const double eps = 1e-3;
  const auto sys = make_periodic_linear({{2, 1}}, RateKind::ExpandingBound);
  const auto pseudo = generate_pseudo_orbit(sys, {0.25, 0.0}, eps, {ResidualKind::ConstantReal, 0.0}, 8);
  const auto found = oracle::best_b1_search(sys, pseudo, 8, {pseudo.a[0], 4.0 * eps});
  // The finite-horizon optimum is eps (1 - 2 / (2^7 + 1)).
  EXPECT_NEAR(found.sup_error, eps * (1.0 - 2.0 / 129.0), 1e-2 * eps);
  EXPECT_NEAR(std::abs(found.b1 - (pseudo.a[0] + eps)), 0.0, 0.05 * eps);
  const auto built = shadow_expanding(sys, pseudo, 2.0);
  EXPECT_LE(found.sup_error, built.sup_error + found.cell_size);
}

TEST(Search, ZeroEpsilon) {
  const auto sys = index_scaled_expansion();
  const auto pseudo = generate_pseudo_orbit(sys, {1.0, 0.0}, 0.0, {ResidualKind::Zero, 0.0}, 12);
  const auto found = oracle::best_b1_search(sys, pseudo, 12, {pseudo.a[0], 1e-3});
  EXPECT_EQ(found.b1, pseudo.a[0]);
  EXPECT_EQ(found.sup_error, 0.0);
}

TEST(Search, RoundsMonotone) {
  const auto sys = index_scaled_expansion();
  const auto pseudo = generate_pseudo_orbit(sys, {1.0, 0.0}, 1e-3, {ResidualKind::LowDiscrepancyPhase, 0.0}, 12);
  const auto found = oracle::best_b1_search(sys, pseudo, 12, {pseudo.a[0], 16e-3}, 32, 6);
  ASSERT_EQ(found.round_best.size(), 7u);
  for (std::size_t i = 1; i < found.round_best.size(); ++i)
    EXPECT_LE(found.round_best[i], found.round_best[i - 1]);
}

TEST(Search, RealLineStaysReal) {
  const auto sys = sinusoid_expansion();
  const auto pseudo = generate_pseudo_orbit(sys, {1.0, 0.0}, 1e-3, {ResidualKind::ConstantReal, 0.0}, 10);
  const auto found = oracle::best_b1_search(sys, pseudo, 10, {pseudo.a[0], 4e-3});
  EXPECT_EQ(found.b1.imag(), 0.0);
  const auto built = shadow_expanding(sys, pseudo, 3.0);
  EXPECT_LE(found.sup_error, built.sup_error + found.cell_size);
}
