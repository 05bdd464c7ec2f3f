#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hu_shadow/core_systems.hpp"

using namespace hu_shadow;

namespace {

const MapSystem kAlternating = make_periodic_linear({{2, 1}, {1, 3}});

}  // namespace

TEST(EvalMap, PeriodicLinearValues) {
  EXPECT_EQ(eval_map(kAlternating, 1, {1.0, 0.0}), Complex(2.0, 0.0));
  EXPECT_EQ(eval_map(kAlternating, 2, {0.0, 0.0}), Complex(0.0, 0.0));
}

TEST(EvalMap, SinusoidAtPi) {
  const auto sys = sinusoid_expansion();
  const auto v = eval_map(sys, 1, {std::numbers::pi, 0.0});
  EXPECT_NEAR(v.real(), 3.0 * std::numbers::pi, 1e-15);
  EXPECT_EQ(v.imag(), 0.0);
}

TEST(EvalMap, RejectsIndexZero) {
  EXPECT_THROW(eval_map(kAlternating, 0, {1.0, 0.0}), std::invalid_argument);
}

TEST(EvalQ, LinearQuotientIsCoefficient) {
  EXPECT_EQ(eval_q(kAlternating, 3, {5.0, 1.0}, {2.0, 0.0}), Complex(2.0, 0.0));
}

TEST(EvalQ, SinusoidDerivativeAtZero) {
  const auto sys = sinusoid_expansion();
  EXPECT_NEAR(eval_q(sys, 1, {0.0, 0.0}, {0.0, 0.0}).real(), 4.0, 1e-15);
}

TEST(EvalQ, SinusoidSymmetricPair) {
  const auto sys = sinusoid_expansion();
  const double pi = std::numbers::pi;
  const auto q = eval_q(sys, 2, {pi, 0.0}, {-pi, 0.0});
  EXPECT_NEAR(q.real(), 3.0 + 1.0 / (2.0 * pi), 1e-15);
}

TEST(GrowthRate, BuiltInValues) {
  EXPECT_DOUBLE_EQ(growth_rate(index_scaled_expansion(), 3), 9.0);
  EXPECT_DOUBLE_EQ(growth_rate(parity_power_instability(), 2), 1.0 / 32.0);
  EXPECT_DOUBLE_EQ(growth_rate(sinusoid_expansion(), 1), 2.0);
}

TEST(Validate, ZeroCoefficientRejected) {
  try {
    make_periodic_linear({{2, 1}, {0, 1}});
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "growth rate must be positive");
  }
}

TEST(PseudoOrbit, UnperturbedOrbit) {
  const auto o = generate_pseudo_orbit(kAlternating, {1.0, 0.0}, 0.0, {ResidualKind::Zero, 0.0}, 4);
  ASSERT_EQ(o.size(), 4u);
  EXPECT_DOUBLE_EQ(o.a[1].real(), 2.0);
  EXPECT_DOUBLE_EQ(o.a[2].real(), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(o.a[3].real(), 4.0 / 3.0);
}

TEST(PseudoOrbit, TwoStepHandPropagation) {
  const double eps = 1e-3;
  const auto o = generate_pseudo_orbit(kAlternating, {0.0, 0.0}, eps, {ResidualKind::ConstantReal, 0.0}, 3);
  EXPECT_EQ(o.a[0], Complex(0.0, 0.0));
  EXPECT_DOUBLE_EQ(o.a[1].real(), eps);
  EXPECT_NEAR(o.a[2].real(), eps / 3.0 + eps, 1e-18);
}

TEST(PseudoOrbit, PowerTwoFiveSteps) {
  const double eps = 1e-3;
  const auto sys = parity_power_instability();
  const auto o = generate_pseudo_orbit(sys, {1.0, 0.0}, eps, {ResidualKind::ConstantReal, 0.0}, 5);
  double a = 1.0;
  for (double c : {2.0, 1.0 / 32.0, 8.0, 1.0 / 128.0}) a = c * a + eps;
  EXPECT_EQ(o.a[4].real(), a);
}

TEST(PseudoOrbit, ZeroPolicyHasNoResidual) {
  for (const auto& sys : {kAlternating, index_scaled_expansion(), sinusoid_expansion()}) {
    const auto o = generate_pseudo_orbit(sys, {0.5, 0.0}, 1e-2, {ResidualKind::Zero, 0.0}, 30);
    for (std::size_t n = 1; n < o.size(); ++n)
      EXPECT_EQ(std::abs(o.a[n] - eval_map(sys, n, o.a[n - 1])), 0.0);
  }
}

TEST(PseudoOrbit, ResidualsWithinEpsilon) {
  for (auto kind : {ResidualKind::ConstantReal, ResidualKind::ConstantPhase,
                    ResidualKind::LowDiscrepancyPhase}) {
    const auto o = generate_pseudo_orbit(kAlternating, {1.0, 1.0}, 1e-3, {kind, 0.7}, 100);
    for (const auto& r : o.r) EXPECT_LE(std::abs(r), 1e-3 * (1.0 + 1e-15));
  }
}

TEST(PseudoOrbit, Reproducible) {
  const ResidualPolicy pol{ResidualKind::LowDiscrepancyPhase, 0.0};
  const auto x = generate_pseudo_orbit(kAlternating, {0.3, -0.2}, 1e-3, pol, 200);
  const auto y = generate_pseudo_orbit(kAlternating, {0.3, -0.2}, 1e-3, pol, 200);
  EXPECT_EQ(x.a, y.a);
  EXPECT_EQ(x.r, y.r);
}

TEST(PseudoOrbit, OverflowTruncatesAndFlags) {
  const auto o = generate_pseudo_orbit(index_scaled_expansion(), {1.0, 0.0}, 1e-3,
                                       {ResidualKind::ConstantReal, 0.0}, 5000);
  EXPECT_TRUE(o.overflow);
  EXPECT_LT(o.size(), 5000u);
  EXPECT_TRUE(std::isfinite(std::abs(o.a.back())));
}

TEST(PseudoOrbit, RealLineStaysReal) {
  const auto o = generate_pseudo_orbit(sinusoid_expansion(), {1.0, 0.0}, 1e-3,
                                       {ResidualKind::LowDiscrepancyPhase, 0.0}, 40);
  for (const auto& a : o.a) EXPECT_EQ(a.imag(), 0.0);
}

TEST(Invariants, QuotientSymmetric) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (const auto& sys : {kAlternating, index_scaled_expansion(), parity_power_instability(),
                          sinusoid_expansion()}) {
    const bool real = sys.domain_kind == DomainKind::RealLine;
    for (std::size_t n = 1; n <= 1000; n += 7) {
      const Complex x{u(rng), real ? 0.0 : u(rng)};
      const Complex y{u(rng), real ? 0.0 : u(rng)};
      EXPECT_EQ(eval_q(sys, n, x, y), eval_q(sys, n, y, x)) << "n=" << n;
    }
  }
}

TEST(Invariants, LinearQuotientModulusIsRate) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (const auto& sys : {kAlternating, index_scaled_expansion(), parity_power_instability()}) {
    for (std::size_t n = 1; n <= 200; ++n) {
      const auto q = eval_q(sys, n, {u(rng), u(rng)}, {u(rng), u(rng)});
      EXPECT_EQ(std::abs(q), growth_rate(sys, n));
    }
  }
}

TEST(Invariants, SinusoidMeanValueBound) {
  const auto sys = sinusoid_expansion();
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  std::uniform_int_distribution<std::size_t> idx(1, 100);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = idx(rng);
    double x = u(rng);
    double y = u(rng);
    if (x == y) y += 1.0;
    const double dn = static_cast<double>(n);
    EXPECT_GE(std::abs(eval_q(sys, n, {x, 0.0}, {y, 0.0})), 3.0 - 1.0 / (dn * dn) - 1e-12);
  }
}

TEST(RatioFromDouble, ExactDyadic) {
  const auto r = ratio_from_double(0.375);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->num, 3);
  EXPECT_EQ(r->den, 8);
  const auto third = ratio_from_double(1.0 / 3.0);
  ASSERT_TRUE(third);
  EXPECT_EQ(third->value(), 1.0 / 3.0);
}
