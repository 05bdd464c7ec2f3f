#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hu_shadow/shadowing.hpp"

using namespace hu_shadow;

namespace {

const ResidualPolicy kConst{ResidualKind::ConstantReal, 0.0};

MapSystem doubling() { return make_periodic_linear({{2, 1}}, RateKind::ExpandingBound); }
MapSystem halving() { return make_periodic_linear({{1, 2}}); }

}  // namespace

TEST(UniformContractionBound, Values) {
  EXPECT_DOUBLE_EQ(uniform_contraction_bound(0.5, 1, 0.1, 3.0), 3.0);
  EXPECT_NEAR(uniform_contraction_bound(0.5, 2000, 0.1, 0.0), 0.2, 1e-15);
  EXPECT_NEAR(uniform_contraction_bound(1.0 / 3.0, 3, 0.09, 0.9), 0.22, 1e-15);
  EXPECT_THROW(uniform_contraction_bound(1.0, 3, 0.1, 0.0), HypothesisError);
}

TEST(VariableRateBound, Values) {
  const auto rates = growth_rates(alternating_contraction(), 10);
  EXPECT_NEAR(variable_rate_bound(rates, 5, 1e-3, 0.0), 20.0 / 9.0 * 1e-3, 1e-17);
  EXPECT_EQ(variable_rate_bound(rates, 1, 1e-3, 0.7), 0.7);
  const std::vector<double> flat(20, 0.4);
  for (std::size_t n = 1; n <= 20; ++n)
    EXPECT_NEAR(variable_rate_bound(flat, n, 1e-2, 0.0), uniform_contraction_bound(0.4, n, 1e-2, 0.0),
                1e-16);
}

TEST(PartialSumS, Values) {
  const auto rates = growth_rates(alternating_contraction(), 10);
  EXPECT_NEAR(partial_sum_S(rates, 4), 20.0 / 9.0, 1e-15);
  EXPECT_EQ(partial_sum_S(rates, 1), 1.0);
  const std::vector<double> flat(2000, 0.25);
  EXPECT_NEAR(partial_sum_S(flat, 2000), 1.0 / 0.75, 1e-15);
  EXPECT_NEAR(std::exp(log_partial_sum_S(std::vector<double>(30, std::log(0.25)), 30)),
              partial_sum_S(flat, 30), 1e-15);
}

TEST(Telescope, AlternatingFromA1) {
  const double eps = 1e-3;
  const auto sys = alternating_contraction();
  const auto pseudo = generate_pseudo_orbit(sys, {1.0, 0.0}, eps, kConst, 10);
  const auto t = telescope_difference(sys, pseudo, pseudo.a[0], 5);
  EXPECT_NEAR(t.value.real(), -20.0 / 9.0 * eps, 1e-17);
  EXPECT_EQ(t.value.imag(), 0.0);
}

TEST(Telescope, ResidualFreeIsProductTimesGap) {
  const auto sys = alternating_contraction();
  const auto pseudo = generate_pseudo_orbit(sys, {1.0, 2.0}, 0.0, {ResidualKind::Zero, 0.0}, 9);
  const Complex gap{0.25, -0.5};
  const auto t = telescope_difference(sys, pseudo, pseudo.a[0] + gap, 9);
  // Four factors 2 and four factors 1/3.
  EXPECT_NEAR(std::abs(t.value - gap * (16.0 / 81.0)), 0.0, 1e-16);
}

TEST(Telescope, DoublingStaysAtEpsilon) {
  const double eps = 1e-3;
  const auto sys = doubling();
  const auto pseudo = generate_pseudo_orbit(sys, {0.0, 0.0}, eps, kConst, 30);
  for (std::size_t n = 1; n <= 30; ++n) {
    const auto t = telescope_difference(sys, pseudo, pseudo.a[0] + eps, n);
    EXPECT_NEAR(t.value.real(), eps, 1e-18 * std::pow(2.0, n)) << n;
  }
}

TEST(Telescope, MatchesDirectPropagation) {
  const auto sys = index_scaled_expansion();
  const auto pseudo = generate_pseudo_orbit(sys, {0.5, 0.5}, 1e-2, {ResidualKind::LowDiscrepancyPhase, 0.0}, 25);
  const Complex b1 = pseudo.a[0] + Complex{1e-3, -2e-3};
  const auto b = true_orbit(sys, b1, 25);
  for (std::size_t n = 1; n <= 25; ++n) {
    const Complex direct = b[n - 1] - pseudo.a[n - 1];
    const auto t = telescope_difference(sys, pseudo, b1, n);
    EXPECT_LE(std::abs(t.value - direct), 1e-12 * std::max(1.0, std::abs(b[n - 1]))) << n;
  }
}

TEST(ShadowContracting, ZeroEpsilon) {
  const auto sys = alternating_contraction();
  const auto pseudo = generate_pseudo_orbit(sys, {1.0, 0.0}, 0.0, kConst, 100);
  const auto res = shadow_contracting(sys, pseudo, std::sqrt(1.5));
  for (const auto& d : res.d) EXPECT_EQ(d, Complex(0.0, 0.0));
  EXPECT_TRUE(res.bound_holds);
}

TEST(ShadowContracting, HalvingGeometric) {
  const double eps = 1e-3;
  const auto sys = halving();
  const auto pseudo = generate_pseudo_orbit(sys, {1.0, 0.0}, eps, kConst, 60);
  const auto res = shadow_contracting(sys, pseudo, 2.0);
  EXPECT_EQ(res.bound, 2.0 * eps);
  for (std::size_t n = 1; n <= 60; ++n) {
    const double expected = 2.0 * eps * (1.0 - std::pow(0.5, static_cast<double>(n - 1)));
    EXPECT_NEAR(std::abs(res.d[n - 1]), expected, 1e-15) << n;
  }
  EXPECT_TRUE(res.bound_holds);
  EXPECT_EQ(res.meta.bound_holds_from, 1u);
}

// The asymptotic bound K eps / (K - 1) with K = sqrt(3/2) is about 5.45 eps,
// but b_1 = a_1 leaves |d_n| = S_{n-1} eps, and along even n the partial sums
// S_{2k} = (1 + p_{2k}) (1 + (2/3) + ... ) tend to 9: the error settles at
// 9 eps. The always-valid product bound is met exactly.
TEST(ShadowContracting, AlternatingExceedsAsymptoticBound) {
  const double eps = 1e-3;
  const auto sys = alternating_contraction();
  for (auto kind : {ResidualKind::ConstantReal, ResidualKind::ConstantPhase,
                    ResidualKind::LowDiscrepancyPhase}) {
    const auto pseudo = generate_pseudo_orbit(sys, {1.0, 0.0}, eps, {kind, 0.3}, 200);
    const auto res = shadow_contracting(sys, pseudo, std::sqrt(1.5));
    EXPECT_LE(res.sup_error, res.meta.sound_bound_sup * (1.0 + 1e-12));
    if (kind == ResidualKind::ConstantReal) {
      EXPECT_NEAR(res.sup_error, 9.0 * eps, 1e-12);
      EXPECT_FALSE(res.bound_holds);
      EXPECT_EQ(res.meta.bound_holds_from, 0u);
    }
  }
}

TEST(ShadowContracting, RejectsKAtMostOne) {
  const auto sys = alternating_contraction();
  const auto pseudo = generate_pseudo_orbit(sys, {1.0, 0.0}, 1e-3, kConst, 10);
  EXPECT_THROW(shadow_contracting(sys, pseudo, 1.0), HypothesisError);
}

TEST(ShadowExpanding, DoublingGivesEpsilon) {
  const double eps = 1e-3;
  const auto sys = doubling();
  const auto pseudo = generate_pseudo_orbit(sys, {0.5, 0.0}, eps, kConst, 40);
  const auto res = shadow_expanding(sys, pseudo, 2.0);
  EXPECT_EQ(res.meta.iterations, 1u);
  // d_n = eps (1 - 2^{n-J-1}); the dropped part is covered by the tail bound.
  for (const auto& d : res.d) EXPECT_NEAR(d.real(), eps, res.meta.tail_bound * (1.0 + 1e-12));
  EXPECT_TRUE(res.bound_holds);
  EXPECT_NEAR(res.bound, 2.0 * eps / std::log(2.0), 1e-18);
}

TEST(ShadowExpanding, ZeroEpsilon) {
  for (const auto& sys : {index_scaled_expansion(), sinusoid_expansion()}) {
    const auto pseudo = generate_pseudo_orbit(sys, {1.0, 0.0}, 0.0, kConst, 40);
    const auto res = shadow_expanding(sys, pseudo, sys.is_linear() ? std::sqrt(1.5) : 3.0);
    EXPECT_EQ(res.meta.iterations, 1u);
    for (const auto& d : res.d) EXPECT_EQ(d, Complex(0.0, 0.0));
  }
}

TEST(ShadowExpanding, TrueOrbitPerStep) {
  for (const auto& sys : {index_scaled_expansion(), sinusoid_expansion(), doubling()}) {
    const double K = sys.is_linear() ? (sys.family() == Family::PeriodicLinear ? 2.0 : std::sqrt(1.5)) : 3.0;
    const auto pseudo = generate_pseudo_orbit(sys, {1.0, 0.0}, 1e-3, kConst, 60);
    const auto res = shadow_expanding(sys, pseudo, K);
    for (std::size_t n = 1; n < res.b.size(); ++n) {
      const double resid = std::abs(res.b[n] - eval_map(sys, n, res.b[n - 1]));
      EXPECT_LE(resid, 1e-10 * std::max(1.0, std::abs(res.b[n - 1]))) << n;
    }
  }
}

TEST(ShadowExpanding, SinusoidConvergesQuickly) {
  const auto sys = sinusoid_expansion();
  for (double eps : {1e-3, 1e-4, 1e-6}) {
    for (auto kind : {ResidualKind::ConstantReal, ResidualKind::LowDiscrepancyPhase}) {
      const auto pseudo = generate_pseudo_orbit(sys, {0.7, 0.0}, eps, {kind, 0.0}, 120);
      const auto res = shadow_expanding(sys, pseudo, 3.0);
      EXPECT_LE(res.meta.iterations, 20u);
      EXPECT_LT(res.meta.contraction_modulus, 1.0);
      EXPECT_TRUE(res.bound_holds);
      for (const auto& b : res.b) EXPECT_EQ(b.imag(), 0.0);
    }
  }
}

TEST(ShadowExpanding, HorizonStable) {
  for (const auto& [sys, K] : {std::pair{index_scaled_expansion(), std::sqrt(1.5)},
                               std::pair{sinusoid_expansion(), 3.0}}) {
    const auto short_p = generate_pseudo_orbit(sys, {1.0, 0.0}, 1e-3, kConst, 30);
    const auto long_p = generate_pseudo_orbit(sys, {1.0, 0.0}, 1e-3, kConst, 60);
    const auto a = shadow_expanding(sys, short_p, K);
    const auto b = shadow_expanding(sys, long_p, K);
    const double slack = a.meta.tail_bound + b.meta.tail_bound + 1e-15;
    for (std::size_t n = 0; n < 30; ++n) EXPECT_LE(std::abs(a.d[n] - b.d[n]), slack) << n;
  }
}

TEST(ShadowExpanding, TailBoundMonotoneInTruncation) {
  const auto sys = index_scaled_expansion();
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t J = 10; J <= 300; J += 10) {
    const double t = expanding_tail_bound(sys, 5, J, 1e-3, std::sqrt(1.5));
    EXPECT_LE(t, prev);
    prev = t;
  }
}

TEST(ShadowExpanding, RejectsLargeEpsilonForNonlinear) {
  const auto sys = sinusoid_expansion();
  const auto pseudo = generate_pseudo_orbit(sys, {1.0, 0.0}, 5.0, kConst, 30);
  EXPECT_THROW(shadow_expanding(sys, pseudo, 3.0), HypothesisError);
}

TEST(ShadowExpanding, RejectsKAtMostOne) {
  const auto sys = index_scaled_expansion();
  const auto pseudo = generate_pseudo_orbit(sys, {1.0, 0.0}, 1e-3, kConst, 20);
  EXPECT_THROW(shadow_expanding(sys, pseudo, 0.9), HypothesisError);
}

// With b_1 chosen by the tail series, d_n at even n starts with the term
// eps / p_n = 2n eps, and each later pair of steps scales it by about 2/3, so
// d_n tends to 6n eps. The error grows linearly and no uniform bound holds.
TEST(ShadowExpanding, IndexScaledErrorGrowsLinearly) {
  const double eps = 1e-3;
  const auto sys = index_scaled_expansion();
  const auto pseudo = generate_pseudo_orbit(sys, {1.0, 0.0}, eps, kConst, 60);
  const auto res = shadow_expanding(sys, pseudo, std::sqrt(1.5));
  EXPECT_LE(res.meta.residual_sup, 1e-9);
  EXPECT_GT(res.sup_error, res.bound);
  for (std::size_t n = 30; n <= 60; n += 10) {
    EXPECT_GE(std::abs(res.d[n - 1]), 2.0 * n * eps);
    EXPECT_NEAR(std::abs(res.d[n - 1]) / (6.0 * n * eps), 1.0, 0.1) << n;
  }
}

TEST(BoundedTBound, Values) {
  EXPECT_NEAR(expanding_bound_bounded_t(1.0, 1.0, 2.0, 0.1), 0.1, 1e-16);
  EXPECT_NEAR(expanding_bound_bounded_t(0.5, 2.0, 1.5, 1e-3), 8e-3, 1e-17);
  EXPECT_LT(expanding_bound_bounded_t(1.0, 1.0, 1e12, 1.0), 1e-11);
  EXPECT_THROW(expanding_bound_bounded_t(1.0, 1.0, 1.0, 0.1), HypothesisError);
}

TEST(EarlyIndexBound, Values) {
  const std::vector<double> twos(10, 2.0);
  const double expected = 0.875 + 0.125 * 2.0 / std::log(2.0);
  EXPECT_NEAR(early_index_bound(twos, 1, 3, 2.0, 1.0), expected, 1e-15);
  const auto rates = growth_rates(sinusoid_expansion(), 10);
  double sum = 0.0;
  double prod = 1.0;
  for (std::size_t j = 1; j <= 10; ++j) {
    prod /= rates[j - 1];
    sum += prod;
  }
  EXPECT_NEAR(early_index_bound(rates, 1, 10, 3.0, 1e-3), 1e-3 * (sum + prod * 2.0 / std::log(3.0)), 1e-17);
}
