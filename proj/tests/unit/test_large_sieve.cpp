#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "gausslab/large_sieve.hpp"
#include "gausslab/roots.hpp"
#include "generators.hpp"

using namespace gausslab;
using cd = std::complex<double>;

namespace {
const FactorTable& table() {
  static const FactorTable t(100'000);
  return t;
}
}  // namespace

TEST(LargeSieve, Examples) {
  EXPECT_EQ(ls_lhs(1, 2, {cd(1.0)}, table()), 0.0);
  EXPECT_NEAR(ls_lhs(1, 4, {cd(1.0)}, table()), 2.0, 1e-14);
  EXPECT_EQ(ls_lhs(3, 50, std::vector<cd>(40, cd(0.0)), table()), 0.0);
  EXPECT_DOUBLE_EQ(ls_rhs(2, 10, {cd(1.0), cd(0.0, 2.0)}), 400.0 * (20 + 2) * 5.0);
}

TEST(LargeSieve, PhaseInvariantAndQuadratic) {
  gausslab::testing::Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t h = rng.uniform(1, 6), X = rng.uniform(2, 200), N = rng.uniform(1, 150);
    std::vector<cd> a(N);
    for (auto& v : a) v = cd(rng.real(-1, 1), rng.real(-1, 1));
    const double base = ls_lhs(h, X, a, table());
    const cd rot = std::polar(1.0, rng.real(0, 6.283));
    const cd scale(rng.real(0.2, 3.0), rng.real(-2.0, 2.0));
    auto b = a, c = a;
    for (auto& v : b) v *= rot;
    for (auto& v : c) v *= scale;
    ASSERT_NEAR(ls_lhs(h, X, b, table()), base, 1e-9 * (base + 1));
    ASSERT_NEAR(ls_lhs(h, X, c, table()), std::norm(scale) * base, 1e-9 * (std::norm(scale) * base + 1));
  }
}

TEST(LargeSieve, TrialsRespectTheBound) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (AlphaKind kind : {AlphaKind::random, AlphaKind::ones, AlphaKind::aligned}) {
      const auto t = ls_trial(1 + seed % 5, 20 + 13 * seed, 5 + 17 * seed, seed, table(), kind);
      ASSERT_LE(t.lhs, t.rhs) << seed << " " << to_string(kind);
      ASSERT_DOUBLE_EQ(t.ratio, t.lhs / t.rhs);
    }
  }
}

TEST(LargeSieve, SingleCoefficientIsTiny) {
  for (std::uint64_t X : {10, 100, 1000}) {
    const auto t = ls_trial(1, X, 1, 5, table());
    // one term per root, so lhs = |alpha_1|^2 times the number of roots in the block
    std::uint64_t roots = 0;
    for (std::uint64_t d = X + 1; d <= 2 * X; ++d) roots += roots_mod_any(d, table()).rho();
    EXPECT_NEAR(t.lhs, std::norm(t.alpha[0]) * double(roots), 1e-9 * t.lhs);
    EXPECT_LT(t.ratio, 0.01);
  }
}

TEST(LargeSieve, AlignedCoefficientsHitOneTermFully) {
  const auto a = ls_alpha(AlphaKind::aligned, 1, 10, 50, 0, table());
  ASSERT_EQ(a.size(), 50u);
  // lhs must at least contain the aligned term N^2
  EXPECT_GE(ls_lhs(1, 10, a, table()), 50.0 * 50.0 - 1e-6);
}

TEST(LargeSieve, CampaignDeterministicAcrossThreads) {
  const LSRanges ranges{4, 150, 150};
  const auto a = ls_campaign(60, ranges, 42, table(), Parallelism{1});
  const auto b = ls_campaign(60, ranges, 42, table(), Parallelism{3});
  ASSERT_EQ(a.trials.size(), 60u);
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    ASSERT_EQ(a.trials[i].lhs, b.trials[i].lhs);
    ASSERT_EQ(a.trials[i].h, b.trials[i].h);
    ASSERT_LE(a.trials[i].ratio, 1.0);
    ASSERT_TRUE(a.trials[i].alpha.empty());
  }
  EXPECT_EQ(a.max_ratio, b.max_ratio);
  EXPECT_EQ(a.trials[0].kind, AlphaKind::ones);
  EXPECT_EQ(a.trials[1].kind, AlphaKind::aligned);
}
