#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gausslab/crop.hpp"
#include "gausslab/errors.hpp"
#include "gausslab/quadrature.hpp"
#include "oracles.hpp"

using namespace gausslab;

namespace {
const FactorTable& table() {
  static const FactorTable t(100'000);
  return t;
}

// Composite Simpson on [a, b] with n (even) panels.
template <class Fn>
double simpson(Fn fn, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = fn(a) + fn(b);
  for (int i = 1; i < n; ++i) s += fn(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}
}  // namespace

TEST(Crop, SupportAndPlateau) {
  const double x = 1e6;
  const CropFunction f = crop_build(x, 0.1);
  EXPECT_EQ(f(x / 4), 0.0);
  EXPECT_EQ(f(0.5 * x), 0.0);
  EXPECT_EQ(f(x), 0.0);
  EXPECT_EQ(f(1.5 * x), 0.0);
  EXPECT_EQ(f(0.75 * x), f.sigma());
  EXPECT_GT(f.sigma(), 0.0);
  EXPECT_LE(f.sigma(), 1.0);
  EXPECT_THROW(CropFunction(x, 0.3), DomainError);
  EXPECT_THROW(CropFunction(-1.0, 0.1), DomainError);
  EXPECT_THROW(f.derivative(0.7 * x, 4), DomainError);
}

TEST(Crop, ScaledDerivativesStayBelowOneOnGrid) {
  for (double x : {1e3, 1e4, 1e6, 1e8}) {
    for (double d : {0.01, 0.05, 0.2, default_ramp_delta(x)}) {
      const CropFunction f(x, d);
      for (int j = 0; j <= 2; ++j) {
        const double m = f.grid_max(j, 10000);
        EXPECT_LE(m, 1.0 + 1e-12) << "x=" << x << " delta=" << d << " j=" << j;
      }
      // the bound is attained for the binding order, so sigma is not wasteful
      const double top = std::max({f.grid_max(0, 10000), f.grid_max(1, 10000), f.grid_max(2, 10000)});
      EXPECT_GT(top, 0.9) << "x=" << x << " delta=" << d;
    }
  }
}

TEST(Crop, TwiceContinuouslyDifferentiableAtJoins) {
  const CropFunction f(1e5, 0.1);
  for (double b : f.breakpoints()) {
    for (int j = 0; j <= 2; ++j) {
      const double eps = 1e-10 * b;
      const double left = f.derivative(b - eps, j);
      const double right = f.derivative(b + eps, j);
      const double scale = std::pow(b, j);
      EXPECT_NEAR(left * scale, right * scale, 1e-6) << "join " << b << " j=" << j;
    }
  }
}

TEST(Crop, DerivativesMatchFiniteDifferences) {
  const CropFunction f(1e4, 0.2);
  for (double t : {5100.0, 5600.0, 9100.0, 9800.0}) {
    for (int j = 0; j < 3; ++j) {
      const double h = 1e-3;
      const double fd = (f.derivative(t + h, j) - f.derivative(t - h, j)) / (2 * h);
      EXPECT_NEAR(fd, f.derivative(t, j + 1), 1e-6 * (std::abs(fd) + 1e-9)) << t << " j=" << j;
    }
  }
}

TEST(Crop, IntegralClosedFormMatchesQuadrature) {
  for (double x : {1e4, 1e6, 1e8}) {
    for (double d : {0.2, 0.05, default_ramp_delta(x)}) {
      const CropFunction f(x, d);
      EXPECT_NEAR(crop_integral_quad(f), f.integral(), 1e-9 * f.integral()) << x << " " << d;
    }
  }
}

TEST(Crop, DefaultRamp) {
  EXPECT_EQ(default_ramp_delta(2.0), 0.2);
  EXPECT_NEAR(default_ramp_delta(1e6), std::pow(std::log(1e6), -5), 1e-18);
  EXPECT_LE(default_ramp_delta(1e3), 0.2);
}

TEST(CropW, Examples) {
  const CropW w = crop_w_build();
  EXPECT_DOUBLE_EQ(w(0.5), 2.1875);
  for (double y : {0.0, 1.0}) {
    for (int j = 0; j <= 2; ++j) EXPECT_EQ(w.derivative(y, j), 0.0) << y << " " << j;
  }
  EXPECT_EQ(w(-0.1), 0.0);
  EXPECT_EQ(w(1.1), 0.0);
  const auto q = integrate_pieces([&](double y) { return w(y); }, {0.0, 1.0});
  EXPECT_NEAR(q.value, 1.0, 1e-14);
  EXPECT_NEAR(simpson([&](double y) { return w(y); }, 0.0, 1.0, 2000), CropW::kIntegral, 1e-12);
}

TEST(SieveWeightsTest, Validation) {
  EXPECT_THROW(SieveWeights({{4, 0.5}}, table()), DomainError);
  EXPECT_THROW(SieveWeights({{3, 1.5}}, table()), DomainError);
  EXPECT_THROW(SieveWeights({{3, 0.5}, {3, 0.1}}, table()), DomainError);
  EXPECT_THROW(SieveWeights({{0, 0.5}}, table()), DomainError);
  const SieveWeights w({{6, -0.5}, {1, 1.0}, {3, 0.25}}, table());
  EXPECT_EQ(w.level(), 6u);
  EXPECT_EQ(w.entries().front().first, 1u);
}

TEST(SieveWeightsTest, BetaTableMatchesDivisorScanBitwise) {
  for (const SieveWeights& w : {SieveWeights::mobius(500, table()), SieveWeights::ones(300, table()),
                                SieveWeights::delta_one(),
                                SieveWeights({{1, 0.3}, {5, -0.7}, {30, 0.9}, {77, -1.0}}, table())}) {
    const auto tab = w.beta_table(5000);
    for (std::uint64_t k = 1; k <= 5000; ++k) ASSERT_EQ(tab[k], w.beta(k)) << w.describe() << " k=" << k;
  }
}

TEST(SieveWeightsTest, MobiusBetaDetectsOne) {
  const auto mu = SieveWeights::mobius(1000, table());
  for (std::uint64_t k = 1; k <= 1000; ++k) ASSERT_EQ(mu.beta(k), k == 1 ? 1.0 : 0.0) << k;
  EXPECT_EQ(SieveWeights::delta_one().beta(97), 1.0);
  EXPECT_EQ(SieveWeights::zero().beta(97), 0.0);
}

TEST(Gamma, Rules) {
  const auto g = GammaWeights::log_on_odd_primes();
  EXPECT_EQ(g(2), 0.0);
  EXPECT_EQ(g(9), 0.0);
  EXPECT_EQ(g(1), 0.0);
  EXPECT_EQ(g(7), std::log(7.0));
  EXPECT_EQ(GammaWeights::zero()(7), 0.0);
  const auto half = GammaWeights::custom([](std::uint64_t l) { return 0.5 * std::log(double(l)); }, "half");
  EXPECT_EQ(half(11), 0.5 * std::log(11.0));
  EXPECT_EQ(half(12), 0.0);
  const auto bad = GammaWeights::custom([](std::uint64_t) { return 100.0; }, "bad");
  EXPECT_THROW(bad(11), DomainError);
}

TEST(Quadrature, RadialIntegralVanishesBeyondSupport) {
  const CropFunction f(1e4, 0.2);
  EXPECT_EQ(I_ell(100, f), 0.0);
  EXPECT_EQ(I_ell(101, f), 0.0);
  EXPECT_TRUE(radial_cuts(100, f).empty());
  EXPECT_GT(I_ell(3, f), 0.0);
}

TEST(Quadrature, RadialIntegralMatchesSimpson) {
  const CropFunction f(1e4, 0.2);
  for (std::uint64_t l : {3, 17, 61, 97}) {
    const double hi = std::sqrt(1e4);
    const double ref = simpson([&](double t) { return f(t * t + double(l * l)); }, 0.0, hi, 200000);
    EXPECT_NEAR(I_ell(l, f), ref, 1e-8 * std::abs(ref) + 1e-12) << l;
    EXPECT_NEAR(F_ell(l, 0.0, f), I_ell(l, f), 1e-9 * std::abs(ref)) << l;
    const double v = 0.013;
    const double fref = simpson([&](double t) { return f(t * t + double(l * l)) * std::cos(2 * std::numbers::pi * v * t); },
                                0.0, hi, 200000);
    EXPECT_NEAR(F_ell(l, v, f), fref, 1e-8 * std::abs(ref)) << l;
  }
}

TEST(Quadrature, RadialDerivativesMatchFiniteDifferences) {
  const CropFunction f(1e4, 0.2);
  const std::uint64_t l = 11;
  for (double t : {72.0, 80.0, 95.0}) {
    for (int j = 0; j < 3; ++j) {
      const double h = 1e-4;
      const double fd = (radial_phi(t + h, l, f, j) - radial_phi(t - h, l, f, j)) / (2 * h);
      EXPECT_NEAR(fd, radial_phi(t, l, f, j + 1), 1e-5 * (std::abs(fd) + 1e-6)) << t << " j=" << j;
    }
  }
}

TEST(Quadrature, AbsoluteDerivativeIntegralsArePositiveAndFinite) {
  const CropFunction f(1e6, 0.2);
  for (std::uint64_t l : {3, 101, 997}) {
    const double j2 = J2_ell(l, f), j3 = J3_ell(l, f);
    EXPECT_GT(j2, 0.0);
    EXPECT_GT(j3, 0.0);
    EXPECT_TRUE(std::isfinite(j2) && std::isfinite(j3));
  }
}
