#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "gausslab/errors.hpp"
#include "gausslab/roots.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace gausslab;

namespace {
const FactorTable& table() {
  static const FactorTable t(200'000);
  return t;
}
std::vector<std::uint64_t> roots_of(std::uint64_t d) { return roots_mod(d, table()).roots; }
}  // namespace

TEST(Roots, Examples) {
  EXPECT_EQ(roots_of(5), (std::vector<std::uint64_t>{2, 3}));
  EXPECT_EQ(roots_of(13), (std::vector<std::uint64_t>{5, 8}));
  EXPECT_TRUE(roots_of(15).empty());
  EXPECT_EQ(roots_of(1), (std::vector<std::uint64_t>{0}));
  EXPECT_EQ(rho(65, table()), 4u);
  EXPECT_EQ(roots_of(65), (std::vector<std::uint64_t>{8, 18, 47, 57}));
  EXPECT_EQ(rho(25, table()), 2u);
  EXPECT_EQ(roots_of(25), (std::vector<std::uint64_t>{7, 18}));
  EXPECT_EQ(rho(21, table()), 0u);
  EXPECT_THROW(roots_mod(10, table()), DomainError);
}

TEST(Roots, EvenModuli) {
  EXPECT_EQ(roots_mod_any(2, table()).roots, (std::vector<std::uint64_t>{1}));
  EXPECT_TRUE(roots_mod_any(4, table()).roots.empty());
  EXPECT_EQ(roots_mod_any(10, table()).roots, oracle::roots_brute(10));
  for (std::uint64_t d = 2; d <= 3000; d += 2) ASSERT_EQ(roots_mod_any(d, table()).roots, oracle::roots_brute(d)) << d;
}

TEST(Roots, BruteForceAgreement) {
  for (std::uint64_t d = 1; d <= 4001; d += 2) ASSERT_EQ(roots_of(d), oracle::roots_brute(d)) << d;
}

TEST(Roots, CountMatchesRhoUpTo1e5) {
  for (std::uint64_t d = 1; d <= 100'000; d += 2) {
    const RootSet rs = roots_mod(d, table());
    ASSERT_EQ(rs.rho(), rho(d, table())) << d;
    for (auto v : rs.roots) ASSERT_EQ((mul_mod(v, v, d) + 1) % d, 0u) << d;
  }
}

TEST(Roots, TonelliShanks) {
  for (std::uint64_t p : {5ULL, 13ULL, 17ULL, 97ULL, 65537ULL, 1'000'000'009ULL}) {
    const std::uint64_t r = sqrt_mod_prime(p - 1, p);
    EXPECT_EQ(mul_mod(r, r, p), p - 1) << p;
  }
  EXPECT_THROW(sqrt_mod_prime(2, 3), DomainError);
}

TEST(Roots, HenselLiftsReduceToRoots) {
  for (auto p : table().primes()) {
    if (p > 10'000) break;
    if (p % 4 != 1) continue;
    const std::uint64_t r = sqrt_mod_prime(p - 1, p);
    std::uint64_t pa = p;
    for (int alpha = 1; alpha <= 3; ++alpha) {
      const std::uint64_t lifted = hensel_lift(r, p, alpha);
      ASSERT_EQ(lifted % p, r) << p << "^" << alpha;
      ASSERT_EQ((mul_mod(lifted, lifted, pa) + 1) % pa, 0u) << p << "^" << alpha;
      pa *= p;
    }
  }
}

TEST(Roots, CrtCombinationMatchesDirect) {
  gausslab::testing::Rng rng(21);
  for (int i = 0; i < 400; ++i) {
    const std::uint64_t d1 = rng.odd(1, 400), d2 = rng.odd(1, 400);
    if (std::gcd(d1, d2) != 1) continue;
    const RootSet combined = crt_combine(roots_mod(d1, table()), roots_mod(d2, table()));
    ASSERT_EQ(combined.d, d1 * d2);
    ASSERT_EQ(combined.roots, roots_of(d1 * d2)) << d1 << "*" << d2;
  }
}

TEST(Weyl, Examples) {
  EXPECT_EQ(weyl_sum(0, 65, table()), std::complex<double>(4.0, 0.0));
  const auto w = weyl_sum(1, 5, table());
  EXPECT_NEAR(w.real(), -1.618034, 1e-6);
  EXPECT_NEAR(w.real(), 2 * std::cos(4 * std::numbers::pi / 5), 1e-14);
  EXPECT_NEAR(w.imag(), 0.0, 1e-14);
  for (std::int64_t c : {-7, 0, 3, 1000}) EXPECT_EQ(weyl_sum(c, 1, table()), std::complex<double>(1.0, 0.0));
}

TEST(Weyl, RealBecauseRootsComeInPairs) {
  for (std::uint64_t d = 3; d <= 999; d += 2) {
    for (std::int64_t c : {1, 2, 7}) ASSERT_NEAR(weyl_sum(c, d, table()).imag(), 0.0, 1e-9) << d;
  }
}

TEST(Weyl, Parseval) {
  for (std::uint64_t d = 1; d <= 2000; d += 2) {
    const RootSet rs = roots_mod(d, table());
    double total = 0.0;
    for (std::uint64_t c = 0; c < d; ++c) total += std::norm(weyl_sum(static_cast<std::int64_t>(c), rs));
    ASSERT_NEAR(total, static_cast<double>(d * rs.rho()), 1e-6) << d;
  }
}

TEST(Weyl, UnitPhaseReducesNumerator) {
  const auto a = unit_phase(3, 7), b = unit_phase(3 + 7 * 1000, 7), c = unit_phase(3 - 7 * 5, 7);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_NEAR(std::abs(a), 1.0, 1e-15);
}
