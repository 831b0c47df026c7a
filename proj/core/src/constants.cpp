#include "gausslab/constants.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "gausslab/errors.hpp"
#include "gausslab/exact_sum.hpp"

namespace gausslab {

namespace {

constexpr std::uint64_t kMaxPmax = 2'000'000'000ULL;

void check_pmax(std::uint64_t pmax, std::uint64_t min) {
  if (pmax < min) throw DomainError("pmax must be at least " + std::to_string(min));
  if (pmax > kMaxPmax) throw GuardError("pmax beyond the Euler product guard");
}

double kappa_log_factor(double p, int chi) {
  if (chi == 0) return 0.0;
  return std::log1p(-chi / ((p - 1.0) * (p - chi)));
}

double c_log_factor(double p, int chi) {
  if (chi == 1) return std::log1p(-3.0 / p) - 3.0 * std::log1p(-1.0 / p);
  if (chi == -1) return -std::log1p(-1.0 / (p * p));
  return 0.0;
}

// (1 - 1/(p-2))(1 - 1/p)^-1 for p = 1 (4).
double a2_log_factor(double p) { return std::log1p(-1.0 / (p - 2.0)) - std::log1p(-1.0 / p); }

double kappa_log(const std::vector<std::uint32_t>& primes) {
  ExactSum s;
  for (auto p : primes) s.add(kappa_log_factor(p, chi4(p)));
  return s.value();
}

}  // namespace

EulerProductResult kappa(std::uint64_t pmax) {
  check_pmax(pmax, 2);
  const auto primes = primes_up_to(pmax);
  // Every factor satisfies |log| <= 2/p^2, and sum_{p > P} 2/p^2 < 2/(P - 1).
  return {std::exp(kappa_log(primes)), pmax, 2.0 / (static_cast<double>(pmax) - 1.0)};
}

EulerProductResult c_constant(std::uint64_t pmax) {
  check_pmax(pmax, 3);
  const auto primes = primes_up_to(pmax);
  ExactSum s;
  for (auto p : primes) s.add(c_log_factor(p, chi4(p)));
  // |log factor| <= 4/p^2 once p >= 13; the p = 5 factor is the only larger one.
  double tail = 4.0 / (static_cast<double>(pmax) - 1.0);
  if (pmax < 5) tail += std::abs(c_log_factor(5.0, 1));
  return {std::exp(s.value()), pmax, tail};
}

EulerProductResult H_constant(std::uint64_t pmax, HMode mode) {
  if (mode == HMode::via_kappa) {
    auto k = kappa(pmax);
    return {4.0 * k.value / std::numbers::pi, pmax, k.tail_bound};
  }
  check_pmax(pmax, 2);
  const auto primes = primes_up_to(pmax);
  ExactSum s;
  for (auto p : primes) {
    const int chi = chi4(p);
    if (chi == 1) {
      s.add(std::log1p(-2.0 / p) - std::log1p(-1.0 / p));
    } else if (chi == -1) {
      s.add(-std::log1p(-1.0 / p));
    }
  }
  return {std::exp(s.value()), pmax, std::numeric_limits<double>::infinity()};
}

double g_density(std::uint64_t h, const FactorTable& table) {
  if (h == 0) throw DomainError("g is defined for h >= 1");
  const auto f = factorize(h, table);
  if (!f.squarefree()) throw DomainError("g is defined on squarefree h only");
  double g = 1.0;
  for (const auto& pp : f.factors) {
    const double p = static_cast<double>(pp.prime);
    g *= (pp.prime % 4 == 1) ? 1.0 / (p - 2.0) : 1.0 / p;
  }
  return g;
}

double V_sum(const SieveWeights& lambda, const FactorTable& table) {
  ExactSum s;
  for (const auto& [h, lam] : lambda.entries()) s.add(lam * g_density(h, table));
  return s.value();
}

double V_d(const SieveWeights& lambda, std::uint64_t d) {
  if (d == 0) throw DomainError("V_d needs d >= 1");
  ExactSum s;
  for (const auto& [h, lam] : lambda.entries()) {
    if (std::gcd(h, d) == 1) s.add(lam / static_cast<double>(h));
  }
  return s.value();
}

A2Check a2_identity_check(std::uint64_t pmax) {
  check_pmax(pmax, 3);
  const auto primes = primes_up_to(pmax);
  ExactSum lhs;
  ExactSum rhs;
  for (auto p : primes) {
    const int chi = chi4(p);
    lhs.add(c_log_factor(p, chi));
    rhs.add(kappa_log_factor(p, chi));
    if (chi == 1) rhs.add(a2_log_factor(p));
  }
  A2Check out;
  out.lhs = std::exp(lhs.value());
  out.rhs = std::exp(rhs.value());
  out.diff = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace gausslab
