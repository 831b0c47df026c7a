#pragma once

// Euler products for c, kappa and H with rigorous log-space tail bounds, the
// sieve density g, the weighted sums V and V_d, and the product identity
// c = kappa * prod_{p = 1 (4)} (1 - g(p)) (1 - 1/p)^-1.

#include <cstdint>
#include <limits>

#include "gausslab/arith.hpp"
#include "gausslab/crop.hpp"

namespace gausslab {

struct EulerProductResult {
  double value = 1.0;
  std::uint64_t pmax = 0;
  // Bound on |log(limit / value)|; infinite for conditionally convergent products.
  double tail_bound = std::numeric_limits<double>::infinity();
};

// prod_p (1 - chi(p) / ((p - 1)(p - chi(p)))), p <= pmax.
EulerProductResult kappa(std::uint64_t pmax);

// prod_{p = 1 (4)} (1 - 3/p)(1 - 1/p)^-3 * prod_{p = 3 (4)} (1 - 1/p^2)^-1.
EulerProductResult c_constant(std::uint64_t pmax);

enum class HMode { raw, via_kappa };

// raw: prod_p (1 - rho(p)/p)(1 - 1/p)^-1 truncated in increasing p; only
// conditionally convergent.  via_kappa: 4 kappa / pi.
EulerProductResult H_constant(std::uint64_t pmax, HMode mode);

// Multiplicative density with g(2) = 1/2, g(p) = 1/(p - 2) for p = 1 (4),
// g(p) = 1/p for p = 3 (4).  Squarefree h only.
double g_density(std::uint64_t h, const FactorTable& table);

// V = sum_h lambda_h g(h).
double V_sum(const SieveWeights& lambda, const FactorTable& table);
// V_d = sum_{(h, d) = 1} lambda_h / h.
double V_d(const SieveWeights& lambda, std::uint64_t d);

struct A2Check {
  double lhs = 0.0;   // c_constant(pmax)
  double rhs = 0.0;   // kappa(pmax) * prod (1 - 1/(p-2)) (1 - 1/p)^-1
  double diff = 0.0;  // |lhs - rhs|
};

A2Check a2_identity_check(std::uint64_t pmax);

}  // namespace gausslab
