#pragma once

// Prime sums over the lattice 4k^2 + l^2 <= x:
//   G_r(x) = sum Lambda_r(k) Lambda(l) Lambda(4k^2 + l^2)
//   H_r(x) = sum Lambda(k) Lambda(l) Lambda_r(4k^2 + l^2)
//   APT(x) = sum beta_k Lambda(l) Lambda(4k^2 + l^2)
//   S(x)   = sum_n a_n f(n) Lambda(n),  a_n = sum_{4k^2 + l^2 = n} beta_k gamma_l
// and W(x) = sum_l gamma_l I(l).  Every sum runs over k >= 1, l >= 1 and is
// accumulated exactly, so the result does not depend on sharding.

#include <cstdint>
#include <utility>
#include <vector>

#include "gausslab/arith.hpp"
#include "gausslab/crop.hpp"
#include "gausslab/parallel.hpp"

namespace gausslab {

inline constexpr std::uint64_t kPrimeSumMaxX = 10'000'000'000ULL;

struct SumReport {
  std::uint64_t x = 0;
  int r = 0;
  double sum = 0.0;
  double reference = 0.0;
  double ratio = 0.0;  // sum / reference, 0 when reference = 0
  std::uint64_t pairs = 0;  // nonzero terms
  double seconds = 0.0;
  double reference_alt = 0.0;  // G_r only: the reference without the factor r
};

// Smallest table limit the sums below accept for scale x.
std::uint64_t prime_sum_table_limit(std::uint64_t x);

// The constant c from its Euler product at pmax = 1e7, computed once.
double c_reference_constant();
// kappa at pmax = 1e7, computed once.
double kappa_reference_constant();

SumReport sum_G(std::uint64_t x, int r, const FactorTable& table, const Parallelism& par = {});
SumReport sum_H(std::uint64_t x, int r, const FactorTable& table, const Parallelism& par = {});
SumReport sum_APT(std::uint64_t x, const FactorTable& table, const Parallelism& par = {},
                  FactorCount counting = FactorCount::with_multiplicity);

// The term helpers are shared with the test oracles so both paths produce
// identical doubles for identical (k, l).
inline double triple_term(double a, double b, double c) { return (a * b) * c; }
inline double s_term(double beta, double gamma, double fv, double lam) {
  return ((beta * gamma) * fv) * lam;
}

struct SReport {
  double S = 0.0;
  double companion = 0.0;  // kappa * V * int f
  double crop_integral = 0.0;
  double V = 0.0;
  std::uint64_t terms = 0;
};

SReport sum_S(const CropFunction& f, const SieveWeights& lambda, const GammaWeights& gamma,
              const FactorTable& table, const Parallelism& par = {});

struct WReport {
  double W = 0.0;
  double target = 0.0;  // (pi/4) int f
  double deviation = 0.0;  // |W - target|
  std::vector<std::pair<std::uint64_t, double>> I;  // (l, I(l)) for odd primes l < sqrt(x)
};

WReport W_and_I(const CropFunction& f, const GammaWeights& gamma, const Parallelism& par = {});

}  // namespace gausslab
