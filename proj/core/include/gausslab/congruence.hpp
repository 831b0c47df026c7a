#pragma once

// Congruence sums of the sequence a_n = sum_{4k^2 + l^2 = n} beta_k gamma_l:
// A_d(x) = sum_{d | n} a_n f(n), its main term, the per-root Poisson
// expansion, and the remainder R(x, D).  Also the multiplicative model
// sequence b_n with its congruence sums B_d(x), and the congruence sums of
// a_n = sum Lambda(k) Lambda(l) over 1 <= k, l <= x.

#include <cstdint>
#include <vector>

#include "gausslab/arith.hpp"
#include "gausslab/crop.hpp"
#include "gausslab/parallel.hpp"

namespace gausslab {

// --- A_d ------------------------------------------------------------------------

// Exact A_d(x) with x = f.hi(); zero for even d.
double A_d(const CropFunction& f, std::uint64_t d, const SieveWeights& lambda,
           const GammaWeights& gamma, const FactorTable& table, const Parallelism& par = {});

// rho(d)/(2d) V_d W.  The overload without W computes W by quadrature.
double A_d_main(std::uint64_t d, const SieveWeights& lambda, double W, const FactorTable& table);
double A_d_main(const CropFunction& f, std::uint64_t d, const SieveWeights& lambda,
                const GammaWeights& gamma, const FactorTable& table, const Parallelism& par = {});

// Shared with the oracles: term of A_d for one (k, l).
inline double a_term(double beta, double gamma, double fv) { return (beta * gamma) * fv; }

// --- Poisson expansion ------------------------------------------------------------

struct PoissonResult {
  // Sum of g(b) = f(4h^2b^2 + l^2) over b > 0 with b = +-c (mod d),
  // c = nu l (2h)^-1 mod d.
  double direct = 0.0;
  // (1/dh) [F(0) + 2 sum_{s=1}^{S} F(s/2dh) cos(2 pi c s/d)] - [c = 0 (d)] f(l^2)
  double fourier = 0.0;
  double zero_frequency = 0.0;  // F(0)/(dh)
  double tail_bound = 0.0;      // bound on the neglected s > S terms
  std::uint64_t S = 0;
};

// Requires nu^2 + 1 = 0 (mod d), d odd, gcd(h, d) = 1.  When S_max is zero,
// S is chosen as the least value with tail_bound <= tail_target.
PoissonResult poisson_expand(std::uint64_t d, std::uint64_t h, std::uint64_t l, std::uint64_t nu,
                             const CropFunction& f, std::uint64_t S_max = 0,
                             double tail_target = 1e-7);

// Bound on the Fourier terms beyond S, from integrating by parts twice and
// three times; the smaller is returned.
double poisson_tail_bound(std::uint64_t d, std::uint64_t h, double J2, double J3, std::uint64_t S);

// rho(d) I(l) / (2dh): the zero frequency summed over every root.
double poisson_zero_frequency(std::uint64_t d, std::uint64_t h, std::uint64_t l,
                              const CropFunction& f, const FactorTable& table);

// --- remainder ------------------------------------------------------------------

struct RemainderRow {
  std::uint64_t d = 0;
  std::uint64_t rho = 0;
  double A = 0.0;
  double main = 0.0;
  double r = 0.0;  // A - main
};

struct RemainderReport {
  double R = 0.0;       // sum over odd d <= D of |r_d|
  double bound = 0.0;   // y (D x)^(1/2) log x
  double W = 0.0;
  std::vector<RemainderRow> rows;
};

RemainderReport remainder_R(const CropFunction& f, std::uint64_t D, const SieveWeights& lambda,
                            const GammaWeights& gamma, const FactorTable& table,
                            const Parallelism& par = {});

// --- model sequence -------------------------------------------------------------

// psi(2^a) = 1, psi(p^a) = rho(p)(1 - 1/p)(1 - rho(p)/p)^-1 for odd p.
double model_psi(std::uint64_t n, const FactorTable& table);
// phi(2^a) = 1, phi(p^a) = (1 - rho(p)/p)^-1 for odd p.
double model_phi(std::uint64_t n, const FactorTable& table);

// b_n = psi(n) sum_{(2h, n) = 1} lambda_h phi(h)/h.
double model_b(std::uint64_t n, const SieveWeights& lambda, const FactorTable& table);

// Precomputed inner weights lambda_h phi(h)/h for fast evaluation of b_n.
class ModelSequence {
 public:
  ModelSequence(const SieveWeights& lambda, const FactorTable& table);
  double b(std::uint64_t n) const;
  double psi(std::uint64_t n) const { return model_psi(n, *table_); }

 private:
  std::vector<std::pair<std::uint64_t, double>> weights_;  // (2h, lambda_h phi(h)/h)
  const FactorTable* table_;
};

inline double b_term(double b, double w) { return b * w; }

// sum_{n = 0 (d), n < x} b_n w(n/x); zero for even d.  Needs table.limit >= x.
double B_d(std::uint64_t x, std::uint64_t d, const SieveWeights& lambda, const CropW& w,
           const FactorTable& table, const Parallelism& par = {});

// (x/H)(rho(d)/2d) V_d with H = 4 kappa / pi.
double B_d_main(std::uint64_t x, std::uint64_t d, const SieveWeights& lambda,
                const FactorTable& table);

// --- sums of Lambda(k) Lambda(l) --------------------------------------------------

struct AppendixRow {
  std::uint64_t d = 0;
  double A = 0.0;
  double main = 0.0;  // rho(d)/phi(d) psi(x)^2
  double r = 0.0;
};

inline constexpr std::uint64_t kAppendixMaxX = 1'000'000;

// Chebyshev psi(x) = sum_{n <= x} Lambda(n), summed exactly.
double chebyshev_psi(std::uint64_t x, const FactorTable& table);

AppendixRow appendix_Ad(std::uint64_t x, std::uint64_t d, const FactorTable& table,
                        const Parallelism& par = {});

}  // namespace gausslab
