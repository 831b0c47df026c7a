#pragma once

// Large sieve for the roots of nu^2 + 1:
//   sum_{X < d <= 2X, (d,h) = 1} sum_{nu^2 + 1 = 0 (d)} |sum_{n <= N} alpha_n e(nu n hbar / d)|^2
//     <= 400 (hX + N) sum |alpha_n|^2
// evaluated directly, with seeded random and adversarial coefficient vectors.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "gausslab/arith.hpp"
#include "gausslab/parallel.hpp"

namespace gausslab {

enum class AlphaKind { random, ones, aligned };

std::string to_string(AlphaKind kind);

struct LSTrial {
  std::uint64_t h = 1;
  std::uint64_t X = 1;
  std::uint64_t N = 1;
  AlphaKind kind = AlphaKind::random;
  std::vector<std::complex<double>> alpha;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

// Needs table.limit >= 2X.
double ls_lhs(std::uint64_t h, std::uint64_t X, const std::vector<std::complex<double>>& alpha,
              const FactorTable& table);

double ls_rhs(std::uint64_t h, std::uint64_t X, const std::vector<std::complex<double>>& alpha);

// Deterministic 64-bit mixer used to derive per-trial streams.
std::uint64_t splitmix64(std::uint64_t& state);

// Coefficients for one trial.  aligned: alpha_n = e(-c n / d0) for the first
// modulus d0 in (X, 2X] with a root, c = nu0 hbar, so one inner sum is N.
std::vector<std::complex<double>> ls_alpha(AlphaKind kind, std::uint64_t h, std::uint64_t X,
                                           std::uint64_t N, std::uint64_t seed,
                                           const FactorTable& table);

LSTrial ls_trial(std::uint64_t h, std::uint64_t X, std::uint64_t N, std::uint64_t seed,
                 const FactorTable& table, AlphaKind kind = AlphaKind::random);

struct LSRanges {
  std::uint64_t h_max = 10;
  std::uint64_t X_max = 1000;
  std::uint64_t N_max = 1000;
};

struct LSCampaign {
  std::vector<LSTrial> trials;
  double max_ratio = 0.0;
  std::size_t argmax = 0;
};

// Trial t draws (h, X, N) and its coefficient seed from splitmix64 applied to
// root_seed + t.  Every tenth trial uses all-ones coefficients and the next one
// phase-aligned coefficients.  Coefficient vectors are dropped from the result.
LSCampaign ls_campaign(std::size_t trials, const LSRanges& ranges, std::uint64_t root_seed,
                       const FactorTable& table, const Parallelism& par = {});

}  // namespace gausslab
