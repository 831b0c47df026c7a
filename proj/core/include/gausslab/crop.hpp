#pragma once

// Weights shared by the prime sums, the congruence sums and the Gaussian
// bilinear sums: the smooth crop function f, the sieve weights lambda_h, the
// prime weights gamma_l, and the model crop w on (0, 1).

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gausslab/arith.hpp"

namespace gausslab {

// C^2 weight supported on [x/2, x]: a quintic smoothstep ramp of width
// ramp_delta * x / 2 at each end, a plateau in between, everything scaled by
// sigma so that |t^j f^(j)(t)| <= 1 for j = 0, 1, 2.
class CropFunction {
 public:
  CropFunction(double x, double ramp_delta);

  double x() const { return x_; }
  double ramp_delta() const { return delta_; }
  double sigma() const { return sigma_; }
  double lo() const { return 0.5 * x_; }
  double hi() const { return x_; }
  double ramp_width() const { return width_; }

  double operator()(double t) const { return value(t); }
  double value(double t) const { return derivative(t, 0); }
  // j-th derivative, j in [0, 3]; the third is piecewise continuous only.
  double derivative(double t, int j) const;

  // Points where f stops being polynomial: x/2, end of rising ramp, start of
  // falling ramp, x.
  std::vector<double> breakpoints() const;

  // Closed form sigma * (x/2) * (1 - delta).
  double integral() const { return sigma_ * 0.5 * x_ * (1.0 - delta_); }

  // max over a uniform grid of |t^j f^(j)(t)|, used to audit the derivative bounds.
  double grid_max(int j, int points) const;

 private:
  double unscaled(double t, int j) const;

  double x_;
  double delta_;
  double width_;
  double sigma_ = 1.0;
};

// Default ramp width (log x)^-5, clamped into (0, 1/4).
double default_ramp_delta(double x);

CropFunction crop_build(double x, double ramp_delta);
inline CropFunction crop_build(double x) { return crop_build(x, default_ramp_delta(x)); }

// Sieve weights lambda_h on squarefree h <= y with |lambda_h| <= 1.
class SieveWeights {
 public:
  SieveWeights() = default;
  // Entries may come in any order; validated against the table.
  SieveWeights(std::vector<std::pair<std::uint64_t, double>> entries, const FactorTable& table);

  static SieveWeights delta_one();
  static SieveWeights mobius(std::uint64_t y, const FactorTable& table);
  static SieveWeights ones(std::uint64_t y, const FactorTable& table);
  static SieveWeights zero() { return SieveWeights(); }

  const std::vector<std::pair<std::uint64_t, double>>& entries() const { return entries_; }
  std::uint64_t level() const { return entries_.empty() ? 0 : entries_.back().first; }
  bool empty() const { return entries_.empty(); }
  std::string describe() const { return description_; }

  // beta_k = sum_{h | k} lambda_h for 1 <= k <= kmax, accumulated in increasing h.
  std::vector<double> beta_table(std::uint64_t kmax) const;
  // Same value for a single k by divisor scan (increasing h).
  double beta(std::uint64_t k) const;

 private:
  std::vector<std::pair<std::uint64_t, double>> entries_;  // increasing h
  std::string description_ = "zero";
};

// gamma_l: zero unless l is an odd prime, |gamma_l| <= log l.
class GammaWeights {
 public:
  enum class Rule { log_on_odd_primes, custom, zero };

  static GammaWeights log_on_odd_primes();
  static GammaWeights zero();
  // The custom rule is consulted only on odd primes; values outside
  // [-log l, log l] raise DomainError at evaluation.
  static GammaWeights custom(std::function<double(std::uint64_t)> rule, std::string name);

  Rule rule() const { return rule_; }
  std::string describe() const { return name_; }

  double operator()(std::uint64_t l) const;
  // Evaluation when the caller already knows l is an odd prime.
  double on_odd_prime(std::uint64_t l) const;

 private:
  Rule rule_ = Rule::log_on_odd_primes;
  std::function<double(std::uint64_t)> custom_;
  std::string name_ = "log";
};

// w(y) = 140 y^3 (1 - y)^3 on (0, 1): C^2 with unit integral.
struct CropW {
  double operator()(double y) const;
  double derivative(double y, int j) const;
  static constexpr double kIntegral = 1.0;
};

CropW crop_w_build();

}  // namespace gausslab
