#include "gausslab/crop.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "gausslab/errors.hpp"

namespace gausslab {

namespace {

// Quintic smoothstep S(u) = 6u^5 - 15u^4 + 10u^3 and its derivatives on [0, 1].
double smoothstep(double u, int j) {
  switch (j) {
    case 0: return u * u * u * (u * (6.0 * u - 15.0) + 10.0);
    case 1: return 30.0 * u * u * (u * (u - 2.0) + 1.0);
    case 2: return u * (u * (120.0 * u - 180.0) + 60.0);
    case 3: return u * (360.0 * u - 360.0) + 60.0;
    default: throw DomainError("crop derivative order must be in [0, 3]");
  }
}

// sup |S'| = 15/8 at u = 1/2, sup |S''| = 10/sqrt(3) at u = (3 - sqrt 3)/6.
constexpr double kMaxS1 = 1.875;
const double kMaxS2 = 10.0 / std::sqrt(3.0);

}  // namespace

CropFunction::CropFunction(double x, double ramp_delta) : x_(x), delta_(ramp_delta) {
  if (!std::isfinite(x) || x <= 0.0) throw DomainError("crop scale x must be positive");
  if (!(ramp_delta > 0.0 && ramp_delta < 0.25)) {
    throw DomainError("ramp_delta must lie in (0, 1/4)");
  }
  width_ = 0.5 * delta_ * x_;
  // On the falling ramp t <= x, so |t f'| <= x max|S'| / w and
  // |t^2 f''| <= x^2 max|S''| / w^2.  These suprema dominate any grid.
  const double b1 = x_ * kMaxS1 / width_;
  const double b2 = x_ * x_ * kMaxS2 / (width_ * width_);
  sigma_ = std::min({1.0, 1.0 / b1, 1.0 / b2});
}

double CropFunction::unscaled(double t, int j) const {
  if (j < 0 || j > 3) throw DomainError("crop derivative order must be in [0, 3]");
  if (!(t > lo() && t < hi())) return 0.0;
  const double u = (t - lo()) / width_;
  if (u < 1.0) return smoothstep(u, j) / std::pow(width_, j);
  const double v = (hi() - t) / width_;
  if (v < 1.0) return smoothstep(v, j) * std::pow(-1.0 / width_, j);
  return j == 0 ? 1.0 : 0.0;
}

double CropFunction::derivative(double t, int j) const { return sigma_ * unscaled(t, j); }

std::vector<double> CropFunction::breakpoints() const {
  return {lo(), lo() + width_, hi() - width_, hi()};
}

double CropFunction::grid_max(int j, int points) const {
  if (points < 2) throw DomainError("grid needs at least two points");
  double best = 0.0;
  auto scan = [&](double a, double b) {
    for (int i = 0; i < points; ++i) {
      double t = a + (b - a) * i / (points - 1);
      best = std::max(best, std::abs(std::pow(t, j) * derivative(t, j)));
    }
  };
  auto bp = breakpoints();
  scan(bp[0], bp[1]);
  scan(bp[1], bp[2]);
  scan(bp[2], bp[3]);
  return best;
}

double default_ramp_delta(double x) {
  const double lx = std::log(x);
  if (!(lx > 1.5)) return 0.2;
  return std::min(0.2, std::pow(lx, -5.0));
}

CropFunction crop_build(double x, double ramp_delta) { return CropFunction(x, ramp_delta); }

// --- sieve weights ------------------------------------------------------------

SieveWeights::SieveWeights(std::vector<std::pair<std::uint64_t, double>> entries,
                           const FactorTable& table)
    : entries_(std::move(entries)), description_("custom") {
  std::sort(entries_.begin(), entries_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto [h, lam] = entries_[i];
    if (h == 0) throw DomainError("sieve weight index must be >= 1");
    if (i > 0 && entries_[i - 1].first == h) throw DomainError("duplicate sieve weight index");
    if (!std::isfinite(lam) || std::abs(lam) > 1.0) {
      throw DomainError("sieve weights must satisfy |lambda_h| <= 1");
    }
    if (!factorize(h, table).squarefree()) {
      throw DomainError("sieve weights live on squarefree h only");
    }
  }
}

SieveWeights SieveWeights::delta_one() {
  SieveWeights w;
  w.entries_ = {{1, 1.0}};
  w.description_ = "delta1";
  return w;
}

SieveWeights SieveWeights::mobius(std::uint64_t y, const FactorTable& table) {
  SieveWeights w;
  for (std::uint64_t h = 1; h <= y; ++h) {
    int mu = gausslab::moebius(h, table);
    if (mu != 0) w.entries_.emplace_back(h, static_cast<double>(mu));
  }
  w.description_ = "mobius:" + std::to_string(y);
  return w;
}

SieveWeights SieveWeights::ones(std::uint64_t y, const FactorTable& table) {
  SieveWeights w;
  for (std::uint64_t h = 1; h <= y; ++h) {
    if (gausslab::moebius(h, table) != 0) w.entries_.emplace_back(h, 1.0);
  }
  w.description_ = "ones:" + std::to_string(y);
  return w;
}

std::vector<double> SieveWeights::beta_table(std::uint64_t kmax) const {
  std::vector<double> beta(kmax + 1, 0.0);
  for (const auto& [h, lam] : entries_) {
    if (h > kmax) break;
    for (std::uint64_t k = h; k <= kmax; k += h) beta[k] += lam;
  }
  return beta;
}

double SieveWeights::beta(std::uint64_t k) const {
  double s = 0.0;
  for (const auto& [h, lam] : entries_) {
    if (h > k) break;
    if (k % h == 0) s += lam;
  }
  return s;
}

// --- prime weights ------------------------------------------------------------

GammaWeights GammaWeights::log_on_odd_primes() { return GammaWeights(); }

GammaWeights GammaWeights::zero() {
  GammaWeights g;
  g.rule_ = Rule::zero;
  g.name_ = "zero";
  return g;
}

GammaWeights GammaWeights::custom(std::function<double(std::uint64_t)> rule, std::string name) {
  if (!rule) throw DomainError("custom gamma rule is empty");
  GammaWeights g;
  g.rule_ = Rule::custom;
  g.custom_ = std::move(rule);
  g.name_ = std::move(name);
  return g;
}

double GammaWeights::operator()(std::uint64_t l) const {
  if (l < 3 || l % 2 == 0 || !is_prime(l)) return 0.0;
  return on_odd_prime(l);
}

double GammaWeights::on_odd_prime(std::uint64_t l) const {
  switch (rule_) {
    case Rule::log_on_odd_primes: return std::log(static_cast<double>(l));
    case Rule::zero: return 0.0;
    case Rule::custom: {
      double v = custom_(l);
      if (!std::isfinite(v) || std::abs(v) > std::log(static_cast<double>(l))) {
        throw DomainError("custom gamma weight exceeds log l");
      }
      return v;
    }
  }
  throw InvariantError("unknown gamma rule");
}

// --- model crop ---------------------------------------------------------------

double CropW::operator()(double y) const { return derivative(y, 0); }

double CropW::derivative(double y, int j) const {
  if (!(y > 0.0 && y < 1.0)) return 0.0;
  const double q = y - y * y;
  const double dq = 1.0 - 2.0 * y;
  switch (j) {
    case 0: return 140.0 * q * q * q;
    case 1: return 140.0 * 3.0 * q * q * dq;
    case 2: return 140.0 * (6.0 * q * dq * dq - 6.0 * q * q);
    case 3: return 140.0 * (6.0 * dq * dq * dq - 36.0 * q * dq);
    default: throw DomainError("CropW derivative order must be in [0, 3]");
  }
}

CropW crop_w_build() { return CropW{}; }

}  // namespace gausslab
