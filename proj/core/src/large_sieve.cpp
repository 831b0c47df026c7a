#include "gausslab/large_sieve.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "gausslab/errors.hpp"
#include "gausslab/exact_sum.hpp"
#include "gausslab/roots.hpp"

namespace gausslab {

std::string to_string(AlphaKind kind) {
  switch (kind) {
    case AlphaKind::random: return "random";
    case AlphaKind::ones: return "ones";
    case AlphaKind::aligned: return "aligned";
  }
  return "unknown";
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

double unit_uniform(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_int(std::uint64_t& state, std::uint64_t lo, std::uint64_t hi) {
  return lo + splitmix64(state) % (hi - lo + 1);
}

void check_args(std::uint64_t h, std::uint64_t X, const FactorTable& table) {
  if (h == 0 || X == 0) throw DomainError("large sieve needs h, X >= 1");
  if (table.limit() < 2 * X) throw GuardError("factor table too small for 2X");
}

}  // namespace

double ls_lhs(std::uint64_t h, std::uint64_t X, const std::vector<std::complex<double>>& alpha,
              const FactorTable& table) {
  check_args(h, X, table);
  const std::size_t N = alpha.size();
  ExactSum total;
  std::vector<double> cs;
  std::vector<double> sn;
  for (std::uint64_t d = X + 1; d <= 2 * X; ++d) {
    if (std::gcd(d, h) != 1) continue;
    const RootSet roots = roots_mod_any(d, table);
    if (roots.roots.empty()) continue;
    cs.resize(d);
    sn.resize(d);
    for (std::uint64_t k = 0; k < d; ++k) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d);
      cs[k] = std::cos(a);
      sn[k] = std::sin(a);
    }
    const std::uint64_t hbar = d == 1 ? 0 : inv_mod(static_cast<std::int64_t>(h % d), d);
    for (std::uint64_t nu : roots.roots) {
      const std::uint64_t c = mul_mod(nu, hbar, d);
      double re = 0.0;
      double im = 0.0;
      std::uint64_t idx = c;  // c * n mod d for n = 1
      for (std::size_t n = 0; n < N; ++n) {
        const auto& a = alpha[n];
        re += a.real() * cs[idx] - a.imag() * sn[idx];
        im += a.real() * sn[idx] + a.imag() * cs[idx];
        idx += c;
        if (idx >= d) idx -= d;
      }
      total.add(re * re + im * im);
    }
  }
  return total.value();
}

double ls_rhs(std::uint64_t h, std::uint64_t X, const std::vector<std::complex<double>>& alpha) {
  ExactSum mass;
  for (const auto& a : alpha) mass.add(std::norm(a));
  return 400.0 * (static_cast<double>(h) * static_cast<double>(X) + static_cast<double>(alpha.size())) *
         mass.value();
}

std::vector<std::complex<double>> ls_alpha(AlphaKind kind, std::uint64_t h, std::uint64_t X,
                                           std::uint64_t N, std::uint64_t seed,
                                           const FactorTable& table) {
  check_args(h, X, table);
  std::vector<std::complex<double>> alpha(N, {1.0, 0.0});
  switch (kind) {
    case AlphaKind::ones: break;
    case AlphaKind::random: {
      std::uint64_t state = seed;
      for (auto& a : alpha) {
        const double r = unit_uniform(state);
        const double t = 2.0 * std::numbers::pi * unit_uniform(state);
        a = std::polar(r, t);
      }
      break;
    }
    case AlphaKind::aligned: {
      for (std::uint64_t d = X + 1; d <= 2 * X; ++d) {
        if (std::gcd(d, h) != 1) continue;
        const RootSet roots = roots_mod_any(d, table);
        if (roots.roots.empty()) continue;
        const std::uint64_t c = mul_mod(roots.roots.front(), inv_mod(static_cast<std::int64_t>(h % d), d), d);
        for (std::uint64_t n = 1; n <= N; ++n) {
          alpha[n - 1] = unit_phase(-static_cast<std::int64_t>(mul_mod(c, n % d, d)), d);
        }
        break;
      }
      break;
    }
  }
  return alpha;
}

LSTrial ls_trial(std::uint64_t h, std::uint64_t X, std::uint64_t N, std::uint64_t seed,
                 const FactorTable& table, AlphaKind kind) {
  if (N == 0) throw DomainError("large sieve needs N >= 1");
  LSTrial t;
  t.h = h;
  t.X = X;
  t.N = N;
  t.kind = kind;
  t.alpha = ls_alpha(kind, h, X, N, seed, table);
  t.lhs = ls_lhs(h, X, t.alpha, table);
  t.rhs = ls_rhs(h, X, t.alpha);
  t.ratio = t.rhs > 0.0 ? t.lhs / t.rhs : 0.0;
  return t;
}

LSCampaign ls_campaign(std::size_t trials, const LSRanges& ranges, std::uint64_t root_seed,
                       const FactorTable& table, const Parallelism& par) {
  if (ranges.h_max == 0 || ranges.X_max == 0 || ranges.N_max == 0) {
    throw DomainError("large sieve ranges must be positive");
  }
  LSCampaign out;
  out.trials.resize(trials);
  for_each_shard(trials, par, [&](std::size_t i) {
    std::uint64_t state = root_seed + i;
    const std::uint64_t h = uniform_int(state, 1, ranges.h_max);
    const std::uint64_t X = uniform_int(state, 1, ranges.X_max);
    const std::uint64_t N = uniform_int(state, 1, ranges.N_max);
    const std::uint64_t seed = splitmix64(state);
    AlphaKind kind = AlphaKind::random;
    if (i % 10 == 0) kind = AlphaKind::ones;
    if (i % 10 == 1) kind = AlphaKind::aligned;
    LSTrial t = ls_trial(h, X, N, seed, table, kind);
    t.alpha.clear();
    t.alpha.shrink_to_fit();
    out.trials[i] = std::move(t);
  });
  for (std::size_t i = 0; i < out.trials.size(); ++i) {
    if (out.trials[i].ratio > out.max_ratio) {
      out.max_ratio = out.trials[i].ratio;
      out.argmax = i;
    }
  }
  return out;
}

}  // namespace gausslab
