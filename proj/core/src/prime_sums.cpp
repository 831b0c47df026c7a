#include "gausslab/prime_sums.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "gausslab/constants.hpp"
#include "gausslab/errors.hpp"
#include "gausslab/exact_sum.hpp"
#include "gausslab/quadrature.hpp"

namespace gausslab {

namespace {

constexpr std::size_t kShards = 64;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_scale(std::uint64_t x, const FactorTable& table) {
  if (x > kPrimeSumMaxX) throw GuardError("x beyond the prime-sum guard of 1e10");
  if (table.limit() < prime_sum_table_limit(x)) {
    throw GuardError("factor table too small for this x");
  }
}

struct Weighted {
  std::uint64_t n;
  double w;
};

std::vector<Weighted> prime_powers(std::uint64_t limit, const FactorTable& table) {
  std::vector<Weighted> out;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    double lam = mangoldt(n, table);
    if (lam != 0.0) out.push_back({n, lam});
  }
  return out;
}

// Largest k with 4k^2 + 1 <= x.
std::uint64_t k_max(std::uint64_t x) { return x < 5 ? 0 : isqrt((x - 1) / 4); }

struct Partial {
  ExactSum sum;
  std::uint64_t count = 0;
};

// Runs body(item, partial) over items cut into a fixed number of contiguous
// shards, then merges the partials.
template <class T, class Body>
Partial sharded(const std::vector<T>& items, const Parallelism& par, Body body) {
  std::vector<Partial> parts(kShards);
  for_each_shard(kShards, par, [&](std::size_t s) {
    const std::size_t lo = items.size() * s / kShards;
    const std::size_t hi = items.size() * (s + 1) / kShards;
    for (std::size_t i = lo; i < hi; ++i) body(items[i], parts[s]);
  });
  Partial total;
  for (auto& p : parts) {
    total.sum += p.sum;
    total.count += p.count;
  }
  return total;
}

SumReport finish(std::uint64_t x, int r, const Partial& p, double reference,
                 Clock::time_point t0) {
  SumReport rep;
  rep.x = x;
  rep.r = r;
  rep.sum = p.sum.value();
  rep.pairs = p.count;
  rep.reference = reference;
  rep.ratio = reference != 0.0 ? rep.sum / reference : 0.0;
  rep.seconds = seconds_since(t0);
  return rep;
}

}  // namespace

std::uint64_t prime_sum_table_limit(std::uint64_t x) { return std::max<std::uint64_t>(isqrt(x) + 1, 16); }

double c_reference_constant() {
  static const double c = c_constant(10'000'000).value;
  return c;
}

double kappa_reference_constant() {
  static const double k = kappa(10'000'000).value;
  return k;
}

SumReport sum_G(std::uint64_t x, int r, const FactorTable& table, const Parallelism& par) {
  if (r < 1 || r > 7) throw DomainError("sum_G: r must lie in [1, 7]");
  check_scale(x, table);
  const auto t0 = Clock::now();
  std::vector<Weighted> ks;
  for (std::uint64_t k = 1; k <= k_max(x); ++k) {
    double w = mangoldt_r(k, r, table);
    if (w != 0.0) ks.push_back({k, w});
  }
  const auto ls = prime_powers(x < 5 ? 0 : isqrt(x - 4), table);
  Partial p = sharded(ks, par, [&](const Weighted& k, Partial& acc) {
    const std::uint64_t base = 4 * k.n * k.n;
    for (const auto& l : ls) {
      const std::uint64_t n = base + l.n * l.n;
      if (n > x) break;
      const double lam = mangoldt_any(n);
      if (lam == 0.0) continue;
      acc.sum.add(triple_term(k.w, l.w, lam));
      ++acc.count;
    }
  });
  const double lx = std::log(std::sqrt(static_cast<double>(x)));
  const double alt = c_reference_constant() * static_cast<double>(x) * std::pow(lx, r - 1);
  SumReport rep = finish(x, r, p, r * alt, t0);
  rep.reference_alt = alt;
  return rep;
}

SumReport sum_H(std::uint64_t x, int r, const FactorTable& table, const Parallelism& par) {
  if (r < 1 || r > 7) throw DomainError("sum_H: r must lie in [1, 7]");
  check_scale(x, table);
  const auto t0 = Clock::now();
  const auto ks = prime_powers(k_max(x), table);
  const auto ls = prime_powers(x < 5 ? 0 : isqrt(x - 4), table);
  Partial p = sharded(ks, par, [&](const Weighted& k, Partial& acc) {
    const std::uint64_t base = 4 * k.n * k.n;
    for (const auto& l : ls) {
      const std::uint64_t n = base + l.n * l.n;
      if (n > x) break;
      const double lam = mangoldt_r(factorize(n, table), r);
      if (lam == 0.0) continue;
      acc.sum.add(triple_term(k.w, l.w, lam));
      ++acc.count;
    }
  });
  const double lx = std::log(static_cast<double>(x));
  return finish(x, r, p, static_cast<double>(x) * std::pow(lx, r - 1), t0);
}

SumReport sum_APT(std::uint64_t x, const FactorTable& table, const Parallelism& par,
                  FactorCount counting) {
  check_scale(x, table);
  const auto t0 = Clock::now();
  std::vector<Weighted> ks;
  for (std::uint64_t k = 1; k <= k_max(x); ++k) {
    if (beta_apt(k, table, counting) == 1) ks.push_back({k, 1.0});
  }
  const auto ls = prime_powers(x < 5 ? 0 : isqrt(x - 4), table);
  Partial p = sharded(ks, par, [&](const Weighted& k, Partial& acc) {
    const std::uint64_t base = 4 * k.n * k.n;
    for (const auto& l : ls) {
      const std::uint64_t n = base + l.n * l.n;
      if (n > x) break;
      const double lam = mangoldt_any(n);
      if (lam == 0.0) continue;
      acc.sum.add(triple_term(k.w, l.w, lam));
      ++acc.count;
    }
  });
  const double xd = static_cast<double>(x);
  return finish(x, 0, p, xd / std::log(xd), t0);
}

SReport sum_S(const CropFunction& f, const SieveWeights& lambda, const GammaWeights& gamma,
              const FactorTable& table, const Parallelism& par) {
  if (f.hi() > static_cast<double>(kPrimeSumMaxX)) throw GuardError("x beyond the prime-sum guard of 1e10");
  const auto x = static_cast<std::uint64_t>(std::floor(f.hi()));
  check_scale(x, table);
  const auto beta = lambda.beta_table(k_max(x));
  std::vector<Weighted> ks;
  for (std::uint64_t k = 1; k <= k_max(x); ++k) {
    if (beta[k] != 0.0) ks.push_back({k, beta[k]});
  }
  std::vector<Weighted> ls;
  for (auto p : primes_up_to(x < 5 ? 0 : isqrt(x - 4))) {
    if (p == 2) continue;
    const double g = gamma.on_odd_prime(p);
    if (g != 0.0) ls.push_back({p, g});
  }
  const auto lo = static_cast<std::uint64_t>(std::floor(f.lo()));
  Partial p = sharded(ks, par, [&](const Weighted& k, Partial& acc) {
    const std::uint64_t base = 4 * k.n * k.n;
    for (const auto& l : ls) {
      const std::uint64_t n = base + l.n * l.n;
      if (n > x) break;
      if (n <= lo) continue;
      const double fv = f(static_cast<double>(n));
      if (fv == 0.0) continue;
      const double lam = mangoldt_any(n);
      if (lam == 0.0) continue;
      acc.sum.add(s_term(k.w, l.w, fv, lam));
      ++acc.count;
    }
  });
  SReport rep;
  rep.S = p.sum.value();
  rep.terms = p.count;
  rep.V = V_sum(lambda, table);
  rep.crop_integral = crop_integral_quad(f);
  rep.companion = kappa_reference_constant() * rep.V * rep.crop_integral;
  return rep;
}

WReport W_and_I(const CropFunction& f, const GammaWeights& gamma, const Parallelism& par) {
  const double x = f.hi();
  const auto lmax = static_cast<std::uint64_t>(std::ceil(std::sqrt(x)));
  std::vector<std::uint64_t> ls;
  for (auto p : primes_up_to(lmax)) {
    if (p != 2 && static_cast<double>(p) * p < x) ls.push_back(p);
  }
  WReport rep;
  rep.I.resize(ls.size());
  std::vector<double> terms(ls.size(), 0.0);
  const std::size_t shards = std::min<std::size_t>(kShards, std::max<std::size_t>(ls.size(), 1));
  for_each_shard(shards, par, [&](std::size_t s) {
    for (std::size_t i = ls.size() * s / shards; i < ls.size() * (s + 1) / shards; ++i) {
      const double v = I_ell(ls[i], f);
      rep.I[i] = {ls[i], v};
      terms[i] = gamma.on_odd_prime(ls[i]) * v;
    }
  });
  ExactSum w;
  for (double t : terms) w.add(t);
  rep.W = w.value();
  rep.target = 0.25 * std::numbers::pi * crop_integral_quad(f);
  rep.deviation = std::abs(rep.W - rep.target);
  return rep;
}

}  // namespace gausslab
