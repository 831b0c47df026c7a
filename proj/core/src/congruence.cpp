#include "gausslab/congruence.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "gausslab/constants.hpp"
#include "gausslab/errors.hpp"
#include "gausslab/exact_sum.hpp"
#include "gausslab/prime_sums.hpp"
#include "gausslab/quadrature.hpp"
#include "gausslab/roots.hpp"

namespace gausslab {

namespace {

constexpr std::size_t kShards = 64;
constexpr std::uint64_t kAppendixMaxD = 5000;
constexpr std::uint64_t kMaxFourierTerms = 2'000'000;
// Relative safety margin on the quadrature of |phi''| and |phi'''|.
constexpr double kTailSafety = 1.01;

std::uint64_t crop_x(const CropFunction& f) {
  if (f.hi() > static_cast<double>(kPrimeSumMaxX)) throw GuardError("x beyond the congruence-sum guard");
  return static_cast<std::uint64_t>(std::floor(f.hi()));
}

std::uint64_t k_max(std::uint64_t x) { return x < 5 ? 0 : isqrt((x - 1) / 4); }

template <class Body>
ExactSum sharded_sum(std::size_t items, const Parallelism& par, Body body) {
  const std::size_t shards = std::min<std::size_t>(kShards, std::max<std::size_t>(items, 1));
  std::vector<ExactSum> parts(shards);
  for_each_shard(shards, par, [&](std::size_t s) {
    for (std::size_t i = items * s / shards; i < items * (s + 1) / shards; ++i) body(i, parts[s]);
  });
  ExactSum total;
  for (const auto& p : parts) total += p;
  return total;
}

}  // namespace

// --- A_d ------------------------------------------------------------------------

double A_d(const CropFunction& f, std::uint64_t d, const SieveWeights& lambda,
           const GammaWeights& gamma, const FactorTable& table, const Parallelism& par) {
  if (d == 0) throw DomainError("A_d needs d >= 1");
  if (d % 2 == 0) return 0.0;
  const std::uint64_t x = crop_x(f);
  if (table.limit() < prime_sum_table_limit(x)) throw GuardError("factor table too small for this x");
  const std::uint64_t K = k_max(x);
  const auto lo = static_cast<std::uint64_t>(std::floor(f.lo()));
  const auto beta = lambda.beta_table(K);
  const RootSet roots = roots_mod(d, table);

  struct Ell {
    std::uint64_t l;
    double g;
  };
  std::vector<Ell> ls;
  for (auto p : primes_up_to(x < 5 ? 0 : isqrt(x - 4))) {
    if (p == 2) continue;
    const double g = gamma.on_odd_prime(p);
    if (g != 0.0) ls.push_back({p, g});
  }
  const std::uint64_t inv2 = d == 1 ? 0 : (d + 1) / 2;

  ExactSum total = sharded_sum(ls.size(), par, [&](std::size_t i, ExactSum& acc) {
    const auto [l, g] = ls[i];
    const std::uint64_t l2 = l * l;
    auto visit = [&](std::uint64_t k) {
      const std::uint64_t n = 4 * k * k + l2;
      if (n <= lo || n > x || beta[k] == 0.0) return;
      const double fv = f(static_cast<double>(n));
      if (fv != 0.0) acc.add(a_term(beta[k], g, fv));
    };
    if (std::gcd(l, d) == 1) {
      // 4k^2 = -l^2 (mod d)  <=>  k = nu l / 2 (mod d)
      for (std::uint64_t nu : roots.roots) {
        const std::uint64_t r = mul_mod(mul_mod(nu, l % d, d), inv2, d);
        for (std::uint64_t k = r == 0 ? d : r; k <= K; k += d) visit(k);
      }
    } else {
      for (std::uint64_t k = 1; k <= K; ++k) {
        if ((4 * k * k + l2) % d == 0) visit(k);
      }
    }
  });
  return total.value();
}

double A_d_main(std::uint64_t d, const SieveWeights& lambda, double W, const FactorTable& table) {
  if (d == 0) throw DomainError("A_d_main needs d >= 1");
  if (d % 2 == 0) return 0.0;
  const double rd = static_cast<double>(rho(d, table));
  if (rd == 0.0) return 0.0;
  return rd / (2.0 * static_cast<double>(d)) * V_d(lambda, d) * W;
}

double A_d_main(const CropFunction& f, std::uint64_t d, const SieveWeights& lambda,
                const GammaWeights& gamma, const FactorTable& table, const Parallelism& par) {
  return A_d_main(d, lambda, W_and_I(f, gamma, par).W, table);
}

// --- Poisson expansion ------------------------------------------------------------

double poisson_tail_bound(std::uint64_t d, std::uint64_t h, double J2, double J3, std::uint64_t S) {
  if (S == 0) return std::numeric_limits<double>::infinity();
  const double dh = static_cast<double>(d) * static_cast<double>(h);
  const double s = static_cast<double>(S);
  const double twice = 2.0 * dh * J2 / (std::numbers::pi * std::numbers::pi * s);
  const double thrice = dh * dh * J3 / (std::pow(std::numbers::pi, 3) * s * s);
  return std::min(twice, thrice);
}

PoissonResult poisson_expand(std::uint64_t d, std::uint64_t h, std::uint64_t l, std::uint64_t nu,
                             const CropFunction& f, std::uint64_t S_max, double tail_target) {
  if (d == 0 || d % 2 == 0) throw DomainError("poisson_expand needs odd d");
  if (h == 0 || std::gcd(h, d) != 1) throw DomainError("poisson_expand needs gcd(h, d) = 1");
  if (l == 0) throw DomainError("poisson_expand needs l >= 1");
  if (nu >= d || (mul_mod(nu, nu, d) + 1) % d != 0) throw DomainError("nu is not a root of nu^2 + 1 mod d");
  if (!(tail_target > 0.0)) throw DomainError("tail target must be positive");

  const std::uint64_t c = d == 1 ? 0 : mul_mod(mul_mod(nu, l % d, d), inv_mod(static_cast<std::int64_t>((2 * h) % d), d), d);
  const double x = f.hi();
  const double l2 = static_cast<double>(l) * static_cast<double>(l);
  const double hh = static_cast<double>(h);

  PoissonResult out;
  ExactSum direct;
  for (std::uint64_t r : {c, (d - c) % d}) {
    for (std::uint64_t b = r == 0 ? d : r;; b += d) {
      const double bd = static_cast<double>(b);
      const double u = 4.0 * hh * hh * bd * bd + l2;
      if (u > x) break;
      direct.add(f(u));
    }
  }
  out.direct = direct.value();

  const double J2 = kTailSafety * J2_ell(l, f);
  const double J3 = kTailSafety * J3_ell(l, f);
  const double dh = static_cast<double>(d) * hh;
  std::uint64_t S = S_max;
  if (S == 0) {
    const double s2 = std::ceil(2.0 * dh * J2 / (std::numbers::pi * std::numbers::pi * tail_target));
    const double s3 = std::ceil(std::sqrt(dh * dh * J3 / (std::pow(std::numbers::pi, 3) * tail_target)));
    const double s = std::max(1.0, std::min(s2, s3));
    if (s > static_cast<double>(kMaxFourierTerms)) throw GuardError("Poisson expansion needs too many terms");
    S = static_cast<std::uint64_t>(s);
  }
  out.S = S;
  out.tail_bound = poisson_tail_bound(d, h, J2, J3, S);

  ExactSum fourier;
  const double F0 = I_ell(l, f);
  fourier.add(F0);
  for (std::uint64_t s = 1; s <= S; ++s) {
    const double v = static_cast<double>(s) / (2.0 * dh);
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(mul_mod(c, s % d, d)) / static_cast<double>(d);
    fourier.add(2.0 * F_ell(l, v, f) * std::cos(phase));
  }
  out.zero_frequency = F0 / dh;
  out.fourier = fourier.value() / dh - (c == 0 ? f(l2) : 0.0);
  return out;
}

double poisson_zero_frequency(std::uint64_t d, std::uint64_t h, std::uint64_t l,
                              const CropFunction& f, const FactorTable& table) {
  const double rd = static_cast<double>(rho(d, table));
  return rd * I_ell(l, f) / (2.0 * static_cast<double>(d) * static_cast<double>(h));
}

// --- remainder ------------------------------------------------------------------

RemainderReport remainder_R(const CropFunction& f, std::uint64_t D, const SieveWeights& lambda,
                            const GammaWeights& gamma, const FactorTable& table,
                            const Parallelism& par) {
  if (D == 0) throw DomainError("remainder_R needs D >= 1");
  RemainderReport rep;
  rep.W = W_and_I(f, gamma, par).W;
  ExactSum R;
  for (std::uint64_t d = 1; d <= D; d += 2) {
    RemainderRow row;
    row.d = d;
    row.rho = rho(d, table);
    row.A = A_d(f, d, lambda, gamma, table, par);
    row.main = A_d_main(d, lambda, rep.W, table);
    row.r = row.A - row.main;
    R.add(std::abs(row.r));
    rep.rows.push_back(row);
  }
  rep.R = R.value();
  const double x = f.hi();
  const double y = std::max<double>(1.0, static_cast<double>(lambda.level()));
  rep.bound = y * std::sqrt(static_cast<double>(D) * x) * std::log(x);
  return rep;
}

// --- model sequence -------------------------------------------------------------

double model_psi(std::uint64_t n, const FactorTable& table) {
  if (n == 0) throw DomainError("model_psi needs n >= 1");
  double v = 1.0;
  for (const auto& pp : factorize(n, table).factors) {
    if (pp.prime == 2) continue;
    if (pp.prime % 4 == 3) return 0.0;
    const double p = static_cast<double>(pp.prime);
    v *= 2.0 * (1.0 - 1.0 / p) / (1.0 - 2.0 / p);
  }
  return v;
}

double model_phi(std::uint64_t n, const FactorTable& table) {
  if (n == 0) throw DomainError("model_phi needs n >= 1");
  double v = 1.0;
  for (const auto& pp : factorize(n, table).factors) {
    if (pp.prime % 4 != 1) continue;
    const double p = static_cast<double>(pp.prime);
    v *= 1.0 / (1.0 - 2.0 / p);
  }
  return v;
}

ModelSequence::ModelSequence(const SieveWeights& lambda, const FactorTable& table) : table_(&table) {
  for (const auto& [h, lam] : lambda.entries()) {
    weights_.emplace_back(2 * h, lam * (model_phi(h, table) / static_cast<double>(h)));
  }
}

double ModelSequence::b(std::uint64_t n) const {
  const double ps = model_psi(n, *table_);
  if (ps == 0.0) return 0.0;
  ExactSum inner;
  for (const auto& [two_h, w] : weights_) {
    if (std::gcd(two_h, n) == 1) inner.add(w);
  }
  return ps * inner.value();
}

double model_b(std::uint64_t n, const SieveWeights& lambda, const FactorTable& table) {
  return ModelSequence(lambda, table).b(n);
}

double B_d(std::uint64_t x, std::uint64_t d, const SieveWeights& lambda, const CropW& w,
           const FactorTable& table, const Parallelism& par) {
  if (d == 0) throw DomainError("B_d needs d >= 1");
  if (d % 2 == 0) return 0.0;
  if (x < 2) return 0.0;
  if (table.limit() < x) throw GuardError("factor table too small for B_d at this x");
  const ModelSequence seq(lambda, table);
  const std::uint64_t count = (x - 1) / d;  // multiples d, 2d, ..., below x
  const double xd = static_cast<double>(x);
  ExactSum total = sharded_sum(count, par, [&](std::size_t i, ExactSum& acc) {
    const std::uint64_t n = d * (i + 1);
    const double b = seq.b(n);
    if (b != 0.0) acc.add(b_term(b, w(static_cast<double>(n) / xd)));
  });
  return total.value();
}

double B_d_main(std::uint64_t x, std::uint64_t d, const SieveWeights& lambda,
                const FactorTable& table) {
  if (d == 0) throw DomainError("B_d_main needs d >= 1");
  if (d % 2 == 0) return 0.0;
  const double H = 4.0 * kappa_reference_constant() / std::numbers::pi;
  const double rd = static_cast<double>(rho(d, table));
  return static_cast<double>(x) / H * (rd / (2.0 * static_cast<double>(d))) * V_d(lambda, d);
}

// --- sums of Lambda(k) Lambda(l) --------------------------------------------------

double chebyshev_psi(std::uint64_t x, const FactorTable& table) {
  if (table.limit() < x) throw GuardError("factor table too small for psi(x)");
  ExactSum s;
  for (std::uint64_t n = 2; n <= x; ++n) s.add(mangoldt(n, table));
  return s.value();
}

AppendixRow appendix_Ad(std::uint64_t x, std::uint64_t d, const FactorTable& table,
                        const Parallelism& par) {
  if (d == 0 || d % 2 == 0) throw DomainError("appendix_Ad needs odd d");
  if (d > kAppendixMaxD) throw GuardError("appendix_Ad: d beyond 5000");
  if (x > kAppendixMaxX) throw GuardError("appendix_Ad: x beyond 1e6");
  if (table.limit() < x) throw GuardError("factor table too small for appendix_Ad");

  struct PP {
    std::uint64_t n;
    double w;
  };
  std::vector<PP> pps;
  std::vector<std::vector<PP>> buckets(d);
  for (std::uint64_t n = 2; n <= x; ++n) {
    const double w = mangoldt(n, table);
    if (w == 0.0) continue;
    pps.push_back({n, w});
    buckets[n % d].push_back({n, w});
  }
  // good[a] lists residues b with d | 4a^2 + b^2.
  std::vector<std::vector<std::uint64_t>> good(d);
  for (std::uint64_t a = 0; a < d; ++a) {
    const std::uint64_t fa = mul_mod(4, mul_mod(a, a, d), d);
    for (std::uint64_t b = 0; b < d; ++b) {
      if ((fa + mul_mod(b, b, d)) % d == 0) good[a].push_back(b);
    }
  }
  ExactSum total = sharded_sum(pps.size(), par, [&](std::size_t i, ExactSum& acc) {
    const PP& k = pps[i];
    for (std::uint64_t b : good[k.n % d]) {
      for (const PP& l : buckets[b]) acc.add(k.w * l.w);
    }
  });
  AppendixRow row;
  row.d = d;
  row.A = total.value();
  const double ps = chebyshev_psi(x, table);
  row.main = static_cast<double>(rho(d, table)) / static_cast<double>(euler_phi(d, table)) * ps * ps;
  row.r = row.A - row.main;
  return row;
}

}  // namespace gausslab
