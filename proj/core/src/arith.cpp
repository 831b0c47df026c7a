#include "gausslab/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "gausslab/errors.hpp"
#include "gausslab/exact_sum.hpp"

namespace gausslab {

namespace {

using u128 = unsigned __int128;

constexpr std::array<std::uint32_t, 25> kSmallPrimes = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// min(base^exp, cap + 1), never overflowing.
u128 saturating_pow(std::uint64_t base, int exp, u128 cap) {
  u128 acc = 1;
  for (int i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > cap) return cap + 1;
  }
  return acc;
}

double ipow(double base, int exp) {
  double acc = 1.0;
  for (int i = 0; i < exp; ++i) acc *= base;
  return acc;
}

bool miller_rabin_round(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
  a %= n;
  if (a == 0) return true;
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

// --- integer helpers -------------------------------------------------------

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  a %= m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return result;
}

std::uint64_t mod_floor(std::int64_t a, std::uint64_t m) {
  const auto mm = static_cast<__int128>(m);
  __int128 r = static_cast<__int128>(a) % mm;
  if (r < 0) r += mm;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t inv_mod(std::int64_t a, std::uint64_t m) {
  if (m == 0) throw DomainError("inv_mod: zero modulus");
  if (m == 1) return 0;
  __int128 old_r = mod_floor(a, m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    std::swap(old_r, r);
    r -= q * old_r;
    std::swap(old_s, s);
    s -= q * old_s;
  }
  if (old_r != 1)
    throw DomainError("inv_mod: " + std::to_string(a) + " not invertible mod " + std::to_string(m));
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t iroot(std::uint64_t n, int k) {
  if (k < 1) throw DomainError("iroot: k must be >= 1");
  if (k == 1 || n < 2) return n;
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
  while (r > 0 && saturating_pow(r, k, n) > n) --r;
  while (saturating_pow(r + 1, k, n) <= n) ++r;
  return r;
}

// --- primality ---------------------------------------------------------------

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint32_t p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 97ULL * 97ULL) return true;

  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  if (n < (1ULL << 32)) {
    for (std::uint64_t a : {2ULL, 7ULL, 61ULL})
      if (!miller_rabin_round(n, a, d, s)) return false;
    return true;
  }
  // Bases known to be deterministic for all n < 2^64.
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL})
    if (!miller_rabin_round(n, a, d, s)) return false;
  return true;
}

std::uint64_t prime_power_base(std::uint64_t n) {
  if (n < 2) return 0;
  for (std::uint32_t p : kSmallPrimes) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1 ? p : 0;
    }
  }
  if (is_prime(n)) return n;
  // Every prime factor now exceeds 97, so the exponent is small.
  for (int e : {2, 3, 5, 7}) {
    if (saturating_pow(101, e, n) > n) break;
    const std::uint64_t r = iroot(n, e);
    if (saturating_pow(r, e, n) == n) return prime_power_base(r);
  }
  return 0;
}

// --- FactorTable -------------------------------------------------------------

FactorTable::FactorTable(std::uint64_t limit) : limit_(limit) {
  if (limit < 2) throw DomainError("FactorTable: limit must be >= 2");
  if (limit > std::numeric_limits<std::uint32_t>::max())
    throw GuardError("FactorTable: limit exceeds 32-bit range");
  spf_.assign(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    const std::uint32_t si = spf_[i];
    for (std::uint32_t p : primes_) {
      if (p > si) break;
      const std::uint64_t m = i * p;
      if (m > limit) break;
      spf_[m] = p;
    }
  }
}

std::uint32_t FactorTable::spf(std::uint64_t n) const {
  if (n < 2 || n > limit_)
    throw GuardError("FactorTable::spf: " + std::to_string(n) + " outside [2, " +
                     std::to_string(limit_) + "]");
  return spf_[n];
}

FactorTable sieve_spf(std::uint64_t limit) { return FactorTable(limit); }

// --- factorization ------------------------------------------------------------

int FactoredInt::big_omega() const {
  int total = 0;
  for (const auto& pp : factors) total += pp.exponent;
  return total;
}

bool FactoredInt::squarefree() const {
  return std::all_of(factors.begin(), factors.end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

FactoredInt factorize(std::uint64_t n, const FactorTable& table) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  FactoredInt out;
  out.n = n;
  std::uint64_t rem = n;

  auto push = [&](std::uint64_t p) {
    int e = 0;
    while (rem % p == 0) {
      rem /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  };

  if (rem > table.limit()) {
    bool proven_prime = is_prime(rem);
    for (std::uint32_t p : table.primes()) {
      if (proven_prime || rem <= table.limit()) break;
      if (static_cast<u128>(p) * p > rem) break;
      if (rem % p == 0) {
        push(p);
        proven_prime = rem > table.limit() && is_prime(rem);
      }
    }
    if (rem > table.limit()) {
      const std::uint32_t last = table.primes().empty() ? 1 : table.primes().back();
      if (!proven_prime && static_cast<u128>(last) * last < rem && !is_prime(rem))
        throw GuardError("factorize: " + std::to_string(n) + " needs primes beyond the table");
      out.factors.push_back({rem, 1});
      return out;
    }
  }
  while (rem > 1) push(table.spf(rem));
  return out;
}

// --- arithmetic functions -------------------------------------------------------

double mangoldt(std::uint64_t n, const FactorTable& table) {
  if (n == 0) throw DomainError("mangoldt: n must be positive");
  if (n > table.limit()) throw GuardError("mangoldt: n beyond table limit");
  if (n == 1) return 0.0;
  const std::uint32_t p = table.spf(n);
  std::uint64_t m = n;
  while (m % p == 0) m /= p;
  return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

double mangoldt_any(std::uint64_t n) {
  const std::uint64_t p = prime_power_base(n);
  return p == 0 ? 0.0 : std::log(static_cast<double>(p));
}

double mangoldt_r(const FactoredInt& f, int r) {
  if (r < 1 || r > kMaxMangoldtOrder)
    throw DomainError("mangoldt_r: order must lie in [1, 8]");
  if (f.n == 1 || f.omega() > r) return 0.0;
  const int w = f.omega();
  // Order one is Lambda itself; return log p directly so both agree bitwise.
  if (r == 1) return std::log(static_cast<double>(f.factors[0].prime));
  ExactSum acc;
  for (std::uint32_t mask = 0; mask < (1u << w); ++mask) {
    std::uint64_t d = 1;
    int parity = 0;
    for (int i = 0; i < w; ++i) {
      if (mask & (1u << i)) {
        d *= f.factors[i].prime;
        ++parity;
      }
    }
    const double term = ipow(std::log(static_cast<double>(f.n / d)), r);
    acc.add(parity % 2 == 0 ? term : -term);
  }
  return acc.value();
}

double mangoldt_r(std::uint64_t n, int r, const FactorTable& table) {
  if (n == 0) throw DomainError("mangoldt_r: n must be positive");
  if (n > table.limit()) throw GuardError("mangoldt_r: n beyond table limit");
  return mangoldt_r(factorize(n, table), r);
}

int moebius(std::uint64_t n, const FactorTable& table) {
  const FactoredInt f = factorize(n, table);
  if (!f.squarefree()) return 0;
  return f.omega() % 2 == 0 ? 1 : -1;
}

std::uint64_t euler_phi(std::uint64_t n, const FactorTable& table) {
  const FactoredInt f = factorize(n, table);
  std::uint64_t phi = 1;
  for (const auto& [p, e] : f.factors) {
    phi *= p - 1;
    for (int i = 1; i < e; ++i) phi *= p;
  }
  return phi;
}

int chi4(std::int64_t n) {
  switch (mod_floor(n, 4)) {
    case 1:
      return 1;
    case 3:
      return -1;
    default:
      return 0;
  }
}

int beta_apt(std::uint64_t k, const FactorTable& table, FactorCount counting) {
  if (k == 0) throw DomainError("beta_apt: k must be positive");
  if (k == 1) return 1;
  const FactoredInt f = factorize(k, table);
  const int count = counting == FactorCount::with_multiplicity ? f.big_omega() : f.omega();
  if (count > 7) return 0;
  for (const auto& pp : f.factors) {
    // p > k^(1/49)  <=>  p^49 > k
    if (saturating_pow(pp.prime, 49, k) <= k) return 0;
  }
  return 1;
}

// --- prime generation -------------------------------------------------------

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
  if (limit > std::numeric_limits<std::uint32_t>::max())
    throw GuardError("primes_up_to: limit exceeds 32-bit range");
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  out.push_back(2);

  const std::uint64_t root = isqrt(limit);
  std::vector<std::uint32_t> base;
  {
    std::vector<char> composite(root + 1, 0);
    for (std::uint64_t i = 3; i <= root; i += 2) {
      if (composite[i]) continue;
      base.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= root; j += 2 * i) composite[j] = 1;
    }
  }

  // Segment over odd numbers: index i represents lo + 2i.
  constexpr std::uint64_t kSegment = 1 << 18;
  std::vector<char> mark(kSegment);
  for (std::uint64_t lo = 3; lo <= limit; lo += 2 * kSegment) {
    const std::uint64_t hi = std::min(limit, lo + 2 * kSegment - 1);
    const std::uint64_t count = (hi - lo) / 2 + 1;
    std::fill(mark.begin(), mark.begin() + count, 0);
    for (std::uint32_t p : base) {
      const std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
      if (pp > hi) break;
      std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
      if (start % 2 == 0) start += p;
      for (std::uint64_t j = start; j <= hi; j += 2 * p) mark[(j - lo) / 2] = 1;
    }
    for (std::uint64_t i = 0; i < count; ++i)
      if (!mark[i]) out.push_back(static_cast<std::uint32_t>(lo + 2 * i));
  }
  return out;
}

}  // namespace gausslab
