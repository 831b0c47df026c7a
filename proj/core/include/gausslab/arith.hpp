#pragma once

// Sieves, factorization and the arithmetic functions the rest of the library
// consumes: von Mangoldt of every order, Moebius, Euler phi, the character mod 4,
// deterministic 64-bit primality and the almost-prime indicator.

#include <cstdint>
#include <span>
#include <vector>

namespace gausslab {

// Smallest-prime-factor table for 2 <= n <= limit.  Immutable after
// construction and safe to share between threads.
class FactorTable {
 public:
  explicit FactorTable(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  std::uint32_t spf(std::uint64_t n) const;
  bool is_prime(std::uint64_t n) const { return n >= 2 && spf(n) == n; }

  // All primes <= limit, increasing.
  std::span<const std::uint32_t> primes() const { return primes_; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

FactorTable sieve_spf(std::uint64_t limit);

struct PrimePower {
  std::uint64_t prime;
  int exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct FactoredInt {
  std::uint64_t n = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing

  int omega() const { return static_cast<int>(factors.size()); }
  int big_omega() const;
  bool squarefree() const;
};

// Factorizes n using the table directly when n <= limit and trial division by
// the table's primes otherwise.  Throws GuardError when limit^2 < n.
FactoredInt factorize(std::uint64_t n, const FactorTable& table);

// Deterministic Miller-Rabin, correct for every 64-bit input.
bool is_prime(std::uint64_t n);

// Returns p when n = p^k (k >= 1), otherwise 0.  No table needed.
std::uint64_t prime_power_base(std::uint64_t n);

// Lambda(n) for n within the table.
double mangoldt(std::uint64_t n, const FactorTable& table);
// Lambda(n) for any 64-bit n (perfect-power check followed by primality).
double mangoldt_any(std::uint64_t n);

inline constexpr int kMaxMangoldtOrder = 8;

// Lambda_r = mu * log^r evaluated as a divisor sum over squarefree divisors.
double mangoldt_r(const FactoredInt& f, int r);
double mangoldt_r(std::uint64_t n, int r, const FactorTable& table);

int moebius(std::uint64_t n, const FactorTable& table);
std::uint64_t euler_phi(std::uint64_t n, const FactorTable& table);
int chi4(std::int64_t n);

enum class FactorCount { with_multiplicity, distinct };

// 1 when k has at most 7 prime factors, all strictly larger than k^(1/49).
int beta_apt(std::uint64_t k, const FactorTable& table,
             FactorCount counting = FactorCount::with_multiplicity);

// Segmented odd-only sieve of Eratosthenes; cheaper than a FactorTable when
// only the primes are needed (Euler products up to 1e8).
std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

// --- integer helpers -------------------------------------------------------

std::uint64_t isqrt(std::uint64_t n);
// floor(n^(1/k)) for k >= 1.
std::uint64_t iroot(std::uint64_t n, int k);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
// Inverse of a modulo m; throws DomainError when gcd(a, m) != 1.
std::uint64_t inv_mod(std::int64_t a, std::uint64_t m);
// Canonical residue of a modulo m in [0, m).
std::uint64_t mod_floor(std::int64_t a, std::uint64_t m);

}  // namespace gausslab
