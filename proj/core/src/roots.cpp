#include "gausslab/roots.hpp"

#include <algorithm>
#include <numbers>

#include "gausslab/errors.hpp"

namespace gausslab {

namespace {

using u128 = unsigned __int128;

RootSet roots_prime_power(std::uint64_t p, int alpha) {
  RootSet out;
  out.d = 1;
  for (int i = 0; i < alpha; ++i) out.d *= p;
  if (p == 2) {
    if (alpha == 1) out.roots = {1};
    return out;
  }
  if (p % 4 == 3) return out;
  const std::uint64_t r = sqrt_mod_prime(p - 1, p);
  std::uint64_t a = hensel_lift(r, p, alpha);
  std::uint64_t b = hensel_lift(p - r, p, alpha);
  out.roots = {std::min(a, b), std::max(a, b)};
  return out;
}

RootSet roots_from_factorization(std::uint64_t d, const FactorTable& table) {
  RootSet acc;
  acc.d = 1;
  acc.roots = {0};
  if (d == 1) return acc;
  for (const auto& [p, e] : factorize(d, table).factors) {
    acc = crt_combine(acc, roots_prime_power(p, e));
    if (acc.roots.empty()) {
      acc.d = d;
      return acc;
    }
  }
  return acc;
}

}  // namespace

std::uint64_t sqrt_mod_prime(std::uint64_t a, std::uint64_t p) {
  if (p < 3 || p % 2 == 0) throw DomainError("sqrt_mod_prime: p must be an odd prime");
  a %= p;
  if (a == 0) return 0;
  if (pow_mod(a, (p - 1) / 2, p) != 1) throw DomainError("sqrt_mod_prime: non-residue");

  std::uint64_t q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint64_t z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;

  std::uint64_t m = s;
  std::uint64_t c = pow_mod(z, q, p);
  std::uint64_t t = pow_mod(a, q, p);
  std::uint64_t r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, t2 = t;
    while (t2 != 1) {
      t2 = mul_mod(t2, t2, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = mul_mod(b, b, p);
    m = i;
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    r = mul_mod(r, b, p);
  }
  return r;
}

std::uint64_t hensel_lift(std::uint64_t root, std::uint64_t p, int alpha) {
  std::uint64_t modulus = p;
  std::uint64_t nu = root % p;
  for (int k = 1; k < alpha; ++k) {
    const std::uint64_t next = modulus * p;
    // nu <- nu - (nu^2 + 1) / (2 nu)  (mod next); 2 nu is a unit since p is odd.
    const std::uint64_t f = (mul_mod(nu, nu, next) + 1) % next;
    const std::uint64_t inv = inv_mod(static_cast<std::int64_t>(2 * nu % next), next);
    nu = (nu + next - mul_mod(f, inv, next)) % next;
    modulus = next;
  }
  return nu;
}

RootSet crt_combine(const RootSet& a, const RootSet& b) {
  RootSet out;
  out.d = a.d * b.d;
  if (a.roots.empty() || b.roots.empty()) return out;
  const std::uint64_t inv = inv_mod(static_cast<std::int64_t>(a.d % b.d), b.d);
  out.roots.reserve(a.roots.size() * b.roots.size());
  for (std::uint64_t ra : a.roots) {
    for (std::uint64_t rb : b.roots) {
      const std::uint64_t diff = (rb + b.d - ra % b.d) % b.d;
      const std::uint64_t k = mul_mod(diff, inv, b.d);
      out.roots.push_back(ra + a.d * k);
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

RootSet roots_mod(std::uint64_t d, const FactorTable& table) {
  if (d == 0 || d % 2 == 0) throw DomainError("roots_mod: modulus must be odd and positive");
  return roots_from_factorization(d, table);
}

RootSet roots_mod_any(std::uint64_t d, const FactorTable& table) {
  if (d == 0) throw DomainError("roots_mod_any: modulus must be positive");
  return roots_from_factorization(d, table);
}

std::uint64_t rho(std::uint64_t d, const FactorTable& table) {
  if (d == 0 || d % 2 == 0) throw DomainError("rho: modulus must be odd and positive");
  std::uint64_t count = 1;
  for (const auto& pp : factorize(d, table).factors) {
    count *= static_cast<std::uint64_t>(1 + chi4(static_cast<std::int64_t>(pp.prime)));
    if (count == 0) break;
  }
  return count;
}

std::complex<double> unit_phase(std::int64_t num, std::uint64_t den) {
  const std::uint64_t r = mod_floor(num, den);
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

std::complex<double> weyl_sum(std::int64_t c, const RootSet& roots) {
  const std::uint64_t cm = mod_floor(c, roots.d);
  std::complex<double> acc = 0.0;
  for (std::uint64_t nu : roots.roots)
    acc += unit_phase(static_cast<std::int64_t>(mul_mod(nu, cm, roots.d)), roots.d);
  return acc;
}

std::complex<double> weyl_sum(std::int64_t c, std::uint64_t d, const FactorTable& table) {
  return weyl_sum(c, roots_mod(d, table));
}

}  // namespace gausslab
