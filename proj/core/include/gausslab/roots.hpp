#pragma once

// Roots of nu^2 + 1 = 0 (mod d), their count rho(d), and the Weyl harmonics
// rho_c(d) = sum_nu e(nu c / d).

#include <complex>
#include <cstdint>
#include <vector>

#include "gausslab/arith.hpp"

namespace gausslab {

struct RootSet {
  std::uint64_t d = 1;
  std::vector<std::uint64_t> roots;  // sorted residues in [0, d)

  std::size_t rho() const { return roots.size(); }
};

// Roots for odd d >= 1; even d is rejected with DomainError.  d = 1 yields {0}.
RootSet roots_mod(std::uint64_t d, const FactorTable& table);

// Same, but also accepts even d (one root mod 2, none mod 4).  The large sieve
// sums over every modulus in a dyadic block, so it needs this variant.
RootSet roots_mod_any(std::uint64_t d, const FactorTable& table);

// Multiplicative count with rho(p^a) = 1 + chi4(p) for odd p.  Odd d only.
std::uint64_t rho(std::uint64_t d, const FactorTable& table);

// Square root of a modulo an odd prime p by Tonelli-Shanks.  The quadratic
// non-residue is found by scanning 2, 3, 4, ... so the output is deterministic.
// Throws DomainError when a is a non-residue.
std::uint64_t sqrt_mod_prime(std::uint64_t a, std::uint64_t p);

// Lifts a root of nu^2 + 1 mod p to the unique root mod p^alpha reducing to it.
std::uint64_t hensel_lift(std::uint64_t root, std::uint64_t p, int alpha);

// Combines root sets of coprime moduli into the root set of the product.
RootSet crt_combine(const RootSet& a, const RootSet& b);

// e(num / den) = exp(2 pi i num / den), with num reduced mod den first.
std::complex<double> unit_phase(std::int64_t num, std::uint64_t den);

std::complex<double> weyl_sum(std::int64_t c, const RootSet& roots);
std::complex<double> weyl_sum(std::int64_t c, std::uint64_t d, const FactorTable& table);

}  // namespace gausslab
