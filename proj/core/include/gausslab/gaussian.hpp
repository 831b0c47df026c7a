#pragma once

// Gaussian integers and the off-diagonal congruence system for pairs of
// moduli m1, m2: the determinant Delta, the residue omega with
// l2 = omega l1 (mod 2|Delta|h), the quadratic form n(l1, l2) and the
// bilinear sum D_h(m1, m2) split into its expected part and remainder.

#include <cstdint>
#include <optional>
#include <string>

#include "gausslab/arith.hpp"
#include "gausslab/crop.hpp"

namespace gausslab {

struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  friend bool operator==(const GaussInt&, const GaussInt&) = default;
};

inline constexpr std::int64_t kGaussCoordLimit = std::int64_t{1} << 30;

std::int64_t norm(GaussInt g);
GaussInt conj(GaussInt g);
GaussInt mul(GaussInt a, GaussInt b);
GaussInt add(GaussInt a, GaussInt b);
GaussInt sub(GaussInt a, GaussInt b);
inline GaussInt operator*(GaussInt a, GaussInt b) { return mul(a, b); }
inline GaussInt operator+(GaussInt a, GaussInt b) { return add(a, b); }
inline GaussInt operator-(GaussInt a, GaussInt b) { return sub(a, b); }

// gcd(re, im) = 1 and odd norm, i.e. coprime to its conjugate.
bool is_primitive(GaussInt g);

bool divides(GaussInt d, GaussInt n);
// Exact quotient n / d; DomainError when d does not divide n.
GaussInt exact_div(GaussInt n, GaussInt d);
// Canonical associate: re > 0 and im >= 0 (zero maps to zero).
GaussInt canonical(GaussInt g);
GaussInt gauss_gcd(GaussInt a, GaussInt b);

// Im(conj(m1) m2).
std::int64_t delta(GaussInt m1, GaussInt m2);

std::string to_string(GaussInt g);

struct OmegaClass {
  GaussInt m1;
  GaussInt m2;
  std::int64_t h = 1;
  std::int64_t delta = 0;
  std::uint64_t modulus = 0;  // 2|delta|h
  std::uint64_t omega = 0;    // reduced residue mod modulus
};

// Requirements: m1, m2 primitive with squarefree norms coprime to 2h,
// delta != 0 and 2h | delta.  The result is checked against both defining
// congruences before it is returned.
OmegaClass solve_omega(GaussInt m1, GaussInt m2, std::int64_t h);

// True when m1, m2, h satisfy every requirement of solve_omega.
bool omega_admissible(GaussInt m1, GaussInt m2, std::int64_t h);

// The unique n with Re(m1 n) = l1, Re(m2 n) = l2 and 2h | Im(m1 n), Im(m2 n),
// if it exists.  Solves the 2x2 system directly and verifies.
std::optional<GaussInt> solve_system(std::int64_t l1, std::int64_t l2, GaussInt m1, GaussInt m2,
                                     std::int64_t h);

// n = |l1 m2 - l2 m1|^2 / delta^2.  DomainError when delta = 0 or the quotient
// is not an integer.
std::uint64_t quad_form_n(std::int64_t l1, std::int64_t l2, GaussInt m1, GaussInt m2);
std::optional<std::uint64_t> try_quad_form_n(std::int64_t l1, std::int64_t l2, GaussInt m1,
                                             GaussInt m2);

// D_h(m1, m2): sum over prime pairs (l1, l2) admitting the system of
// gamma_l1 gamma_l2 f(m1 n) f(m2 n).  The weights are real, so the sum is.
// Enumerates l1, l2 and solves the system for each pair.
double dform_sum(GaussInt m1, GaussInt m2, std::int64_t h, const CropFunction& f,
                 const GammaWeights& gamma);
// Same sum through l2 = omega l1 (mod 2|delta|h) and integrality of n.
double dform_sum_congruence(GaussInt m1, GaussInt m2, std::int64_t h, const CropFunction& f,
                            const GammaWeights& gamma);

struct DformSplit {
  double D = 0.0;  // congruence-restricted sum
  double E = 0.0;  // unrestricted sum over all prime pairs, divided by phi(2|delta|h)
  double R = 0.0;  // D - E
  std::uint64_t modulus = 0;
};

DformSplit dform_split(GaussInt m1, GaussInt m2, std::int64_t h, const CropFunction& f,
                       const GammaWeights& gamma);

// Number of (l, b) with l >= 1, b in Z, l^2 + 4h^2b^2 <= x and m | l + 2hbi.
// m must be primitive.
std::uint64_t dform_diag(GaussInt m, std::int64_t h, std::uint64_t x);

inline constexpr std::uint64_t kDformMaxX = 1'000'000'000'000ULL;

}  // namespace gausslab
