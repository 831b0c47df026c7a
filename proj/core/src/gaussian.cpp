#include "gausslab/gaussian.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "gausslab/errors.hpp"
#include "gausslab/exact_sum.hpp"

namespace gausslab {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw GuardError("Gaussian integer coordinate overflow");
  return static_cast<std::int64_t>(v);
}

void check_coords(GaussInt g) {
  if (std::llabs(g.re) > kGaussCoordLimit || std::llabs(g.im) > kGaussCoordLimit) {
    throw GuardError("Gaussian integer coordinates exceed 2^30");
  }
}

// Nearest integer to num/den for den > 0, ties toward +infinity.
i128 div_round(i128 num, i128 den) {
  i128 a = 2 * num + den;
  i128 b = 2 * den;
  i128 q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

bool squarefree_u64(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return false;
  }
  return true;
}

std::uint64_t phi_u64(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

// Image of i in Z/N(m) for primitive m = a + bi: the root j = -a/b.
std::uint64_t i_mod(GaussInt m) {
  const auto nm = static_cast<std::uint64_t>(norm(m));
  if (nm == 1) return 0;
  return mul_mod(mod_floor(-m.re, nm), inv_mod(m.im, nm), nm);
}

std::uint64_t reduce(GaussInt g, std::uint64_t j, std::uint64_t modulus) {
  return (mod_floor(g.re, modulus) + mul_mod(mod_floor(g.im, modulus), j, modulus)) % modulus;
}

double pair_term(double g1, double g2, double f1, double f2) { return (g1 * g2) * (f1 * f2); }

std::vector<std::uint32_t> odd_primes_up_to(std::uint64_t limit) {
  auto all = primes_up_to(limit);
  if (!all.empty() && all.front() == 2) all.erase(all.begin());
  return all;
}

std::uint64_t crop_limit(const CropFunction& f) {
  const double x = std::floor(f.hi());
  if (!(x >= 0.0) || x > static_cast<double>(kDformMaxX)) {
    throw GuardError("crop scale beyond the bilinear-sum guard");
  }
  return isqrt(static_cast<std::uint64_t>(x));
}

}  // namespace

std::int64_t norm(GaussInt g) {
  check_coords(g);
  return g.re * g.re + g.im * g.im;
}

GaussInt conj(GaussInt g) { return {g.re, -g.im}; }

GaussInt mul(GaussInt a, GaussInt b) {
  i128 re = static_cast<i128>(a.re) * b.re - static_cast<i128>(a.im) * b.im;
  i128 im = static_cast<i128>(a.re) * b.im + static_cast<i128>(a.im) * b.re;
  return {narrow(re), narrow(im)};
}

GaussInt add(GaussInt a, GaussInt b) {
  return {narrow(static_cast<i128>(a.re) + b.re), narrow(static_cast<i128>(a.im) + b.im)};
}

GaussInt sub(GaussInt a, GaussInt b) {
  return {narrow(static_cast<i128>(a.re) - b.re), narrow(static_cast<i128>(a.im) - b.im)};
}

bool is_primitive(GaussInt g) {
  if (std::gcd(g.re, g.im) != 1) return false;
  return norm(g) % 2 == 1;
}

bool divides(GaussInt d, GaussInt n) {
  if (d.re == 0 && d.im == 0) return n.re == 0 && n.im == 0;
  const i128 nd = static_cast<i128>(d.re) * d.re + static_cast<i128>(d.im) * d.im;
  GaussInt p = mul(n, conj(d));
  return p.re % nd == 0 && p.im % nd == 0;
}

GaussInt exact_div(GaussInt n, GaussInt d) {
  if (!divides(d, n) || (d.re == 0 && d.im == 0)) throw DomainError("Gaussian division is not exact");
  const i128 nd = static_cast<i128>(d.re) * d.re + static_cast<i128>(d.im) * d.im;
  GaussInt p = mul(n, conj(d));
  return {narrow(p.re / nd), narrow(p.im / nd)};
}

GaussInt canonical(GaussInt g) {
  for (int k = 0; k < 4; ++k) {
    if (g.re > 0 && g.im >= 0) return g;
    if (g.re == 0 && g.im == 0) return g;
    g = {-g.im, g.re};  // multiply by i
  }
  throw InvariantError("no canonical associate found");
}

GaussInt gauss_gcd(GaussInt a, GaussInt b) {
  while (b.re != 0 || b.im != 0) {
    const i128 nb = static_cast<i128>(b.re) * b.re + static_cast<i128>(b.im) * b.im;
    GaussInt p = mul(a, conj(b));
    GaussInt q{narrow(div_round(p.re, nb)), narrow(div_round(p.im, nb))};
    GaussInt r = sub(a, mul(q, b));
    a = b;
    b = r;
  }
  return canonical(a);
}

std::int64_t delta(GaussInt m1, GaussInt m2) { return mul(conj(m1), m2).im; }

std::string to_string(GaussInt g) {
  if (g.im < 0) return std::to_string(g.re) + "-" + std::to_string(-g.im) + "i";
  return std::to_string(g.re) + "+" + std::to_string(g.im) + "i";
}

// --- the congruence system ------------------------------------------------------

bool omega_admissible(GaussInt m1, GaussInt m2, std::int64_t h) {
  if (h < 1) return false;
  for (GaussInt m : {m1, m2}) {
    if (!is_primitive(m)) return false;
    auto nm = static_cast<std::uint64_t>(norm(m));
    if (!squarefree_u64(nm)) return false;
    if (std::gcd(nm, static_cast<std::uint64_t>(2 * h)) != 1) return false;
  }
  const std::int64_t dl = delta(m1, m2);
  return dl != 0 && dl % (2 * h) == 0;
}

OmegaClass solve_omega(GaussInt m1, GaussInt m2, std::int64_t h) {
  if (h < 1) throw DomainError("h must be positive");
  for (GaussInt m : {m1, m2}) {
    if (!is_primitive(m)) throw DomainError("modulus " + to_string(m) + " is not primitive");
    auto nm = static_cast<std::uint64_t>(norm(m));
    if (!squarefree_u64(nm)) throw DomainError("modulus " + to_string(m) + " is not squarefree");
    if (std::gcd(nm, static_cast<std::uint64_t>(2 * h)) != 1) {
      throw DomainError("modulus " + to_string(m) + " is not coprime to 2h");
    }
  }
  const std::int64_t dl = delta(m1, m2);
  if (dl == 0) throw DomainError("diagonal pair: delta = 0");
  if (dl % (2 * h) != 0) throw DomainError("2h does not divide delta: the system has no solutions");

  const GaussInt g = gauss_gcd(m1, m2);
  const GaussInt a1 = exact_div(m1, g);
  const GaussInt a2 = exact_div(m2, g);
  const auto d = static_cast<std::uint64_t>(norm(g));
  const std::int64_t D = delta(a1, a2);
  if (static_cast<i128>(D) * static_cast<i128>(d) != dl) {
    throw InvariantError("delta does not factor through the common divisor");
  }
  const auto n1 = static_cast<std::uint64_t>(norm(a1));
  const std::int64_t p = mul(conj(a1), a2).re;
  const std::uint64_t absD = static_cast<std::uint64_t>(std::llabs(D));
  const std::uint64_t m_small = 2 * absD * static_cast<std::uint64_t>(h);
  if (std::gcd(n1, m_small) != 1) throw DomainError("norm of m1/gcd is not coprime to 2Dh");

  // omega a1 = Re(conj(a1) a2) (mod 2|D|h)
  const std::uint64_t w0 = mul_mod(mod_floor(p, m_small), inv_mod(static_cast<std::int64_t>(n1), m_small), m_small);

  std::uint64_t w = w0;
  if (d > 1) {
    // Lift through t in omega = w0 + 2|D|h t so that the gcd divides
    // (omega a1 - a1 conj(a2)) / D.
    const std::uint64_t j = i_mod(g);
    GaussInt num = sub(GaussInt{narrow(static_cast<i128>(w0) * n1), 0}, mul(a1, conj(a2)));
    if (num.re % D != 0 || num.im % D != 0) throw InvariantError("omega base fails mod D");
    GaussInt g0{num.re / D, num.im / D};
    const std::uint64_t r0 = reduce(g0, j, d);
    const std::int64_t step = (D > 0 ? 2 : -2) * h;
    const std::uint64_t coef = mul_mod(mod_floor(step, d), n1 % d, d);
    const std::uint64_t t = mul_mod((d - r0) % d, inv_mod(static_cast<std::int64_t>(coef), d), d);
    w = w0 + m_small * t;
  }
  const std::uint64_t modulus = m_small * d;
  if (modulus != 2 * static_cast<std::uint64_t>(std::llabs(dl)) * static_cast<std::uint64_t>(h)) {
    throw InvariantError("omega modulus mismatch");
  }
  w %= modulus;

  // Verify both congruences and coprimality before handing omega out.
  if (std::gcd(w, modulus) != 1) throw InvariantError("omega is not a reduced residue");
  const GaussInt lhs{narrow(static_cast<i128>(w) * n1), 0};
  const GaussInt big = sub(lhs, mul(a1, conj(a2)));
  if (!divides(mul(g, GaussInt{D, 0}), big)) throw InvariantError("omega fails the congruence mod gcd*D");
  const GaussInt small = sub(big, GaussInt{0, D});
  const auto ms = static_cast<std::int64_t>(m_small);
  if (small.re % ms != 0 || small.im % ms != 0) throw InvariantError("omega fails the congruence mod 2Dh");

  return OmegaClass{m1, m2, h, dl, modulus, w};
}

std::optional<GaussInt> solve_system(std::int64_t l1, std::int64_t l2, GaussInt m1, GaussInt m2,
                                     std::int64_t h) {
  if (h < 1) throw DomainError("h must be positive");
  // Re(m n) = m.re u - m.im v for n = u + vi; Cramer's rule on the 2x2 system.
  const i128 a = m1.re, b = m1.im, c = m2.re, e = m2.im;
  const i128 det = -a * e + b * c;
  if (det == 0) return std::nullopt;
  const i128 un = -static_cast<i128>(l1) * e + b * l2;
  const i128 vn = a * l2 - c * l1;
  if (un % det != 0 || vn % det != 0) return std::nullopt;
  const GaussInt n{narrow(un / det), narrow(vn / det)};
  const GaussInt p1 = mul(m1, n);
  const GaussInt p2 = mul(m2, n);
  if (p1.re != l1 || p2.re != l2) throw InvariantError("linear solve does not reproduce l1, l2");
  if (p1.im % (2 * h) != 0 || p2.im % (2 * h) != 0) return std::nullopt;
  return n;
}

std::optional<std::uint64_t> try_quad_form_n(std::int64_t l1, std::int64_t l2, GaussInt m1,
                                             GaussInt m2) {
  const std::int64_t dl = delta(m1, m2);
  if (dl == 0) throw DomainError("diagonal pair: delta = 0");
  const i128 yr = static_cast<i128>(l1) * m2.re - static_cast<i128>(l2) * m1.re;
  const i128 yi = static_cast<i128>(l1) * m2.im - static_cast<i128>(l2) * m1.im;
  const i128 num = yr * yr + yi * yi;
  const i128 den = static_cast<i128>(dl) * dl;
  if (num % den != 0) return std::nullopt;
  if (yr % dl == 0 && yi % dl == 0) {
    // n = i conj(Y) / delta must reproduce the real parts l1, l2.
    const GaussInt n{narrow(yi / dl), narrow(yr / dl)};
    if (mul(m1, n).re != l1 || mul(m2, n).re != l2) {
      throw InvariantError("quadratic form does not reproduce the linear system");
    }
  }
  const i128 q = num / den;
  if (q > static_cast<i128>(UINT64_MAX)) throw GuardError("quadratic form overflow");
  return static_cast<std::uint64_t>(q);
}

std::uint64_t quad_form_n(std::int64_t l1, std::int64_t l2, GaussInt m1, GaussInt m2) {
  auto n = try_quad_form_n(l1, l2, m1, m2);
  if (!n) throw DomainError("quadratic form is not integral: (l1, l2) fails the congruence mod delta");
  return *n;
}

double dform_sum(GaussInt m1, GaussInt m2, std::int64_t h, const CropFunction& f,
                 const GammaWeights& gamma) {
  if (delta(m1, m2) == 0) throw DomainError("diagonal pair: use dform_diag");
  const auto primes = odd_primes_up_to(crop_limit(f));
  const double w1 = static_cast<double>(norm(m1));
  const double w2 = static_cast<double>(norm(m2));
  ExactSum acc;
  for (std::uint32_t l1 : primes) {
    const double g1 = gamma.on_odd_prime(l1);
    for (std::uint32_t l2 : primes) {
      auto n = solve_system(l1, l2, m1, m2, h);
      if (!n) continue;
      const double nn = static_cast<double>(norm(*n));
      const double f1 = f(w1 * nn);
      const double f2 = f(w2 * nn);
      if (f1 == 0.0 || f2 == 0.0) continue;
      acc.add(pair_term(g1, gamma.on_odd_prime(l2), f1, f2));
    }
  }
  return acc.value();
}

double dform_sum_congruence(GaussInt m1, GaussInt m2, std::int64_t h, const CropFunction& f,
                            const GammaWeights& gamma) {
  const std::int64_t dl = delta(m1, m2);
  if (dl == 0) throw DomainError("diagonal pair: use dform_diag");
  if (dl % (2 * h) != 0) return 0.0;
  const OmegaClass oc = solve_omega(m1, m2, h);
  const std::uint64_t lmax = crop_limit(f);
  const auto primes = odd_primes_up_to(lmax);
  std::vector<bool> prime_flag(lmax + 1, false);
  for (auto p : primes) prime_flag[p] = true;
  const double w1 = static_cast<double>(norm(m1));
  const double w2 = static_cast<double>(norm(m2));
  ExactSum acc;
  for (std::uint32_t l1 : primes) {
    const double g1 = gamma.on_odd_prime(l1);
    const std::uint64_t start = mul_mod(oc.omega, l1, oc.modulus);
    for (std::uint64_t l2 = start; l2 <= lmax; l2 += oc.modulus) {
      if (!prime_flag[l2]) continue;
      auto n = try_quad_form_n(l1, static_cast<std::int64_t>(l2), m1, m2);
      if (!n) continue;
      const double nn = static_cast<double>(*n);
      const double f1 = f(w1 * nn);
      const double f2 = f(w2 * nn);
      if (f1 == 0.0 || f2 == 0.0) continue;
      acc.add(pair_term(g1, gamma.on_odd_prime(l2), f1, f2));
    }
  }
  return acc.value();
}

DformSplit dform_split(GaussInt m1, GaussInt m2, std::int64_t h, const CropFunction& f,
                       const GammaWeights& gamma) {
  const std::int64_t dl = delta(m1, m2);
  if (dl == 0) throw DomainError("diagonal pair: use dform_diag");
  DformSplit out;
  out.modulus = 2 * static_cast<std::uint64_t>(std::llabs(dl)) * static_cast<std::uint64_t>(h);
  out.D = dform_sum_congruence(m1, m2, h, f, gamma);
  const auto primes = odd_primes_up_to(crop_limit(f));
  const double w1 = static_cast<double>(norm(m1));
  const double w2 = static_cast<double>(norm(m2));
  const double d2 = static_cast<double>(dl) * static_cast<double>(dl);
  ExactSum all;
  for (std::uint32_t l1 : primes) {
    const double g1 = gamma.on_odd_prime(l1);
    for (std::uint32_t l2 : primes) {
      const double yr = static_cast<double>(l1) * m2.re - static_cast<double>(l2) * m1.re;
      const double yi = static_cast<double>(l1) * m2.im - static_cast<double>(l2) * m1.im;
      const double nn = (yr * yr + yi * yi) / d2;
      const double f1 = f(w1 * nn);
      const double f2 = f(w2 * nn);
      if (f1 == 0.0 || f2 == 0.0) continue;
      all.add(pair_term(g1, gamma.on_odd_prime(l2), f1, f2));
    }
  }
  out.E = all.value() / static_cast<double>(phi_u64(out.modulus));
  out.R = out.D - out.E;
  return out;
}

std::uint64_t dform_diag(GaussInt m, std::int64_t h, std::uint64_t x) {
  if (!is_primitive(m)) throw DomainError("dform_diag needs a primitive modulus");
  if (h < 1) throw DomainError("h must be positive");
  if (x > kDformMaxX) throw GuardError("x beyond the bilinear-sum guard");
  const auto nm = static_cast<std::uint64_t>(norm(m));
  const std::uint64_t j = i_mod(m);
  const auto hh = static_cast<std::uint64_t>(h);
  std::uint64_t count = 0;
  // b and -b handled together; b = 0 once.
  for (std::uint64_t b = 0; 4 * hh * hh * b * b < x; ++b) {
    const std::uint64_t L = isqrt(x - 4 * hh * hh * b * b);
    for (int sign : {1, -1}) {
      if (b == 0 && sign == -1) break;
      const std::int64_t bb = sign * static_cast<std::int64_t>(b);
      // l = -2hb j (mod m)
      const std::uint64_t r = mul_mod(mod_floor(-2 * h * bb, nm), j, nm);
      const std::uint64_t r0 = r == 0 ? nm : r;
      if (r0 <= L) count += (L - r0) / nm + 1;
    }
  }
  return count;
}

}  // namespace gausslab
