#pragma once

// Integrals of the crop function along the radial variable t, where the
// integrand is phi(t) = f(t^2 + l^2):
//   I(l)    = int_0^inf phi(t) dt
//   F_l(v)  = int_0^inf phi(t) cos(2 pi v t) dt
//   J_k(l)  = int_0^inf |phi^(k)(t)| dt for k = 2, 3 (Poisson tail bounds)
// All of them split at the preimages of the ramp joints of f.

#include <cstdint>
#include <functional>
#include <vector>

#include "gausslab/crop.hpp"

namespace gausslab {

inline constexpr double kQuadTolerance = 1e-9;

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  double l1 = 0.0;     // estimated integral of |fn|
};

// Adaptive Gauss-Kronrod (15 point rule) on each interval [cuts[i], cuts[i+1]].
// Throws ConvergenceError when the estimated error exceeds rel_tol * L1 on a piece.
QuadResult integrate_pieces(const std::function<double(double)>& fn,
                            const std::vector<double>& cuts, double rel_tol = kQuadTolerance);

// Interval endpoints in t where phi is polynomial in t^2 between; empty when
// l^2 >= x (phi vanishes identically on t >= 0).
std::vector<double> radial_cuts(std::uint64_t l, const CropFunction& f);

double radial_phi(double t, std::uint64_t l, const CropFunction& f, int j);

double I_ell(std::uint64_t l, const CropFunction& f);
double F_ell(std::uint64_t l, double v, const CropFunction& f);
double J2_ell(std::uint64_t l, const CropFunction& f);
double J3_ell(std::uint64_t l, const CropFunction& f);

// int f(t) dt by quadrature over the support.
double crop_integral_quad(const CropFunction& f);

}  // namespace gausslab
