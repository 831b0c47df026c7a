#include "gausslab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gausslab/errors.hpp"

namespace gausslab {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

constexpr unsigned kMaxDepth = 20;

}  // namespace

QuadResult integrate_pieces(const std::function<double(double)>& fn,
                            const std::vector<double>& cuts, double rel_tol) {
  QuadResult out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (!(b > a)) continue;
    double err = 0.0;
    double l1 = 0.0;
    // Integrate over [-1, 1]: this Boost release compares an error estimate
    // taken on the reference interval against a tolerance scaled to [a, b].
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto mapped = [&](double s) { return half * fn(mid + half * s); };
    const double v = GK::integrate(mapped, -1.0, 1.0, kMaxDepth, rel_tol, &err, &l1);
    if (!std::isfinite(v)) throw ConvergenceError("quadrature produced a non-finite value");
    // Boost stops at tol * L1; allow a small factor before declaring failure.
    if (err > 10.0 * rel_tol * l1 && err > 1e-300) {
      throw ConvergenceError("quadrature did not reach the requested tolerance");
    }
    out.value += v;
    out.error += err;
    out.l1 += l1;
  }
  return out;
}

std::vector<double> radial_cuts(std::uint64_t l, const CropFunction& f) {
  const double l2 = static_cast<double>(l) * static_cast<double>(l);
  std::vector<double> cuts;
  bool started = false;
  for (double u : f.breakpoints()) {
    if (u <= l2) continue;
    if (!started) {
      cuts.push_back(0.0);
      started = true;
    }
    cuts.push_back(std::sqrt(u - l2));
  }
  if (cuts.size() == 1) cuts.clear();
  // The segment from 0 up to the first preimage is dead when l^2 < x/2.
  if (!cuts.empty() && l2 < f.lo()) cuts.erase(cuts.begin());
  return cuts;
}

double radial_phi(double t, std::uint64_t l, const CropFunction& f, int j) {
  const double u = t * t + static_cast<double>(l) * static_cast<double>(l);
  switch (j) {
    case 0: return f.derivative(u, 0);
    case 1: return 2.0 * t * f.derivative(u, 1);
    case 2: return 2.0 * f.derivative(u, 1) + 4.0 * t * t * f.derivative(u, 2);
    case 3: return 12.0 * t * f.derivative(u, 2) + 8.0 * t * t * t * f.derivative(u, 3);
    default: throw DomainError("radial derivative order must be in [0, 3]");
  }
}

double I_ell(std::uint64_t l, const CropFunction& f) {
  const auto cuts = radial_cuts(l, f);
  if (cuts.empty()) return 0.0;
  return integrate_pieces([&](double t) { return radial_phi(t, l, f, 0); }, cuts).value;
}

double F_ell(std::uint64_t l, double v, const CropFunction& f) {
  if (v == 0.0) return I_ell(l, f);
  const auto base = radial_cuts(l, f);
  if (base.empty()) return 0.0;
  // Panels no wider than a quarter period of the cosine.
  const double panel = 0.25 / std::abs(v);
  std::vector<double> cuts;
  for (std::size_t i = 0; i + 1 < base.size(); ++i) {
    const double a = base[i];
    const double b = base[i + 1];
    const auto n = static_cast<std::size_t>(std::ceil((b - a) / panel));
    for (std::size_t k = 0; k < std::max<std::size_t>(n, 1); ++k) {
      cuts.push_back(a + (b - a) * static_cast<double>(k) / static_cast<double>(std::max<std::size_t>(n, 1)));
    }
  }
  cuts.push_back(base.back());
  const double w = 2.0 * std::numbers::pi * v;
  return integrate_pieces([&](double t) { return radial_phi(t, l, f, 0) * std::cos(w * t); }, cuts)
      .value;
}

double J2_ell(std::uint64_t l, const CropFunction& f) {
  const auto cuts = radial_cuts(l, f);
  if (cuts.empty()) return 0.0;
  return integrate_pieces([&](double t) { return std::abs(radial_phi(t, l, f, 2)); }, cuts, 1e-6)
      .value;
}

double J3_ell(std::uint64_t l, const CropFunction& f) {
  const auto cuts = radial_cuts(l, f);
  if (cuts.empty()) return 0.0;
  return integrate_pieces([&](double t) { return std::abs(radial_phi(t, l, f, 3)); }, cuts, 1e-6)
      .value;
}

double crop_integral_quad(const CropFunction& f) {
  return integrate_pieces([&](double t) { return f(t); }, f.breakpoints()).value;
}

}  // namespace gausslab
