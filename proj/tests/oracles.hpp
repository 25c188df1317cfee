#pragma once
// Independent reference computations for the unit tests. Nothing here calls
// into the library's numerical kernels.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "xrt/forward.hpp"
#include "xrt/lattice.hpp"
#include "xrt/phantom.hpp"

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

namespace detail {
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                           double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol) return left + right + (left + right - whole) / 15;
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}
}  // namespace detail

/// Adaptive Simpson quadrature; copes with jump discontinuities by bisection.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                               int depth = 48) {
  if (b <= a) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// Integral of the density along the chord through e^{i beta} with direction
/// e^{i theta}, by stepping along the segment inside the unit disc.
inline double line_integral(const xrt::Phantom& f, double beta, double theta, double tol = 1e-12) {
  const cplx src = std::polar(1.0, beta);
  const cplx dir = std::polar(1.0, theta);
  const double len = -2 * std::cos(theta - beta);  // second intersection parameter
  const double a = std::min(0.0, len), b = std::max(0.0, len);
  auto g = [&](double t) {
    cplx z = src + t * dir;
    if (std::abs(z) > 1.0) z /= std::abs(z);
    return f.eval(z);
  };
  // split at interior points so the first Simpson panel sees the whole
  // profile, and at the foot of the perpendicular from each disc centre so a
  // grazing chord cannot slip between samples
  const int parts = 8;
  std::vector<double> cuts;
  for (int i = 0; i <= parts; ++i) cuts.push_back(a + (b - a) * i / parts);
  for (const auto& c : f.components()) {
    if (const auto* d = std::get_if<xrt::Disc>(&c)) {
      const double t = std::real((d->center - src) * std::conj(dir));
      if (t > a && t < b) cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) s += adaptive_simpson(g, cuts[i], cuts[i + 1], tol / parts);
  return s;
}

/// g_{n,k} by the literal double sum over cells.
inline cplx brute_dft(const xrt::TorusGrid& g, int n, int k) {
  cplx acc{};
  for (int j = 0; j < g.n_beta(); ++j) {
    const double b = -pi + 2 * pi * (j + 0.5) / g.n_beta();
    for (int l = 0; l < g.n_theta(); ++l) {
      const double t = -pi + 2 * pi * (l + 0.5) / g.n_theta();
      acc += g(j, l) * std::exp(cplx{0.0, -(n * t + k * b)});
    }
  }
  return acc / static_cast<double>(g.n_beta() * g.n_theta());
}

/// (1/pi) PV \int e^{in a} / (e^{ia} - e^{ib}) da, folded about the pole so
/// the integrand F(b + d) + F(b - d) is regular on (0, pi].
inline cplx pv_folded(int n, double beta) {
  // F(beta + d) + F(beta - d) for F(a) = e^{i n a} / (e^{i a} - e^{i beta}),
  // written without the cancelling 1/d poles
  auto folded = [&](double d) { return std::sin((n - 0.5) * d) / std::sin(0.5 * d); };
  using boost::math::quadrature::gauss_kronrod;
  const double s = gauss_kronrod<double, 61>::integrate(folded, 0.0, pi, 15, 1e-14);
  return std::polar(1.0, (n - 1) * beta) * s / pi;
}

/// Random lattice with entries on odd rows n <= -1 only.
inline xrt::FourierLattice random_odd_lattice(std::mt19937& rng, int n_max, int k_max, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  xrt::FourierLattice L(n_max, k_max);
  for (int n = -1; n >= -n_max; n -= 2) {
    for (int k = -k_max; k <= k_max; ++k) L.set(n, k, {nd(rng), nd(rng)});
  }
  return L;
}

/// Lattice satisfying every range condition: each constrained orbit gets a
/// single random value, conjugate rows filled in.
inline xrt::FourierLattice random_consistent_lattice(std::mt19937& rng, int n_max, int k_max) {
  std::normal_distribution<double> nd(0.0, 1.0);
  xrt::FourierLattice L(n_max, k_max);
  for (int n = -1; n >= -n_max; n -= 2) {
    for (int k = -k_max; k <= k_max; ++k) {
      if (n + 2 * k <= -1) continue;  // vanishing region
      const int pn = -n - 2 * k;      // reflected partner (pn, k) with conj and sign
      if (pn < n) continue;            // fill only one representative per pair
      const double sgn = (k + 1) % 2 == 0 ? 1.0 : -1.0;
      if (pn == n) {
        // self-partner: g = sgn conj(g)
        const double v = nd(rng);
        L.set(n, k, sgn > 0 ? cplx{v, 0.0} : cplx{0.0, v});
        continue;
      }
      const cplx v{nd(rng), nd(rng)};
      L.set(n, k, v);
      if (L.in_band(pn, k)) L.set(pn, k, sgn * std::conj(v));
    }
  }
  for (int n = 1; n <= n_max; n += 2) {
    for (int k = -k_max; k <= k_max; ++k) L.set(n, k, std::conj(L(-n, -k)));
  }
  return L;
}

}  // namespace oracle
