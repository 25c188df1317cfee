#include "xrt/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "xrt/parallel.hpp"

namespace xrt {

namespace {

// First derivative along one axis at (ix, iy); axis 0 is x. Returns false
// when no neighbour along the axis lies inside the mask.
bool line_derivative(const InteriorField& u, const std::vector<cplx>& v, int ix, int iy, int axis, cplx& d) {
  auto in = [&](int o) { return axis == 0 ? u.inside(ix + o, iy) : u.inside(ix, iy + o); };
  auto at = [&](int o) { return axis == 0 ? v[u.index(ix + o, iy)] : v[u.index(ix, iy + o)]; };
  const double h = u.h;
  if (in(-1) && in(1)) d = (at(1) - at(-1)) / (2 * h);
  else if (in(1) && in(2)) d = (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2 * h);
  else if (in(-1) && in(-2)) d = (3.0 * at(0) - 4.0 * at(-1) + at(-2)) / (2 * h);
  else if (in(1)) d = (at(1) - at(0)) / h;
  else if (in(-1)) d = (at(0) - at(-1)) / h;
  else return false;
  return true;
}

// Extreme nodes of the disc have no neighbour along one axis; borrow the
// derivative from the adjacent line one step toward the centre.
cplx axis_derivative(const InteriorField& u, const std::vector<cplx>& v, int ix, int iy, int axis) {
  cplx d{};
  if (line_derivative(u, v, ix, iy, axis, d)) return d;
  const int c = u.grid_n / 2;
  const int pos = axis == 0 ? iy : ix;
  const int first = pos > c ? -1 : 1;
  for (int shift : {first, -first}) {
    const int jx = axis == 0 ? ix : ix + shift;
    const int jy = axis == 0 ? iy + shift : iy;
    if (u.inside(jx, jy) && line_derivative(u, v, jx, jy, axis, d)) return d;
  }
  return {};
}

}  // namespace

BoundaryModeSequence build_boundary_sequence(const FourierLattice& L, int n_samples) {
  const int depth = std::max(1, (L.n_max() + 1) / 2);
  const int m = n_samples > 0 ? n_samples : std::max(kDefaultBoundarySamples, 2 * L.k_max() + 2);
  std::vector<std::vector<cplx>> spectra(static_cast<std::size_t>(depth),
                                         std::vector<cplx>(static_cast<std::size_t>(2 * L.k_max() + 1)));
  for (int j = 0; j < depth; ++j) {
    for (int k = -L.k_max(); k <= L.k_max(); ++k) {
      spectra[static_cast<std::size_t>(j)][static_cast<std::size_t>(k + L.k_max())] = L(-(2 * j + 1), k);
    }
  }
  return BoundaryModeSequence::from_spectrum(L.k_max(), std::move(spectra), m);
}

std::vector<std::uint8_t> disc_mask(double rho, int grid_n) {
  if (!(rho > 0.0)) throw std::invalid_argument("disc_mask: rho must be positive");
  if (grid_n < 5) throw std::invalid_argument("disc_mask: grid_n must be at least 5");
  const double h = 2 * rho / (grid_n - 1);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(grid_n) * grid_n);
  for (int iy = 0; iy < grid_n; ++iy) {
    for (int ix = 0; ix < grid_n; ++ix) {
      const cplx z{-rho + ix * h, -rho + iy * h};
      mask[static_cast<std::size_t>(iy) * grid_n + ix] = std::abs(z) <= rho * (1 + 1e-12) ? 1 : 0;
    }
  }
  return mask;
}

InteriorField interior_u(const BoundaryModeSequence& s, double rho, int grid_n, int j_terms, bool with_u3,
                         double max_radius) {
  if (rho > max_radius) {
    throw std::domain_error("interior_u: rho=" + std::to_string(rho) + " exceeds the interior radius " +
                            std::to_string(max_radius));
  }
  InteriorField u;
  u.rho = rho;
  u.grid_n = grid_n;
  u.mask = disc_mask(rho, grid_n);
  u.h = 2 * rho / (grid_n - 1);
  const std::size_t count = static_cast<std::size_t>(grid_n) * grid_n;
  u.u1.assign(count, cplx{});
  const bool third = with_u3 && s.depth() >= 2;
  if (with_u3) u.u3.assign(count, cplx{});

  CauchyOptions opts;
  opts.j_terms = j_terms;
  opts.max_radius = max_radius * (1 + 1e-12);
  std::vector<int> comps{0};
  if (third) comps.push_back(1);

  parallel_for(static_cast<std::size_t>(grid_n), [&](std::size_t row) {
    const int iy = static_cast<int>(row);
    for (int ix = 0; ix < grid_n; ++ix) {
      if (!u.inside(ix, iy)) continue;
      const auto vals = bukhgeim_cauchy(s, u.point(ix, iy), opts, comps);
      u.u1[u.index(ix, iy)] = vals[0];
      if (third) u.u3[u.index(ix, iy)] = vals[1];
    }
  });
  return u;
}

DensityGrid recover_f(const InteriorField& u) {
  if (u.grid_n < 5) throw std::invalid_argument("recover_f: grid_n must be at least 5");
  DensityGrid f;
  f.rho = u.rho;
  f.grid_n = u.grid_n;
  f.h = u.h;
  f.mask = u.mask;
  f.values.assign(u.u1.size(), 0.0);
  for (int iy = 0; iy < u.grid_n; ++iy) {
    for (int ix = 0; ix < u.grid_n; ++ix) {
      if (!u.inside(ix, iy)) continue;
      const cplx dx = axis_derivative(u, u.u1, ix, iy, 0);
      const cplx dy = axis_derivative(u, u.u1, ix, iy, 1);
      f.values[f.index(ix, iy)] = (0.5 * (dx - cplx{0.0, 1.0} * dy)).real();
    }
  }
  return f;
}

TransportResidual transport_residual(const InteriorField& u, double radius) {
  if (u.u3.size() != u.u1.size()) throw std::invalid_argument("transport_residual: u_{-3} not computed");
  TransportResidual r;
  double sq = 0.0;
  const cplx i1{0.0, 1.0};
  for (int iy = 0; iy < u.grid_n; ++iy) {
    for (int ix = 0; ix < u.grid_n; ++ix) {
      if (!u.inside(ix, iy) || std::abs(u.point(ix, iy)) > radius) continue;
      if (!(u.inside(ix - 1, iy) && u.inside(ix + 1, iy) && u.inside(ix, iy - 1) && u.inside(ix, iy + 1))) continue;
      const cplx u1x = (u.u1[u.index(ix + 1, iy)] - u.u1[u.index(ix - 1, iy)]) / (2 * u.h);
      const cplx u1y = (u.u1[u.index(ix, iy + 1)] - u.u1[u.index(ix, iy - 1)]) / (2 * u.h);
      const cplx u3x = (u.u3[u.index(ix + 1, iy)] - u.u3[u.index(ix - 1, iy)]) / (2 * u.h);
      const cplx u3y = (u.u3[u.index(ix, iy + 1)] - u.u3[u.index(ix, iy - 1)]) / (2 * u.h);
      const double v = std::abs(0.5 * (u1x + i1 * u1y) + 0.5 * (u3x - i1 * u3y));
      r.max_abs = std::max(r.max_abs, v);
      sq += v * v;
      ++r.nodes;
    }
  }
  r.rms = r.nodes > 0 ? std::sqrt(sq / r.nodes) : 0.0;
  return r;
}

double density_l2_error(const DensityGrid& f, const Phantom& phantom, double radius) {
  double num = 0.0;
  double den = 0.0;
  for (int iy = 0; iy < f.grid_n; ++iy) {
    for (int ix = 0; ix < f.grid_n; ++ix) {
      const cplx z = f.point(ix, iy);
      if (!f.inside(ix, iy) || std::abs(z) > radius) continue;
      const double ref = phantom.eval(z);
      num += (f.at(ix, iy) - ref) * (f.at(ix, iy) - ref);
      den += ref * ref;
    }
  }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

ReprojectionStats reproject_check(const DensityGrid& f, const FourierLattice& L, int n_beta, int n_theta) {
  const TorusGrid ref = synthesize_odd(L, n_beta, n_theta);
  if (f.grid_n < 2 || !(f.rho > 0.0)) throw std::invalid_argument("reproject_check: empty density grid");

  // Bilinear interpolation over the in-disc corners, weights renormalized.
  // Points beyond rho are moved radially onto the circle |z| = rho.
  auto sample = [&](cplx z) {
    const double r = std::abs(z);
    if (r > f.rho) z *= f.rho / r;
    const double gx = (z.real() + f.rho) / f.h;
    const double gy = (z.imag() + f.rho) / f.h;
    const int ix = std::clamp(static_cast<int>(std::floor(gx)), 0, f.grid_n - 2);
    const int iy = std::clamp(static_cast<int>(std::floor(gy)), 0, f.grid_n - 2);
    const double tx = gx - ix;
    const double ty = gy - iy;
    double sum = 0.0, wsum = 0.0;
    auto add = [&](int x, int y, double w) {
      if (!f.inside(x, y)) return;
      sum += w * f.at(x, y);
      wsum += w;
    };
    add(ix, iy, (1 - tx) * (1 - ty));
    add(ix + 1, iy, tx * (1 - ty));
    add(ix, iy + 1, (1 - tx) * ty);
    add(ix + 1, iy + 1, tx * ty);
    if (wsum > 1e-12) return sum / wsum;
    // corners all outside: nearest in-disc node
    double best = 1e300, v = 0.0;
    for (int y = std::max(0, iy - 1); y <= std::min(f.grid_n - 1, iy + 2); ++y) {
      for (int x = std::max(0, ix - 1); x <= std::min(f.grid_n - 1, ix + 2); ++x) {
        if (!f.inside(x, y)) continue;
        const double d = std::norm(f.point(x, y) - z);
        if (d < best) {
          best = d;
          v = f.at(x, y);
        }
      }
    }
    return v;
  };

  // per-beta accumulators, merged afterwards
  struct Acc {
    double max_err = 0, sum_err = 0, max_ref = 0, sum_ref = 0;
    long cells = 0;
  };
  std::vector<Acc> acc(static_cast<std::size_t>(n_beta));
  const double step_target = 0.5 * f.h;
  parallel_for(static_cast<std::size_t>(n_beta), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    Acc& a = acc[jj];
    for (int l = 0; l < n_theta; ++l) {
      if (ref.cell_class(j, l) != SectorClass::Outflux) continue;
      const TorusPoint p = ref.point(j, l);
      const double len = chord_length(p);
      const cplx src = p.source();
      const cplx dir = p.direction();
      // chord from e^{i beta} back along -e^{i theta}; midpoint rule
      const int steps = std::max(4, static_cast<int>(std::ceil(len / step_target)));
      const double dt = len / steps;
      double integral = 0.0;
      for (int s = 0; s < steps; ++s) integral += sample(src - (s + 0.5) * dt * dir);
      integral *= dt;
      const double g = ref(j, l);
      const double err = std::abs(integral - g);
      a.max_err = std::max(a.max_err, err);
      a.sum_err += err;
      a.max_ref = std::max(a.max_ref, std::abs(g));
      a.sum_ref += std::abs(g);
      ++a.cells;
    }
  });

  Acc total;
  for (const auto& a : acc) {
    total.max_err = std::max(total.max_err, a.max_err);
    total.sum_err += a.sum_err;
    total.max_ref = std::max(total.max_ref, a.max_ref);
    total.sum_ref += a.sum_ref;
    total.cells += a.cells;
  }
  ReprojectionStats st;
  st.cells = total.cells;
  if (total.cells == 0) return st;
  st.max_abs_error = total.max_err;
  st.mean_abs_error = total.sum_err / total.cells;
  st.max_rel_error = total.max_ref > 0 ? total.max_err / total.max_ref : total.max_err;
  st.mean_rel_error = total.sum_ref > 0 ? total.sum_err / total.sum_ref : st.mean_abs_error;
  return st;
}

}  // namespace xrt
