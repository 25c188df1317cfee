#pragma once
// Lattice -> boundary sequence -> interior L^2-analytic field -> density.
//
// The interior grid is the square lattice x = -rho + ix h, y = -rho + iy h
// with h = 2 rho / (grid_n - 1); only nodes with |z| <= rho are populated.

#include <cstdint>
#include <vector>

#include "xrt/bukhgeim.hpp"
#include "xrt/lattice.hpp"
#include "xrt/phantom.hpp"

namespace xrt {

struct InteriorField {
  double rho = 0.0;
  int grid_n = 0;
  double h = 0.0;
  std::vector<std::uint8_t> mask;  // [iy * grid_n + ix]
  std::vector<cplx> u1;            // u_{-1}
  std::vector<cplx> u3;            // u_{-3}; empty when not computed

  cplx point(int ix, int iy) const { return {-rho + ix * h, -rho + iy * h}; }
  bool inside(int ix, int iy) const {
    return ix >= 0 && iy >= 0 && ix < grid_n && iy < grid_n && mask[index(ix, iy)] != 0;
  }
  std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(iy) * grid_n + ix; }
};

struct DensityGrid {
  double rho = 0.0;
  int grid_n = 0;
  double h = 0.0;
  std::vector<std::uint8_t> mask;
  std::vector<double> values;  // zero outside the mask

  cplx point(int ix, int iy) const { return {-rho + ix * h, -rho + iy * h}; }
  bool inside(int ix, int iy) const {
    return ix >= 0 && iy >= 0 && ix < grid_n && iy < grid_n && mask[index(ix, iy)] != 0;
  }
  std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(iy) * grid_n + ix; }
  double at(int ix, int iy) const { return values[index(ix, iy)]; }
};

/// Default boundary sample count used by build_boundary_sequence.
inline constexpr int kDefaultBoundarySamples = 512;

/// c_j has the spectrum of row n = -(2j+1) of L; depth is the number of odd
/// negative rows in the band (at least 1). n_samples = 0 picks
/// max(kDefaultBoundarySamples, 2 k_max + 2).
BoundaryModeSequence build_boundary_sequence(const FourierLattice& L, int n_samples = 0);

/// Square lattice mask for radius rho; requires 0 < rho and grid_n >= 5.
std::vector<std::uint8_t> disc_mask(double rho, int grid_n);

/// u_{-1} (and u_{-3} when with_u3) at every in-disc node. rho must not
/// exceed max_radius; j_terms < 0 uses the full depth.
InteriorField interior_u(const BoundaryModeSequence& s, double rho, int grid_n, int j_terms = -1,
                         bool with_u3 = true, double max_radius = 0.9);

/// f = Re(d u_{-1}), d = (d/dx - i d/dy) / 2, by centered differences with
/// second-order one-sided stencils where a neighbour leaves the disc.
DensityGrid recover_f(const InteriorField& u);

struct TransportResidual {
  double max_abs = 0.0;
  double rms = 0.0;
  long nodes = 0;
};

/// |dbar u_{-1} + d u_{-3}| by centered differences at nodes with
/// |z| <= radius whose four neighbours are in the disc. Requires u3.
TransportResidual transport_residual(const InteriorField& u, double radius);

/// Relative L2 error of f against the phantom over nodes with |z| <= radius.
double density_l2_error(const DensityGrid& f, const Phantom& phantom, double radius);

struct ReprojectionStats {
  double max_abs_error = 0.0;
  double mean_abs_error = 0.0;
  double max_rel_error = 0.0;   // max |err| / max |g|
  double mean_rel_error = 0.0;  // mean |err| / mean |g|
  long cells = 0;
};

/// Integrates f along every outflux chord of an n_beta x n_theta grid and
/// compares with synthesize_odd(L). f is interpolated bilinearly; beyond
/// radius rho - 2h it is continued radially from that circle.
ReprojectionStats reproject_check(const DensityGrid& f, const FourierLattice& L, int n_beta, int n_theta);

}  // namespace xrt
