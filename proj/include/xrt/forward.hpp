#pragma once
// Sampled functions on the (beta, theta) torus.
//
// Cell (j, l) sits at beta_j = -pi + 2 pi (j + 1/2) / n_beta and
// theta_l = -pi + 2 pi (l + 1/2) / n_theta. Values are stored row-major with
// beta outer and theta inner.

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "xrt/geometry.hpp"
#include "xrt/phantom.hpp"

namespace xrt {

enum class GridKind { Xray, OddExtended, Doubled, Raw };

std::string_view to_string(GridKind k);
/// Throws std::invalid_argument for unknown names.
GridKind grid_kind_from_string(std::string_view s);

class TorusGrid {
 public:
  /// Throws std::invalid_argument when n_theta is odd, a dimension is not
  /// positive, the value count mismatches, or a value is non-finite.
  TorusGrid(int n_beta, int n_theta, GridKind kind, std::vector<double> values);

  static TorusGrid zeros(int n_beta, int n_theta, GridKind kind);

  int n_beta() const { return n_beta_; }
  int n_theta() const { return n_theta_; }
  GridKind kind() const { return kind_; }

  double beta(int j) const;
  double theta(int l) const;
  TorusPoint point(int j, int l) const { return TorusPoint{beta(j), theta(l)}; }

  double operator()(int j, int l) const { return values_[index(j, l)]; }
  std::span<const double> values() const { return values_; }

  /// Sector of cell (j, l), decided in exact integer arithmetic so that cells
  /// lying on the tangent set are recognized without rounding.
  SectorClass cell_class(int j, int l) const;

  /// Cell hit by antipodal_reflection of cell (j, l). The reflection maps
  /// cells onto cells only when n_beta == n_theta; otherwise nullopt.
  std::optional<std::pair<int, int>> reflected_cell(int j, int l) const;

  double max_abs() const;
  /// Mean of |value| times the torus area (2 pi)^2, i.e. the trapezoidal L1 norm.
  double l1_norm() const;

 private:
  std::size_t index(int j, int l) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(n_theta_) +
           static_cast<std::size_t>(l);
  }

  int n_beta_;
  int n_theta_;
  GridKind kind_;
  std::vector<double> values_;
};

/// value(j, l) = f.line_integral at the cell center. Requires n_theta even
/// and both dimensions >= 8.
TorusGrid xray_sinogram(const Phantom& f, int n_beta, int n_theta);

/// Xf on outflux cells, -Xf on influx cells. Tangent cells are accepted only
/// where the input vanishes (every admissible density has zero line integral
/// along tangent lines); they are set to 0. Requires kind Xray.
TorusGrid odd_extension(const TorusGrid& x);

/// 2 Xf on outflux cells and 0 elsewhere. Requires kind Xray.
TorusGrid doubled_restriction(const TorusGrid& x);

/// Average of a grid with its antipodal reflection. Requires kind Raw and a
/// square grid.
TorusGrid symmetrize(const TorusGrid& x);

}  // namespace xrt
