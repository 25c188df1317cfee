#include "xrt/forward.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "xrt/parallel.hpp"

namespace xrt {

namespace {

// Relative bound below which a tangent-cell sample counts as zero.
constexpr double kTangentZeroTol = 1e-9;

void require_kind(const TorusGrid& x, GridKind want, const char* op) {
  if (x.kind() != want) {
    throw std::invalid_argument(std::string(op) + ": expected a " + std::string(to_string(want)) +
                                " grid, got " + std::string(to_string(x.kind())));
  }
}

}  // namespace

std::string_view to_string(GridKind k) {
  switch (k) {
    case GridKind::Xray:
      return "Xray";
    case GridKind::OddExtended:
      return "OddExtended";
    case GridKind::Doubled:
      return "Doubled";
    case GridKind::Raw:
      return "Raw";
  }
  return "?";
}

GridKind grid_kind_from_string(std::string_view s) {
  if (s == "Xray") return GridKind::Xray;
  if (s == "OddExtended") return GridKind::OddExtended;
  if (s == "Doubled") return GridKind::Doubled;
  if (s == "Raw") return GridKind::Raw;
  throw std::invalid_argument("unknown grid kind '" + std::string(s) + "'");
}

TorusGrid::TorusGrid(int n_beta, int n_theta, GridKind kind, std::vector<double> values)
    : n_beta_(n_beta), n_theta_(n_theta), kind_(kind), values_(std::move(values)) {
  if (n_beta <= 0 || n_theta <= 0) throw std::invalid_argument("TorusGrid: dimensions must be positive");
  if (n_theta % 2 != 0) throw std::invalid_argument("TorusGrid: n_theta must be even");
  if (values_.size() != static_cast<std::size_t>(n_beta) * static_cast<std::size_t>(n_theta)) {
    throw std::invalid_argument("TorusGrid: value count does not match dimensions");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("TorusGrid: non-finite value");
  }
}

TorusGrid TorusGrid::zeros(int n_beta, int n_theta, GridKind kind) {
  return TorusGrid(n_beta, n_theta, kind,
                   std::vector<double>(static_cast<std::size_t>(std::max(n_beta, 0)) *
                                       static_cast<std::size_t>(std::max(n_theta, 0))));
}

double TorusGrid::beta(int j) const { return -kPi + kTwoPi * (j + 0.5) / n_beta_; }

double TorusGrid::theta(int l) const { return -kPi + kTwoPi * (l + 0.5) / n_theta_; }

SectorClass TorusGrid::cell_class(int j, int l) const {
  // alpha = pi * q / D with q = (2l+1) n_beta - (2j+1) n_theta, D = n_beta n_theta.
  const std::int64_t nb = n_beta_;
  const std::int64_t nt = n_theta_;
  const std::int64_t d = nb * nt;
  std::int64_t q = (2 * static_cast<std::int64_t>(l) + 1) * nb -
                   (2 * static_cast<std::int64_t>(j) + 1) * nt;
  // reduce into (-D, D]
  q %= 2 * d;
  if (q <= -d) q += 2 * d;
  if (q > d) q -= 2 * d;
  const std::int64_t twice = 2 * (q < 0 ? -q : q);
  if (twice < d) return SectorClass::Outflux;
  if (twice > d) return SectorClass::Influx;
  return SectorClass::Tangent;
}

std::optional<std::pair<int, int>> TorusGrid::reflected_cell(int j, int l) const {
  if (n_beta_ != n_theta_) return std::nullopt;
  const int n = n_beta_;
  // beta' = 2 theta_l - beta_j - pi lands on index 2l - j - n/2.
  int jr = (2 * l - j - n / 2) % n;
  if (jr < 0) jr += n;
  const int lr = (l + n / 2) % n;
  return std::make_pair(jr, lr);
}

double TorusGrid::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double TorusGrid::l1_norm() const {
  double s = 0.0;
  for (double v : values_) s += std::abs(v);
  return s * (kTwoPi / n_beta_) * (kTwoPi / n_theta_);
}

TorusGrid xray_sinogram(const Phantom& f, int n_beta, int n_theta) {
  if (n_beta < 8 || n_theta < 8) throw std::invalid_argument("xray_sinogram: grid smaller than 8x8");
  if (n_theta % 2 != 0) throw std::invalid_argument("xray_sinogram: n_theta must be even");
  TorusGrid shape = TorusGrid::zeros(n_beta, n_theta, GridKind::Xray);
  std::vector<double> values(static_cast<std::size_t>(n_beta) * n_theta);
  parallel_for(static_cast<std::size_t>(n_beta), [&](std::size_t j) {
    for (int l = 0; l < n_theta; ++l) {
      values[j * n_theta + l] = f.line_integral(shape.point(static_cast<int>(j), l));
    }
  });
  return TorusGrid(n_beta, n_theta, GridKind::Xray, std::move(values));
}

TorusGrid odd_extension(const TorusGrid& x) {
  require_kind(x, GridKind::Xray, "odd_extension");
  const double zero_tol = kTangentZeroTol * std::max(1.0, x.max_abs());
  std::vector<double> out(x.values().begin(), x.values().end());
  for (int j = 0; j < x.n_beta(); ++j) {
    for (int l = 0; l < x.n_theta(); ++l) {
      auto& v = out[static_cast<std::size_t>(j) * x.n_theta() + l];
      switch (x.cell_class(j, l)) {
        case SectorClass::Outflux:
          break;
        case SectorClass::Influx:
          v = -v;
          break;
        case SectorClass::Tangent:
          if (std::abs(v) > zero_tol) {
            throw std::invalid_argument(
                "odd_extension: nonzero sample on the tangent set; sign is ambiguous");
          }
          v = 0.0;
          break;
      }
    }
  }
  return TorusGrid(x.n_beta(), x.n_theta(), GridKind::OddExtended, std::move(out));
}

TorusGrid doubled_restriction(const TorusGrid& x) {
  require_kind(x, GridKind::Xray, "doubled_restriction");
  std::vector<double> out(x.values().size(), 0.0);
  for (int j = 0; j < x.n_beta(); ++j) {
    for (int l = 0; l < x.n_theta(); ++l) {
      if (x.cell_class(j, l) == SectorClass::Outflux) {
        out[static_cast<std::size_t>(j) * x.n_theta() + l] = 2.0 * x(j, l);
      }
    }
  }
  return TorusGrid(x.n_beta(), x.n_theta(), GridKind::Doubled, std::move(out));
}

TorusGrid symmetrize(const TorusGrid& x) {
  require_kind(x, GridKind::Raw, "symmetrize");
  if (x.n_beta() != x.n_theta()) {
    throw std::invalid_argument("symmetrize: reflection maps cells to cells only on square grids");
  }
  std::vector<double> out(x.values().size());
  for (int j = 0; j < x.n_beta(); ++j) {
    for (int l = 0; l < x.n_theta(); ++l) {
      const auto [jr, lr] = *x.reflected_cell(j, l);
      out[static_cast<std::size_t>(j) * x.n_theta() + l] = 0.5 * (x(j, l) + x(jr, lr));
    }
  }
  return TorusGrid(x.n_beta(), x.n_theta(), GridKind::Raw, std::move(out));
}

}  // namespace xrt
