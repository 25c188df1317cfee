#include "xrt/gghl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "xrt/parallel.hpp"

namespace xrt {

namespace {

void require_doubled(const TorusGrid& g, const char* who) {
  if (g.kind() != GridKind::Doubled) {
    throw std::invalid_argument(std::string(who) + ": expected a Doubled grid, got " +
                                std::string(to_string(g.kind())));
  }
}

double cell_area(const TorusGrid& g) { return (kTwoPi / g.n_beta()) * (kTwoPi / g.n_theta()); }

// sum over cells of weight(beta, theta, alpha) * g
template <class W>
cplx quadrature(const TorusGrid& g, W weight) {
  cplx acc{};
  for (int j = 0; j < g.n_beta(); ++j) {
    const double b = g.beta(j);
    for (int l = 0; l < g.n_theta(); ++l) {
      const double v = g(j, l);
      if (v == 0.0) continue;
      const double t = g.theta(l);
      acc += weight(b, t, normalize_angle(t - b)) * v;
    }
  }
  return acc * cell_area(g);
}

}  // namespace

MomentTable::MomentTable(int p_max, int m_max) : p_max_(p_max), m_max_(m_max) {
  if (p_max < 0 || m_max < 0) throw std::invalid_argument("MomentTable: negative bounds");
  data_.assign(static_cast<std::size_t>(p_max + 1) * static_cast<std::size_t>(2 * m_max + 1), cplx{});
}

std::size_t MomentTable::index(int p, int m) const {
  if (p < 0 || p > p_max_ || m < -m_max_ || m > m_max_) {
    throw std::out_of_range("MomentTable: (" + std::to_string(p) + "," + std::to_string(m) + ") outside table");
  }
  return static_cast<std::size_t>(p) * static_cast<std::size_t>(2 * m_max_ + 1) + static_cast<std::size_t>(m + m_max_);
}

cplx MomentTable::operator()(int p, int m) const { return data_[index(p, m)]; }
void MomentTable::set(int p, int m, cplx v) { data_[index(p, m)] = v; }

cplx radon_moment(const TorusGrid& g, int p, int m, MomentCoords coords) {
  require_doubled(g, "radon_moment");
  if (p < 0) throw std::invalid_argument("radon_moment: p must be non-negative");
  if (coords == MomentCoords::BetaTheta) {
    return quadrature(g, [&](double, double t, double a) {
      return std::pow(std::sin(a), p) * std::cos(a) * std::polar(1.0, m * t);
    });
  }
  if (g.n_beta() != g.n_theta()) throw std::invalid_argument("radon_moment: BetaAlpha needs a square grid");
  const int n = g.n_beta();
  cplx acc{};
  for (int j = 0; j < n; ++j) {
    const double b = g.beta(j);
    for (int s = 0; s < n; ++s) {
      // theta_l - beta_j = 2 pi (l - j) / n exactly, so alpha runs over that lattice
      const double a = normalize_angle(kTwoPi * s / n);
      const double v = g(j, (j + s) % n);
      if (v == 0.0) continue;
      acc += std::pow(std::sin(a), p) * std::cos(a) * std::polar(1.0, m * (b + a)) * v;
    }
  }
  return acc * cell_area(g);
}

MomentTable moment_table(const TorusGrid& g, int p_max, int m_max) {
  require_doubled(g, "moment_table");
  if (m_max < 0) m_max = default_m_max(p_max);
  MomentTable t(p_max, m_max);
  const int cols = 2 * m_max + 1;
  std::vector<cplx> out(static_cast<std::size_t>(p_max + 1) * cols);
  parallel_for(out.size(), [&](std::size_t idx) {
    const int p = static_cast<int>(idx) / cols;
    const int m = static_cast<int>(idx) % cols - m_max;
    out[idx] = radon_moment(g, p, m);
  });
  for (int p = 0; p <= p_max; ++p) {
    for (int m = -m_max; m <= m_max; ++m) t.set(p, m, out[static_cast<std::size_t>(p) * cols + (m + m_max)]);
  }
  return t;
}

bool gghl_vanishing(int p, int m) {
  const bool odd_gap = (p - m) % 2 != 0;
  return odd_gap || std::abs(m) > p;
}

ConditionReport check_gghl(const MomentTable& t, double tol_rel) {
  ConditionReport r;
  r.condition = "gghl";
  const double scale = std::abs(t(0, 0));
  r.tolerance = tol_rel * scale;
  const int m_lim = std::min(t.m_max(), default_m_max(t.p_max()));
  for (int p = 0; p <= t.p_max(); ++p) {
    for (int m = -m_lim; m <= m_lim; ++m) {
      if (!gghl_vanishing(p, m)) continue;
      const double v = std::abs(t(p, m));
      ++r.pairs_checked;
      if (r.pairs_checked == 1 || v > r.max_abs_residual) {
        r.max_abs_residual = v;
        r.worst_n = p;
        r.worst_k = m;
      }
    }
  }
  r.coverage_fraction = 1.0;
  r.pass = r.max_abs_residual <= r.tolerance;
  return r;
}

ConditionReport check_gghl(const TorusGrid& g, int p_max, double tol_rel) {
  return check_gghl(moment_table(g, p_max), tol_rel);
}

std::vector<cplx> moment_weights(int p) {
  if (p < 0) throw std::invalid_argument("moment_weights: p must be non-negative");
  // polynomial in e^{i a}, offset by the lowest power
  std::vector<cplx> poly{cplx{0.5}, cplx{}, cplx{0.5}};  // cos a, powers -1..1
  for (int r = 0; r < p; ++r) {
    // multiply by sin a = (e^{ia} - e^{-ia}) / 2i
    std::vector<cplx> next(poly.size() + 2);
    for (std::size_t q = 0; q < poly.size(); ++q) {
      next[q + 2] += poly[q] / cplx{0.0, 2.0};
      next[q] -= poly[q] / cplx{0.0, 2.0};
    }
    poly = std::move(next);
  }
  return poly;
}

cplx moment_from_lattice(const FourierLattice& L, int p, int m, bool* complete) {
  const auto a = moment_weights(p);
  cplx acc{};
  bool ok = true;
  for (int q = -(p + 1); q <= p + 1; ++q) {
    const cplx w = a[static_cast<std::size_t>(q + p + 1)];
    if (w == cplx{}) continue;
    if (!L.in_band(-m - q, q)) {
      ok = false;
      continue;
    }
    acc += w * L(-m - q, q);
  }
  if (complete) *complete = ok;
  return acc * (kTwoPi * kTwoPi);
}

EquivalenceReport verify_equivalence(const FourierLattice& L, const TorusGrid& g, int p_max) {
  require_doubled(g, "verify_equivalence");
  if (p_max < 0) throw std::invalid_argument("verify_equivalence: p_max must be non-negative");
  EquivalenceReport rep;
  const MomentTable table = moment_table(g, p_max);
  rep.scale = std::abs(table(0, 0));
  const double area = kTwoPi * kTwoPi;
  const int m_lim = default_m_max(p_max);

  for (int p = 0; p <= p_max; ++p) {
    for (int m = -m_lim; m <= m_lim; ++m) {
      bool complete = true;
      const cplx spectral = moment_from_lattice(L, p, m, &complete);
      if (complete) rep.spectral_discrepancy = std::max(rep.spectral_discrepancy, std::abs(table(p, m) - spectral));

      if ((p - m) % 2 != 0 || std::abs(m) <= p) continue;
      EquivalenceRow row;
      row.p = p;
      row.m = m;
      row.which = p % 2 == 0 ? 1 : 2;
      const int q = p + 1;
      row.integral_side = quadrature(g, [&](double, double t, double a) {
        const double shape = row.which == 1 ? std::cos(q * a) : std::sin(q * a);
        return shape * std::polar(1.0, m * t);
      });
      row.in_band = L.in_band(-m - q, q) && L.in_band(-m + q, -q);
      const cplx ga = L(-m - q, q);
      const cplx gb = L(-m + q, -q);
      if (row.which == 1) {
        row.lattice_side = area * 0.5 * (ga + gb);
        row.identity_defect = area * std::abs(ga + gb);
      } else {
        row.lattice_side = area * (ga - gb) / cplx{0.0, 2.0};
        row.identity_defect = area * std::abs(ga - gb);
      }
      row.discrepancy = std::abs(row.integral_side - row.lattice_side);
      if (row.in_band) {
        rep.max_discrepancy = std::max(rep.max_discrepancy, row.discrepancy);
        rep.max_identity_defect = std::max(rep.max_identity_defect, row.identity_defect);
      } else {
        ++rep.band_skips;
      }
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace xrt
