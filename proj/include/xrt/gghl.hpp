#pragma once
// Gelfand-Graev-Helgason-Ludwig moment conditions in fan-beam form.
//
//   M(p, m) = \iint e^{i m (beta + alpha)} sin^p(alpha) cos(alpha) g dalpha dbeta
//
// for g the doubled restriction (2 Xf on outflux, 0 elsewhere). M vanishes
// when p - m is odd, and when |m| > p with p - m even.

#include <vector>

#include "xrt/forward.hpp"
#include "xrt/lattice.hpp"
#include "xrt/range.hpp"

namespace xrt {

enum class MomentCoords { BetaAlpha, BetaTheta };

class MomentTable {
 public:
  MomentTable(int p_max, int m_max);

  int p_max() const { return p_max_; }
  int m_max() const { return m_max_; }
  cplx operator()(int p, int m) const;
  void set(int p, int m, cplx v);

 private:
  std::size_t index(int p, int m) const;

  int p_max_;
  int m_max_;
  std::vector<cplx> data_;
};

/// Default m range for a table up to p_max.
inline int default_m_max(int p_max) { return 2 * p_max + 2; }

/// Trapezoidal quadrature over all cells. BetaAlpha walks (beta_j, alpha)
/// with theta = beta + alpha (square grids only); BetaTheta walks (beta_j,
/// theta_l) with alpha = normalize(theta - beta). Requires kind Doubled and p >= 0.
cplx radon_moment(const TorusGrid& g, int p, int m, MomentCoords coords = MomentCoords::BetaTheta);

/// All M(p, m) for 0 <= p <= p_max, |m| <= m_max (m_max < 0: default).
MomentTable moment_table(const TorusGrid& g, int p_max, int m_max = -1);

/// True for the (p, m) pairs on which M must vanish.
bool gghl_vanishing(int p, int m);

/// max |M(p, m)| over the vanishing pairs with |m| <= 2 p_max + 2.
/// tol_rel is relative to |M(0, 0)|; worst_n / worst_k hold p / m.
ConditionReport check_gghl(const TorusGrid& g, int p_max, double tol_rel);
ConditionReport check_gghl(const MomentTable& t, double tol_rel);

/// Fourier coefficients a_q (q = -(p+1)..p+1, index q + p + 1) of sin^p(a) cos(a).
std::vector<cplx> moment_weights(int p);

/// M(p, m) = (2 pi)^2 sum_q a_q g_{-m-q, q}. Sets *complete to false when an
/// index falls outside the band (the entry counts as zero).
cplx moment_from_lattice(const FourierLattice& L, int p, int m, bool* complete = nullptr);

struct EquivalenceRow {
  int p = 0;
  int m = 0;
  int which = 1;             // 1: p even, cosine form; 2: p odd, sine form
  cplx integral_side;        // quadrature of e^{i m theta} T_{p+1}(alpha) g
  cplx lattice_side;         // (2 pi)^2 combination of g_a and g_b
  double discrepancy = 0.0;  // |integral - lattice|
  double identity_defect = 0.0;  // |g_a -+ g_b| (2 pi)^2
  bool in_band = true;
};

struct EquivalenceReport {
  std::vector<EquivalenceRow> rows;
  double scale = 0.0;  // |M(0, 0)|
  double max_discrepancy = 0.0;
  double max_identity_defect = 0.0;
  double spectral_discrepancy = 0.0;  // max |M(p, m) - moment_from_lattice|
  int band_skips = 0;
};

/// For p <= p_max and p < |m| <= 2 p_max + 2 with p - m even, compares
/// \iint e^{i m theta} cos((p+1) alpha) g (p even) or sin((p+1) alpha) g
/// (p odd) with (2 pi)^2 (g_a + g_b) / 2 or (2 pi)^2 (g_a - g_b) / 2i, where
/// a = (-m-p-1, p+1) and b = (-m+p+1, -p-1). L should be analyze(g).
/// Rows whose indices leave the band are reported and excluded from the maxima.
EquivalenceReport verify_equivalence(const FourierLattice& L, const TorusGrid& g, int p_max);

}  // namespace xrt
