#pragma once
// Bukhgeim-Hilbert and Bukhgeim-Cauchy operators on the odd angular
// sublattice.
//
// A boundary mode sequence holds c_0, c_1, ..., c_{J-1}, where c_j is the
// angular mode n = -(2j+1) of a torus function, viewed as a function of the
// boundary point e^{i beta}. Coupling in both operators runs from c_j to the
// deeper modes c_{j+1}, c_{j+2}, ...

#include <span>
#include <vector>

#include "xrt/geometry.hpp"
#include "xrt/lattice.hpp"

namespace xrt {

class BoundaryModeSequence {
 public:
  /// spectra[j][k + k_max] is the k-th boundary Fourier coefficient of c_j.
  /// Samples are synthesized on n_samples cell-centered beta nodes; n_samples
  /// must be at least 2 k_max + 2.
  static BoundaryModeSequence from_spectrum(int k_max, std::vector<std::vector<cplx>> spectra,
                                            int n_samples);

  /// samples[j][i] = c_j(beta_i). The spectrum is the DFT of the samples,
  /// truncated to |k| <= k_max; requires n_samples >= 2 k_max + 2.
  static BoundaryModeSequence from_samples(int k_max, std::vector<std::vector<cplx>> samples);

  /// All-zero sequence.
  static BoundaryModeSequence zeros(int depth, int k_max, int n_samples);

  int depth() const { return static_cast<int>(spectra_.size()); }
  int k_max() const { return k_max_; }
  int n_samples() const { return n_samples_; }

  /// beta_i = -pi + 2 pi (i + 1/2) / n_samples.
  double node(int i) const;

  /// Zero for |k| > k_max.
  cplx coeff(int j, int k) const;
  cplx sample(int j, int i) const { return samples_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]; }
  std::span<const cplx> samples(int j) const { return samples_[static_cast<std::size_t>(j)]; }

  /// max_i |c_j(beta_i)|.
  double sup_abs(int j) const;
  /// sum_{j >= first} sup_abs(j): bound on the neglected corrector terms
  /// when the series is cut before component `first`.
  double tail_bound(int first) const;
  /// max |samples - synthesized spectrum|; small when both representations agree.
  double representation_mismatch() const;

 private:
  BoundaryModeSequence(int k_max, int n_samples, std::vector<std::vector<cplx>> spectra,
                       std::vector<std::vector<cplx>> samples);

  int k_max_;
  int n_samples_;
  std::vector<std::vector<cplx>> spectra_;
  std::vector<std::vector<cplx>> samples_;
};

/// (1/pi) PV \int e^{i n alpha} / (e^{i alpha} - e^{i beta}) d alpha by the
/// trapezoidal rule on nodes aligned with beta, after subtracting the
/// singular part at mode zero. n_nodes = 0 picks max(64, 4 (|n| + 1)).
cplx pv_cauchy_mode(int n, double beta, int n_nodes = 0);

/// Bukhgeim-Hilbert transform in Fourier form on the odd rows n <= -1:
/// (Hg)_{n,k} = i g_{n,k} for k >= 0 and
/// i (-g_{n,k} + 2 (-1)^k g_{n+2k,-k}) for k <= -1 (deeper partners outside
/// the band count as zero). Throws std::invalid_argument when an even row
/// carries a nonzero entry. Rows n >= 0 of the result are zero.
FourierLattice hilbert_fourier(const FourierLattice& L);

/// Bukhgeim-Hilbert transform by direct quadrature on the samples: a
/// principal-value Cauchy integral of each component plus the series over
/// deeper components.
BoundaryModeSequence hilbert_direct(const BoundaryModeSequence& s);

/// max |((I + iH) g)_{n,k}| over odd n <= -1, via the closed form
/// 2 g_{n,k} - 2 (-1)^k g_{n+2k,-k} for k <= -1 (zero for k >= 0). Pairs with
/// the partner outside the band are skipped.
double range_residual(const FourierLattice& L);

struct CauchyOptions {
  /// Number of corrector terms; negative means all available (depth - 1).
  int j_terms = -1;
  /// Evaluation points with |z| above this are rejected.
  double max_radius = 0.9;
};

/// Bukhgeim-Cauchy operator at an interior point. Returns u_{-(2i+1)}(z) for
/// each requested component index i (all components when `components` is
/// empty). Trapezoidal rule on the sequence's sample nodes.
std::vector<cplx> bukhgeim_cauchy(const BoundaryModeSequence& s, cplx z,
                                  const CauchyOptions& opts = {},
                                  std::span<const int> components = {});

}  // namespace xrt
