#pragma once
// Double Fourier coefficients on the torus,
//
//   g_{n,k} = (2 pi)^-2 \iint g(beta, theta) e^{-i n theta} e^{-i k beta} dtheta dbeta,
//
// truncated to |n| <= n_max, |k| <= k_max. The first index is the angular
// mode (theta), the second the boundary mode (beta).

#include <vector>

#include "xrt/forward.hpp"
#include "xrt/geometry.hpp"

namespace xrt {

class FourierLattice {
 public:
  /// All-zero lattice. Throws std::invalid_argument for negative bands.
  FourierLattice(int n_max, int k_max);

  int n_max() const { return n_max_; }
  int k_max() const { return k_max_; }

  bool in_band(int n, int k) const { return n >= -n_max_ && n <= n_max_ && k >= -k_max_ && k <= k_max_; }

  /// Entry (n, k); zero when out of band.
  cplx operator()(int n, int k) const { return in_band(n, k) ? data_[index(n, k)] : cplx{}; }
  /// Mutable entry; throws std::out_of_range when out of band.
  cplx& at(int n, int k);
  void set(int n, int k, cplx v) { at(n, k) = v; }

  /// max |g_{n,k}| over the band.
  double sup_norm() const;
  /// sqrt(sum |g_{n,k}|^2).
  double l2_norm() const;

 private:
  std::size_t index(int n, int k) const {
    return static_cast<std::size_t>(n + n_max_) * static_cast<std::size_t>(2 * k_max_ + 1) +
           static_cast<std::size_t>(k + k_max_);
  }

  int n_max_;
  int k_max_;
  std::vector<cplx> data_;
};

/// Equal-weight (trapezoidal) approximation of the coefficient integral.
/// Requires 2 n_max + 1 <= n_theta and 2 k_max + 1 <= n_beta.
FourierLattice analyze(const TorusGrid& x, int n_max, int k_max);

/// Samples 2 Re sum_{n <= -1 odd} sum_k g_{n,k} e^{i n theta} e^{i k beta} on
/// an n_beta x n_theta grid. Only odd negative angular modes are read.
TorusGrid synthesize_odd(const FourierLattice& L, int n_beta, int n_theta);

/// g_n(beta_j) = sum_k g_{n,k} e^{i k beta_j} at the n_beta cell centers.
/// Throws std::out_of_range when |n| > n_max.
std::vector<cplx> angular_mode(const FourierLattice& L, int n, int n_beta);

/// Fills every n >= 1 entry with conj(g_{-n,-k}).
FourierLattice conjugate_completion(const FourierLattice& L);

struct DecaySums {
  double angular = 0.0;   // sum_{n odd <= -1} <n>^2 sum_k |g_{n,k}|
  double boundary = 0.0;  // sum_k <k>^{1+mu} sum_{n odd <= -1} |g_{n,k}|
};

/// Truncated decay sums with <m> = (1 + m^2)^{1/2}. Requires mu in (1/2, 1).
DecaySums decay_report(const FourierLattice& L, double mu);

}  // namespace xrt
