#pragma once
// Range conditions on a Fourier lattice of an odd-extended sinogram:
//
//   oddness     g_{n,k} = 0                          n even
//   conjugacy   g_{-n,-k} = conj(g_{n,k})
//   symmetry    g_{n,k} = (-1)^{n+k} g_{n+2k,-k}
//   moments     g_{n,k} = (-1)^k g_{n+2k,-k}           n <= -1 odd, k <= 0
//
// and the region form they imply on the odd negative rows: entries with
// n + 2k <= -1 vanish, entries with n + 2k >= 1 equal
// (-1)^{k+1} conj(g_{-n-2k,k}).
//
// Pairs whose partner index leaves the band are skipped and show up in
// coverage_fraction.

#include <string>
#include <vector>

#include "xrt/lattice.hpp"

namespace xrt {

struct ConditionReport {
  std::string condition;
  double max_abs_residual = 0.0;
  int worst_n = 0;
  int worst_k = 0;
  long pairs_checked = 0;
  double coverage_fraction = 1.0;
  double tolerance = 0.0;
  bool pass = true;
};

/// rel * sup_norm(L): the absolute tolerance used for relative checks.
double relative_tolerance(const FourierLattice& L, double rel);

ConditionReport check_oddness(const FourierLattice& L, double tol);
ConditionReport check_conjugacy(const FourierLattice& L, double tol);
ConditionReport check_symmetry(const FourierLattice& L, double tol);
ConditionReport check_moments(const FourierLattice& L, double tol);
ConditionReport check_corollary(const FourierLattice& L, double tol);

/// The five checks above, in that order.
std::vector<ConditionReport> check_all(const FourierLattice& L, double tol);

bool all_pass(const std::vector<ConditionReport>& reports);

/// Orthogonal projection onto the subspace cut out by all range conditions.
/// Even rows are zeroed, each orbit {(n,k), (n+2k,-k), (-n,-k), (-n-2k,k)}
/// is replaced by its group average, and the vanishing region is zeroed.
/// Idempotent and non-expansive in l2.
FourierLattice project_consistent(const FourierLattice& L);

}  // namespace xrt
