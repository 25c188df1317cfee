#include "xrt/range.hpp"

#include <cmath>

namespace xrt {

namespace {

double sign_pow(int e) { return (e % 2 == 0) ? 1.0 : -1.0; }

bool odd(int n) { return n % 2 != 0; }

// Accumulates residuals and coverage for one condition.
class Tally {
 public:
  Tally(std::string name, double tol) {
    report_.condition = std::move(name);
    report_.tolerance = tol;
  }

  void candidate() { ++candidates_; }

  void check(double residual, int n, int k) {
    ++report_.pairs_checked;
    if (report_.pairs_checked == 1 || residual > report_.max_abs_residual) {
      report_.max_abs_residual = residual;
      report_.worst_n = n;
      report_.worst_k = k;
    }
  }

  ConditionReport finish() {
    report_.coverage_fraction =
        candidates_ == 0 ? 1.0 : static_cast<double>(report_.pairs_checked) / candidates_;
    report_.pass = report_.max_abs_residual <= report_.tolerance;
    return report_;
  }

 private:
  ConditionReport report_;
  long candidates_ = 0;
};

}  // namespace

double relative_tolerance(const FourierLattice& L, double rel) { return rel * L.sup_norm(); }

ConditionReport check_oddness(const FourierLattice& L, double tol) {
  Tally t("oddness", tol);
  for (int n = -L.n_max(); n <= L.n_max(); ++n) {
    if (odd(n)) continue;
    for (int k = -L.k_max(); k <= L.k_max(); ++k) {
      t.candidate();
      t.check(std::abs(L(n, k)), n, k);
    }
  }
  return t.finish();
}

ConditionReport check_conjugacy(const FourierLattice& L, double tol) {
  Tally t("conjugacy", tol);
  for (int n = -L.n_max(); n <= L.n_max(); ++n) {
    for (int k = -L.k_max(); k <= L.k_max(); ++k) {
      t.candidate();
      t.check(std::abs(L(-n, -k) - std::conj(L(n, k))), n, k);
    }
  }
  return t.finish();
}

ConditionReport check_symmetry(const FourierLattice& L, double tol) {
  Tally t("symmetry", tol);
  for (int n = -L.n_max(); n <= L.n_max(); ++n) {
    for (int k = -L.k_max(); k <= L.k_max(); ++k) {
      t.candidate();
      if (!L.in_band(n + 2 * k, -k)) continue;
      t.check(std::abs(L(n, k) - sign_pow(n + k) * L(n + 2 * k, -k)), n, k);
    }
  }
  return t.finish();
}

ConditionReport check_moments(const FourierLattice& L, double tol) {
  Tally t("moments", tol);
  for (int n = -1; n >= -L.n_max(); n -= 2) {
    for (int k = 0; k >= -L.k_max(); --k) {
      t.candidate();
      if (!L.in_band(n + 2 * k, -k)) continue;
      t.check(std::abs(L(n, k) - sign_pow(k) * L(n + 2 * k, -k)), n, k);
    }
  }
  return t.finish();
}

ConditionReport check_corollary(const FourierLattice& L, double tol) {
  Tally t("corollary", tol);
  for (int n = -1; n >= -L.n_max(); n -= 2) {
    for (int k = -L.k_max(); k <= L.k_max(); ++k) {
      t.candidate();
      if (n + 2 * k <= -1) {
        t.check(std::abs(L(n, k)), n, k);
      } else if (L.in_band(-n - 2 * k, k)) {
        t.check(std::abs(L(n, k) - sign_pow(k + 1) * std::conj(L(-n - 2 * k, k))), n, k);
      }
    }
  }
  return t.finish();
}

std::vector<ConditionReport> check_all(const FourierLattice& L, double tol) {
  return {check_oddness(L, tol), check_conjugacy(L, tol), check_symmetry(L, tol),
          check_moments(L, tol), check_corollary(L, tol)};
}

bool all_pass(const std::vector<ConditionReport>& reports) {
  for (const auto& r : reports) {
    if (!r.pass) return false;
  }
  return true;
}

FourierLattice project_consistent(const FourierLattice& L) {
  FourierLattice out(L.n_max(), L.k_max());
  for (int n = -L.n_max(); n <= L.n_max(); ++n) {
    if (!odd(n)) continue;
    for (int k = -L.k_max(); k <= L.k_max(); ++k) {
      // zero region and its conjugate image
      if ((n < 0 && n + 2 * k <= -1) || (n > 0 && n + 2 * k >= 1)) continue;
      const cplx self = L(n, k);
      const cplx conj_partner = std::conj(L(-n, -k));
      if (L.in_band(n + 2 * k, -k)) {
        const double s = sign_pow(n + k);
        out.set(n, k, 0.25 * (self + s * L(n + 2 * k, -k) + conj_partner +
                              s * std::conj(L(-n - 2 * k, k))));
      } else {
        out.set(n, k, 0.5 * (self + conj_partner));
      }
    }
  }
  return out;
}

}  // namespace xrt
