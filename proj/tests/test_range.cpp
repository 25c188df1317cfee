#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "xrt/range.hpp"

using namespace xrt;

namespace {

FourierLattice pipeline_lattice(const char* spec, int n = 256, int band = 64) {
  return analyze(odd_extension(xray_sinogram(Phantom::parse(spec), n, n)), band, band);
}

double distance(const FourierLattice& a, const FourierLattice& b) {
  double s = 0.0;
  for (int n = -a.n_max(); n <= a.n_max(); ++n) {
    for (int k = -a.k_max(); k <= a.k_max(); ++k) s += std::norm(a(n, k) - b(n, k));
  }
  return std::sqrt(s);
}

}  // namespace

TEST(Oddness, Examples) {
  FourierLattice L(4, 4);
  L.set(0, 0, 0.5);
  const auto r = check_oddness(L, 1e-10);
  EXPECT_DOUBLE_EQ(r.max_abs_residual, 0.5);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.worst_n, 0);
  EXPECT_EQ(r.worst_k, 0);
  EXPECT_TRUE(check_oddness(FourierLattice(4, 4), 0.0).pass);

  const FourierLattice D = pipeline_lattice("disc:cx=0,cy=0,r=0.5,a=1", 128, 32);
  EXPECT_TRUE(check_oddness(D, relative_tolerance(D, 1e-8)).pass);
}

TEST(Conjugacy, Examples) {
  FourierLattice L(3, 3);
  L.set(-1, 0, {0, 1});
  const auto r = check_conjugacy(L, 1e-10);
  EXPECT_DOUBLE_EQ(r.max_abs_residual, 1.0);
  EXPECT_FALSE(r.pass);
  FourierLattice M(3, 3);
  M.set(-1, 1, {1, 1});
  M.set(1, -1, {1, -1});
  EXPECT_TRUE(check_conjugacy(M, 1e-14).pass);
  std::mt19937 rng(21);
  std::normal_distribution<double> nd;
  std::vector<double> v(24 * 24);
  for (auto& x : v) x = nd(rng);
  EXPECT_TRUE(check_conjugacy(analyze(TorusGrid(24, 24, GridKind::Raw, v), 11, 11), 1e-12).pass);
}

TEST(Symmetry, Examples) {
  FourierLattice L(4, 4);
  L.set(-1, 0, 0.1);
  const auto r = check_symmetry(L, 1e-10);
  EXPECT_NEAR(r.max_abs_residual, 0.2, 1e-15);
  EXPECT_EQ(r.worst_n, -1);
  EXPECT_EQ(r.worst_k, 0);
  EXPECT_FALSE(r.pass);
  EXPECT_TRUE(check_symmetry(FourierLattice(4, 4), 0.0).pass);

  std::mt19937 rng(22);
  std::normal_distribution<double> nd;
  std::vector<double> v(32 * 32);
  for (auto& x : v) x = nd(rng);
  const FourierLattice S = analyze(symmetrize(TorusGrid(32, 32, GridKind::Raw, v)), 15, 15);
  EXPECT_TRUE(check_symmetry(S, relative_tolerance(S, 1e-9)).pass);
}

TEST(Moments, Examples) {
  FourierLattice L(6, 3);
  L.set(-3, -1, 1.0);
  L.set(-5, 1, -1.0);
  EXPECT_EQ(check_moments(L, 0.0).max_abs_residual, 0.0);
  FourierLattice M(6, 3);
  M.set(-3, -1, 1.0);
  const auto r = check_moments(M, 1e-10);
  EXPECT_DOUBLE_EQ(r.max_abs_residual, 1.0);
  EXPECT_FALSE(r.pass);
  const FourierLattice D = pipeline_lattice("disc:cx=0.3,cy=0,r=0.4,a=1");
  EXPECT_TRUE(check_moments(D, relative_tolerance(D, 1e-3)).pass);
}

TEST(Corollary, Examples) {
  const FourierLattice D = pipeline_lattice("disc:cx=0.3,cy=0,r=0.4,a=1");
  const auto r = check_corollary(D, relative_tolerance(D, 1e-3));
  EXPECT_TRUE(r.pass) << r.max_abs_residual / D.sup_norm();

  FourierLattice real(3, 3);
  real.set(-1, 1, 0.4);
  EXPECT_TRUE(check_corollary(real, 1e-15).pass);
  FourierLattice imag(3, 3);
  imag.set(-1, 1, {0.4, 0.3});
  EXPECT_FALSE(check_corollary(imag, 1e-10).pass);

  FourierLattice zr(5, 3);
  zr.set(-3, 1, 1.0);
  zr.set(-1, -1, 0.25);
  const auto z = check_corollary(zr, 1e-10);
  EXPECT_FALSE(z.pass);
  EXPECT_GE(z.max_abs_residual, 0.25);
}

TEST(Coverage, SkippedPartnersAreCounted) {
  FourierLattice L(3, 3);
  const auto r = check_symmetry(L, 0.0);
  EXPECT_LT(r.coverage_fraction, 1.0);
  EXPECT_GT(r.coverage_fraction, 0.0);
  EXPECT_EQ(check_oddness(L, 0.0).coverage_fraction, 1.0);
}

TEST(CheckAll, PhantomCorpusPasses) {
  for (const char* spec : {"disc:cx=0.3,cy=0,r=0.4,a=1", "bump:m=2,a=1", "disc:cx=0,cy=0,r=0.5,a=1",
                           "disc:cx=-0.2,cy=0.3,r=0.5,a=1+bump:m=3,a=0.5"}) {
    const FourierLattice L = pipeline_lattice(spec);
    const auto rs = check_all(L, relative_tolerance(L, 1e-3));
    ASSERT_EQ(rs.size(), 5u);
    for (const auto& r : rs) EXPECT_TRUE(r.pass) << spec << " " << r.condition << " " << r.max_abs_residual;
  }
}

TEST(CheckAll, ConsistentSyntheticLatticePasses) {
  std::mt19937 rng(23);
  for (int t = 0; t < 10; ++t) {
    const FourierLattice L = oracle::random_consistent_lattice(rng, 11, 9);
    EXPECT_TRUE(all_pass(check_all(L, 1e-12 * L.sup_norm())));
  }
}

TEST(Project, Examples) {
  std::mt19937 rng(24);
  const FourierLattice C = oracle::random_consistent_lattice(rng, 9, 9);
  const FourierLattice P = project_consistent(C);
  EXPECT_LE(distance(P, C), 1e-14 * C.l2_norm());

  FourierLattice Z(3, 3);
  Z.set(-1, 0, 0.1);
  EXPECT_EQ(project_consistent(Z).sup_norm(), 0.0);
}

TEST(Project, IdempotentNonExpansiveAndConsistent) {
  std::mt19937 rng(25);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 10; ++t) {
    FourierLattice X(9, 7);
    for (int n = -9; n <= 9; ++n) {
      for (int k = -7; k <= 7; ++k) X.set(n, k, {nd(rng), nd(rng)});
    }
    X = conjugate_completion(X);
    const FourierLattice P = project_consistent(X);
    const FourierLattice PP = project_consistent(P);
    EXPECT_LE(distance(P, PP), 1e-14 * X.l2_norm());
    EXPECT_LE(P.l2_norm(), X.l2_norm() * (1 + 1e-14));
    EXPECT_TRUE(all_pass(check_all(P, 1e-12 * X.sup_norm())));
    // orthogonality: the residual is orthogonal to the consistent subspace
    const FourierLattice Y = oracle::random_consistent_lattice(rng, 9, 7);
    cplx ip{};
    for (int n = -9; n <= 9; ++n) {
      for (int k = -7; k <= 7; ++k) ip += (X(n, k) - P(n, k)) * std::conj(Y(n, k));
    }
    EXPECT_NEAR(std::abs(ip), 0.0, 1e-10 * X.l2_norm() * Y.l2_norm());
  }
}

TEST(Project, ReducesNoise) {
  std::mt19937 rng(26);
  std::uniform_real_distribution<double> u(-1e-2, 1e-2);
  const FourierLattice clean = oracle::random_consistent_lattice(rng, 11, 11);
  FourierLattice noisy = clean;
  for (int n = -11; n <= 11; ++n) {
    for (int k = -11; k <= 11; ++k) noisy.set(n, k, noisy(n, k) + cplx{u(rng), u(rng)});
  }
  noisy = conjugate_completion(noisy);
  EXPECT_LT(distance(project_consistent(noisy), clean), distance(noisy, clean));
}

TEST(Localization, SinglePerturbationFlipsTouchingReports) {
  std::mt19937 rng(27);
  const FourierLattice C = oracle::random_consistent_lattice(rng, 9, 9);
  // entry in the vanishing region: touches symmetry, moments, corollary and conjugacy
  FourierLattice P = C;
  P.set(-3, -1, P(-3, -1) + 0.5);
  const auto rs = check_all(P, 1e-10);
  EXPECT_TRUE(rs[0].pass);   // oddness
  EXPECT_FALSE(rs[1].pass);  // conjugacy
  EXPECT_FALSE(rs[2].pass);  // symmetry
  EXPECT_FALSE(rs[3].pass);  // moments
  EXPECT_FALSE(rs[4].pass);  // corollary
  EXPECT_EQ(rs[4].worst_n, -3);
  EXPECT_EQ(rs[4].worst_k, -1);
  // even entry added together with its conjugate: only oddness is touched
  FourierLattice E = C;
  E.set(2, 1, 0.5);
  E.set(-2, -1, 0.5);
  const auto re = check_all(E, 1e-10);
  EXPECT_FALSE(re[0].pass);
  EXPECT_TRUE(re[1].pass);
  EXPECT_TRUE(re[3].pass);
  EXPECT_TRUE(re[4].pass);
}
