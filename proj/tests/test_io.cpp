#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "xrt/io.hpp"

using namespace xrt;
namespace fs = std::filesystem;

namespace {

template <class W, class R, class T>
T round_trip(W write, R read, const T& v) {
  std::stringstream ss;
  write(ss, v);
  return read(ss);
}

fs::path temp_dir() {
  const fs::path d = fs::temp_directory_path() / ("xrt_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(GridIo, RoundTripIsExact) {
  std::mt19937 rng(51);
  std::normal_distribution<double> nd;
  std::vector<double> v(12 * 10);
  for (auto& x : v) x = nd(rng) * 1e-7 + nd(rng);
  const TorusGrid g(12, 10, GridKind::Raw, v);
  const TorusGrid r = round_trip(write_grid, read_grid, g);
  EXPECT_EQ(r.kind(), GridKind::Raw);
  ASSERT_EQ(r.n_beta(), 12);
  ASSERT_EQ(r.n_theta(), 10);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(r.values()[i], v[i]);

  const TorusGrid o = odd_extension(xray_sinogram(Phantom::parse("disc:cx=0.3,cy=0,r=0.4,a=1"), 16, 16));
  EXPECT_EQ(round_trip(write_grid, read_grid, o).kind(), GridKind::OddExtended);
}

TEST(GridIo, RejectsMalformed) {
  for (const char* text : {"", "torusgrid nbeta=2 ntheta=2 kind=Raw\n", "# lattice nmax=1 kmax=1\n",
                           "# torusgrid nbeta=2 kind=Raw\n", "# torusgrid nbeta=1 ntheta=1 kind=Odd\n0,0,1\n",
                           "# torusgrid nbeta=1 ntheta=1 kind=Raw\n0,0\n",
                           "# torusgrid nbeta=1 ntheta=1 kind=Raw\n0,0,abc\n",
                           "# torusgrid nbeta=1 ntheta=1 kind=Raw\n0,1,1\n",
                           "# torusgrid nbeta=1 ntheta=2 kind=Raw\n0,0,1\n",
                           "# torusgrid nbeta=1 ntheta=1 kind=Raw\n0,0,nan\n"}) {
    std::istringstream is(text);
    EXPECT_THROW(read_grid(is), IoError) << text;
  }
}

TEST(LatticeIo, RoundTripIsExact) {
  std::mt19937 rng(52);
  const FourierLattice L = oracle::random_consistent_lattice(rng, 7, 5);
  const FourierLattice R = round_trip(write_lattice, read_lattice, L);
  ASSERT_EQ(R.n_max(), 7);
  ASSERT_EQ(R.k_max(), 5);
  for (int n = -7; n <= 7; ++n) {
    for (int k = -5; k <= 5; ++k) EXPECT_EQ(R(n, k), L(n, k));
  }
  std::stringstream ss;
  write_lattice(ss, FourierLattice(2, 2));
  EXPECT_EQ(ss.str(), "# lattice nmax=2 kmax=2\n");
}

TEST(LatticeIo, RejectsMalformed) {
  for (const char* text : {"# lattice nmax=1\n", "# lattice nmax=1 kmax=1\n2,0,1,0\n", "# lattice nmax=1 kmax=1\n0,0,1\n",
                           "# lattice nmax=-1 kmax=1\n", "# lattice nmax=1 kmax=1 junk\n"}) {
    std::istringstream is(text);
    EXPECT_THROW(read_lattice(is), IoError) << text;
  }
}

TEST(ModeseqIo, RoundTrip) {
  std::mt19937 rng(53);
  std::normal_distribution<double> nd;
  std::vector<std::vector<cplx>> spectra(3, std::vector<cplx>(9));
  for (auto& row : spectra) {
    for (auto& v : row) v = {nd(rng), nd(rng)};
  }
  const auto s = BoundaryModeSequence::from_spectrum(4, spectra, 32);
  std::stringstream ss;
  write_modeseq(ss, s);
  const auto r = read_modeseq(ss, 32);
  ASSERT_EQ(r.depth(), 3);
  ASSERT_EQ(r.k_max(), 4);
  for (int j = 0; j < 3; ++j) {
    for (int k = -4; k <= 4; ++k) EXPECT_EQ(r.coeff(j, k), s.coeff(j, k));
    for (int i = 0; i < 32; ++i) EXPECT_EQ(r.sample(j, i), s.sample(j, i));
  }
  std::stringstream again;
  write_modeseq(again, s);
  EXPECT_EQ(read_modeseq(again).n_samples(), kDefaultBoundarySamples);
  std::istringstream bad("# modeseq J=1 kmax=1\n1,0,0,0\n");
  EXPECT_THROW(read_modeseq(bad), IoError);
}

TEST(DensityIo, RoundTripIsExact) {
  DensityGrid f;
  f.rho = 0.9;
  f.grid_n = 11;
  f.h = 0.18;
  f.mask = disc_mask(0.9, 11);
  f.values.assign(f.mask.size(), 0.0);
  std::mt19937 rng(54);
  std::normal_distribution<double> nd;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (f.mask[i]) f.values[i] = nd(rng);
  }
  const DensityGrid r = round_trip(write_density, read_density, f);
  EXPECT_EQ(r.grid_n, 11);
  EXPECT_EQ(r.rho, 0.9);
  EXPECT_EQ(r.mask, f.mask);
  EXPECT_EQ(r.values, f.values);
  std::istringstream outside("# density n=11 rho=0.9\n0,0,1\n");
  EXPECT_THROW(read_density(outside), IoError);
}

TEST(MomentsIo, RoundTripIsExact) {
  const TorusGrid g = doubled_restriction(xray_sinogram(Phantom::parse("bump:m=2,a=1"), 32, 32));
  const MomentTable t = moment_table(g, 2);
  const MomentTable r = round_trip(write_moments, read_moments, t);
  ASSERT_EQ(r.p_max(), t.p_max());
  ASSERT_EQ(r.m_max(), t.m_max());
  for (int p = 0; p <= t.p_max(); ++p) {
    for (int m = -t.m_max(); m <= t.m_max(); ++m) EXPECT_EQ(r(p, m), t(p, m));
  }
}

TEST(FileIo, SniffAndMissingFile) {
  const fs::path d = temp_dir();
  save_lattice(d / "l.csv", FourierLattice(1, 1));
  save_grid(d / "g.csv", TorusGrid::zeros(4, 4, GridKind::Doubled));
  EXPECT_EQ(sniff_format(d / "l.csv"), "lattice");
  EXPECT_EQ(sniff_format(d / "g.csv"), "torusgrid");
  EXPECT_EQ(load_grid(d / "g.csv").kind(), GridKind::Doubled);
  EXPECT_THROW(load_lattice(d / "missing.csv"), IoError);
  EXPECT_THROW(sniff_format(d / "missing.csv"), IoError);
  EXPECT_THROW(load_lattice(d / "g.csv"), IoError);
  EXPECT_THROW(save_grid(d / "no" / "such" / "dir.csv", TorusGrid::zeros(4, 4, GridKind::Raw)), IoError);
  fs::remove_all(d);
}

TEST(Json, ReportShapes) {
  FourierLattice L(3, 3);
  L.set(0, 0, 0.5);
  const auto rs = check_all(L, 1e-10);
  const auto j = to_json(rs);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), rs.size());
  EXPECT_EQ(j[0]["condition"], rs[0].condition);
  EXPECT_EQ(j[0]["pass"], false);
  EXPECT_EQ(j[0]["worst_n"], 0);

  ReprojectionStats st;
  st.max_abs_error = 0.25;
  st.cells = 7;
  const auto js = to_json(st);
  EXPECT_EQ(js["max_abs_error"], 0.25);
  EXPECT_EQ(js["cells"], 7);
}
