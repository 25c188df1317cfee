#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "xrt/cli.hpp"
#include "xrt/io.hpp"

using namespace xrt;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("xrt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, ForwardAnalyzeCheck) {
  auto r = run({"forward", "--phantom", "disc:cx=0.3,cy=0,r=0.4,a=1", "--nbeta", "256", "--ntheta", "256", "-o",
                dir_.string()});
  ASSERT_EQ(r.code, cli::kExitPass) << r.err;
  for (const char* f : {"xray.csv", "odd.csv", "doubled.csv"}) EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  EXPECT_EQ(load_grid(path("xray.csv")).kind(), GridKind::Xray);
  EXPECT_EQ(load_grid(path("doubled.csv")).kind(), GridKind::Doubled);

  r = run({"analyze", "--in", path("xray.csv"), "--band", "64", "-o", path("lattice.csv")});
  ASSERT_EQ(r.code, cli::kExitPass) << r.err;
  EXPECT_EQ(load_lattice(path("lattice.csv")).n_max(), 64);

  r = run({"check", "--in", path("lattice.csv"), "--tol", "1e-3", "-o", path("report.json")});
  EXPECT_EQ(r.code, cli::kExitPass) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 5u);
  for (const auto& c : j) EXPECT_TRUE(c["pass"].get<bool>());
  EXPECT_TRUE(fs::exists(dir_ / "report.json"));

  r = run({"check", "--in", path("doubled.csv"), "--pmax", "3", "--tol", "1e-3"});
  EXPECT_EQ(r.code, cli::kExitPass) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)[0]["condition"], "gghl");
}

TEST_F(CliTest, PerturbedLatticeFails) {
  FourierLattice L(5, 5);
  L.set(-1, 1, 0.7);
  L.set(1, -1, 0.7);
  L.set(-3, -1, 0.2);  // vanishing region
  L.set(3, 1, 0.2);
  save_lattice(path("bad.csv"), L);
  const auto r = run({"check", "--in", path("bad.csv")});
  EXPECT_EQ(r.code, cli::kExitFail);
  EXPECT_NE(r.err.find("failed"), std::string::npos);
}

TEST_F(CliTest, SynthesizeHilbertReconstruct) {
  FourierLattice L(5, 5);
  L.set(-1, 1, 0.7);
  L.set(1, -1, 0.7);
  save_lattice(path("l.csv"), L);

  auto r = run({"synthesize", "--in", path("l.csv"), "--nbeta", "16", "--ntheta", "16", "-o", path("g.csv")});
  ASSERT_EQ(r.code, cli::kExitPass) << r.err;
  EXPECT_EQ(load_grid(path("g.csv")).n_beta(), 16);

  r = run({"hilbert", "--in", path("l.csv"), "--direct", "--samples", "64", "-o", path("h.csv")});
  ASSERT_EQ(r.code, cli::kExitPass) << r.err;
  const auto h = nlohmann::json::parse(r.out);
  EXPECT_LE(h["direct_vs_fourier"].get<double>(), 1e-8);
  EXPECT_LE(h["range_residual"].get<double>(), 1e-14);
  EXPECT_NEAR(load_lattice(path("h.csv"))(-1, 1).imag(), 0.7, 1e-15);

  r = run({"reconstruct", "--in", path("l.csv"), "--grid", "21", "--nbeta", "32", "--ntheta", "32", "-o",
           path("f.csv")});
  ASSERT_EQ(r.code, cli::kExitPass) << r.err;
  const DensityGrid f = load_density(path("f.csv"));
  for (int iy = 0; iy < 21; ++iy) {
    for (int ix = 0; ix < 21; ++ix) {
      if (f.inside(ix, iy)) EXPECT_NEAR(f.at(ix, iy), 0.7, 1e-8);
    }
  }
  EXPECT_TRUE(fs::exists(dir_ / "f.stats.json"));
}

TEST_F(CliTest, InconsistentReconstructExitsOne) {
  FourierLattice L(3, 3);
  L.set(-1, 1, 0.7);
  L.set(1, -1, 0.7);
  L.set(-1, -1, 0.3);
  L.set(1, 1, 0.3);
  save_lattice(path("l.csv"), L);
  const auto r = run({"reconstruct", "--in", path("l.csv"), "--grid", "21", "--nbeta", "32", "--ntheta", "32", "-o",
                      path("f.csv")});
  EXPECT_EQ(r.code, cli::kExitFail);
}

TEST_F(CliTest, EmptyLatticeGivesZeroDensity) {
  save_lattice(path("l.csv"), FourierLattice(3, 3));
  const auto r = run({"reconstruct", "--in", path("l.csv"), "--grid", "11", "--nbeta", "16", "--ntheta", "16", "-o",
                      path("f.csv")});
  ASSERT_EQ(r.code, cli::kExitPass) << r.err;
  for (double v : load_density(path("f.csv")).values) EXPECT_EQ(v, 0.0);
}

TEST_F(CliTest, GghlFromPhantom) {
  const auto r = run({"gghl", "--phantom", "bump:m=2,a=1", "--nbeta", "64", "--ntheta", "64", "--pmax", "2", "-o",
                      path("m.csv")});
  EXPECT_EQ(r.code, cli::kExitPass) << r.err;
  EXPECT_EQ(load_moments(path("m.csv")).p_max(), 2);
}

TEST_F(CliTest, ZeroAmplitudePhantomGivesZeroFiles) {
  const auto r = run({"forward", "--phantom", "disc:cx=0,cy=0,r=0.5,a=0", "--nbeta", "16", "--ntheta", "16", "-o",
                      dir_.string()});
  ASSERT_EQ(r.code, cli::kExitPass) << r.err;
  for (const char* f : {"xray.csv", "odd.csv", "doubled.csv"}) EXPECT_EQ(load_grid(path(f)).max_abs(), 0.0) << f;
}

TEST_F(CliTest, Pipeline) {
  const auto r = run({"pipeline", "--phantom", "bump:m=2,a=1", "--nbeta", "64", "--ntheta", "64", "--band", "16",
                      "--grid", "21", "--pmax", "2", "-o", dir_.string()});
  EXPECT_EQ(r.code, cli::kExitPass) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_TRUE(j.contains("gghl"));
  EXPECT_TRUE(fs::exists(dir_ / "pipeline.json"));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"forward"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"forward", "--phantom", "blob:r=1", "-o", dir_.string()}).code, cli::kExitUsage);
  EXPECT_EQ(run({"forward", "--phantom", "disc:cx=0,cy=0,r=0.5,a=1", "--nbeta", "-3"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"check", "--in", path("missing.csv")}).code, cli::kExitUsage);
  EXPECT_EQ(run({"reconstruct", "--in", path("missing.csv"), "--rho", "0.95"}).code, cli::kExitUsage);
  std::ofstream(path("junk.csv")) << "not a header\n";
  EXPECT_EQ(run({"check", "--in", path("junk.csv")}).code, cli::kExitUsage);
  save_grid(path("g.csv"), TorusGrid::zeros(16, 16, GridKind::Xray));
  EXPECT_EQ(run({"analyze", "--in", path("g.csv"), "--band", "8"}).code, cli::kExitUsage);
}
