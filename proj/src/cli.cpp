#include "xrt/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <ostream>

#include "xrt/bukhgeim.hpp"
#include "xrt/forward.hpp"
#include "xrt/gghl.hpp"
#include "xrt/io.hpp"
#include "xrt/lattice.hpp"
#include "xrt/phantom.hpp"
#include "xrt/range.hpp"
#include "xrt/reconstruct.hpp"

namespace xrt::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct Config {
  std::string phantom;
  int n_beta = 256;
  int n_theta = 256;
  int band = 64;
  double tol = 1e-3;
  double rho = 0.9;
  int grid = 64;
  int j_terms = -1;
  int p_max = 4;
  int samples = 0;
  double reproj_tol = 0.05;
  bool direct = false;
  std::string in;
  std::string out;
};

// Precondition failures that stem from user input.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

fs::path out_path(const Config& c, const char* fallback) { return c.out.empty() ? fs::path(fallback) : fs::path(c.out); }

// Sidecar path next to a data file, e.g. density.csv -> density.stats.json.
fs::path sidecar(const fs::path& p, const char* suffix) {
  fs::path s = p;
  s.replace_extension();
  s += suffix;
  return s;
}

FourierLattice lattice_of(const TorusGrid& g, int band) {
  const int limit = (std::min(g.n_beta(), g.n_theta()) - 1) / 2;
  require(band >= 0 && band <= limit, "band " + std::to_string(band) + " exceeds the grid limit " + std::to_string(limit));
  return analyze(g.kind() == GridKind::Xray ? odd_extension(g) : g, band, band);
}

void emit(std::ostream& out, const Config& c, const json& j, const char* sidecar_suffix = nullptr,
          const fs::path& data = {}) {
  if (sidecar_suffix != nullptr) save_json(sidecar(data, sidecar_suffix), j);
  else if (!c.out.empty() && fs::path(c.out).extension() == ".json") save_json(c.out, j);
  out << j.dump(2) << '\n';
}

int cmd_forward(const Config& c, std::ostream& out) {
  require(!c.phantom.empty(), "--phantom is required");
  const Phantom f = Phantom::parse(c.phantom);
  const TorusGrid x = xray_sinogram(f, c.n_beta, c.n_theta);
  const fs::path dir = out_path(c, ".");
  fs::create_directories(dir);
  save_grid(dir / "xray.csv", x);
  save_grid(dir / "odd.csv", odd_extension(x));
  save_grid(dir / "doubled.csv", doubled_restriction(x));
  json j;
  j["phantom"] = f.to_spec();
  j["nbeta"] = c.n_beta;
  j["ntheta"] = c.n_theta;
  j["max_abs"] = x.max_abs();
  j["files"] = {(dir / "xray.csv").string(), (dir / "odd.csv").string(), (dir / "doubled.csv").string()};
  out << j.dump(2) << '\n';
  return kExitPass;
}

int cmd_analyze(const Config& c, std::ostream& out) {
  const TorusGrid g = load_grid(c.in);
  const FourierLattice L = lattice_of(g, c.band);
  const fs::path dst = out_path(c, "lattice.csv");
  save_lattice(dst, L);
  json j;
  j["input_kind"] = to_string(g.kind());
  j["nmax"] = L.n_max();
  j["kmax"] = L.k_max();
  j["sup_norm"] = L.sup_norm();
  j["file"] = dst.string();
  out << j.dump(2) << '\n';
  return kExitPass;
}

int cmd_synthesize(const Config& c, std::ostream& out) {
  const FourierLattice L = load_lattice(c.in);
  const TorusGrid g = synthesize_odd(L, c.n_beta, c.n_theta);
  const fs::path dst = out_path(c, "synth.csv");
  save_grid(dst, g);
  json j;
  j["nbeta"] = g.n_beta();
  j["ntheta"] = g.n_theta();
  j["max_abs"] = g.max_abs();
  j["file"] = dst.string();
  out << j.dump(2) << '\n';
  return kExitPass;
}

void describe_failures(const std::vector<ConditionReport>& rs, std::ostream& err) {
  for (const auto& r : rs) {
    if (!r.pass) {
      err << "condition " << r.condition << " failed: residual " << r.max_abs_residual << " > " << r.tolerance
          << " at (" << r.worst_n << "," << r.worst_k << ")\n";
    }
  }
}

int cmd_check(const Config& c, std::ostream& out, std::ostream& err) {
  const std::string fmt = sniff_format(c.in);
  std::vector<ConditionReport> reports;
  if (fmt == "lattice") {
    const FourierLattice L = load_lattice(c.in);
    reports = check_all(L, relative_tolerance(L, c.tol));
  } else if (fmt == "torusgrid") {
    const TorusGrid g = load_grid(c.in);
    if (g.kind() == GridKind::Doubled) {
      reports.push_back(check_gghl(g, c.p_max, c.tol));
    } else {
      const FourierLattice L = lattice_of(g, c.band);
      reports = check_all(L, relative_tolerance(L, c.tol));
    }
  } else {
    throw IoError(c.in + ": unsupported format '" + fmt + "'");
  }
  emit(out, c, to_json(reports));
  describe_failures(reports, err);
  return all_pass(reports) ? kExitPass : kExitFail;
}

int cmd_hilbert(const Config& c, std::ostream& out) {
  const FourierLattice L = load_lattice(c.in);
  const FourierLattice H = hilbert_fourier(L);
  const fs::path dst = out_path(c, "hilbert.csv");
  save_lattice(dst, H);
  json j;
  j["range_residual"] = range_residual(L);
  j["range_residual_rel"] = L.sup_norm() > 0 ? range_residual(L) / L.sup_norm() : 0.0;
  if (c.direct) {
    const BoundaryModeSequence s = build_boundary_sequence(L, c.samples);
    const BoundaryModeSequence d = hilbert_direct(s);
    double worst = 0.0;
    for (int jj = 0; jj < d.depth(); ++jj) {
      for (int k = -d.k_max(); k <= d.k_max(); ++k) {
        worst = std::max(worst, std::abs(d.coeff(jj, k) - H(-(2 * jj + 1), k)));
      }
    }
    j["direct_vs_fourier"] = worst;
  }
  j["file"] = dst.string();
  out << j.dump(2) << '\n';
  return kExitPass;
}

struct Reconstruction {
  DensityGrid f;
  ReprojectionStats stats;
  double tail_bound = 0.0;
  int depth = 0;
};

Reconstruction reconstruct_lattice(const FourierLattice& L, const Config& c) {
  const BoundaryModeSequence s = build_boundary_sequence(L, c.samples);
  const InteriorField u = interior_u(s, c.rho, c.grid, c.j_terms, false);
  Reconstruction r;
  r.f = recover_f(u);
  r.stats = reproject_check(r.f, L, c.n_beta, c.n_theta);
  r.depth = s.depth();
  const int used = c.j_terms < 0 ? s.depth() : std::min(s.depth(), c.j_terms + 1);
  r.tail_bound = s.tail_bound(used);
  return r;
}

int cmd_reconstruct(const Config& c, std::ostream& out) {
  const FourierLattice L = load_lattice(c.in);
  const Reconstruction r = reconstruct_lattice(L, c);
  const fs::path dst = out_path(c, "density.csv");
  save_density(dst, r.f);
  json j;
  j["depth"] = r.depth;
  j["tail_bound"] = r.tail_bound;
  j["reprojection"] = to_json(r.stats);
  j["reprojection_tol"] = c.reproj_tol;
  const bool consistent = r.stats.mean_rel_error <= c.reproj_tol;
  j["consistent"] = consistent;
  j["file"] = dst.string();
  emit(out, c, j, ".stats.json", dst);
  return consistent ? kExitPass : kExitFail;
}

int cmd_gghl(const Config& c, std::ostream& out, std::ostream& err) {
  TorusGrid g = TorusGrid::zeros(8, 8, GridKind::Doubled);
  if (!c.in.empty()) {
    g = load_grid(c.in);
  } else {
    require(!c.phantom.empty(), "gghl needs --in or --phantom");
    g = doubled_restriction(xray_sinogram(Phantom::parse(c.phantom), c.n_beta, c.n_theta));
  }
  const MomentTable t = moment_table(g, c.p_max);
  const fs::path dst = out_path(c, "moments.csv");
  save_moments(dst, t);
  const ConditionReport r = check_gghl(t, c.tol);
  json j;
  j["m00"] = {t(0, 0).real(), t(0, 0).imag()};
  j["report"] = to_json(r);
  j["file"] = dst.string();
  out << j.dump(2) << '\n';
  describe_failures({r}, err);
  return r.pass ? kExitPass : kExitFail;
}

int cmd_pipeline(const Config& c, std::ostream& out, std::ostream& err) {
  require(!c.phantom.empty(), "--phantom is required");
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const Phantom f = Phantom::parse(c.phantom);
  const TorusGrid x = xray_sinogram(f, c.n_beta, c.n_theta);
  const FourierLattice L = lattice_of(x, c.band);

  json j;
  j["phantom"] = f.to_spec();
  j["nbeta"] = c.n_beta;
  j["ntheta"] = c.n_theta;
  j["band"] = c.band;

  const auto reports = check_all(L, relative_tolerance(L, c.tol));
  j["range"] = to_json(reports);
  bool pass = all_pass(reports);

  json h;
  h["range_residual"] = range_residual(L);
  h["range_residual_rel"] = L.sup_norm() > 0 ? range_residual(L) / L.sup_norm() : 0.0;
  j["hilbert"] = h;

  const Reconstruction r = reconstruct_lattice(L, c);
  json rec;
  rec["rho"] = c.rho;
  rec["grid"] = c.grid;
  rec["depth"] = r.depth;
  rec["tail_bound"] = r.tail_bound;
  rec["l2_error"] = density_l2_error(r.f, f, 0.8 * c.rho);
  rec["reprojection"] = to_json(r.stats);
  j["reconstruct"] = rec;

  const TorusGrid d = doubled_restriction(x);
  const MomentTable t = moment_table(d, c.p_max);
  const ConditionReport gr = check_gghl(t, c.tol);
  json gg;
  gg["m00"] = {t(0, 0).real(), t(0, 0).imag()};
  gg["report"] = to_json(gr);
  gg["equivalence"] = to_json(verify_equivalence(analyze(d, c.band, c.band), d, std::min(c.p_max, 3)));
  j["gghl"] = gg;
  pass = pass && gr.pass;

  j["seconds"] = std::chrono::duration<double>(clock::now() - t0).count();
  j["pass"] = pass;

  if (!c.out.empty()) {
    fs::create_directories(c.out);
    save_density(fs::path(c.out) / "density.csv", r.f);
    save_lattice(fs::path(c.out) / "lattice.csv", L);
    save_json(fs::path(c.out) / "pipeline.json", j);
  }
  out << j.dump(2) << '\n';
  describe_failures(reports, err);
  describe_failures({gr}, err);
  return pass ? kExitPass : kExitFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fan-beam X-ray transform range conditions and reconstruction"};
  app.require_subcommand(1);
  Config c;

  auto grid_flags = [&](CLI::App* s) {
    s->add_option("--nbeta", c.n_beta, "Source samples")->check(CLI::PositiveNumber);
    s->add_option("--ntheta", c.n_theta, "Direction samples")->check(CLI::PositiveNumber);
  };
  auto recon_flags = [&](CLI::App* s) {
    s->add_option("--rho", c.rho, "Interior radius")->check(CLI::Range(0.0, 0.9));
    s->add_option("--grid", c.grid, "Interior grid points per axis")->check(CLI::Range(5, 4096));
    s->add_option("--jterms", c.j_terms, "Corrector terms (-1: full depth)");
    s->add_option("--samples", c.samples, "Boundary quadrature nodes (0: default)");
  };

  auto* forward = app.add_subcommand("forward", "Sample Xf and write Xray, OddExtended and Doubled grids");
  forward->add_option("--phantom", c.phantom, "Phantom spec")->required();
  grid_flags(forward);
  forward->add_option("-o,--out", c.out, "Output directory");

  auto* an = app.add_subcommand("analyze", "Fourier lattice of a grid (Xray grids are odd-extended first)");
  an->add_option("--in", c.in, "Grid CSV")->required();
  an->add_option("--band", c.band, "n_max = k_max")->check(CLI::NonNegativeNumber);
  an->add_option("-o,--out", c.out, "Lattice CSV");

  auto* syn = app.add_subcommand("synthesize", "Grid from the odd negative rows of a lattice");
  syn->add_option("--in", c.in, "Lattice CSV")->required();
  grid_flags(syn);
  syn->add_option("-o,--out", c.out, "Grid CSV");

  auto* chk = app.add_subcommand("check", "Range conditions of a lattice or grid; GGHL moments of a Doubled grid");
  chk->add_option("--in", c.in, "Lattice or grid CSV")->required();
  chk->add_option("--tol", c.tol, "Relative tolerance")->check(CLI::NonNegativeNumber);
  chk->add_option("--band", c.band, "Band for grids")->check(CLI::NonNegativeNumber);
  chk->add_option("--pmax", c.p_max, "Moment order for Doubled grids")->check(CLI::NonNegativeNumber);
  chk->add_option("-o,--out", c.out, "Report JSON");

  auto* hil = app.add_subcommand("hilbert", "Bukhgeim-Hilbert transform of a lattice");
  hil->add_option("--in", c.in, "Lattice CSV")->required();
  hil->add_flag("--direct", c.direct, "Also evaluate by quadrature and compare");
  hil->add_option("--samples", c.samples, "Boundary quadrature nodes (0: default)");
  hil->add_option("-o,--out", c.out, "Lattice CSV");

  auto* rec = app.add_subcommand("reconstruct", "Density from a lattice, with reprojection statistics");
  rec->add_option("--in", c.in, "Lattice CSV")->required();
  recon_flags(rec);
  grid_flags(rec);
  rec->add_option("--tol", c.reproj_tol, "Mean relative reprojection tolerance")->check(CLI::NonNegativeNumber);
  rec->add_option("-o,--out", c.out, "Density CSV");

  auto* gg = app.add_subcommand("gghl", "Moment table and GGHL check of a Doubled grid");
  gg->add_option("--in", c.in, "Doubled grid CSV");
  gg->add_option("--phantom", c.phantom, "Phantom spec (instead of --in)");
  grid_flags(gg);
  gg->add_option("--pmax", c.p_max, "Highest p")->check(CLI::NonNegativeNumber);
  gg->add_option("--tol", c.tol, "Tolerance relative to |M(0,0)|")->check(CLI::NonNegativeNumber);
  gg->add_option("-o,--out", c.out, "Moments CSV");

  auto* pipe = app.add_subcommand("pipeline", "forward, analyze, check, hilbert, reconstruct, reproject, gghl");
  pipe->add_option("--phantom", c.phantom, "Phantom spec")->required();
  grid_flags(pipe);
  pipe->add_option("--band", c.band, "n_max = k_max")->check(CLI::NonNegativeNumber);
  pipe->add_option("--tol", c.tol, "Relative tolerance")->check(CLI::NonNegativeNumber);
  recon_flags(pipe);
  pipe->add_option("--pmax", c.p_max, "Highest moment order")->check(CLI::NonNegativeNumber);
  pipe->add_option("-o,--out", c.out, "Output directory");

  std::vector<const char*> argv{"xrt"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*forward) return cmd_forward(c, out);
    if (*an) return cmd_analyze(c, out);
    if (*syn) return cmd_synthesize(c, out);
    if (*chk) return cmd_check(c, out, err);
    if (*hil) return cmd_hilbert(c, out);
    if (*rec) return cmd_reconstruct(c, out);
    if (*gg) return cmd_gghl(c, out, err);
    if (*pipe) return cmd_pipeline(c, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace xrt::cli
