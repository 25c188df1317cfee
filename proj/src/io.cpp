#include "xrt/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

namespace xrt {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Header {
  std::string name;
  std::map<std::string, std::string, std::less<>> fields;

  const std::string& get(std::string_view key) const {
    auto it = fields.find(key);
    if (it == fields.end()) throw IoError("header of '" + name + "' lacks field " + std::string(key));
    return it->second;
  }
};

Header read_header(std::istream& is, std::string_view expected) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty input, expected '" + std::string(expected) + "' header");
  if (line.rfind("# ", 0) != 0) throw IoError("missing '# " + std::string(expected) + "' header");
  std::istringstream ss(line.substr(2));
  Header h;
  ss >> h.name;
  if (h.name != expected) throw IoError("expected '" + std::string(expected) + "' data, found '" + h.name + "'");
  std::string tok;
  while (ss >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw IoError("malformed header field '" + tok + "'");
    h.fields[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return h;
}

template <class T>
T parse_number(std::string_view s, std::string_view what) {
  T v{};
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || p != end) throw IoError("bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

// Splits a data line into exactly `count` comma-separated fields.
std::vector<std::string_view> split_row(std::string_view line, std::size_t count, long line_no) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.size() != count) {
    throw IoError("line " + std::to_string(line_no) + ": expected " + std::to_string(count) + " fields");
  }
  return out;
}

// Calls row(fields, line_no) for each non-empty data line.
template <class F>
void for_rows(std::istream& is, std::size_t count, F row) {
  std::string line;
  long line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    row(split_row(line, count, line_no), line_no);
  }
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p);
  if (!os) throw IoError("cannot write " + p.string());
  return os;
}

std::ifstream open_in(const std::filesystem::path& p) {
  std::ifstream is(p);
  if (!is) throw IoError("cannot read " + p.string());
  return is;
}

void finish(std::ostream& os, const std::filesystem::path& p) {
  os.flush();
  if (!os) throw IoError("write failed: " + p.string());
}

}  // namespace

void write_grid(std::ostream& os, const TorusGrid& g) {
  os << "# torusgrid nbeta=" << g.n_beta() << " ntheta=" << g.n_theta() << " kind=" << to_string(g.kind()) << '\n';
  for (int j = 0; j < g.n_beta(); ++j) {
    for (int l = 0; l < g.n_theta(); ++l) os << j << ',' << l << ',' << num(g(j, l)) << '\n';
  }
}

TorusGrid read_grid(std::istream& is) {
  const Header h = read_header(is, "torusgrid");
  const int nb = parse_number<int>(h.get("nbeta"), "nbeta");
  const int nt = parse_number<int>(h.get("ntheta"), "ntheta");
  GridKind kind;
  try {
    kind = grid_kind_from_string(h.get("kind"));
  } catch (const std::invalid_argument& e) {
    throw IoError(e.what());
  }
  if (nb <= 0 || nt <= 0) throw IoError("torusgrid: dimensions must be positive");
  std::vector<double> values(static_cast<std::size_t>(nb) * nt);
  std::vector<char> seen(values.size(), 0);
  for_rows(is, 3, [&](const auto& f, long line_no) {
    const int j = parse_number<int>(f[0], "j");
    const int l = parse_number<int>(f[1], "l");
    if (j < 0 || j >= nb || l < 0 || l >= nt) throw IoError("line " + std::to_string(line_no) + ": cell out of range");
    const std::size_t idx = static_cast<std::size_t>(j) * nt + l;
    values[idx] = parse_number<double>(f[2], "value");
    seen[idx] = 1;
  });
  for (char s : seen) {
    if (!s) throw IoError("torusgrid: missing cells");
  }
  try {
    return TorusGrid(nb, nt, kind, std::move(values));
  } catch (const std::invalid_argument& e) {
    throw IoError(e.what());
  }
}

void write_lattice(std::ostream& os, const FourierLattice& L) {
  os << "# lattice nmax=" << L.n_max() << " kmax=" << L.k_max() << '\n';
  for (int n = -L.n_max(); n <= L.n_max(); ++n) {
    for (int k = -L.k_max(); k <= L.k_max(); ++k) {
      const cplx v = L(n, k);
      if (v == cplx{}) continue;
      os << n << ',' << k << ',' << num(v.real()) << ',' << num(v.imag()) << '\n';
    }
  }
}

FourierLattice read_lattice(std::istream& is) {
  const Header h = read_header(is, "lattice");
  const int nmax = parse_number<int>(h.get("nmax"), "nmax");
  const int kmax = parse_number<int>(h.get("kmax"), "kmax");
  if (nmax < 0 || kmax < 0) throw IoError("lattice: negative band");
  FourierLattice L(nmax, kmax);
  for_rows(is, 4, [&](const auto& f, long line_no) {
    const int n = parse_number<int>(f[0], "n");
    const int k = parse_number<int>(f[1], "k");
    if (!L.in_band(n, k)) throw IoError("line " + std::to_string(line_no) + ": entry outside band");
    L.set(n, k, {parse_number<double>(f[2], "re"), parse_number<double>(f[3], "im")});
  });
  return L;
}

void write_modeseq(std::ostream& os, const BoundaryModeSequence& s) {
  os << "# modeseq J=" << s.depth() << " kmax=" << s.k_max() << '\n';
  for (int j = 0; j < s.depth(); ++j) {
    for (int k = -s.k_max(); k <= s.k_max(); ++k) {
      const cplx v = s.coeff(j, k);
      os << j << ',' << k << ',' << num(v.real()) << ',' << num(v.imag()) << '\n';
    }
  }
}

BoundaryModeSequence read_modeseq(std::istream& is, int n_samples) {
  const Header h = read_header(is, "modeseq");
  const int depth = parse_number<int>(h.get("J"), "J");
  const int kmax = parse_number<int>(h.get("kmax"), "kmax");
  if (depth < 1 || kmax < 0) throw IoError("modeseq: need J >= 1 and kmax >= 0");
  std::vector<std::vector<cplx>> spectra(static_cast<std::size_t>(depth),
                                         std::vector<cplx>(static_cast<std::size_t>(2 * kmax + 1)));
  for_rows(is, 4, [&](const auto& f, long line_no) {
    const int j = parse_number<int>(f[0], "j");
    const int k = parse_number<int>(f[1], "k");
    if (j < 0 || j >= depth || k < -kmax || k > kmax) {
      throw IoError("line " + std::to_string(line_no) + ": entry outside sequence");
    }
    spectra[static_cast<std::size_t>(j)][static_cast<std::size_t>(k + kmax)] = {parse_number<double>(f[2], "re"),
                                                                               parse_number<double>(f[3], "im")};
  });
  const int m = n_samples > 0 ? n_samples : std::max(kDefaultBoundarySamples, 2 * kmax + 2);
  try {
    return BoundaryModeSequence::from_spectrum(kmax, std::move(spectra), m);
  } catch (const std::invalid_argument& e) {
    throw IoError(e.what());
  }
}

void write_density(std::ostream& os, const DensityGrid& f) {
  os << "# density n=" << f.grid_n << " rho=" << num(f.rho) << '\n';
  for (int iy = 0; iy < f.grid_n; ++iy) {
    for (int ix = 0; ix < f.grid_n; ++ix) {
      if (f.inside(ix, iy)) os << ix << ',' << iy << ',' << num(f.at(ix, iy)) << '\n';
    }
  }
}

DensityGrid read_density(std::istream& is) {
  const Header h = read_header(is, "density");
  DensityGrid f;
  f.grid_n = parse_number<int>(h.get("n"), "n");
  f.rho = parse_number<double>(h.get("rho"), "rho");
  try {
    f.mask = disc_mask(f.rho, f.grid_n);
  } catch (const std::invalid_argument& e) {
    throw IoError(e.what());
  }
  f.h = 2 * f.rho / (f.grid_n - 1);
  f.values.assign(f.mask.size(), 0.0);
  for_rows(is, 3, [&](const auto& r, long line_no) {
    const int ix = parse_number<int>(r[0], "ix");
    const int iy = parse_number<int>(r[1], "iy");
    if (!f.inside(ix, iy)) throw IoError("line " + std::to_string(line_no) + ": node outside the disc");
    f.values[f.index(ix, iy)] = parse_number<double>(r[2], "value");
  });
  return f;
}

void write_moments(std::ostream& os, const MomentTable& t) {
  os << "# moments pmax=" << t.p_max() << " mmax=" << t.m_max() << '\n';
  for (int p = 0; p <= t.p_max(); ++p) {
    for (int m = -t.m_max(); m <= t.m_max(); ++m) {
      const cplx v = t(p, m);
      os << p << ',' << m << ',' << num(v.real()) << ',' << num(v.imag()) << '\n';
    }
  }
}

MomentTable read_moments(std::istream& is) {
  const Header h = read_header(is, "moments");
  const int pmax = parse_number<int>(h.get("pmax"), "pmax");
  const int mmax = parse_number<int>(h.get("mmax"), "mmax");
  if (pmax < 0 || mmax < 0) throw IoError("moments: negative bounds");
  MomentTable t(pmax, mmax);
  for_rows(is, 4, [&](const auto& f, long line_no) {
    const int p = parse_number<int>(f[0], "p");
    const int m = parse_number<int>(f[1], "m");
    if (p < 0 || p > pmax || m < -mmax || m > mmax) {
      throw IoError("line " + std::to_string(line_no) + ": entry outside table");
    }
    t.set(p, m, {parse_number<double>(f[2], "re"), parse_number<double>(f[3], "im")});
  });
  return t;
}

std::string sniff_format(const std::filesystem::path& path) {
  auto is = open_in(path);
  std::string line;
  std::getline(is, line);
  if (line.rfind("# ", 0) != 0) throw IoError(path.string() + ": no format header");
  std::istringstream ss(line.substr(2));
  std::string name;
  ss >> name;
  return name;
}

void save_grid(const std::filesystem::path& p, const TorusGrid& g) {
  auto os = open_out(p);
  write_grid(os, g);
  finish(os, p);
}
TorusGrid load_grid(const std::filesystem::path& p) {
  auto is = open_in(p);
  return read_grid(is);
}
void save_lattice(const std::filesystem::path& p, const FourierLattice& L) {
  auto os = open_out(p);
  write_lattice(os, L);
  finish(os, p);
}
FourierLattice load_lattice(const std::filesystem::path& p) {
  auto is = open_in(p);
  return read_lattice(is);
}
void save_modeseq(const std::filesystem::path& p, const BoundaryModeSequence& s) {
  auto os = open_out(p);
  write_modeseq(os, s);
  finish(os, p);
}
BoundaryModeSequence load_modeseq(const std::filesystem::path& p, int n_samples) {
  auto is = open_in(p);
  return read_modeseq(is, n_samples);
}
void save_density(const std::filesystem::path& p, const DensityGrid& f) {
  auto os = open_out(p);
  write_density(os, f);
  finish(os, p);
}
DensityGrid load_density(const std::filesystem::path& p) {
  auto is = open_in(p);
  return read_density(is);
}
void save_moments(const std::filesystem::path& p, const MomentTable& t) {
  auto os = open_out(p);
  write_moments(os, t);
  finish(os, p);
}
MomentTable load_moments(const std::filesystem::path& p) {
  auto is = open_in(p);
  return read_moments(is);
}
void save_json(const std::filesystem::path& p, const nlohmann::ordered_json& j) {
  auto os = open_out(p);
  os << j.dump(2) << '\n';
  finish(os, p);
}

nlohmann::ordered_json to_json(const ConditionReport& r) {
  nlohmann::ordered_json j;
  j["condition"] = r.condition;
  j["max_abs_residual"] = r.max_abs_residual;
  j["worst_n"] = r.worst_n;
  j["worst_k"] = r.worst_k;
  j["pairs_checked"] = r.pairs_checked;
  j["coverage_fraction"] = r.coverage_fraction;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  return j;
}

nlohmann::ordered_json to_json(const std::vector<ConditionReport>& rs) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rs) arr.push_back(to_json(r));
  return arr;
}

nlohmann::ordered_json to_json(const ReprojectionStats& s) {
  nlohmann::ordered_json j;
  j["cells"] = s.cells;
  j["max_abs_error"] = s.max_abs_error;
  j["mean_abs_error"] = s.mean_abs_error;
  j["max_rel_error"] = s.max_rel_error;
  j["mean_rel_error"] = s.mean_rel_error;
  return j;
}

nlohmann::ordered_json to_json(const TransportResidual& r) {
  nlohmann::ordered_json j;
  j["nodes"] = r.nodes;
  j["max_abs"] = r.max_abs;
  j["rms"] = r.rms;
  return j;
}

nlohmann::ordered_json to_json(const EquivalenceReport& r) {
  nlohmann::ordered_json j;
  j["scale"] = r.scale;
  j["max_discrepancy"] = r.max_discrepancy;
  j["max_identity_defect"] = r.max_identity_defect;
  j["spectral_discrepancy"] = r.spectral_discrepancy;
  j["band_skips"] = r.band_skips;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json o;
    o["p"] = row.p;
    o["m"] = row.m;
    o["case"] = row.which;
    o["integral_side"] = {row.integral_side.real(), row.integral_side.imag()};
    o["lattice_side"] = {row.lattice_side.real(), row.lattice_side.imag()};
    o["discrepancy"] = row.discrepancy;
    o["identity_defect"] = row.identity_defect;
    o["in_band"] = row.in_band;
    rows.push_back(o);
  }
  j["rows"] = rows;
  return j;
}

}  // namespace xrt
