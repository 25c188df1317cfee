#include "xrt/bukhgeim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "xrt/parallel.hpp"

namespace xrt {

namespace {

double sign_pow(int e) { return (e % 2 == 0) ? 1.0 : -1.0; }

double cell_node(int i, int m) { return -kPi + kTwoPi * (i + 0.5) / m; }

// Coefficients k = -k_max..k_max of the trigonometric interpolant of samples.
std::vector<cplx> sample_dft(std::span<const cplx> v, int k_max) {
  const int m = static_cast<int>(v.size());
  std::vector<cplx> out(static_cast<std::size_t>(2 * k_max + 1));
  for (int k = -k_max; k <= k_max; ++k) {
    cplx acc{};
    for (int i = 0; i < m; ++i) acc += v[static_cast<std::size_t>(i)] * std::polar(1.0, -k * cell_node(i, m));
    out[static_cast<std::size_t>(k + k_max)] = acc / static_cast<double>(m);
  }
  return out;
}

std::vector<cplx> synthesize(const std::vector<cplx>& spec, int k_max, int m) {
  std::vector<cplx> out(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double b = cell_node(i, m);
    cplx acc{};
    for (int k = -k_max; k <= k_max; ++k) acc += spec[static_cast<std::size_t>(k + k_max)] * std::polar(1.0, k * b);
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

void require_samples(int k_max, int m) {
  if (k_max < 0) throw std::invalid_argument("BoundaryModeSequence: negative k_max");
  if (m < 2 * k_max + 2) {
    throw std::invalid_argument("BoundaryModeSequence: " + std::to_string(m) +
                                " samples cannot resolve k_max=" + std::to_string(k_max));
  }
}

}  // namespace

BoundaryModeSequence::BoundaryModeSequence(int k_max, int n_samples, std::vector<std::vector<cplx>> spectra,
                                           std::vector<std::vector<cplx>> samples)
    : k_max_(k_max), n_samples_(n_samples), spectra_(std::move(spectra)), samples_(std::move(samples)) {
  if (spectra_.empty()) throw std::invalid_argument("BoundaryModeSequence: depth must be at least 1");
  for (const auto& row : spectra_) {
    for (const auto& c : row) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw std::invalid_argument("BoundaryModeSequence: non-finite coefficient");
      }
    }
  }
}

BoundaryModeSequence BoundaryModeSequence::from_spectrum(int k_max, std::vector<std::vector<cplx>> spectra,
                                                         int n_samples) {
  require_samples(k_max, n_samples);
  std::vector<std::vector<cplx>> samples;
  samples.reserve(spectra.size());
  for (const auto& row : spectra) {
    if (row.size() != static_cast<std::size_t>(2 * k_max + 1)) {
      throw std::invalid_argument("BoundaryModeSequence: spectrum length must be 2 k_max + 1");
    }
    samples.push_back(synthesize(row, k_max, n_samples));
  }
  return BoundaryModeSequence(k_max, n_samples, std::move(spectra), std::move(samples));
}

BoundaryModeSequence BoundaryModeSequence::from_samples(int k_max, std::vector<std::vector<cplx>> samples) {
  if (samples.empty()) throw std::invalid_argument("BoundaryModeSequence: depth must be at least 1");
  const int m = static_cast<int>(samples.front().size());
  require_samples(k_max, m);
  std::vector<std::vector<cplx>> spectra;
  spectra.reserve(samples.size());
  for (const auto& row : samples) {
    if (static_cast<int>(row.size()) != m) throw std::invalid_argument("BoundaryModeSequence: ragged samples");
    spectra.push_back(sample_dft(row, k_max));
  }
  return BoundaryModeSequence(k_max, m, std::move(spectra), std::move(samples));
}

BoundaryModeSequence BoundaryModeSequence::zeros(int depth, int k_max, int n_samples) {
  if (depth < 1) throw std::invalid_argument("BoundaryModeSequence: depth must be at least 1");
  require_samples(k_max, n_samples);
  return BoundaryModeSequence(
      k_max, n_samples,
      std::vector<std::vector<cplx>>(static_cast<std::size_t>(depth),
                                     std::vector<cplx>(static_cast<std::size_t>(2 * k_max + 1))),
      std::vector<std::vector<cplx>>(static_cast<std::size_t>(depth),
                                     std::vector<cplx>(static_cast<std::size_t>(n_samples))));
}

double BoundaryModeSequence::node(int i) const { return cell_node(i, n_samples_); }

cplx BoundaryModeSequence::coeff(int j, int k) const {
  if (j < 0 || j >= depth()) throw std::out_of_range("BoundaryModeSequence: component out of range");
  if (k < -k_max_ || k > k_max_) return {};
  return spectra_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k + k_max_)];
}

double BoundaryModeSequence::sup_abs(int j) const {
  double m = 0.0;
  for (const auto& c : samples_[static_cast<std::size_t>(j)]) m = std::max(m, std::abs(c));
  return m;
}

double BoundaryModeSequence::tail_bound(int first) const {
  double s = 0.0;
  for (int j = std::max(first, 0); j < depth(); ++j) s += sup_abs(j);
  return s;
}

double BoundaryModeSequence::representation_mismatch() const {
  double m = 0.0;
  for (std::size_t j = 0; j < spectra_.size(); ++j) {
    const auto synth = synthesize(spectra_[j], k_max_, n_samples_);
    for (std::size_t i = 0; i < synth.size(); ++i) m = std::max(m, std::abs(synth[i] - samples_[j][i]));
  }
  return m;
}

cplx pv_cauchy_mode(int n, double beta, int n_nodes) {
  const int m = n_nodes > 0 ? n_nodes : std::max(64, 4 * (std::abs(n) + 1));
  // e^{in a} - e^{in b} over e^{ia} - e^{ib}, written without cancellation:
  // e^{i(n-1)(a+b)/2} sin(n d/2) / sin(d/2), d = a - b.
  cplx sum{};
  for (int i = 1; i < m; ++i) {
    const double d = kTwoPi * i / m;
    sum += (std::sin(n * d / 2) / std::sin(d / 2)) * std::polar(1.0, (n - 1) * (2 * beta + d) / 2);
  }
  sum += static_cast<double>(n) * std::polar(1.0, (n - 1) * beta);  // coincident node
  const cplx smooth = sum * (2.0 / m);                                // (1/pi) * (2 pi / m)
  const cplx singular = -std::polar(1.0, (n - 1) * beta);             // e^{inb} times the mode-0 value
  return smooth + singular;
}

FourierLattice hilbert_fourier(const FourierLattice& L) {
  for (int n = -L.n_max(); n <= L.n_max(); ++n) {
    if (n % 2 != 0) continue;
    for (int k = -L.k_max(); k <= L.k_max(); ++k) {
      if (L(n, k) != cplx{}) {
        throw std::invalid_argument("hilbert_fourier: nonzero entry on even row n=" + std::to_string(n));
      }
    }
  }
  const cplx i1{0.0, 1.0};
  FourierLattice out(L.n_max(), L.k_max());
  for (int n = -1; n >= -L.n_max(); n -= 2) {
    for (int k = -L.k_max(); k <= L.k_max(); ++k) {
      if (k >= 0) {
        out.set(n, k, i1 * L(n, k));
      } else {
        out.set(n, k, i1 * (-L(n, k) + 2.0 * sign_pow(k) * L(n + 2 * k, -k)));
      }
    }
  }
  return out;
}

BoundaryModeSequence hilbert_direct(const BoundaryModeSequence& s) {
  const int m = s.n_samples();
  const int depth = s.depth();
  const double w = 2.0 / m;  // (1/pi) * trapezoid weight
  const int k_interp = (m - 1) / 2;

  std::vector<std::vector<cplx>> out(static_cast<std::size_t>(depth), std::vector<cplx>(static_cast<std::size_t>(m)));
  parallel_for(static_cast<std::size_t>(depth), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    const auto c = s.samples(j);

    // c'(beta_i) from the trigonometric interpolant
    const auto spec = sample_dft(c, k_interp);
    std::vector<cplx> dspec(spec.size());
    for (int k = -k_interp; k <= k_interp; ++k) {
      dspec[static_cast<std::size_t>(k + k_interp)] = cplx{0.0, static_cast<double>(k)} * spec[static_cast<std::size_t>(k + k_interp)];
    }
    const auto dc = synthesize(dspec, k_interp, m);

    // integrals \int c_{j+q}(a) e^{-iqa} da for q = 1.. with j + q < depth
    std::vector<cplx> series;
    for (int q = 1; j + q < depth; ++q) {
      const auto deep = s.samples(j + q);
      cplx acc{};
      for (int a = 0; a < m; ++a) acc += deep[static_cast<std::size_t>(a)] * std::polar(1.0, -q * s.node(a));
      series.push_back(acc * (kTwoPi / m));
    }

    for (int i = 0; i < m; ++i) {
      const double b = s.node(i);
      const cplx eb = std::polar(1.0, b);
      const cplx gb = c[static_cast<std::size_t>(i)] * eb;
      cplx pv{};
      for (int a = 0; a < m; ++a) {
        if (a == i) continue;
        const cplx ea = std::polar(1.0, s.node(a));
        pv += (c[static_cast<std::size_t>(a)] * ea - gb) / (ea - eb);
      }
      pv += c[static_cast<std::size_t>(i)] + dc[static_cast<std::size_t>(i)] / cplx{0.0, 1.0};
      pv *= w;
      pv -= gb * std::conj(eb);  // subtracted singular part

      cplx tail{};
      for (std::size_t q = 1; q <= series.size(); ++q) {
        tail += sign_pow(static_cast<int>(q)) * std::polar(1.0, -b * static_cast<double>(q)) * series[q - 1];
      }
      out[jj][static_cast<std::size_t>(i)] = cplx{0.0, 1.0} * (pv + tail / kPi);
    }
  });
  return BoundaryModeSequence::from_samples(s.k_max(), std::move(out));
}

double range_residual(const FourierLattice& L) {
  double worst = 0.0;
  for (int n = -1; n >= -L.n_max(); n -= 2) {
    for (int k = -1; k >= -L.k_max(); --k) {
      if (!L.in_band(n + 2 * k, -k)) continue;
      worst = std::max(worst, 2.0 * std::abs(L(n, k) - sign_pow(k) * L(n + 2 * k, -k)));
    }
  }
  return worst;
}

std::vector<cplx> bukhgeim_cauchy(const BoundaryModeSequence& s, cplx z, const CauchyOptions& opts,
                                  std::span<const int> components) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::invalid_argument("bukhgeim_cauchy: non-finite point");
  }
  if (std::abs(z) > opts.max_radius) {
    throw std::domain_error("bukhgeim_cauchy: |z| exceeds the interior radius " + std::to_string(opts.max_radius));
  }
  std::vector<int> wanted(components.begin(), components.end());
  if (wanted.empty()) {
    for (int i = 0; i < s.depth(); ++i) wanted.push_back(i);
  }
  for (int i : wanted) {
    if (i < 0 || i >= s.depth()) throw std::out_of_range("bukhgeim_cauchy: component out of range");
  }

  const int m = s.n_samples();
  std::vector<cplx> u(wanted.size());
  for (int a = 0; a < m; ++a) {
    const cplx zeta = std::polar(1.0, s.node(a));
    const cplx diff = zeta - z;
    const cplx cauchy = zeta / diff;
    const double re2 = 2.0 * cauchy.real();
    const cplx kern = std::conj(diff) / diff;
    for (std::size_t w = 0; w < wanted.size(); ++w) {
      const int i = wanted[w];
      const int avail = s.depth() - 1 - i;
      const int terms = opts.j_terms < 0 ? avail : std::min(opts.j_terms, avail);
      cplx corr{};
      cplx kp{1.0, 0.0};
      for (int q = 1; q <= terms; ++q) {
        kp *= kern;
        corr += s.sample(i + q, a) * kp;
      }
      u[w] += s.sample(i, a) * cauchy + re2 * corr;
    }
  }
  for (auto& v : u) v /= static_cast<double>(m);
  return u;
}

}  // namespace xrt
