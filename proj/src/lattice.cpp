#include "xrt/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "xrt/parallel.hpp"

namespace xrt {

namespace {

// table[(m + m_max) * count + i] = exp(i * sign * m * node(i))
std::vector<cplx> twiddles(int m_max, int count, double sign, auto node) {
  std::vector<cplx> t(static_cast<std::size_t>(2 * m_max + 1) * count);
  for (int m = -m_max; m <= m_max; ++m) {
    for (int i = 0; i < count; ++i) {
      t[static_cast<std::size_t>(m + m_max) * count + i] = std::polar(1.0, sign * m * node(i));
    }
  }
  return t;
}

}  // namespace

FourierLattice::FourierLattice(int n_max, int k_max) : n_max_(n_max), k_max_(k_max) {
  if (n_max < 0 || k_max < 0) throw std::invalid_argument("FourierLattice: negative band");
  data_.assign(static_cast<std::size_t>(2 * n_max + 1) * static_cast<std::size_t>(2 * k_max + 1), cplx{});
}

cplx& FourierLattice::at(int n, int k) {
  if (!in_band(n, k)) {
    throw std::out_of_range("FourierLattice: index (" + std::to_string(n) + "," + std::to_string(k) +
                            ") outside band");
  }
  return data_[index(n, k)];
}

double FourierLattice::sup_norm() const {
  double m = 0.0;
  for (const auto& c : data_) m = std::max(m, std::abs(c));
  return m;
}

double FourierLattice::l2_norm() const {
  double s = 0.0;
  for (const auto& c : data_) s += std::norm(c);
  return std::sqrt(s);
}

FourierLattice analyze(const TorusGrid& x, int n_max, int k_max) {
  if (n_max < 0 || k_max < 0) throw std::invalid_argument("analyze: negative band");
  if (2 * n_max + 1 > x.n_theta() || 2 * k_max + 1 > x.n_beta()) {
    throw std::invalid_argument("analyze: grid " + std::to_string(x.n_beta()) + "x" +
                                std::to_string(x.n_theta()) + " cannot resolve band (" +
                                std::to_string(n_max) + "," + std::to_string(k_max) + ")");
  }
  const int nb = x.n_beta();
  const int nt = x.n_theta();
  const int rows = 2 * n_max + 1;
  const auto tw_theta = twiddles(n_max, nt, -1.0, [&](int l) { return x.theta(l); });
  const auto tw_beta = twiddles(k_max, nb, -1.0, [&](int j) { return x.beta(j); });

  // theta pass: partial[j * rows + (n + n_max)]
  std::vector<cplx> partial(static_cast<std::size_t>(nb) * rows);
  parallel_for(static_cast<std::size_t>(nb), [&](std::size_t j) {
    for (int r = 0; r < rows; ++r) {
      const cplx* w = &tw_theta[static_cast<std::size_t>(r) * nt];
      cplx acc{};
      for (int l = 0; l < nt; ++l) acc += x(static_cast<int>(j), l) * w[l];
      partial[j * rows + r] = acc;
    }
  });

  FourierLattice L(n_max, k_max);
  const double scale = 1.0 / (static_cast<double>(nb) * nt);
  std::vector<cplx> out(static_cast<std::size_t>(rows) * (2 * k_max + 1));
  parallel_for(static_cast<std::size_t>(rows), [&](std::size_t r) {
    for (int k = -k_max; k <= k_max; ++k) {
      const cplx* w = &tw_beta[static_cast<std::size_t>(k + k_max) * nb];
      cplx acc{};
      for (int j = 0; j < nb; ++j) acc += partial[static_cast<std::size_t>(j) * rows + r] * w[j];
      out[r * (2 * k_max + 1) + (k + k_max)] = acc * scale;
    }
  });
  for (int r = 0; r < rows; ++r) {
    for (int k = -k_max; k <= k_max; ++k) {
      L.set(r - n_max, k, out[static_cast<std::size_t>(r) * (2 * k_max + 1) + (k + k_max)]);
    }
  }
  return L;
}

std::vector<cplx> angular_mode(const FourierLattice& L, int n, int n_beta) {
  if (n < -L.n_max() || n > L.n_max()) {
    throw std::out_of_range("angular_mode: n=" + std::to_string(n) + " outside band");
  }
  if (n_beta <= 0) throw std::invalid_argument("angular_mode: n_beta must be positive");
  std::vector<cplx> out(static_cast<std::size_t>(n_beta));
  for (int j = 0; j < n_beta; ++j) {
    const double b = -kPi + kTwoPi * (j + 0.5) / n_beta;
    cplx acc{};
    for (int k = -L.k_max(); k <= L.k_max(); ++k) {
      const cplx c = L(n, k);
      if (c != cplx{}) acc += c * std::polar(1.0, k * b);
    }
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

TorusGrid synthesize_odd(const FourierLattice& L, int n_beta, int n_theta) {
  TorusGrid shape = TorusGrid::zeros(n_beta, n_theta, GridKind::Raw);
  std::vector<int> modes;
  for (int n = -1; n >= -L.n_max(); n -= 2) modes.push_back(n);
  // rows[m][j] = g_{n_m}(beta_j)
  std::vector<std::vector<cplx>> rows;
  rows.reserve(modes.size());
  for (int n : modes) rows.push_back(angular_mode(L, n, n_beta));

  std::vector<double> values(static_cast<std::size_t>(n_beta) * n_theta);
  parallel_for(static_cast<std::size_t>(n_beta), [&](std::size_t j) {
    for (int l = 0; l < n_theta; ++l) {
      const double t = shape.theta(l);
      cplx acc{};
      for (std::size_t m = 0; m < modes.size(); ++m) {
        acc += rows[m][j] * std::polar(1.0, modes[m] * t);
      }
      values[j * n_theta + l] = 2.0 * acc.real();
    }
  });
  return TorusGrid(n_beta, n_theta, GridKind::Raw, std::move(values));
}

FourierLattice conjugate_completion(const FourierLattice& L) {
  FourierLattice out = L;
  for (int n = 1; n <= L.n_max(); ++n) {
    for (int k = -L.k_max(); k <= L.k_max(); ++k) out.set(n, k, std::conj(L(-n, -k)));
  }
  return out;
}

DecaySums decay_report(const FourierLattice& L, double mu) {
  if (!(mu > 0.5 && mu < 1.0)) throw std::invalid_argument("decay_report: mu must lie in (1/2, 1)");
  auto bracket = [](int m) { return std::sqrt(1.0 + static_cast<double>(m) * m); };
  DecaySums s;
  for (int n = -1; n >= -L.n_max(); n -= 2) {
    double row = 0.0;
    for (int k = -L.k_max(); k <= L.k_max(); ++k) row += std::abs(L(n, k));
    s.angular += bracket(n) * bracket(n) * row;
  }
  for (int k = -L.k_max(); k <= L.k_max(); ++k) {
    double col = 0.0;
    for (int n = -1; n >= -L.n_max(); n -= 2) col += std::abs(L(n, k));
    s.boundary += std::pow(bracket(k), 1.0 + mu) * col;
  }
  return s;
}

}  // namespace xrt
