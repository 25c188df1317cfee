#pragma once
// Analytic test densities on the closed unit disc with closed-form line
// integrals.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "xrt/geometry.hpp"

namespace xrt {

/// amplitude * indicator(|z - center| < radius); requires |center| + radius <= 1.
struct Disc {
  cplx center{0.0, 0.0};
  double radius = 0.0;
  double amplitude = 0.0;
};

/// amplitude * (1 - |z|^2)^exponent on |z| < 1.
struct RadialBump {
  int exponent = 1;
  double amplitude = 0.0;
};

/// amplitude on |z| < 1.
struct Constant {
  double amplitude = 0.0;
};

using PhantomComponent = std::variant<Disc, RadialBump, Constant>;

/// Integral of (1 - t^2)^m over [-1, 1]. Computed by Gauss-Legendre
/// quadrature on first use and cached per m.
double bump_profile_constant(int m);

class Phantom {
 public:
  Phantom() = default;
  /// Validates every component; throws std::invalid_argument on bad supports
  /// or non-finite amplitudes.
  explicit Phantom(std::vector<PhantomComponent> components);

  /// Parses the mini-language used by the CLI, e.g.
  /// "disc:cx=0.3,cy=0,r=0.4,a=1+bump:m=2,a=0.5+const:a=0.1".
  static Phantom parse(std::string_view spec);

  /// Canonical spec string; parse(to_spec()) reproduces the phantom.
  std::string to_spec() const;

  const std::vector<PhantomComponent>& components() const { return components_; }

  /// Density at z. Throws std::domain_error when |z| > 1.
  double eval(cplx z) const;

  /// X-ray transform along L(beta, theta), in closed form.
  double line_integral(const TorusPoint& p) const;

  /// Total mass (integral of the density over the disc).
  double mass() const;

 private:
  std::vector<PhantomComponent> components_;
};

}  // namespace xrt
