#include "xrt/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace xrt {

double normalize_angle(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("normalize_angle: non-finite angle");
  }
  double r = std::remainder(x, kTwoPi);  // in [-pi, pi]
  if (r <= -kPi) r += kTwoPi;
  return r;
}

TorusPoint TorusPoint::make(double beta, double theta) {
  return TorusPoint{normalize_angle(beta), normalize_angle(theta)};
}

double TorusPoint::alpha() const { return normalize_angle(theta - beta); }

std::string_view to_string(SectorClass c) {
  switch (c) {
    case SectorClass::Outflux:
      return "Outflux";
    case SectorClass::Influx:
      return "Influx";
    case SectorClass::Tangent:
      return "Tangent";
  }
  return "?";
}

SectorClass classify(const TorusPoint& p) {
  const double a = std::abs(p.alpha());
  constexpr double half = kPi / 2.0;
  if (a < half) return SectorClass::Outflux;
  if (a > half) return SectorClass::Influx;
  return SectorClass::Tangent;
}

TorusPoint antipodal_reflection(const TorusPoint& p) {
  return TorusPoint::make(2.0 * p.theta - p.beta - kPi, p.theta + kPi);
}

RadonCoords to_radon(const TorusPoint& p) {
  if (classify(p) == SectorClass::Influx) {
    throw std::invalid_argument("to_radon: influx point, reflect to the outflux half first");
  }
  const double a = p.alpha();
  return RadonCoords{std::sin(a), normalize_angle(a + p.beta - kPi / 2.0)};
}

double chord_length(const TorusPoint& p) {
  if (classify(p) == SectorClass::Tangent) return 0.0;
  return 2.0 * std::abs(std::cos(p.theta - p.beta));
}

}  // namespace xrt
