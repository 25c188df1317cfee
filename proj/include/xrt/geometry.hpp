#pragma once
// Fan-beam line coordinates on the torus Gamma x S^1.
//
// A line is L(beta, theta) = { e^{i beta} + s e^{i theta} : s real }: it leaves
// the boundary point e^{i beta} in direction e^{i theta}. The angle
// alpha = theta - beta measures the direction against the outer normal.

#include <complex>
#include <numbers>
#include <string_view>

namespace xrt {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces x modulo 2*pi into the half-open interval (-pi, pi].
/// Throws std::domain_error for non-finite input.
double normalize_angle(double x);

/// A point on the torus, both angles in (-pi, pi].
struct TorusPoint {
  double beta = 0.0;   // boundary variable on Gamma
  double theta = 0.0;  // direction variable on S^1

  /// Builds a point from arbitrary angles, normalizing both.
  static TorusPoint make(double beta, double theta);

  /// alpha = normalize(theta - beta).
  double alpha() const;

  cplx source() const { return std::polar(1.0, beta); }
  cplx direction() const { return std::polar(1.0, theta); }
};

enum class SectorClass { Outflux, Influx, Tangent };

std::string_view to_string(SectorClass c);

/// Outflux when |alpha| < pi/2, Influx when |alpha| > pi/2, Tangent on the
/// exact boundary.
SectorClass classify(const TorusPoint& p);

/// (beta, theta) -> (2 theta - beta - pi, theta + pi): the other end of the
/// same chord, traversed in the opposite direction. An involution that
/// preserves SectorClass.
TorusPoint antipodal_reflection(const TorusPoint& p);

struct RadonCoords {
  double s = 0.0;      // signed distance to the origin
  double omega = 0.0;  // normal direction, in (-pi, pi]
};

/// Radon parameters of an outflux line: s = sin(alpha),
/// omega = normalize(alpha + beta - pi/2). Throws std::invalid_argument for
/// influx points; reflect them first.
RadonCoords to_radon(const TorusPoint& p);

/// Length of the chord cut from the unit disc, 2|cos(theta - beta)|.
double chord_length(const TorusPoint& p);

}  // namespace xrt
