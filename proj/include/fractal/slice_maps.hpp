#pragma once

#include <cstdint>
#include <utility>

#include "fractal/curves.hpp"
#include "fractal/ifs.hpp"

namespace fractal {

/// A point x in (0,1)^2 together with a vertical-line abscissa alpha in
/// (x1, x1 + 1); with a positive margin, tau < alpha - x1 < 1 - tau.
struct AdmissiblePair {
  Point x;
  double alpha = 0.0;
  double tau_margin = 0.0;

  /// Throws a domain error naming the violated inequality.
  void validate() const;
};

/// Polar coordinates (r, phi) about a center point, phi in (-pi, pi].
struct PolarAboutX {
  Point center;
  double r = 0.0;
  double phi = 0.0;

  Point cartesian() const;
  static PolarAboutX from_cartesian(const Point& center, const Point& p);
};

/// Upper intersection of the unit circle about x with the vertical line
/// at alpha: (alpha, x2 + sqrt(1 - (alpha - x1)^2)).
Point phi_alpha(const AdmissiblePair& pair);

/// arccos(alpha - x1) + pi/2, in (pi/2, pi).
double theta_of(const AdmissiblePair& pair);

std::pair<Point, double> tau_map(const AdmissiblePair& pair);
AdmissiblePair tau_inverse(const Point& x, double theta);

/// Radius-preserving angle shift by -arcsin(r/2) on the upper half-disk and
/// +arcsin(r/2) on the lower; r = 0 maps to itself.
PolarAboutX psi_x(const Point& x, const PolarAboutX& u);

enum class PsiBranch { Plus, Minus, InversePlus, InverseMinus };

/// Applies the requested injective branch of psi_x (or its inverse); throws
/// if the point lies outside the branch's domain.
PolarAboutX psi_apply(PsiBranch branch, const PolarAboutX& u);

/// Distance ratio ||F(y1) - F(y2)|| / ||y1 - y2|| for the requested branch.
double psi_ratio(const Point& x, const PolarAboutX& y1, const PolarAboutX& y2, PsiBranch branch);

/// (alpha - arcsin(alpha - x1), x2 + sqrt(1 - (alpha - x1)^2) - 1).
/// Requires a positive tau margin.
Point h_map(const AdmissiblePair& pair);

/// f'(x) + (alpha - x) / sqrt(1 - (alpha - x)^2), for alpha - x in (0,1).
double varphi_derivative(double fprime_at_x, double alpha_minus_x);

/// Two-sided angular sector about x: radius <= r, angle in I union -I.
struct WedgeSpec {
  Point x;
  double i0 = 0.0, i1 = 0.0;  // closed subinterval of (0, pi)
  double r = 0.0;

  double width() const { return i1 - i0; }
  bool contains(const Point& p) const;
};

/// Cover-length proxy for the wedge density of a 1-set: (boxes whose center
/// lies in the wedge) * side / (2 r |I|). Requires r >= 3 * side.
double wedge_density(const BoxCover& cover, const WedgeSpec& wedge);

struct TransversalityAudit {
  double h1_const = 0.0;  // sup of slice-map distance ratios (Lipschitz proxy)
  double h2_const = 0.0;  // sup of (grid measure of r-close lambdas) * dist / r
  double curve_length = 0.0;
  double ball_radius = 0.0;
  std::uint64_t pairs = 0;
  int lambda_grid = 0;
};

/// Empirical check of the slice-family hypotheses on a short subcurve with
/// nonvanishing curvature: points are drawn from a small ball (radius <
/// length/100), slices are horizontal lines through the middle third of the
/// subcurve. Piecewise-linear curves are rejected.
TransversalityAudit transversality_audit(const CurveSpec& curve, std::uint64_t pairs,
                                         int lambda_grid, std::uint64_t seed);

}  // namespace fractal
