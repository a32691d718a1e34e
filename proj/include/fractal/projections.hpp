#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fractal/curves.hpp"
#include "fractal/ifs.hpp"

namespace fractal {

/// A projection direction. For rational tangents p/q the direction is the
/// integer vector (q, p) and all endpoint arithmetic is exact; reported
/// lengths are scaled by |(dx, dy)| which `norm` undoes. Irrational angles
/// use the rounded unit vector and a small merge tolerance.
struct ProjDirection {
  Rational dx, dy;
  double norm = 1.0;
  bool exact = false;

  static ProjDirection from_angle(double theta);
  /// Direction of slope p/q, i.e. the integer vector (q, p).
  static ProjDirection from_tangent(long long p, long long q);
  /// Rotated by +90 degrees: (-dy, dx).
  ProjDirection perp() const;

  std::string describe() const;
};

/// Sorted union of disjoint closed intervals with exact endpoints.
/// Endpoints live in scaled (unnormalized-direction) units; geometric
/// lengths divide by `norm`.
struct IntervalUnion {
  std::vector<std::pair<Rational, Rational>> intervals;
  Rational total_length_scaled;
  double norm = 1.0;

  double total_length() const { return to_double(total_length_scaled) / norm; }
  std::size_t count() const { return intervals.size(); }
  double largest_interval() const;
  /// Number of cells of the eps-grid (geometric units) meeting the union.
  std::int64_t grid_count(double eps) const;
};

/// Exact union of the per-box projected intervals of the cover.
IntervalUnion project_cover(const BoxCover& cover, const ProjDirection& dir);
IntervalUnion project_cover(const BoxCover& cover, double theta);

struct LadderEntry {
  int depth = 0;
  double total_length = 0.0;
  std::int64_t interval_count = 0;
};

/// Per-depth measure and component count of proj C(gamma) x C(gamma).
std::vector<LadderEntry> projection_ladder(const Rational& gamma, const ProjDirection& dir,
                                           int max_depth);

/// Same ladder for the cover family of an arbitrary equal-ratio system.
std::vector<LadderEntry> projection_ladder(const IfsSystem& system, const ProjDirection& dir,
                                           int max_depth);

struct AngleReport {
  double side_angle = 0.0;        // angle of the polygon side
  ProjDirection projection;       // perpendicular of the side: the direction that matters
  double measure = 0.0;           // L^1 of the projected cover
  std::int64_t interval_count = 0;
  double dim_estimate = 0.0;      // grid-count slope of the projection
  bool interval_hint = false;     // a long seamless merged run exists
};

struct PolygonSumsetReport {
  std::vector<AngleReport> angles;
  double max_measure = 0.0;
  double sumset_dim_estimate = 0.0;  // 1 + max projected dimension estimate
  bool measure_positive_hint = false;
  bool interior_hint = false;
};

/// Reduction of the polygon sumset to projections: for each side angle
/// alpha, the cover is projected onto alpha-perp; the sumset's measure class
/// and dimension follow from the per-angle projections.
PolygonSumsetReport polygon_sumset_report(const BoxCover& cover, const CurveSpec& polygon,
                                          double measure_threshold = 0.05);
PolygonSumsetReport polygon_sumset_report(const BoxCover& cover,
                                          const std::vector<std::pair<double, ProjDirection>>& sides,
                                          double measure_threshold = 0.05);

}  // namespace fractal
