#pragma once

#include <array>
#include <functional>
#include <variant>
#include <vector>

namespace fractal {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Circle {
  Point center;
  double radius = 1.0;
};

/// Perimeter of the unit square rotated by theta about the origin
/// (one vertex anchored at the origin).
struct PolygonNtheta {
  double theta = 0.0;
};

/// Graph {(x, f(x)) : x in [x0, x1]} with 0 < 1/C < f' < C.
struct Graph {
  std::function<double(double)> f;
  std::function<double(double)> fprime;
  double x0 = 0.0;
  double x1 = 1.0;
  double derivative_bound = 2.0;  // the constant C
};

struct Polyline {
  std::vector<Point> vertices;
};

struct CurveSpec {
  std::variant<Circle, PolygonNtheta, Graph, Polyline> kind;
};

struct CurveSample {
  std::vector<Point> points;
  double max_gap = 0.0;         // upper bound on consecutive sample spacing
  double hausdorff_bound = 0.0; // distance from the true curve to the sample set
};

CurveSpec polygon_ntheta(double theta);

/// Vertices of N_theta in order, starting at the origin.
std::array<Point, 4> ntheta_vertices(double theta);

/// The two projection-relevant side directions of N_theta, {theta, theta+pi/2} mod pi.
std::array<double, 2> side_angles(double theta);

CurveSample sample_curve(const CurveSpec& spec, double gap);

enum class CurvatureClass { NonvanishingCurvature, PiecewiseLinear };

/// Circles are curved; polygons and polylines are flat; graphs are probed
/// numerically with second differences (|d2|/h^2 > threshold on >= 5% of
/// grid points counts as curved).
CurvatureClass curvature_class(const CurveSpec& spec, double threshold = 0.01);

}  // namespace fractal
