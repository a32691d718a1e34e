#include "fractal/curves.hpp"

#include <cmath>
#include <stdexcept>

namespace fractal {

namespace {

double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

void sample_segment(std::vector<Point>& out, const Point& a, const Point& b, double gap) {
  double len = dist(a, b);
  int n = std::max(1, static_cast<int>(std::ceil(len / gap)));
  for (int i = 0; i < n; ++i) {
    double t = static_cast<double>(i) / n;
    out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
  }
}

double measured_max_gap(const std::vector<Point>& pts, bool closed) {
  double g = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) g = std::max(g, dist(pts[i - 1], pts[i]));
  if (closed && pts.size() > 1) g = std::max(g, dist(pts.back(), pts.front()));
  return g;
}

}  // namespace

std::array<Point, 4> ntheta_vertices(double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  // Rotation of (0,0), (1,0), (1,1), (0,1).
  return {Point{0.0, 0.0}, Point{c, s}, Point{c - s, s + c}, Point{-s, c}};
}

CurveSpec polygon_ntheta(double theta) { return CurveSpec{PolygonNtheta{theta}}; }

std::array<double, 2> side_angles(double theta) {
  const double pi = std::acos(-1.0);
  auto mod_pi = [pi](double a) {
    a = std::fmod(a, pi);
    if (a < 0) a += pi;
    return a;
  };
  return {mod_pi(theta), mod_pi(theta + pi / 2)};
}

CurveSample sample_curve(const CurveSpec& spec, double gap) {
  if (!(gap > 0)) throw std::domain_error("sample_curve: gap must be positive");
  CurveSample out;

  if (const auto* c = std::get_if<Circle>(&spec.kind)) {
    if (!(c->radius > 0)) throw std::domain_error("sample_curve: circle radius must be positive");
    double circumference = 2.0 * std::acos(-1.0) * c->radius;
    int n = std::max(4, static_cast<int>(std::ceil(circumference / gap)));
    out.points.reserve(n);
    for (int i = 0; i < n; ++i) {
      double phi = 2.0 * std::acos(-1.0) * i / n;
      out.points.push_back({c->center.x + c->radius * std::cos(phi),
                            c->center.y + c->radius * std::sin(phi)});
    }
    out.max_gap = measured_max_gap(out.points, true);
    // Chord midpoint to arc (sagitta) plus half-chord to the nearest sample.
    out.hausdorff_bound = out.max_gap / 2.0 + out.max_gap * out.max_gap / (8.0 * c->radius);
    return out;
  }

  if (const auto* p = std::get_if<PolygonNtheta>(&spec.kind)) {
    auto v = ntheta_vertices(p->theta);
    for (int i = 0; i < 4; ++i) sample_segment(out.points, v[i], v[(i + 1) % 4], gap);
    out.max_gap = measured_max_gap(out.points, true);
    out.hausdorff_bound = out.max_gap / 2.0;
    return out;
  }

  if (const auto* g = std::get_if<Graph>(&spec.kind)) {
    if (!(g->x1 > g->x0)) throw std::domain_error("sample_curve: empty graph domain");
    double max_slope = std::max(std::abs(g->fprime(g->x0)), std::abs(g->fprime(g->x1)));
    // Derivative bound C dominates any interior slope by the graph invariant.
    max_slope = std::max(max_slope, g->derivative_bound);
    double dx = gap / std::sqrt(1.0 + max_slope * max_slope);
    int n = std::max(1, static_cast<int>(std::ceil((g->x1 - g->x0) / dx)));
    out.points.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
      double x = g->x0 + (g->x1 - g->x0) * i / n;
      out.points.push_back({x, g->f(x)});
    }
    out.max_gap = measured_max_gap(out.points, false);
    out.hausdorff_bound = out.max_gap;  // conservative: curve stays within one gap of samples
    return out;
  }

  const auto& line = std::get<Polyline>(spec.kind);
  if (line.vertices.size() < 2) throw std::domain_error("sample_curve: polyline needs >= 2 vertices");
  for (std::size_t i = 0; i + 1 < line.vertices.size(); ++i)
    sample_segment(out.points, line.vertices[i], line.vertices[i + 1], gap);
  out.points.push_back(line.vertices.back());
  out.max_gap = measured_max_gap(out.points, false);
  out.hausdorff_bound = out.max_gap / 2.0;
  return out;
}

CurvatureClass curvature_class(const CurveSpec& spec, double threshold) {
  if (std::holds_alternative<Circle>(spec.kind)) return CurvatureClass::NonvanishingCurvature;
  if (std::holds_alternative<PolygonNtheta>(spec.kind) || std::holds_alternative<Polyline>(spec.kind))
    return CurvatureClass::PiecewiseLinear;

  const auto& g = std::get<Graph>(spec.kind);
  const int n = 200;
  const double h = (g.x1 - g.x0) / n;
  int curved = 0;
  for (int i = 1; i < n; ++i) {
    double x = g.x0 + i * h;
    double d2 = (g.f(x + h) - 2.0 * g.f(x) + g.f(x - h)) / (h * h);
    if (std::abs(d2) > threshold) ++curved;
  }
  return curved >= n / 20 ? CurvatureClass::NonvanishingCurvature : CurvatureClass::PiecewiseLinear;
}

}  // namespace fractal
