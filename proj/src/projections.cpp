#include "fractal/projections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fractal {

ProjDirection ProjDirection::from_angle(double theta) {
  ProjDirection d;
  d.dx = rational_from_double(std::cos(theta));
  d.dy = rational_from_double(std::sin(theta));
  d.norm = 1.0;
  d.exact = false;
  return d;
}

ProjDirection ProjDirection::from_tangent(long long p, long long q) {
  if (p == 0 && q == 0) throw std::domain_error("ProjDirection: zero direction");
  ProjDirection d;
  d.dx = Rational(q);
  d.dy = Rational(p);
  d.norm = std::sqrt(static_cast<double>(p) * p + static_cast<double>(q) * q);
  d.exact = true;
  return d;
}

ProjDirection ProjDirection::perp() const {
  ProjDirection d;
  d.dx = -dy;
  d.dy = dx;
  d.norm = norm;
  d.exact = exact;
  return d;
}

std::string ProjDirection::describe() const {
  std::ostringstream out;
  if (exact)
    out << "exact (" << dx << ", " << dy << ")/" << norm;
  else
    out << "(" << to_double(dx) << ", " << to_double(dy) << ")";
  return out.str();
}

double IntervalUnion::largest_interval() const {
  Rational best = 0;
  for (const auto& [l, r] : intervals) {
    Rational len = r - l;
    if (len > best) best = len;
  }
  return to_double(best) / norm;
}

std::int64_t IntervalUnion::grid_count(double eps) const {
  if (!(eps > 0)) throw std::domain_error("grid_count: eps must be positive");
  std::int64_t n = 0;
  std::int64_t prev_last = std::numeric_limits<std::int64_t>::min();
  for (const auto& [l, r] : intervals) {
    auto first = static_cast<std::int64_t>(std::floor(to_double(l) / norm / eps));
    auto last = static_cast<std::int64_t>(std::floor(to_double(r) / norm / eps));
    first = std::max(first, prev_last + 1);
    if (last >= first) {
      n += last - first + 1;
      prev_last = last;
    }
  }
  return n;
}

IntervalUnion project_cover(const BoxCover& cover, const ProjDirection& dir) {
  const Rational& s = cover.side;
  // A box projects to an interval of length side * (|dx| + |dy|).
  Rational lo_off = (dir.dx < 0 ? dir.dx * s : Rational(0)) + (dir.dy < 0 ? dir.dy * s : Rational(0));
  Rational hi_off = (dir.dx > 0 ? dir.dx * s : Rational(0)) + (dir.dy > 0 ? dir.dy * s : Rational(0));

  std::vector<std::pair<Rational, Rational>> raw;
  raw.reserve(cover.boxes.size());
  for (const auto& b : cover.boxes) {
    Rational base = dir.dx * b.x + dir.dy * b.y;
    raw.emplace_back(base + lo_off, base + hi_off);
  }
  std::sort(raw.begin(), raw.end());

  const Rational tol = dir.exact ? Rational(0) : rational_from_double(1e-12);
  IntervalUnion u;
  u.norm = dir.norm;
  for (auto& iv : raw) {
    if (!u.intervals.empty() && iv.first <= u.intervals.back().second + tol)
      u.intervals.back().second = std::max(u.intervals.back().second, iv.second);
    else
      u.intervals.push_back(iv);
  }
  u.total_length_scaled = 0;
  for (const auto& [l, r] : u.intervals) u.total_length_scaled += r - l;
  return u;
}

IntervalUnion project_cover(const BoxCover& cover, double theta) {
  return project_cover(cover, ProjDirection::from_angle(theta));
}

std::vector<LadderEntry> projection_ladder(const Rational& gamma, const ProjDirection& dir,
                                           int max_depth) {
  if (max_depth < 1) throw std::domain_error("projection_ladder: max_depth must be >= 1");
  std::vector<LadderEntry> out;
  for (int d = 1; d <= max_depth; ++d) {
    IntervalUnion u = project_cover(four_corner_cover(gamma, d), dir);
    out.push_back({d, u.total_length(), static_cast<std::int64_t>(u.count())});
  }
  return out;
}

std::vector<LadderEntry> projection_ladder(const IfsSystem& system, const ProjDirection& dir,
                                           int max_depth) {
  if (max_depth < 1) throw std::domain_error("projection_ladder: max_depth must be >= 1");
  std::vector<LadderEntry> out;
  for (int d = 1; d <= max_depth; ++d) {
    IntervalUnion u = project_cover(ifs_cover(system, d), dir);
    out.push_back({d, u.total_length(), static_cast<std::int64_t>(u.count())});
  }
  return out;
}

namespace {

double projection_dim_estimate(const IntervalUnion& u, double box_proj_len) {
  if (u.intervals.empty()) return 0.0;
  double span = to_double(u.intervals.back().second - u.intervals.front().first) / u.norm;
  if (!(span > 0) || !(box_proj_len > 0)) return 0.0;
  std::vector<double> x, y;
  for (int j = 2;; ++j) {
    double eps = span / std::pow(2.0, j);
    if (eps < box_proj_len) break;
    auto n = u.grid_count(eps);
    if (n <= 0) break;
    x.push_back(std::log(1.0 / eps));
    y.push_back(std::log(static_cast<double>(n)));
  }
  if (x.size() < 2) return 1.0;  // no usable scale range: projection is interval-like here
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

}  // namespace

PolygonSumsetReport polygon_sumset_report(const BoxCover& cover,
                                          const std::vector<std::pair<double, ProjDirection>>& sides,
                                          double measure_threshold) {
  if (sides.empty()) throw std::domain_error("polygon_sumset_report: no sides given");
  PolygonSumsetReport report;
  double max_dim = 0.0;
  for (const auto& [angle, side_dir] : sides) {
    AngleReport ar;
    ar.side_angle = angle;
    ar.projection = side_dir.perp();
    IntervalUnion u = project_cover(cover, ar.projection);
    ar.measure = u.total_length();
    ar.interval_count = static_cast<std::int64_t>(u.count());
    double box_len = to_double(cover.side * (abs(ar.projection.dx) + abs(ar.projection.dy))) /
                     ar.projection.norm;
    ar.dim_estimate = projection_dim_estimate(u, box_len);
    ar.interval_hint = u.largest_interval() >= 32.0 * box_len;
    report.max_measure = std::max(report.max_measure, ar.measure);
    max_dim = std::max(max_dim, ar.dim_estimate);
    report.interior_hint = report.interior_hint || ar.interval_hint;
    report.angles.push_back(std::move(ar));
  }
  report.sumset_dim_estimate = 1.0 + max_dim;
  report.measure_positive_hint = report.max_measure >= measure_threshold;
  return report;
}

PolygonSumsetReport polygon_sumset_report(const BoxCover& cover, const CurveSpec& polygon,
                                          double measure_threshold) {
  std::vector<std::pair<double, ProjDirection>> sides;
  if (const auto* p = std::get_if<PolygonNtheta>(&polygon.kind)) {
    for (double a : side_angles(p->theta)) sides.emplace_back(a, ProjDirection::from_angle(a));
  } else if (const auto* line = std::get_if<Polyline>(&polygon.kind)) {
    for (std::size_t i = 0; i + 1 < line->vertices.size(); ++i) {
      double dx = line->vertices[i + 1].x - line->vertices[i].x;
      double dy = line->vertices[i + 1].y - line->vertices[i].y;
      if (dx == 0 && dy == 0) continue;
      double a = std::atan2(dy, dx);
      const double pi = std::acos(-1.0);
      a = std::fmod(a + pi, pi);
      bool seen = std::any_of(sides.begin(), sides.end(),
                              [a](const auto& s) { return std::abs(s.first - a) < 1e-12; });
      if (!seen) sides.emplace_back(a, ProjDirection::from_angle(a));
    }
  } else {
    throw std::domain_error("polygon_sumset_report: curve is not polygonal");
  }
  return polygon_sumset_report(cover, sides, measure_threshold);
}

}  // namespace fractal
