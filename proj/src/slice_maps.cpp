#include "fractal/slice_maps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "fractal/rng.hpp"

namespace fractal {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& who, const std::string& inequality) {
  throw std::domain_error(who + ": " + inequality + " violated");
}

}  // namespace

void AdmissiblePair::validate() const {
  if (!(x.x > 0.0 && x.x < 1.0)) fail("AdmissiblePair", "0 < x1 < 1");
  if (!(x.y > 0.0 && x.y < 1.0)) fail("AdmissiblePair", "0 < x2 < 1");
  double d = alpha - x.x;
  if (!(d > 0.0)) fail("AdmissiblePair", "alpha - x1 > 0");
  if (!(d < 1.0)) fail("AdmissiblePair", "alpha - x1 < 1");
  if (tau_margin > 0.0) {
    if (!(tau_margin < 0.5)) fail("AdmissiblePair", "tau < 1/2");
    if (!(d > tau_margin)) fail("AdmissiblePair", "alpha - x1 > tau");
    if (!(d < 1.0 - tau_margin)) fail("AdmissiblePair", "alpha - x1 < 1 - tau");
  }
}

Point PolarAboutX::cartesian() const {
  return {center.x + r * std::cos(phi), center.y + r * std::sin(phi)};
}

PolarAboutX PolarAboutX::from_cartesian(const Point& center, const Point& p) {
  PolarAboutX out;
  out.center = center;
  double dx = p.x - center.x, dy = p.y - center.y;
  out.r = std::hypot(dx, dy);
  out.phi = out.r > 0.0 ? std::atan2(dy, dx) : 0.0;
  return out;
}

Point phi_alpha(const AdmissiblePair& pair) {
  pair.validate();
  double d = pair.alpha - pair.x.x;
  return {pair.alpha, pair.x.y + std::sqrt(1.0 - d * d)};
}

double theta_of(const AdmissiblePair& pair) {
  pair.validate();
  return std::acos(pair.alpha - pair.x.x) + kPi / 2.0;
}

std::pair<Point, double> tau_map(const AdmissiblePair& pair) {
  return {pair.x, theta_of(pair)};
}

AdmissiblePair tau_inverse(const Point& x, double theta) {
  if (!(theta > kPi / 2.0)) fail("tau_inverse", "theta > pi/2");
  if (!(theta < kPi)) fail("tau_inverse", "theta < pi");
  AdmissiblePair pair;
  pair.x = x;
  pair.alpha = x.x + std::cos(theta - kPi / 2.0);
  pair.validate();
  return pair;
}

namespace {

void check_polar(const char* who, const Point& x, const PolarAboutX& u) {
  if (std::hypot(u.center.x - x.x, u.center.y - x.y) > 1e-12)
    throw std::domain_error(std::string(who) + ": polar coordinates are not about x");
  if (!(u.r >= 0.0)) fail(who, "r >= 0");
  if (!(u.r <= 1.0)) fail(who, "r <= 1");
  if (!(u.phi > -kPi && u.phi <= kPi)) fail(who, "phi in (-pi, pi]");
}

}  // namespace

PolarAboutX psi_x(const Point& x, const PolarAboutX& u) {
  check_polar("psi_x", x, u);
  if (u.r == 0.0) return u;
  PolarAboutX out = u;
  double shift = std::asin(u.r / 2.0);
  out.phi += u.phi >= 0.0 ? -shift : shift;
  return out;
}

PolarAboutX psi_apply(PsiBranch branch, const PolarAboutX& u) {
  check_polar("psi_apply", u.center, u);
  if (u.r == 0.0) return u;
  double a = std::asin(u.r / 2.0);
  PolarAboutX out = u;
  switch (branch) {
    case PsiBranch::Plus:
      if (!(u.phi >= 0.0 && u.phi < kPi)) fail("psi_apply[+]", "phi in [0, pi)");
      out.phi -= a;
      return out;
    case PsiBranch::Minus:
      if (!(u.phi >= -kPi && u.phi < 0.0)) fail("psi_apply[-]", "phi in [-pi, 0)");
      out.phi += a;
      return out;
    case PsiBranch::InversePlus:
      if (!(u.phi >= -a && u.phi < kPi - a)) fail("psi_apply[+^-1]", "phi in [-asin(r/2), pi - asin(r/2))");
      out.phi += a;
      return out;
    case PsiBranch::InverseMinus:
      if (!(u.phi >= -kPi + a && u.phi < a)) fail("psi_apply[-^-1]", "phi in [asin(r/2) - pi, asin(r/2))");
      out.phi -= a;
      return out;
  }
  throw std::logic_error("psi_apply: unreachable");
}

double psi_ratio(const Point& x, const PolarAboutX& y1, const PolarAboutX& y2, PsiBranch branch) {
  check_polar("psi_ratio", x, y1);
  check_polar("psi_ratio", x, y2);
  Point p1 = y1.cartesian(), p2 = y2.cartesian();
  double d = std::hypot(p1.x - p2.x, p1.y - p2.y);
  if (!(d > 0.0)) fail("psi_ratio", "y1 != y2");
  Point q1 = psi_apply(branch, y1).cartesian();
  Point q2 = psi_apply(branch, y2).cartesian();
  return std::hypot(q1.x - q2.x, q1.y - q2.y) / d;
}

Point h_map(const AdmissiblePair& pair) {
  if (!(pair.tau_margin > 0.0)) fail("h_map", "tau > 0");
  pair.validate();
  double d = pair.alpha - pair.x.x;
  return {pair.alpha - std::asin(d), pair.x.y + std::sqrt(1.0 - d * d) - 1.0};
}

double varphi_derivative(double fprime_at_x, double alpha_minus_x) {
  if (!(alpha_minus_x > 0.0)) fail("varphi_derivative", "alpha - x > 0");
  if (!(alpha_minus_x < 1.0)) fail("varphi_derivative", "alpha - x < 1");
  return fprime_at_x + alpha_minus_x / std::sqrt(1.0 - alpha_minus_x * alpha_minus_x);
}

bool WedgeSpec::contains(const Point& p) const {
  PolarAboutX polar = PolarAboutX::from_cartesian(x, p);
  if (polar.r > r) return false;
  if (polar.r == 0.0) return true;
  double a = std::abs(polar.phi);
  return a >= i0 && a <= i1;
}

double wedge_density(const BoxCover& cover, const WedgeSpec& wedge) {
  if (!(wedge.i0 > 0.0 && wedge.i1 < kPi && wedge.i0 < wedge.i1))
    fail("wedge_density", "0 < i0 < i1 < pi");
  if (!(wedge.r > 0.0)) fail("wedge_density", "r > 0");
  double side = to_double(cover.side);
  if (!(wedge.r >= 3.0 * side)) fail("wedge_density", "r >= 3 * cover side");
  std::int64_t hits = 0;
  for (const auto& b : cover.boxes) {
    Point c{to_double(b.x + cover.side / 2), to_double(b.y + cover.side / 2)};
    if (wedge.contains(c)) ++hits;
  }
  return static_cast<double>(hits) * side / (2.0 * wedge.r * wedge.width());
}

namespace {

// A short arc with nonvanishing curvature, parametrized on [0, length] so
// that the second coordinate is strictly increasing and the arc's midpoint
// sits at the origin.
struct AuditArc {
  std::function<Point(double)> at;
  double length = 0.0;
};

AuditArc audit_arc(const CurveSpec& curve) {
  if (curvature_class(curve) == CurvatureClass::PiecewiseLinear)
    throw std::domain_error("transversality_audit: curve has vanishing curvature");

  if (const auto* circle = std::get_if<Circle>(&curve.kind)) {
    double radius = circle->radius;
    if (!(radius > 0.0)) fail("transversality_audit", "radius > 0");
    double length = 0.5 * radius;  // arc of half a radian: tangent stays in (pi/2, pi)
    auto base = [radius](double s) {
      double t = kPi / 4.0 + s / radius;
      return Point{radius * std::cos(t), radius * std::sin(t)};
    };
    Point mid = base(length / 2.0);
    return {[base, mid](double s) {
              Point p = base(s);
              return Point{p.x - mid.x, p.y - mid.y};
            },
            length};
  }

  const auto* graph = std::get_if<Graph>(&curve.kind);
  if (!graph) throw std::domain_error("transversality_audit: unsupported curve kind");

  // Rotate the graph so its tangent at the domain midpoint points at 3pi/4,
  // then shrink the window until the rotated tangent stays in (pi/2+0.2, pi-0.2)
  // so the second coordinate is strictly monotone along the piece.
  double mid_t = (graph->x0 + graph->x1) / 2.0;
  double delta = 3.0 * kPi / 4.0 - std::atan(graph->fprime(mid_t));
  auto rotated_angle = [graph, delta](double t) { return delta + std::atan(graph->fprime(t)); };
  double half = (graph->x1 - graph->x0) / 2.0;
  for (int shrink = 0; shrink < 24; ++shrink) {
    bool ok = true;
    for (int i = 0; i <= 64 && ok; ++i) {
      double t = mid_t - half + (2.0 * half) * i / 64.0;
      double a = rotated_angle(t);
      ok = a > kPi / 2.0 + 0.2 && a < kPi - 0.2;
    }
    if (ok) break;
    half /= 2.0;
  }

  double t0 = mid_t - half, t1 = mid_t + half;
  double c = std::cos(delta), s = std::sin(delta);
  Point anchor{mid_t, graph->f(mid_t)};
  auto place = [graph, c, s, anchor](double t) {
    double dx = t - anchor.x, dy = graph->f(t) - anchor.y;
    return Point{c * dx - s * dy, s * dx + c * dy};
  };
  // Arc length over the window, then map s in [0, length] back to t linearly
  // in parameter (monotone is all the slice solver needs).
  double length = 0.0;
  Point prev = place(t0);
  for (int i = 1; i <= 256; ++i) {
    Point p = place(t0 + (t1 - t0) * i / 256.0);
    length += std::hypot(p.x - prev.x, p.y - prev.y);
    prev = p;
  }
  return {[place, t0, t1, length](double s) { return place(t0 + (t1 - t0) * s / length); }, length};
}

// First coordinate of the intersection of (offset + arc) with the horizontal
// line at height lambda; bisection on the monotone second coordinate.
double slice_abscissa(const AuditArc& arc, const Point& offset, double lambda) {
  double target = lambda - offset.y;
  double lo = 0.0, hi = arc.length;
  if (!(arc.at(lo).y <= target && arc.at(hi).y >= target))
    throw std::domain_error("transversality_audit: slice height outside the arc");
  for (int i = 0; i < 60; ++i) {
    double m = (lo + hi) / 2.0;
    (arc.at(m).y <= target ? lo : hi) = m;
  }
  return offset.x + arc.at((lo + hi) / 2.0).x;
}

}  // namespace

TransversalityAudit transversality_audit(const CurveSpec& curve, std::uint64_t pairs,
                                         int lambda_grid, std::uint64_t seed) {
  if (pairs == 0) fail("transversality_audit", "pairs >= 1");
  if (lambda_grid < 2) fail("transversality_audit", "lambda_grid >= 2");
  AuditArc arc = audit_arc(curve);

  double h = arc.length / 200.0;
  double lo = arc.at(arc.length / 3.0).y + 2.0 * h;
  double hi = arc.at(2.0 * arc.length / 3.0).y - 2.0 * h;
  if (!(hi > lo)) throw std::domain_error("transversality_audit: arc too short for slice window");
  double step = (hi - lo) / lambda_grid;

  CounterRng rng(seed);
  auto ball_point = [&rng, h]() {
    for (;;) {
      double ux = 2.0 * rng.next_double() - 1.0;
      double uy = 2.0 * rng.next_double() - 1.0;
      if (ux * ux + uy * uy <= 1.0) return Point{h * ux, h * uy};
    }
  };

  TransversalityAudit out;
  out.curve_length = arc.length;
  out.ball_radius = h;
  out.pairs = pairs;
  out.lambda_grid = lambda_grid;

  // Measure of {lambda : |d(lambda)| <= r} with d piecewise linear between
  // grid samples; the count-based estimate has +-step granularity, which
  // swamps the small-r bins and does not survive grid refinement.
  auto sublevel_measure = [step](const std::vector<double>& d, double r) {
    double m = 0.0;
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
      double d0 = d[k], d1 = d[k + 1];
      if (d0 == d1) {
        if (std::abs(d0) <= r) m += step;
        continue;
      }
      double ta = (-r - d0) / (d1 - d0), tb = (r - d0) / (d1 - d0);
      double t0 = std::clamp(std::min(ta, tb), 0.0, 1.0);
      double t1 = std::clamp(std::max(ta, tb), 0.0, 1.0);
      m += (t1 - t0) * step;
    }
    return m;
  };

  std::vector<double> diffs(static_cast<std::size_t>(lambda_grid));
  for (std::uint64_t n = 0; n < pairs; ++n) {
    Point a = ball_point(), b = ball_point();
    double dist = std::hypot(a.x - b.x, a.y - b.y);
    if (dist < 1e-9) continue;
    double dmax = 0.0;
    for (int k = 0; k < lambda_grid; ++k) {
      double lambda = lo + (k + 0.5) * step;
      diffs[static_cast<std::size_t>(k)] =
          slice_abscissa(arc, a, lambda) - slice_abscissa(arc, b, lambda);
      dmax = std::max(dmax, std::abs(diffs[static_cast<std::size_t>(k)]));
    }
    out.h1_const = std::max(out.h1_const, dmax / dist);
    for (int j = 0; j <= 12; ++j) {
      double r = dmax * std::pow(2.0, -j);
      if (!(r > 0.0)) break;
      double measure = sublevel_measure(diffs, r);
      if (measure == 0.0) continue;
      out.h2_const = std::max(out.h2_const, measure * dist / r);
    }
  }
  return out;
}

}  // namespace fractal
