#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fractal/curves.hpp"

using namespace fractal;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("ntheta_vertices at zero rotation is the unit square") {
  auto v = ntheta_vertices(0.0);
  CHECK(v[0].x == doctest::Approx(0.0));
  CHECK(v[0].y == doctest::Approx(0.0));
  CHECK(v[1].x == doctest::Approx(1.0));
  CHECK(v[1].y == doctest::Approx(0.0));
  CHECK(v[2].x == doctest::Approx(1.0));
  CHECK(v[2].y == doctest::Approx(1.0));
  CHECK(v[3].x == doctest::Approx(0.0));
  CHECK(v[3].y == doctest::Approx(1.0));
}

TEST_CASE("side_angles are theta and theta + pi/2 mod pi") {
  auto a = side_angles(0.3);
  CHECK(a[0] == doctest::Approx(0.3));
  CHECK(a[1] == doctest::Approx(0.3 + kPi / 2));
  auto b = side_angles(2.0);  // 2 + pi/2 wraps past pi
  CHECK(b[1] == doctest::Approx(2.0 + kPi / 2 - kPi));
}

TEST_CASE("sample_curve honours the gap bound") {
  auto check_gaps = [](const CurveSample& s, double gap) {
    REQUIRE(s.points.size() >= 2);
    for (std::size_t i = 1; i < s.points.size(); ++i) {
      double d = std::hypot(s.points[i].x - s.points[i - 1].x, s.points[i].y - s.points[i - 1].y);
      CHECK(d <= gap * (1 + 1e-9));
    }
    CHECK(s.max_gap <= gap * (1 + 1e-9));
    CHECK(s.hausdorff_bound >= 0.0);
  };
  check_gaps(sample_curve(CurveSpec{Circle{{0, 0}, 1.0}}, 0.01), 0.01);
  check_gaps(sample_curve(polygon_ntheta(0.4), 0.05), 0.05);
  Graph graph;
  graph.f = [](double x) { return x * x / 2 + x / 2; };
  graph.fprime = [](double x) { return x + 0.5; };
  graph.x0 = 0.1;
  graph.x1 = 0.9;
  check_gaps(sample_curve(CurveSpec{graph}, 0.02), 0.02);
}

TEST_CASE("circle samples stay within the hausdorff bound of the circle") {
  CurveSample s = sample_curve(CurveSpec{Circle{{0.5, -0.25}, 2.0}}, 0.05);
  for (const auto& p : s.points) {
    double r = std::hypot(p.x - 0.5, p.y + 0.25);
    CHECK(std::abs(r - 2.0) <= s.hausdorff_bound);
  }
}

TEST_CASE("curvature_class tells curved from flat") {
  CHECK(curvature_class(CurveSpec{Circle{{0, 0}, 1.0}}) == CurvatureClass::NonvanishingCurvature);
  CHECK(curvature_class(polygon_ntheta(0.7)) == CurvatureClass::PiecewiseLinear);
  CHECK(curvature_class(CurveSpec{Polyline{{{0, 0}, {1, 1}, {2, 0}}}}) ==
        CurvatureClass::PiecewiseLinear);

  Graph curved;
  curved.f = [](double x) { return std::sin(x) + x; };
  curved.fprime = [](double x) { return std::cos(x) + 1; };
  curved.x0 = 0.0;
  curved.x1 = 1.0;
  CHECK(curvature_class(CurveSpec{curved}) == CurvatureClass::NonvanishingCurvature);

  Graph straight;
  straight.f = [](double x) { return 0.8 * x; };
  straight.fprime = [](double) { return 0.8; };
  straight.x0 = 0.0;
  straight.x1 = 1.0;
  CHECK(curvature_class(CurveSpec{straight}) == CurvatureClass::PiecewiseLinear);
}
