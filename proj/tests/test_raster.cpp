#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fractal/raster.hpp"

using namespace fractal;

namespace {

constexpr double kPi = 3.14159265358979323846;

BoxCover tiny_box_at_origin() {
  BoxCover c;
  c.depth = 0;
  c.side = Rational(1, 1 << 12);
  c.boxes = {{Rational(0), Rational(0)}};
  return c;
}

BoxCover unit_square_cover() {
  BoxCover c;
  c.depth = 0;
  c.side = Rational(1);
  c.boxes = {{Rational(0), Rational(0)}};
  return c;
}

}  // namespace

TEST_CASE("point + circle rasterizes to an annulus of about 2*pi/eps cells") {
  double eps = 1.0 / 64.0;
  CurveSample circle = sample_curve(CurveSpec{Circle{{0, 0}, 1.0}}, eps / 2);
  GridRaster g = minkowski_raster(tiny_box_at_origin(), circle, eps);
  // cell count of a digitized circle is between 2*pi*r/eps and ~8*r/eps
  auto n = box_count(g);
  CHECK(n > 2 * kPi / eps * 0.9);
  CHECK(n < 8.0 / eps * 1.5);
  // annulus area tends to zero with eps
  CHECK(area_estimate(g) < 0.5);
}

TEST_CASE("unit square + curve through origin covers the full 8x8 block") {
  CurveSample sample = sample_curve(polygon_ntheta(0.0), 1.0 / 16.0);
  double eps = 1.0 / 8.0;
  GridRaster g = minkowski_raster(unit_square_cover(), sample, eps);
  // cells covering [0,1]^2 (the 0-translate of the square) must all be set
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      Point c = g.cell_center(ix, iy);
      if (c.x > 0 && c.x < 1 && c.y > 0 && c.y < 1) CHECK(g.occupied(ix, iy));
    }
  CHECK(box_count(g) >= 64);
}

TEST_CASE("raster sandwich at coarse resolution") {
  BoxCover cover = four_corner_cover(Rational(1, 4), 1);
  CurveSample sample = sample_curve(polygon_ntheta(0.0), 1.0 / 32.0);
  double eps = 1.0 / 16.0;
  GridRaster g = minkowski_raster(cover, sample, eps);
  double side = to_double(cover.side);

  // every sampled sum point lands in an occupied cell
  for (const auto& b : cover.boxes)
    for (const auto& p : sample.points) {
      double x = to_double(b.x) + p.x, y = to_double(b.y) + p.y;
      int ix = static_cast<int>(std::floor((x - g.window.x0) / eps));
      int iy = static_cast<int>(std::floor((y - g.window.y0) / eps));
      REQUIRE(ix >= 0);
      REQUIRE(iy >= 0);
      REQUIRE(ix < g.nx);
      REQUIRE(iy < g.ny);
      CHECK(g.occupied(ix, iy));
    }

  // every occupied cell center is within slack of some sampled sum
  CHECK(g.slack <= side + sample.hausdorff_bound + eps * std::sqrt(2.0) + 1e-12);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      if (!g.occupied(ix, iy)) continue;
      Point c = g.cell_center(ix, iy);
      double best = 1e30;
      for (const auto& b : cover.boxes)
        for (const auto& p : sample.points) {
          // nearest distance from the cell center to box + sample point
          double dx = std::max({to_double(b.x) + p.x - c.x, c.x - (to_double(b.x) + side + p.x), 0.0});
          double dy = std::max({to_double(b.y) + p.y - c.y, c.y - (to_double(b.y) + side + p.y), 0.0});
          best = std::min(best, std::hypot(dx, dy));
        }
      CHECK(best <= g.slack);
    }
}

TEST_CASE("box_count never increases when the cover is refined") {
  CurveSample sample = sample_curve(CurveSpec{Circle{{0, 0}, 1.0}}, 1.0 / 64.0);
  double eps = 1.0 / 16.0;
  Rect window{-1.5, -1.5, 2.5, 2.5};
  std::int64_t prev = -1;
  for (int depth = 1; depth <= 4; ++depth) {
    GridRaster g = minkowski_raster(four_corner_cover(Rational(1, 4), depth), sample, eps, window);
    auto n = box_count(g);
    if (prev >= 0) CHECK(n <= prev);
    prev = n;
  }
}

TEST_CASE("translation invariance of box_count") {
  CurveSample sample = sample_curve(CurveSpec{Circle{{0, 0}, 1.0}}, 1.0 / 64.0);
  double eps = 1.0 / 32.0;
  BoxCover cover = four_corner_cover(Rational(1, 3), 2);
  Rect window{-1.25, -1.25, 2.25, 2.25};
  GridRaster a = minkowski_raster(cover, sample, eps, window);

  Rational vx(7, 16), vy(-3, 8);
  BoxCover shifted = cover;
  for (auto& b : shifted.boxes) {
    b.x += vx;
    b.y += vy;
  }
  Rect shifted_window{window.x0 + to_double(vx), window.y0 + to_double(vy),
                      window.x1 + to_double(vx), window.y1 + to_double(vy)};
  GridRaster b = minkowski_raster(shifted, sample, eps, shifted_window);
  CHECK(box_count(a) == box_count(b));
}

TEST_CASE("interior_probe finds disk interiors and rejects thin annuli") {
  double eps = 1.0 / 64.0;
  CurveSample disk_boundary = sample_curve(CurveSpec{Circle{{0, 0}, 0.5}}, eps / 2);

  // filled disk: mark everything within the boundary too
  GridRaster filled = minkowski_raster(tiny_box_at_origin(), disk_boundary, eps);
  for (int iy = 0; iy < filled.ny; ++iy)
    for (int ix = 0; ix < filled.nx; ++ix) {
      Point c = filled.cell_center(ix, iy);
      if (std::hypot(c.x, c.y) <= 0.5)
        filled.cells[static_cast<std::size_t>(iy) * filled.nx + ix] = 1;
    }
  auto hit = interior_probe(filled, 0.1);
  REQUIRE(hit.has_value());
  CHECK(std::hypot(hit->x, hit->y) <= 0.5 - 0.1 + eps * 2);

  GridRaster annulus = minkowski_raster(tiny_box_at_origin(), disk_boundary, eps);
  CHECK_FALSE(interior_probe(annulus, 0.1).has_value());
  CHECK_THROWS_AS(interior_probe(annulus, 2.0 * eps), std::domain_error);
}

TEST_CASE("random_circle_mc is deterministic and hits shrink with cover depth") {
  Rect window{-2, -2, 2, 2};
  McEstimate a = random_circle_mc(four_corner_cover(Rational(1, 4), 4), window, 1.0, 20000, 9);
  McEstimate b = random_circle_mc(four_corner_cover(Rational(1, 4), 4), window, 1.0, 20000, 9);
  CHECK(a.hits == b.hits);
  CHECK(a.p_hat == doctest::Approx(static_cast<double>(a.hits) / 20000));

  McEstimate deeper = random_circle_mc(four_corner_cover(Rational(1, 4), 6), window, 1.0, 20000, 9);
  CHECK(deeper.hits < a.hits);
}

TEST_CASE("pgm export carries the right header and size") {
  CurveSample sample = sample_curve(CurveSpec{Circle{{0, 0}, 1.0}}, 1.0 / 8.0);
  GridRaster g = minkowski_raster(unit_square_cover(), sample, 1.0 / 4.0);
  std::string pgm = raster_to_pgm(g);
  CHECK(pgm.rfind("P5\n", 0) == 0);
  auto header_end = pgm.find("255\n");
  REQUIRE(header_end != std::string::npos);
  CHECK(pgm.size() - (header_end + 4) == static_cast<std::size_t>(g.nx) * g.ny);
}
