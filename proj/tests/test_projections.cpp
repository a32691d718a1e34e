#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fractal/projections.hpp"

using namespace fractal;

TEST_CASE("axis projection of the product cover is the Cantor cover") {
  // onto the x-axis: total length (2*gamma)^n
  ProjDirection axis = ProjDirection::from_tangent(0, 1);
  for (int depth = 1; depth <= 5; ++depth) {
    IntervalUnion u = project_cover(four_corner_cover(Rational(1, 4), depth), axis);
    CHECK(u.count() == static_cast<std::size_t>(1) << depth);
    CHECK(u.total_length_scaled == Rational(1, BigInt(1) << depth));
  }
}

TEST_CASE("diagonal projection of the level-1 cover, exact endpoints") {
  IntervalUnion u = project_cover(four_corner_cover(Rational(1, 4), 1),
                                  ProjDirection::from_tangent(1, 1));
  // scaled by |(1,1)|: intervals [0,1/2], [3/4,5/4], [3/2,2]
  REQUIRE(u.count() == 3);
  CHECK(u.intervals[0].first == Rational(0));
  CHECK(u.intervals[0].second == Rational(1, 2));
  CHECK(u.intervals[1].first == Rational(3, 4));
  CHECK(u.intervals[1].second == Rational(5, 4));
  CHECK(u.intervals[2].first == Rational(3, 2));
  CHECK(u.intervals[2].second == Rational(2));
  CHECK(u.total_length_scaled == Rational(3, 2));
  CHECK(u.total_length() == doctest::Approx(1.5 / std::sqrt(2.0)));
}

TEST_CASE("diagonal projection measure decays like (3/4)^n") {
  ProjDirection diag = ProjDirection::from_tangent(1, 1);
  Rational expected(3, 2);
  for (int depth = 1; depth <= 6; ++depth) {
    IntervalUnion u = project_cover(four_corner_cover(Rational(1, 4), depth), diag);
    CHECK(u.total_length_scaled == expected);
    expected *= Rational(3, 4);
    CHECK(u.count() == static_cast<std::size_t>(std::llround(std::pow(3.0, depth))));
  }
}

TEST_CASE("tangent 1/2 projects onto a single stable interval") {
  ProjDirection dir = ProjDirection::from_tangent(1, 2).perp();
  for (int depth = 1; depth <= 5; ++depth) {
    IntervalUnion u = project_cover(four_corner_cover(Rational(1, 4), depth), dir);
    CHECK(u.count() == 1);
    CHECK(u.total_length() == doctest::Approx(3.0 / std::sqrt(5.0)));
  }
}

TEST_CASE("projection measure never grows under refinement") {
  ProjDirection dir = ProjDirection::from_angle(0.955316618124509);  // tan = sqrt 2
  double prev = 1e30;
  for (const auto& entry : projection_ladder(Rational(1, 4), dir, 6)) {
    CHECK(entry.total_length <= prev + 1e-12);
    prev = entry.total_length;
  }
}

TEST_CASE("grid_count matches hand-computed cells") {
  IntervalUnion u;
  u.norm = 1.0;
  u.intervals = {{Rational(0), Rational(1, 4)}, {Rational(1, 2), Rational(3, 4)}};
  u.total_length_scaled = Rational(1, 2);
  // eps = 1/4: cells [0,1/4),[1/4,1/2),[1/2,3/4),[3/4,1) -> 0,1 and 2,3 touched
  CHECK(u.grid_count(0.25) == 4);
  CHECK(u.grid_count(0.5) == 2);
}

TEST_CASE("polygon report separates the three angle classes") {
  BoxCover cover = four_corner_cover(Rational(1, 4), 6);

  SUBCASE("tangent 1/2: long interval, interior hint") {
    PolygonSumsetReport r = polygon_sumset_report(
        cover, {{std::atan2(1.0, 2.0), ProjDirection::from_tangent(1, 2)}});
    CHECK(r.interior_hint);
    CHECK(r.measure_positive_hint);
    CHECK(r.sumset_dim_estimate > 1.9);
  }
  SUBCASE("tangent 1/1: dimension deficit") {
    PolygonSumsetReport r = polygon_sumset_report(
        cover, {{std::atan2(1.0, 1.0), ProjDirection::from_tangent(1, 1)}});
    CHECK(r.angles[0].dim_estimate < 0.95);
    CHECK(r.sumset_dim_estimate < 1.95);
    CHECK_FALSE(r.interior_hint);
  }
  SUBCASE("polygonal curve specs reduce to side angles") {
    PolygonSumsetReport r = polygon_sumset_report(cover, polygon_ntheta(0.4));
    CHECK(r.angles.size() == 2);
    CHECK_THROWS_AS(polygon_sumset_report(cover, CurveSpec{Circle{{0, 0}, 1.0}}),
                    std::domain_error);
  }
}
