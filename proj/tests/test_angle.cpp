#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include "fractal/angle.hpp"

using namespace fractal;

TEST_CASE("star strips factors of four and reduces mod 4") {
  CHECK(star(6) == 2);
  CHECK(star(112) == 3);  // 112 = 4^2 * 7, 7 mod 4 = 3
  CHECK(star(1) == 1);
  CHECK(star(4) == 1);
  CHECK(star(2) == 2);
  CHECK(star(3) == 3);
  CHECK_THROWS_AS(star(0), std::domain_error);
}

TEST_CASE("star(4m) == star(m) exhaustively") {
  for (std::uint64_t m = 1; m <= 10000; ++m) CHECK(star(4 * m) == star(m));
}

TEST_CASE("small/big partition over all coprime pairs up to 200") {
  int small = 0, big = 0;
  for (std::uint64_t p = 1; p <= 200; ++p)
    for (std::uint64_t q = 1; q <= 200; ++q) {
      if (std::gcd(p, q) != 1) continue;
      AngleClass cls = classify_angle(p, q);
      bool both_odd = cls.p_star % 2 == 1 && cls.q_star % 2 == 1;
      REQUIRE(((cls.kind == AngleKind::Small) == both_odd));
      REQUIRE(((cls.kind == AngleKind::Big) == !both_odd));
      REQUIRE(cls.p_star >= 1);
      REQUIRE(cls.p_star <= 3);
      REQUIRE(cls.q_star >= 1);
      REQUIRE(cls.q_star <= 3);
      (cls.kind == AngleKind::Small ? small : big)++;
    }
  CHECK(small + big > 0);
  CHECK(small > 0);
  CHECK(big > 0);
}

TEST_CASE("classify_angle reduces to coprime form first") {
  AngleClass cls = classify_angle(6, 2);
  CHECK(cls.p == 3);
  CHECK(cls.q == 1);
  CHECK(cls.kind == AngleKind::Small);
  CHECK_THROWS_AS(classify_angle(0, 5), std::domain_error);
}

TEST_CASE("predictions follow the classification") {
  CHECK(predict_sumset(classify_angle(1, 2)) == SumsetPrediction::InteriorNonempty);
  CHECK(predict_sumset(classify_angle(1, 1)) == SumsetPrediction::DimensionDeficit);
  CHECK(predict_sumset_irrational() == SumsetPrediction::MeasureZeroDimTwo);
}
