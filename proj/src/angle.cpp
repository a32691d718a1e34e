#include "fractal/angle.hpp"

#include <numeric>
#include <stdexcept>

namespace fractal {

int star(std::uint64_t m) {
  if (m == 0) throw std::domain_error("star: undefined for m = 0");
  while (m % 4 == 0) m /= 4;
  return static_cast<int>(m % 4);
}

AngleClass classify_angle(std::uint64_t p, std::uint64_t q) {
  if (p == 0 || q == 0) throw std::domain_error("classify_angle: p and q must be >= 1");
  std::uint64_t g = std::gcd(p, q);
  AngleClass cls;
  cls.p = p / g;
  cls.q = q / g;
  cls.p_star = star(cls.p);
  cls.q_star = star(cls.q);
  bool both_odd = cls.p_star % 2 == 1 && cls.q_star % 2 == 1;
  cls.kind = both_odd ? AngleKind::Small : AngleKind::Big;
  return cls;
}

SumsetPrediction predict_sumset(const AngleClass& cls) {
  switch (cls.kind) {
    case AngleKind::Irrational:
      return SumsetPrediction::MeasureZeroDimTwo;
    case AngleKind::Small:
      return SumsetPrediction::DimensionDeficit;
    case AngleKind::Big:
      return SumsetPrediction::InteriorNonempty;
  }
  throw std::logic_error("predict_sumset: unreachable");
}

SumsetPrediction predict_sumset_irrational() { return SumsetPrediction::MeasureZeroDimTwo; }

std::string to_string(SumsetPrediction p) {
  switch (p) {
    case SumsetPrediction::MeasureZeroDimTwo:
      return "measure-zero, dimension 2";
    case SumsetPrediction::DimensionDeficit:
      return "dimension < 2";
    case SumsetPrediction::InteriorNonempty:
      return "interior nonempty";
  }
  return "?";
}

std::string to_string(AngleKind k) {
  switch (k) {
    case AngleKind::Irrational:
      return "irrational";
    case AngleKind::Small:
      return "small";
    case AngleKind::Big:
      return "big";
  }
  return "?";
}

}  // namespace fractal
