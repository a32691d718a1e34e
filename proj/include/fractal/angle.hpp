#pragma once

#include <cstdint>
#include <string>

namespace fractal {

enum class AngleKind { Irrational, Small, Big };

struct AngleClass {
  AngleKind kind = AngleKind::Irrational;
  std::uint64_t p = 0, q = 0;  // coprime form (rational case)
  int p_star = 0, q_star = 0;  // 4-adic residues in {1,2,3}
};

/// m with all factors of 4 removed, then mod 4. Defined for m >= 1.
int star(std::uint64_t m);

/// Classifies the angle with tangent p/q; input is reduced to coprime form.
/// Small means both residues odd; Big means at least one even.
AngleClass classify_angle(std::uint64_t p, std::uint64_t q);

enum class SumsetPrediction { MeasureZeroDimTwo, DimensionDeficit, InteriorNonempty };

/// Predicted size class of C(1/4) + N_theta for this tangent.
SumsetPrediction predict_sumset(const AngleClass& cls);
SumsetPrediction predict_sumset_irrational();

std::string to_string(SumsetPrediction p);
std::string to_string(AngleKind k);

}  // namespace fractal
