#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fractal/curves.hpp"
#include "fractal/rng.hpp"

namespace fractal {

struct LadderRow {
  double eps = 0.0;
  std::int64_t box_count = 0;
  double area = 0.0;
};

/// (eps, N(eps), area) rows with eps strictly decreasing.
struct ScalingLadder {
  std::vector<LadderRow> rows;

  void validate() const;
};

struct DimFit {
  double slope = 0.0;      // box-dimension estimate
  double intercept = 0.0;  // of log N against log(1/eps)
  double r_squared = 0.0;
  int window_first = 0;  // row indices used
  int window_last = 0;
  std::vector<std::string> warnings;
};

/// Least-squares slope of log box_count against log(1/eps). The default
/// window drops the coarsest row (boundary effects) when more than three
/// rows are available; rows with zero box_count are excluded with a warning.
DimFit fit_box_dimension(const ScalingLadder& ladder);
DimFit fit_box_dimension(const ScalingLadder& ladder, int window_first, int window_last);

enum class Verdict { Positive, Zero, Inconclusive };

struct TrendThresholds {
  double tau_pos = 0.1;    // final-octave relative area change below this -> positive
  double tau_zero = 0.15;  // tau_zero/3 is the per-octave decay floor for zero
  double stability = 3.0;  // max/min octave-exponent ratio allowed for zero
};

struct TrendVerdict {
  Verdict verdict = Verdict::Inconclusive;
  double final_rel_change = 0.0;
  double fitted_decay_exponent = 0.0;  // least-squares beta in area ~ eps^beta
  double min_octave_exponent = 0.0;
  double max_octave_exponent = 0.0;
  bool persistent_decay = false;   // every octave exponent above tau_zero/3
  bool stable_exponents = false;   // octave exponents within the stability ratio
  TrendThresholds thresholds;
};

/// Three-way area-scaling classification. Persistent decay at every octave
/// with a stable per-octave exponent reads as measure-zero (sets of positive
/// measure stop losing area once eps resolves them; a genuine power law keeps
/// going at a steady rate). Otherwise a stable final octave reads as
/// measure-positive; anything else is inconclusive. Thresholds are heuristics
/// and are echoed in the result.
TrendVerdict classify_area_trend(const ScalingLadder& ladder, TrendThresholds thresholds = {});

using PointSampler = std::function<Point(CounterRng&)>;

/// Monte Carlo estimate of the Riesz s-energy: mean of |x-y|^-s over
/// independent pairs from the sampler. Coincident pairs are resampled.
double riesz_energy_mc(const PointSampler& sampler, double s, std::int64_t pairs,
                       std::uint64_t seed);

struct EnergyProbe {
  double estimate_small = 0.0;  // at `pairs`
  double estimate_large = 0.0;  // at 4*pairs
  double ratio = 0.0;
  bool divergent = false;  // ratio above the divergence threshold
};

/// Crude finiteness probe: a divergent integral keeps growing with sample
/// size, so compare estimates at pairs and 4*pairs on disjoint counter ranges.
EnergyProbe energy_divergence_probe(const PointSampler& sampler, double s, std::int64_t pairs,
                                    std::uint64_t seed, double ratio_threshold = 1.5);

/// Uniform on [0,1] embedded in the x-axis.
PointSampler uniform_unit_interval_sampler();

/// Natural (uniform-cylinder) measure on C_gamma embedded in the x-axis.
PointSampler cantor_line_sampler(double gamma);

/// Natural measure on C_gamma x C_gamma.
PointSampler cantor_square_sampler(double gamma);

}  // namespace fractal
