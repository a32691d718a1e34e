#include "fractal/scaling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fractal {

void ScalingLadder::validate() const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].eps < rows[i - 1].eps))
      throw std::domain_error("ScalingLadder: eps must be strictly decreasing");
}

namespace {

struct LineFit {
  double slope = 0.0, intercept = 0.0, r_squared = 1.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxx > 0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  if (syy > 0) {
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = y[i] - (f.intercept + f.slope * x[i]);
      ss_res += r * r;
    }
    f.r_squared = 1.0 - ss_res / syy;
  }
  return f;
}

}  // namespace

DimFit fit_box_dimension(const ScalingLadder& ladder) {
  int first = ladder.rows.size() > 3 ? 1 : 0;
  return fit_box_dimension(ladder, first, static_cast<int>(ladder.rows.size()) - 1);
}

DimFit fit_box_dimension(const ScalingLadder& ladder, int window_first, int window_last) {
  ladder.validate();
  if (ladder.rows.size() < 3) throw std::domain_error("fit_box_dimension: need at least 3 rows");
  if (window_first < 0 || window_last >= static_cast<int>(ladder.rows.size()) ||
      window_first > window_last)
    throw std::domain_error("fit_box_dimension: bad window");

  DimFit fit;
  fit.window_first = window_first;
  fit.window_last = window_last;
  std::vector<double> x, y;
  for (int i = window_first; i <= window_last; ++i) {
    const auto& row = ladder.rows[i];
    if (row.box_count <= 0) {
      fit.warnings.push_back("excluded zero box_count row at eps=" + std::to_string(row.eps));
      continue;
    }
    x.push_back(std::log(1.0 / row.eps));
    y.push_back(std::log(static_cast<double>(row.box_count)));
  }
  if (x.size() < 2) throw std::domain_error("fit_box_dimension: fewer than 2 usable rows");
  LineFit lf = least_squares(x, y);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.r_squared = lf.r_squared;
  return fit;
}

TrendVerdict classify_area_trend(const ScalingLadder& ladder, TrendThresholds thresholds) {
  ladder.validate();
  if (ladder.rows.size() < 4) throw std::domain_error("classify_area_trend: need at least 4 rows");

  TrendVerdict v;
  v.thresholds = thresholds;

  const auto& rows = ladder.rows;
  double a_prev = rows[rows.size() - 2].area;
  double a_last = rows.back().area;
  v.final_rel_change = a_prev > 0 ? std::abs(a_last - a_prev) / a_prev : 0.0;

  std::vector<double> x, y;
  double min_exp = std::numeric_limits<double>::infinity();
  double max_exp = -std::numeric_limits<double>::infinity();
  bool degenerate = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].area > 0) {
      x.push_back(std::log(rows[i].eps));
      y.push_back(std::log(rows[i].area));
    } else {
      degenerate = true;
    }
    if (i + 1 < rows.size() && rows[i].area > 0 && rows[i + 1].area > 0) {
      double e = std::log(rows[i].area / rows[i + 1].area) /
                 std::log(rows[i].eps / rows[i + 1].eps);
      min_exp = std::min(min_exp, e);
      max_exp = std::max(max_exp, e);
    }
  }
  v.fitted_decay_exponent = x.size() >= 2 ? least_squares(x, y).slope : 0.0;
  v.min_octave_exponent = min_exp;
  v.max_octave_exponent = max_exp;
  v.persistent_decay = !degenerate && min_exp > thresholds.tau_zero / 3.0;
  v.stable_exponents = min_exp > 0 && max_exp <= thresholds.stability * min_exp;

  if (v.persistent_decay && v.stable_exponents)
    v.verdict = Verdict::Zero;
  else if (v.final_rel_change < thresholds.tau_pos)
    v.verdict = Verdict::Positive;
  else
    v.verdict = Verdict::Inconclusive;
  return v;
}

double riesz_energy_mc(const PointSampler& sampler, double s, std::int64_t pairs,
                       std::uint64_t seed) {
  if (!(s > 0 && s < 2)) throw std::domain_error("riesz_energy_mc: s must lie in (0,2)");
  if (pairs < 1) throw std::domain_error("riesz_energy_mc: pairs must be >= 1");
  CounterRng rng(seed);
  double sum = 0.0;
  for (std::int64_t i = 0; i < pairs; ++i) {
    double d;
    do {
      Point a = sampler(rng);
      Point b = sampler(rng);
      d = std::hypot(a.x - b.x, a.y - b.y);
    } while (d < 1e-15);
    sum += std::pow(d, -s);
  }
  return sum / static_cast<double>(pairs);
}

EnergyProbe energy_divergence_probe(const PointSampler& sampler, double s, std::int64_t pairs,
                                    std::uint64_t seed, double ratio_threshold) {
  EnergyProbe probe;
  probe.estimate_small = riesz_energy_mc(sampler, s, pairs, seed);
  probe.estimate_large = riesz_energy_mc(sampler, s, 4 * pairs, seed + 1);
  probe.ratio = probe.estimate_large / probe.estimate_small;
  probe.divergent = probe.ratio > ratio_threshold;
  return probe;
}

PointSampler uniform_unit_interval_sampler() {
  return [](CounterRng& rng) { return Point{rng.next_double(), 0.0}; };
}

namespace {

double cantor_coordinate(double gamma, CounterRng& rng) {
  // (1-gamma) * sum a_k gamma^(k-1) with fair binary digits, truncated below
  // double precision.
  double x = 0.0, w = 1.0 - gamma;
  int len = static_cast<int>(std::ceil(-40.0 / std::log2(gamma))) + 1;
  std::uint64_t bits = 0;
  int have = 0;
  for (int k = 0; k < len; ++k) {
    if (have == 0) {
      bits = rng.next();
      have = 64;
    }
    if (bits & 1) x += w;
    bits >>= 1;
    --have;
    w *= gamma;
  }
  return x;
}

}  // namespace

PointSampler cantor_line_sampler(double gamma) {
  return [gamma](CounterRng& rng) { return Point{cantor_coordinate(gamma, rng), 0.0}; };
}

PointSampler cantor_square_sampler(double gamma) {
  return [gamma](CounterRng& rng) {
    double x = cantor_coordinate(gamma, rng);
    double y = cantor_coordinate(gamma, rng);
    return Point{x, y};
  };
}

}  // namespace fractal
