#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fractal/angle.hpp"
#include "fractal/curves.hpp"
#include "fractal/ifs.hpp"
#include "fractal/projections.hpp"
#include "fractal/raster.hpp"
#include "fractal/scaling.hpp"
#include "fractal/slice_maps.hpp"

namespace fractal {

enum class SetKind { CantorSquare, IfsFile };
enum class CurveKind { Circle, Square, None };

struct ExperimentConfig {
  SetKind set_kind = SetKind::CantorSquare;
  std::string gamma = "1/4";   // Cantor ratio, rational text
  std::string ifs_path;        // used when set_kind == IfsFile

  CurveKind curve_kind = CurveKind::Circle;
  double circle_radius = 1.0;
  double square_theta = 0.0;                 // rotation of the unit-square curve
  std::optional<std::pair<long long, long long>> tangent;  // (p, q): theta = atan(p/q)

  double eps_start = 0.25;
  double eps_stop = 1.0 / 64.0;
  double eps_factor = 0.5;
  int max_depth = 12;
  std::optional<Rect> window;

  TrendThresholds thresholds;
  std::uint64_t seed = 1;
  std::int64_t trials = 100000;
  std::string output_dir;
  bool write_rasters = true;

  /// Epsilon ladder start, start*factor, ... down to eps_stop (inclusive).
  std::vector<double> eps_ladder() const;

  void validate() const;
  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& text);
  static ExperimentConfig from_json_file(const std::filesystem::path& path);

  Rational gamma_rational() const;
  CurveSpec curve() const;
  /// Effective rotation of the square curve (tangent wins over square_theta).
  double curve_theta() const;
};

struct SumsetOutcome {
  ScalingLadder ladder;
  DimFit fit;
  TrendVerdict verdict;
  std::string prediction;  // from the classification tables, or "none"
  std::string measured;
  std::optional<Point> interior_witness;
  std::vector<std::filesystem::path> files;
};

/// Rasterizes set + curve over the epsilon ladder (cover depth chosen so the
/// cover side is <= eps), fits the box dimension, classifies the area trend,
/// and writes ladder.csv, fit.csv, per-rung PGM rasters, and summary.txt.
SumsetOutcome run_sumset_experiment(const ExperimentConfig& config);

struct ProjectionOutcome {
  std::optional<AngleClass> angle_class;  // empty for irrational tangents
  std::string prediction;
  std::vector<LadderEntry> ladder;        // per-depth projected measure
  double projection_dim = 0.0;            // grid-count slope of the finest projection
  std::optional<Point> interior_witness;
  std::vector<std::filesystem::path> files;
};

/// Classifies the square-curve angle, runs the projection ladder for the
/// side-perpendicular directions, and attaches an interior probe of the
/// rasterized sumset. Writes projection.csv and summary.txt.
ProjectionOutcome run_projection_experiment(const ExperimentConfig& config);

struct AuditOutcome {
  std::int64_t ratio_samples = 0;
  std::int64_t ratio_violations = 0;    // distance-ratio bound failures
  double max_ratio_margin = 0.0;        // max of ratio^2 - bound (negative when clean)
  double tau_roundtrip_error = 0.0;
  double h_map_offset_error = 0.0;
  TransversalityAudit transversality;
  TransversalityAudit transversality_refined;  // 4x lambda grid
  bool ok = false;
  std::vector<std::filesystem::path> files;
};

/// Sampled verification of the slice-map bounds (distance-ratio inequality,
/// tau round-trip, h_map offset identity) plus the transversality audit at two
/// grid resolutions. Writes audit.csv; `ok` is false iff a hard bound failed.
AuditOutcome run_audit(const ExperimentConfig& config);

/// Upper bound 1 + 1.4*r2 + (2/3)*r2^2 for the squared distance ratio of the
/// inverse angle-shift branches, r2 = larger of the two radii.
double psi_ratio_bound(double r2);

}  // namespace fractal
