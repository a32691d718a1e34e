#include "fractal/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fractal/io.hpp"
#include "fractal/rng.hpp"

namespace fractal {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

std::string set_kind_name(SetKind k) { return k == SetKind::CantorSquare ? "cantor-square" : "ifs-file"; }
std::string curve_kind_name(CurveKind k) {
  switch (k) {
    case CurveKind::Circle: return "circle";
    case CurveKind::Square: return "square";
    case CurveKind::None: return "none";
  }
  return "?";
}

SetKind set_kind_from(const std::string& s) {
  if (s == "cantor-square") return SetKind::CantorSquare;
  if (s == "ifs-file") return SetKind::IfsFile;
  throw std::domain_error("unknown set kind '" + s + "'");
}

CurveKind curve_kind_from(const std::string& s) {
  if (s == "circle") return CurveKind::Circle;
  if (s == "square") return CurveKind::Square;
  if (s == "none") return CurveKind::None;
  throw std::domain_error("unknown curve kind '" + s + "'");
}

}  // namespace

std::vector<double> ExperimentConfig::eps_ladder() const {
  std::vector<double> out;
  for (double eps = eps_start; eps >= eps_stop * (1.0 - 1e-12); eps *= eps_factor)
    out.push_back(eps);
  return out;
}

void ExperimentConfig::validate() const {
  if (!(eps_start > 0) || !(eps_stop > 0) || eps_stop > eps_start)
    throw std::domain_error("config: need 0 < eps_stop <= eps_start");
  if (!(eps_factor > 0) || !(eps_factor < 1))
    throw std::domain_error("config: eps_factor must be in (0,1)");
  if (eps_ladder().size() < 4) throw std::domain_error("config: epsilon ladder needs >= 4 rungs");
  if (max_depth < 1) throw std::domain_error("config: max_depth must be >= 1");
  if (trials < 1) throw std::domain_error("config: trials must be >= 1");
  if (set_kind == SetKind::CantorSquare) {
    Rational g = gamma_rational();
    if (!(g > 0) || g >= Rational(1, 2))
      throw std::domain_error("config: gamma must be in (0, 1/2)");
  } else {
    if (!std::filesystem::exists(ifs_path))
      throw std::domain_error("config: IFS file '" + ifs_path + "' does not exist");
  }
  if (tangent) {
    auto [p, q] = *tangent;
    if (p <= 0 || q <= 0) throw std::domain_error("config: tangent p, q must be >= 1");
  }
}

Rational ExperimentConfig::gamma_rational() const { return parse_rational(gamma); }

double ExperimentConfig::curve_theta() const {
  if (tangent) return std::atan2(static_cast<double>(tangent->first), static_cast<double>(tangent->second));
  return square_theta;
}

CurveSpec ExperimentConfig::curve() const {
  switch (curve_kind) {
    case CurveKind::Circle:
      return CurveSpec{Circle{{0.0, 0.0}, circle_radius}};
    case CurveKind::Square:
      return polygon_ntheta(curve_theta());
    case CurveKind::None:
      break;
  }
  throw std::domain_error("config: no curve configured");
}

std::string ExperimentConfig::to_json() const {
  json j;
  j["set"] = set_kind_name(set_kind);
  j["gamma"] = gamma;
  if (!ifs_path.empty()) j["ifs_path"] = ifs_path;
  j["curve"] = curve_kind_name(curve_kind);
  j["circle_radius"] = circle_radius;
  j["square_theta"] = square_theta;
  if (tangent) j["tangent"] = {tangent->first, tangent->second};
  j["eps_start"] = eps_start;
  j["eps_stop"] = eps_stop;
  j["eps_factor"] = eps_factor;
  j["max_depth"] = max_depth;
  if (window) j["window"] = {window->x0, window->y0, window->x1, window->y1};
  j["tau_pos"] = thresholds.tau_pos;
  j["tau_zero"] = thresholds.tau_zero;
  j["seed"] = seed;
  j["trials"] = trials;
  j["output_dir"] = output_dir;
  j["write_rasters"] = write_rasters;
  return j.dump(2) + "\n";
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json j = json::parse(text);
  ExperimentConfig c;
  if (j.contains("set")) c.set_kind = set_kind_from(j["set"]);
  if (j.contains("gamma")) c.gamma = j["gamma"];
  if (j.contains("ifs_path")) c.ifs_path = j["ifs_path"];
  if (j.contains("curve")) c.curve_kind = curve_kind_from(j["curve"]);
  if (j.contains("circle_radius")) c.circle_radius = j["circle_radius"];
  if (j.contains("square_theta")) c.square_theta = j["square_theta"];
  if (j.contains("tangent")) c.tangent = {{j["tangent"][0], j["tangent"][1]}};
  if (j.contains("eps_start")) c.eps_start = j["eps_start"];
  if (j.contains("eps_stop")) c.eps_stop = j["eps_stop"];
  if (j.contains("eps_factor")) c.eps_factor = j["eps_factor"];
  if (j.contains("max_depth")) c.max_depth = j["max_depth"];
  if (j.contains("window"))
    c.window = Rect{j["window"][0], j["window"][1], j["window"][2], j["window"][3]};
  if (j.contains("tau_pos")) c.thresholds.tau_pos = j["tau_pos"];
  if (j.contains("tau_zero")) c.thresholds.tau_zero = j["tau_zero"];
  if (j.contains("seed")) c.seed = j["seed"];
  if (j.contains("trials")) c.trials = j["trials"];
  if (j.contains("output_dir")) c.output_dir = j["output_dir"];
  if (j.contains("write_rasters")) c.write_rasters = j["write_rasters"];
  return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

namespace {

struct SetModel {
  IfsSystem system;          // 2-D equal-ratio system for the configured set
  double ratio = 0.0;
  double bound_side = 0.0;   // side of the bounding square

  BoxCover cover_for(double eps, int max_depth) const {
    int depth = 1;
    while (depth < max_depth && bound_side * std::pow(ratio, depth) > eps) ++depth;
    return ifs_cover(system, depth);
  }
};

SetModel load_set(const ExperimentConfig& config) {
  SetModel model;
  if (config.set_kind == SetKind::CantorSquare) {
    Rational g = config.gamma_rational();
    Rational shift = 1 - g;
    model.system = IfsSystem::from_maps({{g, {0, 0}}, {g, {shift, 0}}, {g, {0, shift}}, {g, {shift, shift}}});
  } else {
    std::ifstream in(config.ifs_path);
    if (!in) throw std::runtime_error("cannot read IFS file " + config.ifs_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    model.system = ifs_from_text(buf.str());
    if (!model.system.common_ratio)
      throw std::domain_error("IFS file: maps must share a common ratio");
  }
  model.ratio = to_double(*model.system.common_ratio);
  model.bound_side = to_double(bounding_square(model.system).side);
  return model;
}

std::string sumset_prediction(const ExperimentConfig& config, const SetModel& model) {
  double dim = similarity_dimension(model.system);
  if (config.set_kind == SetKind::CantorSquare && config.curve_kind == CurveKind::Circle) {
    Rational g = config.gamma_rational();
    if (g > Rational(1, 4)) return "area positive";
    if (g == Rational(1, 4)) return "area zero, dimension 2";
    return "area zero, dimension " + format_double(1.0 + dim);
  }
  if (config.set_kind == SetKind::CantorSquare && config.curve_kind == CurveKind::Square &&
      config.gamma_rational() == Rational(1, 4)) {
    if (config.tangent) {
      auto [p, q] = *config.tangent;
      return to_string(predict_sumset(classify_angle(static_cast<std::uint64_t>(p),
                                                     static_cast<std::uint64_t>(q))));
    }
    return to_string(predict_sumset_irrational());
  }
  if (dim > 1.0) return "area positive";
  if (dim < 1.0) return "area zero";
  return "none";
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Positive: return "area positive";
    case Verdict::Zero: return "area zero";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::filesystem::path ensure_output_dir(const ExperimentConfig& config) {
  auto dir = resolve_output_dir(config.output_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_summary(const std::filesystem::path& dir, const ExperimentConfig& config,
                   const std::vector<std::pair<std::string, std::string>>& lines,
                   std::vector<std::filesystem::path>& files) {
  std::string cfg = config.to_json();
  std::string out;
  out += "config_hash=" + content_hash(cfg) + "\n";
  out += "seed=" + std::to_string(config.seed) + "\n";
  for (const auto& [k, v] : lines) out += k + "=" + v + "\n";
  auto path = dir / "summary.txt";
  atomic_write(path, out);
  atomic_write(dir / "config.json", cfg);
  files.push_back(path);
  files.push_back(dir / "config.json");
}

std::string stamp(const ExperimentConfig& config) {
  return "# config_hash=" + content_hash(config.to_json()) + " seed=" + std::to_string(config.seed);
}

}  // namespace

SumsetOutcome run_sumset_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.curve_kind == CurveKind::None)
    throw std::domain_error("sumset experiment needs a curve");
  SetModel model = load_set(config);
  CurveSpec curve = config.curve();
  auto dir = ensure_output_dir(config);

  SumsetOutcome outcome;
  std::vector<double> ladder = config.eps_ladder();

  std::optional<Rect> window = config.window;
  GridRaster finest;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    double eps = ladder[k];
    BoxCover cover = model.cover_for(eps, config.max_depth);
    CurveSample sample = sample_curve(curve, eps / 2.0);
    if (!window) window = default_window(cover, sample, config.eps_start);
    GridRaster raster = minkowski_raster(cover, sample, eps, window);
    outcome.ladder.rows.push_back({eps, box_count(raster), area_estimate(raster)});
    if (config.write_rasters) {
      auto path = dir / ("raster_" + std::to_string(k) + ".pgm");
      atomic_write(path, raster_to_pgm(raster));
      outcome.files.push_back(path);
    }
    if (k + 1 == ladder.size()) finest = std::move(raster);
  }

  outcome.fit = fit_box_dimension(outcome.ladder);
  outcome.verdict = classify_area_trend(outcome.ladder, config.thresholds);
  outcome.prediction = sumset_prediction(config, model);
  outcome.measured = verdict_name(outcome.verdict.verdict) +
                     ", dimension " + format_double(outcome.fit.slope);
  outcome.interior_witness = interior_probe(finest, 4.0 * ladder.back());

  CsvTable table({"eps", "box_count", "area"});
  for (const auto& row : outcome.ladder.rows)
    table.add_row({format_double(row.eps), std::to_string(row.box_count), format_double(row.area)});
  atomic_write(dir / "ladder.csv", table.to_string() + stamp(config) + "\n");
  outcome.files.push_back(dir / "ladder.csv");

  CsvTable fit({"slope", "intercept", "r2", "window"});
  fit.add_row({format_double(outcome.fit.slope), format_double(outcome.fit.intercept),
               format_double(outcome.fit.r_squared),
               std::to_string(outcome.fit.window_first) + ":" + std::to_string(outcome.fit.window_last)});
  atomic_write(dir / "fit.csv", fit.to_string() + stamp(config) + "\n");
  outcome.files.push_back(dir / "fit.csv");

  std::vector<std::pair<std::string, std::string>> lines = {
      {"prediction", outcome.prediction},
      {"measured", outcome.measured},
      {"verdict", verdict_name(outcome.verdict.verdict)},
      {"slope", format_double(outcome.fit.slope)},
      {"final_rel_change", format_double(outcome.verdict.final_rel_change)},
      {"min_octave_exponent", format_double(outcome.verdict.min_octave_exponent)},
  };
  if (outcome.interior_witness)
    lines.emplace_back("interior_witness", format_double(outcome.interior_witness->x) + " " +
                                               format_double(outcome.interior_witness->y));
  write_summary(dir, config, lines, outcome.files);
  return outcome;
}

ProjectionOutcome run_projection_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.set_kind != SetKind::CantorSquare)
    throw std::domain_error("projection experiment runs on the Cantor product set");
  Rational g = config.gamma_rational();
  auto dir = ensure_output_dir(config);

  int depth = 1;
  while (depth < config.max_depth && std::pow(to_double(g), depth) > config.eps_stop) ++depth;

  ProjectionOutcome outcome;
  ProjDirection side_dir;
  double theta = config.curve_theta();
  if (config.tangent) {
    auto [p, q] = *config.tangent;
    side_dir = ProjDirection::from_tangent(p, q);
    outcome.angle_class = classify_angle(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(q));
    outcome.prediction = to_string(predict_sumset(*outcome.angle_class));
  } else {
    side_dir = ProjDirection::from_angle(theta);
    outcome.prediction = to_string(predict_sumset_irrational());
  }

  // Side angles theta and theta+pi/2; each projection goes onto the other
  // side's direction (the side's perpendicular).
  BoxCover cover = four_corner_cover(g, depth);
  PolygonSumsetReport report = polygon_sumset_report(
      cover, {{theta, side_dir}, {theta + kPi / 2.0, side_dir.perp()}});
  outcome.projection_dim = 0.0;
  for (const auto& a : report.angles) outcome.projection_dim = std::max(outcome.projection_dim, a.dim_estimate);
  outcome.ladder = projection_ladder(g, side_dir.perp(), depth);

  {
    // The interior probe does not need the ladder's finest scale; cap the
    // raster at 2^-9 so deep projection ladders stay within the cell budget.
    double eps = std::max(config.eps_stop, 1.0 / 512.0);
    int raster_depth = 1;
    while (raster_depth < config.max_depth && std::pow(to_double(g), raster_depth) > eps)
      ++raster_depth;
    BoxCover raster_cover = raster_depth == depth ? cover : four_corner_cover(g, raster_depth);
    CurveSample sample = sample_curve(polygon_ntheta(theta), eps / 2.0);
    GridRaster raster = minkowski_raster(raster_cover, sample, eps, config.window);
    outcome.interior_witness = interior_probe(raster, 4.0 * eps);
    if (config.write_rasters) {
      atomic_write(dir / "sumset.pgm", raster_to_pgm(raster));
      outcome.files.push_back(dir / "sumset.pgm");
    }
  }

  CsvTable table({"depth", "length", "count"});
  for (const auto& e : outcome.ladder)
    table.add_row({std::to_string(e.depth), format_double(e.total_length), std::to_string(e.interval_count)});
  atomic_write(dir / "projection.csv", table.to_string() + stamp(config) + "\n");
  outcome.files.push_back(dir / "projection.csv");

  std::vector<std::pair<std::string, std::string>> lines;
  if (outcome.angle_class) {
    lines.emplace_back("p_star", std::to_string(outcome.angle_class->p_star));
    lines.emplace_back("q_star", std::to_string(outcome.angle_class->q_star));
    lines.emplace_back("class", to_string(outcome.angle_class->kind));
  } else {
    lines.emplace_back("class", to_string(AngleKind::Irrational));
  }
  lines.emplace_back("prediction", outcome.prediction);
  lines.emplace_back("projection_dim", format_double(outcome.projection_dim));
  lines.emplace_back("projection_measure", format_double(report.max_measure));
  lines.emplace_back("interior_witness", outcome.interior_witness
                                             ? format_double(outcome.interior_witness->x) + " " +
                                                   format_double(outcome.interior_witness->y)
                                             : "none");
  write_summary(dir, config, lines, outcome.files);
  return outcome;
}

double psi_ratio_bound(double r2) { return 1.0 + 1.4 * r2 + (2.0 / 3.0) * r2 * r2; }

AuditOutcome run_audit(const ExperimentConfig& config) {
  config.validate();
  auto dir = ensure_output_dir(config);
  AuditOutcome outcome;
  CounterRng rng(config.seed, 7);
  const Point x{0.5, 0.5};

  // Distance-ratio bound for the inverse angle-shift branches.
  outcome.ratio_samples = config.trials;
  outcome.max_ratio_margin = -1e30;
  for (std::int64_t i = 0; i < config.trials; ++i) {
    PsiBranch branch = i % 2 == 0 ? PsiBranch::InversePlus : PsiBranch::InverseMinus;
    PolarAboutX y1, y2;
    for (;;) {
      auto draw = [&](PolarAboutX& y) {
        y.center = x;
        y.r = rng.next_double();
        double a = std::asin(y.r / 2.0);
        double lo = branch == PsiBranch::InversePlus ? -a : a - kPi;
        y.phi = lo + rng.next_double() * kPi * (1.0 - 1e-9);
      };
      draw(y1);
      draw(y2);
      Point p1 = y1.cartesian(), p2 = y2.cartesian();
      if (std::hypot(p1.x - p2.x, p1.y - p2.y) > 1e-8) break;
    }
    double ratio = psi_ratio(x, y1, y2, branch);
    double bound = psi_ratio_bound(std::max(y1.r, y2.r));
    double margin = ratio * ratio - bound;
    outcome.max_ratio_margin = std::max(outcome.max_ratio_margin, margin);
    if (margin > 0) ++outcome.ratio_violations;
  }

  // tau round-trip and the vertical-offset identity of the h map.
  std::int64_t small_samples = std::min<std::int64_t>(config.trials, 10000);
  for (std::int64_t i = 0; i < small_samples; ++i) {
    AdmissiblePair pair;
    pair.x = {0.05 + 0.9 * rng.next_double(), 0.05 + 0.9 * rng.next_double()};
    pair.alpha = pair.x.x + 0.01 + 0.98 * rng.next_double();
    pair.tau_margin = 0.005;
    auto [px, theta] = tau_map(pair);
    AdmissiblePair back = tau_inverse(px, theta);
    outcome.tau_roundtrip_error = std::max(outcome.tau_roundtrip_error,
                                           std::abs(back.alpha - pair.alpha));

    double t = 0.2 * (rng.next_double() - 0.5);
    if (pair.x.y + t <= 0.0 || pair.x.y + t >= 1.0) continue;
    AdmissiblePair shifted = pair;
    shifted.x.y += t;
    Point h0 = h_map(pair), h1 = h_map(shifted);
    outcome.h_map_offset_error = std::max(outcome.h_map_offset_error,
                                          std::max(std::abs(h1.x - h0.x), std::abs(h1.y - (h0.y + t))));
  }

  CurveSpec circle{Circle{{0.0, 0.0}, 1.0}};
  int grid = 64;
  std::uint64_t pairs = 200;
  outcome.transversality = transversality_audit(circle, pairs, grid, config.seed);
  outcome.transversality_refined = transversality_audit(circle, pairs, grid * 4, config.seed);

  outcome.ok = outcome.ratio_violations == 0 && outcome.tau_roundtrip_error < 1e-9 &&
               outcome.h_map_offset_error < 1e-12;

  CsvTable table({"quantity", "value", "samples", "seed"});
  auto seed_s = std::to_string(config.seed);
  table.add_row({"ratio_violations", std::to_string(outcome.ratio_violations),
                 std::to_string(outcome.ratio_samples), seed_s});
  table.add_row({"max_ratio_margin", format_double(outcome.max_ratio_margin),
                 std::to_string(outcome.ratio_samples), seed_s});
  table.add_row({"tau_roundtrip_error", format_double(outcome.tau_roundtrip_error),
                 std::to_string(small_samples), seed_s});
  table.add_row({"h_map_offset_error", format_double(outcome.h_map_offset_error),
                 std::to_string(small_samples), seed_s});
  table.add_row({"transversality_h1", format_double(outcome.transversality.h1_const),
                 std::to_string(pairs * grid), seed_s});
  table.add_row({"transversality_h2", format_double(outcome.transversality.h2_const),
                 std::to_string(pairs * grid), seed_s});
  table.add_row({"transversality_h1_refined", format_double(outcome.transversality_refined.h1_const),
                 std::to_string(pairs * grid * 4), seed_s});
  table.add_row({"transversality_h2_refined", format_double(outcome.transversality_refined.h2_const),
                 std::to_string(pairs * grid * 4), seed_s});
  atomic_write(dir / "audit.csv", table.to_string() + stamp(config) + "\n");
  outcome.files.push_back(dir / "audit.csv");

  write_summary(dir, config,
                {{"ok", outcome.ok ? "true" : "false"},
                 {"ratio_violations", std::to_string(outcome.ratio_violations)},
                 {"transversality_h1", format_double(outcome.transversality.h1_const)},
                 {"transversality_h2", format_double(outcome.transversality.h2_const)}},
                outcome.files);
  return outcome;
}

}  // namespace fractal
