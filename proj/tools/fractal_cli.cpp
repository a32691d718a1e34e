#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fractal/experiments.hpp"
#include "fractal/io.hpp"

namespace {

using namespace fractal;

// Config file first, then any flag that was actually passed wins.
struct ConfigFlags {
  std::string config_path;
  std::string set, gamma, ifs_path, curve, tan, out;
  double radius = 1.0, theta = 0.0;
  double eps_start = 0.25, eps_stop = 1.0 / 64.0, eps_factor = 0.5;
  int depth = 12;
  std::uint64_t seed = 1;
  std::int64_t trials = 100000;
  bool no_rasters = false;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "JSON config file; flags override its keys");
    app->add_option("--set", set, "cantor-square or ifs-file");
    app->add_option("--gamma", gamma, "Cantor ratio, e.g. 1/9 or 0.3");
    app->add_option("--ifs", ifs_path, "IFS text file (one 'ratio tx ty' per line)");
    app->add_option("--curve", curve, "circle, square or none");
    app->add_option("--radius", radius, "circle radius");
    app->add_option("--theta", theta, "square rotation angle (radians)");
    app->add_option("--tan", tan, "square rotation as a rational tangent p/q");
    app->add_option("--eps-start", eps_start, "coarsest grid cell side");
    app->add_option("--eps-stop", eps_stop, "finest grid cell side");
    app->add_option("--eps-factor", eps_factor, "multiplicative ladder step, in (0,1)");
    app->add_option("--depth", depth, "cover depth cap");
    app->add_option("--seed", seed, "random seed");
    app->add_option("--trials", trials, "Monte Carlo / audit sample count");
    app->add_option("--out", out, "output directory (or FRACTAL_OUTPUT_DIR)");
    app->add_flag("--no-rasters", no_rasters, "skip PGM output");
  }

  ExperimentConfig build(const CLI::App* app) const {
    ExperimentConfig c;
    if (!config_path.empty()) c = ExperimentConfig::from_json_file(config_path);
    auto passed = [app](const std::string& name) { return app->count(name) > 0; };
    if (passed("--set")) c.set_kind = set == "ifs-file" ? SetKind::IfsFile : SetKind::CantorSquare;
    if (passed("--gamma")) c.gamma = gamma;
    if (passed("--ifs")) {
      c.ifs_path = ifs_path;
      c.set_kind = SetKind::IfsFile;
    }
    if (passed("--curve")) {
      if (curve == "circle") c.curve_kind = CurveKind::Circle;
      else if (curve == "square") c.curve_kind = CurveKind::Square;
      else if (curve == "none") c.curve_kind = CurveKind::None;
      else throw CLI::ValidationError("--curve", "expected circle, square or none");
    }
    if (passed("--radius")) c.circle_radius = radius;
    if (passed("--theta")) c.square_theta = theta;
    if (passed("--tan")) {
      auto slash = tan.find('/');
      if (slash == std::string::npos) throw CLI::ValidationError("--tan", "expected p/q");
      c.tangent = {{std::stoll(tan.substr(0, slash)), std::stoll(tan.substr(slash + 1))}};
    }
    if (passed("--eps-start")) c.eps_start = eps_start;
    if (passed("--eps-stop")) c.eps_stop = eps_stop;
    if (passed("--eps-factor")) c.eps_factor = eps_factor;
    if (passed("--depth")) c.max_depth = depth;
    if (passed("--seed")) c.seed = seed;
    if (passed("--trials")) c.trials = trials;
    if (passed("--out")) c.output_dir = out;
    if (no_rasters) c.write_rasters = false;
    return c;
  }
};

int cmd_sumset(const ExperimentConfig& config) {
  SumsetOutcome r = run_sumset_experiment(config);
  std::cout << "prediction: " << r.prediction << "\n"
            << "measured:   " << r.measured << "\n"
            << "slope=" << format_double(r.fit.slope) << " r2=" << format_double(r.fit.r_squared)
            << "\n";
  if (r.interior_witness)
    std::cout << "interior witness: " << r.interior_witness->x << " " << r.interior_witness->y
              << "\n";
  return 0;  // disagreement is a finding, not an error
}

int cmd_project(const ExperimentConfig& config) {
  ProjectionOutcome r = run_projection_experiment(config);
  if (r.angle_class)
    std::cout << r.angle_class->p_star << "," << r.angle_class->q_star << ","
              << to_string(r.angle_class->kind) << "," << r.prediction << "\n";
  else
    std::cout << "-,-," << to_string(AngleKind::Irrational) << "," << r.prediction << "\n";
  std::cout << "projection_dim=" << format_double(r.projection_dim) << "\n";
  for (const auto& e : r.ladder)
    std::cout << "depth " << e.depth << ": length=" << format_double(e.total_length)
              << " count=" << e.interval_count << "\n";
  std::cout << "interior: "
            << (r.interior_witness ? format_double(r.interior_witness->x) + " " +
                                         format_double(r.interior_witness->y)
                                   : std::string("none"))
            << "\n";
  return 0;
}

int cmd_classify(long long p, long long q) {
  AngleClass cls = classify_angle(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(q));
  std::cout << cls.p_star << "," << cls.q_star << "," << to_string(cls.kind) << ","
            << to_string(predict_sumset(cls)) << "\n";
  return 0;
}

int cmd_mc_circle(const ExperimentConfig& config, int depth) {
  BoxCover cover = four_corner_cover(config.gamma_rational(), depth);
  Rect window{-config.circle_radius - 1.0, -config.circle_radius - 1.0,
              config.circle_radius + 2.0, config.circle_radius + 2.0};
  McEstimate est = random_circle_mc(cover, window, config.circle_radius, config.trials, config.seed);
  CsvTable table({"seed", "trials", "hits", "p_hat", "ci95"});
  table.add_row({std::to_string(est.seed), std::to_string(est.trials), std::to_string(est.hits),
                 format_double(est.p_hat), format_double(est.ci95_halfwidth)});
  auto dir = resolve_output_dir(config.output_dir);
  std::filesystem::create_directories(dir);
  atomic_write(dir / "mc_circle.csv", table.to_string());
  std::cout << "p_hat=" << format_double(est.p_hat) << " ci95=" << format_double(est.ci95_halfwidth)
            << " hits=" << est.hits << "/" << est.trials << "\n";
  return 0;
}

int cmd_audit(const ExperimentConfig& config) {
  AuditOutcome r = run_audit(config);
  std::cout << "ratio_violations=" << r.ratio_violations << "/" << r.ratio_samples << "\n"
            << "tau_roundtrip_error=" << format_double(r.tau_roundtrip_error) << "\n"
            << "h_map_offset_error=" << format_double(r.h_map_offset_error) << "\n"
            << "H1=" << format_double(r.transversality.h1_const)
            << " H2=" << format_double(r.transversality.h2_const) << "\n"
            << "H1(4x)=" << format_double(r.transversality_refined.h1_const)
            << " H2(4x)=" << format_double(r.transversality_refined.h2_const) << "\n"
            << (r.ok ? "ok" : "BOUND VIOLATION") << "\n";
  return r.ok ? 0 : 2;
}

int cmd_ifs_build(const std::vector<double>& angles, const std::string& lambda,
                  const std::string& mode_name, std::size_t n_maps, std::uint64_t seed,
                  const std::string& out_path) {
  SharedProjectionMode mode;
  if (mode_name == "aprime") mode = SharedProjectionMode::APrime;
  else if (mode_name == "bprime") mode = SharedProjectionMode::BPrime;
  else throw CLI::ValidationError("--mode", "expected aprime or bprime");
  SharedProjectionOptions options;
  options.seed = seed;
  if (n_maps > 0) options.n_maps = n_maps;
  SharedProjectionSystem built = shared_projection_ifs(angles, parse_rational(lambda), mode, options);
  std::string text = ifs_to_text(built.system);
  if (!out_path.empty())
    atomic_write(out_path, text);
  else
    std::cout << text;
  std::cout << "maps=" << built.system.maps.size()
            << " dimension=" << format_double(similarity_dimension(built.system))
            << " attempts=" << built.attempts << "\n";
  for (const auto& pair : built.pairs)
    std::cout << "angle " << format_double(pair.angle) << ": maps " << pair.first << ","
              << pair.second << " share a projection\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for self-similar sets, their sums with curves, and projections"};
  app.require_subcommand(1);

  ConfigFlags flags;
  auto* sumset = app.add_subcommand("sumset", "Rasterize set + curve over an epsilon ladder and classify");
  auto* project = app.add_subcommand("project", "Project the Cantor product set for a square-curve angle");
  auto* classify = app.add_subcommand("classify-angle", "4-adic classification of a rational tangent");
  auto* mc = app.add_subcommand("mc-circle", "Monte Carlo circle-meets-set probability");
  auto* audit = app.add_subcommand("audit", "Sampled verification of the slice-map bounds");
  auto* build = app.add_subcommand("ifs-build", "Construct an equal-ratio system with shared projections");

  for (CLI::App* sub : {sumset, project, mc, audit}) {
    ConfigFlags* f = &flags;
    f->attach(sub);
  }

  long long cls_p = 1, cls_q = 1;
  classify->add_option("p", cls_p, "tangent numerator")->required();
  classify->add_option("q", cls_q, "tangent denominator")->required();

  int mc_depth = 4;
  mc->add_option("--cover-depth", mc_depth, "cover depth for the target set");

  std::vector<double> build_angles;
  std::string build_lambda = "1/5", build_mode = "bprime", build_out;
  std::size_t build_n = 0;
  std::uint64_t build_seed = 1;
  build->add_option("--angles", build_angles, "projection angles (radians)")->required();
  build->add_option("--lambda", build_lambda, "contraction ratio (rational)");
  build->add_option("--mode", build_mode, "aprime (ratio > 1/N) or bprime (ratio < 1/N)");
  build->add_option("--n-maps", build_n, "total map count (even)");
  build->add_option("--seed", build_seed, "random seed");
  build->add_option("--out", build_out, "output IFS text file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sumset->parsed()) return cmd_sumset(flags.build(sumset));
    if (project->parsed()) return cmd_project(flags.build(project));
    if (classify->parsed()) return cmd_classify(cls_p, cls_q);
    if (mc->parsed()) return cmd_mc_circle(flags.build(mc), mc_depth);
    if (audit->parsed()) return cmd_audit(flags.build(audit));
    if (build->parsed())
      return cmd_ifs_build(build_angles, build_lambda, build_mode, build_n, build_seed, build_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
