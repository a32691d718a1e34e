#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fractal/experiments.hpp"

using namespace fractal;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ExperimentConfig small_config(const std::string& out) {
  ExperimentConfig c;
  c.gamma = "1/4";
  c.eps_start = 0.25;
  c.eps_stop = 1.0 / 64.0;
  c.output_dir = out;
  c.write_rasters = false;
  return c;
}

}  // namespace

TEST_CASE("config json round trip") {
  ExperimentConfig c = small_config("somewhere");
  c.tangent = {{1, 2}};
  c.seed = 42;
  ExperimentConfig back = ExperimentConfig::from_json(c.to_json());
  CHECK(back.gamma == "1/4");
  CHECK(back.seed == 42);
  REQUIRE(back.tangent.has_value());
  CHECK(back.tangent->first == 1);
  CHECK(back.tangent->second == 2);
  CHECK(back.output_dir == "somewhere");
}

TEST_CASE("config validation rejects bad ladders and ratios") {
  ExperimentConfig c = small_config("x");
  c.eps_stop = 0.2;  // only one rung
  CHECK_THROWS_AS(c.validate(), std::domain_error);
  c = small_config("x");
  c.eps_factor = 1.5;
  CHECK_THROWS_AS(c.validate(), std::domain_error);
  c = small_config("x");
  c.gamma = "3/5";
  CHECK_THROWS_AS(c.validate(), std::domain_error);
  c = small_config("x");
  c.set_kind = SetKind::IfsFile;
  c.ifs_path = "/no/such/file";
  CHECK_THROWS_AS(c.validate(), std::domain_error);
}

TEST_CASE("sumset reruns are byte-identical") {
  auto dir = std::filesystem::temp_directory_path() / "fractal_exp_test";
  std::filesystem::remove_all(dir);
  ExperimentConfig c = small_config((dir / "a").string());
  run_sumset_experiment(c);
  std::string first_ladder = slurp(dir / "a" / "ladder.csv");
  std::string first_summary = slurp(dir / "a" / "summary.txt");
  run_sumset_experiment(c);
  CHECK(slurp(dir / "a" / "ladder.csv") == first_ladder);
  CHECK(slurp(dir / "a" / "summary.txt") == first_summary);
  CHECK(first_ladder.find("eps,box_count,area") == 0);
  CHECK(first_summary.find("config_hash=") == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("sumset report keeps prediction and measurement separate") {
  auto dir = std::filesystem::temp_directory_path() / "fractal_exp_test2";
  std::filesystem::remove_all(dir);
  ExperimentConfig c = small_config(dir.string());
  SumsetOutcome r = run_sumset_experiment(c);
  CHECK(r.prediction == "area zero, dimension 2");
  CHECK_FALSE(r.measured.empty());
  CHECK(r.ladder.rows.size() == c.eps_ladder().size());
  std::string summary = slurp(dir / "summary.txt");
  CHECK(summary.find("prediction=") != std::string::npos);
  CHECK(summary.find("measured=") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("projection experiment classifies the tangent") {
  auto dir = std::filesystem::temp_directory_path() / "fractal_exp_test3";
  std::filesystem::remove_all(dir);
  ExperimentConfig c = small_config(dir.string());
  c.curve_kind = CurveKind::Square;
  c.tangent = {{1, 1}};
  ProjectionOutcome r = run_projection_experiment(c);
  REQUIRE(r.angle_class.has_value());
  CHECK(r.angle_class->kind == AngleKind::Small);
  CHECK(r.prediction == "dimension < 2");
  CHECK_FALSE(r.ladder.empty());
  std::filesystem::remove_all(dir);
}

TEST_CASE("audit outcome is clean on default-style settings") {
  auto dir = std::filesystem::temp_directory_path() / "fractal_exp_test4";
  std::filesystem::remove_all(dir);
  ExperimentConfig c = small_config(dir.string());
  c.trials = 2000;
  AuditOutcome r = run_audit(c);
  CHECK(r.ok);
  CHECK(r.ratio_violations == 0);
  std::string csv = slurp(dir / "audit.csv");
  CHECK(csv.find("quantity,value,samples,seed") == 0);
  std::filesystem::remove_all(dir);
}
