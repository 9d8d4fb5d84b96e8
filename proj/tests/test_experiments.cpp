#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "renormlab/errors.hpp"
#include "renormlab/experiments.hpp"
#include "renormlab/report.hpp"

using namespace renormlab;

namespace {

// Reduced-precision configuration for fast driver checks; the acceptance
// suite runs the full-size settings.
ExperimentConfig small_config() {
  ExperimentConfig c;
  c.precision_bits = 128;
  c.grid_size = 33;
  c.depth = 6;
  c.level_from = 2;
  c.level_to = 5;
  c.expansion_periods = {8, 16};
  c.sync_period = 12;
  c.yoccoz_digit = 16;
  c.families.push_back(FamilySpec{});
  FamilySpec two;
  two.family = "two_harmonic";
  two.params["beta"] = "0.1";
  c.families.push_back(two);
  return c;
}

const std::string& col(const CsvTable& t, const std::vector<std::string>& row,
                       const std::string& name) {
  for (size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == name) return row[i];
  }
  throw std::runtime_error("no column " + name);
}

}  // namespace

TEST_CASE("config round trip and hash stability") {
  ExperimentConfig c = small_config();
  nlohmann::json j = c.to_json();
  ExperimentConfig back = ExperimentConfig::from_json(j);
  CHECK(back.to_json() == j);
  CHECK(sha1_hex(j.dump()) == sha1_hex(back.to_json().dump()));
  CHECK(sha1_hex("abc") == "a9993e364706816aba3e25717850c26c9cd0d89d");
}

TEST_CASE("converge: deterministic csv body, monotone columns") {
  ExperimentConfig c = small_config();
  ExperimentResult r1 = run_converge(c);
  ExperimentResult r2 = run_converge(c);
  REQUIRE(r1.tables.size() == 1);
  CHECK(r1.tables[0].second.body() == r2.tables[0].second.body());
  const CsvTable& t = r1.tables[0].second;
  REQUIRE(t.rows.size() == 6);
  for (const auto& row : t.rows) {
    Real d0 = Real::from_string(col(t, row, "d0"), 128);
    Real d1 = Real::from_string(col(t, row, "d1"), 128);
    Real d2 = Real::from_string(col(t, row, "d2"), 128);
    CHECK(d0 <= d1);
    CHECK(d1 <= d2);
  }
  CHECK(r1.report.contains("fit_loglinear"));
  CHECK(r1.report.at("config_hash") == r2.report.at("config_hash"));
}

TEST_CASE("converge with the same family twice gives zero rows") {
  ExperimentConfig c = small_config();
  c.families[1] = c.families[0];
  ExperimentResult r = run_converge(c);
  const CsvTable& t = r.tables[0].second;
  for (const auto& row : t.rows) {
    CHECK(Real::from_string(col(t, row, "d2"), 128).is_zero());
  }
  CHECK(r.report.contains("fit_skipped"));
}

TEST_CASE("yoccoz driver reports the expected period and geometry") {
  ExperimentConfig c = small_config();
  ExperimentResult r = run_yoccoz(c);
  CHECK(r.report.at("a") == 16);
  CHECK(r.tables[0].second.rows.size() == 15);
  double n_over_a = std::stod(r.report.at("N_over_a").get<std::string>());
  CHECK(n_over_a > 0.05);
  CHECK(n_over_a < 0.95);
}

TEST_CASE("expansion driver: cubic growth on the negative side") {
  ExperimentConfig c = small_config();
  ExperimentResult r = run_expansion(c);
  double slope = std::stod(r.report.at("fit_neg").at("slope").get<std::string>());
  CHECK(slope > 2.0);
  CHECK(slope < 4.0);
  double pos = std::stod(r.report.at("fit_pos").at("slope").get<std::string>());
  CHECK(std::abs(pos) < 0.5);
  ExperimentResult again = run_expansion(c);
  CHECK(r.tables[0].second.body() == again.tables[0].second.body());
}

TEST_CASE("sync driver measures finite stable constants") {
  ExperimentConfig c = small_config();
  ExperimentResult r = run_sync(c);
  const auto& base = r.report.at("profile");
  const auto& fine = r.report.at("profile_refined");
  for (const char* key : {"L_sync", "K_dxi", "K_h"}) {
    double v0 = std::stod(base.at(key).get<std::string>());
    double v1 = std::stod(fine.at(key).get<std::string>());
    CHECK(std::isfinite(v0));
    CHECK(std::isfinite(v1));
    CHECK(v1 / v0 < 4.0);
    CHECK(v0 / v1 < 4.0);
  }
  CHECK(base.at("a") == 12);
  // the sync table has a+1 rows
  CHECK(r.tables[0].second.rows.size() == 13);
}

TEST_CASE("lipschitz driver reports bounded ratios") {
  ExperimentConfig c = small_config();
  ExperimentResult r = run_lipschitz(c);
  const CsvTable& t = r.tables[0].second;
  REQUIRE(t.rows.size() == 4);
  for (const auto& row : t.rows) {
    double ratio = std::stod(col(t, row, "ratio"));
    CHECK(ratio > 0.0);
    CHECK(ratio < 50.0);
  }
}

TEST_CASE("rigidity driver: decreasing discrepancy, zero for equal maps") {
  ExperimentConfig c = small_config();
  ExperimentResult r = run_rigidity(c);
  const CsvTable& t = r.tables[0].second;
  REQUIRE(t.rows.size() == 4);
  double first = std::stod(col(t, t.rows.front(), "max_log_discrepancy"));
  double last = std::stod(col(t, t.rows.back(), "max_log_discrepancy"));
  CHECK(first > 0.0);
  CHECK(last < first);
  REQUIRE(r.tables.size() == 2);
  CHECK(r.tables[1].first == "rigidity_conjugacy");
  // conjugacy slopes are positive (monotone conjugacy)
  const CsvTable& conj = r.tables[1].second;
  for (const auto& row : conj.rows) {
    CHECK(std::stod(col(conj, row, "slope")) > 0.0);
  }

  ExperimentConfig same = small_config();
  same.families[1] = same.families[0];
  ExperimentResult rz = run_rigidity(same);
  for (const auto& row : rz.tables[0].second.rows) {
    CHECK(Real::from_string(col(rz.tables[0].second, row, "max_log_discrepancy"), 128)
              .is_zero());
  }
}

TEST_CASE("explicit omega skips the solver but is verified") {
  ExperimentConfig c = small_config();
  SolvedMap solved = solve_family(c, c.families[0], c.target, 8);
  FamilySpec fixed = c.families[0];
  fixed.omega = solved.map->omega().str();
  SolvedMap again = solve_family(c, fixed, c.target, 8);
  CHECK(again.map->omega() == solved.map->omega());

  FamilySpec wrong = fixed;
  wrong.omega = "0.25";
  CHECK_THROWS_AS(solve_family(c, wrong, c.target, 8), SolverError);
}

TEST_CASE("period consistency across drivers") {
  ExperimentConfig c = small_config();
  ExperimentResult y = run_yoccoz(c);
  CHECK(y.report.at("a").get<long>() == c.yoccoz_digit);
  ExperimentResult s = run_sync(c);
  CHECK(s.report.at("profile").at("a").get<long>() == c.sync_period);
}
