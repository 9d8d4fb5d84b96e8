#pragma once

#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "renormlab/contfrac.hpp"
#include "renormlab/report.hpp"
#include "renormlab/rotation_search.hpp"

namespace renormlab {

struct FamilySpec {
  std::string family = "arnold";
  std::map<std::string, std::string> params;  // decimal strings, omega excluded
  std::optional<std::string> omega;           // explicit parameter skips the solver

  nlohmann::json to_json() const;
  static FamilySpec from_json(const nlohmann::json& j);
};

struct ExperimentConfig {
  int precision_bits = 212;
  long grid_size = 257;
  long depth = 16;
  long max_iterations = kDefaultMaxIterations;
  DigitTarget target{{}, {1}};
  std::vector<FamilySpec> families;
  long level_from = 4;
  long level_to = 14;
  std::vector<long> expansion_periods{16, 32, 64};
  long sync_period = 40;
  std::string sync_refine = "0.5";
  long yoccoz_digit = 60;

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
};

struct SolvedMap {
  MapPtr map;
  ContinuedFractionState cf;
  long verified_digits = 0;
};

/// Builds the family member matching the target for `depth` digits, either by
/// running the parameter search or by verifying an explicitly given omega.
SolvedMap solve_family(const ExperimentConfig& config, const FamilySpec& spec,
                       const DigitTarget& target, long depth);

struct ExperimentResult {
  std::vector<std::pair<std::string, CsvTable>> tables;  // file stem -> table
  nlohmann::json report;
};

ExperimentResult run_rotnum(const ExperimentConfig& config);
ExperimentResult run_renorm_orbit(const ExperimentConfig& config);
ExperimentResult run_converge(const ExperimentConfig& config);
ExperimentResult run_yoccoz(const ExperimentConfig& config);
ExperimentResult run_expansion(const ExperimentConfig& config);
ExperimentResult run_sync(const ExperimentConfig& config);
ExperimentResult run_lipschitz(const ExperimentConfig& config);
ExperimentResult run_rigidity(const ExperimentConfig& config);

}  // namespace renormlab
