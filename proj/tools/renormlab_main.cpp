#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "renormlab/errors.hpp"
#include "renormlab/experiments.hpp"
#include "renormlab/pair.hpp"
#include "renormlab/pair_io.hpp"

using namespace renormlab;

namespace {

struct CliOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::string format = "csv";
  int precision = 0;   // 0: keep config value
  long depth = 0;
  long grid = 0;
  long level = 1;
  std::string pair_save;
  std::string pair_check;
};

ExperimentConfig load_config(const CliOptions& opt) {
  nlohmann::json j = nlohmann::json::object();
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) throw ConfigError("cannot read config file " + opt.config_path);
    in >> j;
  }
  ExperimentConfig config = ExperimentConfig::from_json(j);
  if (opt.precision > 0) config.precision_bits = opt.precision;
  if (opt.depth > 0) config.depth = opt.depth;
  if (opt.grid > 0) config.grid_size = opt.grid;
  return config;
}

void ensure_families(ExperimentConfig& config, size_t needed) {
  if (config.families.empty()) {
    config.families.push_back(FamilySpec{});  // arnold
  }
  if (needed >= 2 && config.families.size() < 2) {
    FamilySpec two;
    two.family = "two_harmonic";
    two.params["beta"] = "0.1";
    config.families.push_back(std::move(two));
  }
}

void emit(const ExperimentResult& result, const CliOptions& opt, const std::string& name) {
  std::filesystem::create_directories(opt.out_dir);
  nlohmann::json report = result.report;
  if (opt.format == "json") {
    for (const auto& [stem, table] : result.tables) {
      nlohmann::json t;
      t["columns"] = table.columns;
      t["rows"] = table.rows;
      report["tables"][stem] = std::move(t);
    }
  } else {
    for (const auto& [stem, table] : result.tables) {
      std::string path = opt.out_dir + "/" + stem + ".csv";
      write_text_file(path, table.body());
      std::cout << "wrote " << path << "\n";
    }
  }
  std::string path = opt.out_dir + "/" + name + ".json";
  write_text_file(path, report.dump(2) + "\n");
  std::cout << "wrote " << path << "\n";
}

int run(const std::string& command, CliOptions& opt) {
  ExperimentConfig config = load_config(opt);

  if (command == "rotnum") {
    ensure_families(config, 1);
    ExperimentResult r = run_rotnum(config);
    std::cout << "digits:";
    for (const auto& d : r.report.at("digits")) std::cout << " " << d;
    std::cout << "\n";
    emit(r, opt, "rotnum");
    return 0;
  }
  if (command == "solve") {
    ensure_families(config, 1);
    SolvedMap solved = solve_family(config, config.families[0], config.target, config.depth);
    std::cout << config.families[0].family << " omega = " << solved.map->omega().str()
              << "\nverified digits: " << solved.verified_digits << "\n";
    std::filesystem::create_directories(opt.out_dir);
    nlohmann::json report = report_header("solve", config.to_json());
    report["omega"] = solved.map->omega().str();
    report["verified_digits"] = solved.verified_digits;
    report["digits"] = solved.cf.digits;
    write_text_file(opt.out_dir + "/solve.json", report.dump(2) + "\n");
    std::cout << "wrote " << opt.out_dir << "/solve.json\n";
    return 0;
  }
  if (command == "pair") {
    if (!opt.pair_check.empty()) {
      CommutingPair pair = load_pair(opt.pair_check);
      ValidationReport rep = validate_pair(pair);
      std::cout << "pair from " << opt.pair_check << " (criticality " << pair.criticality()
                << ", " << pair.bits() << " bits)\n"
                << rep.summary();
      if (!rep.ok()) return 4;
      auto per = pair.try_period();
      std::cout << "period: " << (per ? std::to_string(per->a) : std::string("infinite"))
                << "\n";
      return 0;
    }
    ensure_families(config, 1);
    long need = std::max(opt.level + 2, 2L);
    SolvedMap solved = solve_family(config, config.families[0], config.target, need);
    CommutingPair pair = extract_pair(solved.map, solved.cf, opt.level);
    ValidationReport rep = validate_pair(pair);
    std::cout << rep.summary();
    auto per = pair.try_period();
    std::cout << "level " << opt.level << " period: "
              << (per ? std::to_string(per->a) : std::string("infinite")) << "\n";
    std::filesystem::create_directories(opt.out_dir);
    std::string path = opt.pair_save.empty() ? opt.out_dir + "/pair.json" : opt.pair_save;
    nlohmann::json provenance;
    provenance["level"] = opt.level;
    provenance["digits_prefix"] = solved.cf.digits;
    save_pair(path, pair, provenance);
    std::cout << "wrote " << path << "\n";
    return 0;
  }

  ExperimentResult result;
  if (command == "renorm-orbit") {
    ensure_families(config, 1);
    result = run_renorm_orbit(config);
  } else if (command == "converge") {
    ensure_families(config, 2);
    result = run_converge(config);
  } else if (command == "yoccoz") {
    ensure_families(config, 1);
    result = run_yoccoz(config);
  } else if (command == "expand") {
    ensure_families(config, 1);
    result = run_expansion(config);
  } else if (command == "sync") {
    ensure_families(config, 2);
    result = run_sync(config);
  } else if (command == "lipschitz") {
    ensure_families(config, 2);
    result = run_lipschitz(config);
  } else if (command == "rigidity") {
    ensure_families(config, 2);
    result = run_rigidity(config);
  } else {
    throw ConfigError("unknown command " + command);
  }
  std::string stem = command == "renorm-orbit" ? "renorm_orbit" : command;
  emit(result, opt, stem);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"renormlab: renormalization experiments for critical circle maps"};
  app.require_subcommand(1);

  CliOptions opt;
  for (const char* name : {"rotnum", "solve", "pair", "renorm-orbit", "converge", "yoccoz",
                           "expand", "sync", "lipschitz", "rigidity"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", opt.config_path, "JSON configuration file");
    sub->add_option("--precision", opt.precision, "working precision in bits");
    sub->add_option("--depth", opt.depth, "depth / level count");
    sub->add_option("--grid", opt.grid, "metric grid size per side");
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    if (std::string(name) == "pair") {
      sub->add_option("--level", opt.level, "extraction level (-1 for the base pair)");
      sub->add_option("--save", opt.pair_save, "pair record output path");
      sub->add_option("--check", opt.pair_check, "validate an existing pair record");
    }
  }

  try {
    CLI11_PARSE(app, argc, argv);
    return run(app.get_subcommands().front()->get_name(), opt);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const PrecisionError& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return 3;
  } catch (const PeriodicOrbitError& e) {
    std::cerr << "periodic orbit: " << e.what() << "\n";
    return 3;
  } catch (const PairValidationError& e) {
    std::cerr << "pair validation failed: " << e.what() << "\n";
    return 4;
  } catch (const NotRenormalizableError& e) {
    std::cerr << "not renormalizable: " << e.what() << "\n";
    return 4;
  } catch (const CombinatoricsError& e) {
    std::cerr << "combinatorics error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
