#include "renormlab/pair_io.hpp"

#include <fstream>

#include "renormlab/errors.hpp"

namespace renormlab {

namespace {

constexpr int kFormatVersion = 1;

nlohmann::json chain_to_json(const CompositionChain& chain, const MapPtr& shared_map) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& step : chain.steps()) {
    if (const auto* base = std::get_if<CompositionChain::BaseStep>(&step)) {
      if (base->map.get() != shared_map.get()) {
        throw DomainError("pair serialization supports a single base map per pair");
      }
      steps.push_back({{"base", base->count}});
    } else {
      const auto& aff = std::get<CompositionChain::AffineStep>(step);
      steps.push_back({{"affine", {aff.alpha.str(), aff.beta.str()}}});
    }
  }
  return {{"domain", {chain.lo().str(), chain.hi().str()}}, {"steps", steps}};
}

MapPtr find_base_map(const CommutingPair& pair) {
  for (const CompositionChain* chain : {&pair.eta(), &pair.xi()}) {
    for (const auto& step : chain->steps()) {
      if (const auto* base = std::get_if<CompositionChain::BaseStep>(&step)) {
        return base->map;
      }
    }
  }
  return nullptr;
}

CompositionChain chain_from_json(const nlohmann::json& j, const MapPtr& map, int bits) {
  Real lo = Real::from_string(j.at("domain").at(0).get<std::string>(), bits);
  Real hi = Real::from_string(j.at("domain").at(1).get<std::string>(), bits);
  std::vector<CompositionChain::Step> steps;
  for (const auto& s : j.at("steps")) {
    if (s.contains("base")) {
      if (!map) throw ConfigError("pair record uses base steps but carries no family");
      steps.push_back(CompositionChain::BaseStep{map, s.at("base").get<long>()});
    } else {
      const auto& aff = s.at("affine");
      steps.push_back(CompositionChain::AffineStep{
          Real::from_string(aff.at(0).get<std::string>(), bits),
          Real::from_string(aff.at(1).get<std::string>(), bits)});
    }
  }
  return CompositionChain(std::move(steps), std::move(lo), std::move(hi));
}

}  // namespace

nlohmann::json pair_to_json(const CommutingPair& pair, const nlohmann::json& provenance) {
  nlohmann::json record;
  record["format"] = "renormlab-pair";
  record["version"] = kFormatVersion;
  record["precision_bits"] = pair.bits();
  record["criticality"] = pair.criticality();
  record["validation"] = pair.mode() == PairValidationMode::Strict ? "strict" : "relaxed";
  MapPtr map = find_base_map(pair);
  if (map) {
    nlohmann::json params;
    for (const auto& [name, value] : map->params()) params[name] = value.str();
    record["family"] = {{"id", map->family()}, {"params", params}};
  }
  record["eta"] = chain_to_json(pair.eta(), map);
  record["xi"] = chain_to_json(pair.xi(), map);
  if (pair.has_cached_period()) {
    record["cached_period"] = pair.period().a;
  }
  if (!provenance.empty()) record["provenance"] = provenance;
  return record;
}

CommutingPair pair_from_json(const nlohmann::json& record) {
  if (record.value("format", "") != "renormlab-pair") {
    throw ConfigError("not a pair record");
  }
  if (record.value("version", 0) != kFormatVersion) {
    throw ConfigError("unsupported pair record version");
  }
  int bits = record.at("precision_bits").get<int>();
  MapPtr map;
  if (record.contains("family")) {
    std::map<std::string, Real> params;
    for (const auto& [name, value] : record.at("family").at("params").items()) {
      params.emplace(name, Real::from_string(value.get<std::string>(), bits));
    }
    map = std::make_shared<CircleMapLift>(
        CircleMapLift::make(record.at("family").at("id").get<std::string>(), params, bits));
  }
  CommutingPair pair(chain_from_json(record.at("eta"), map, bits),
                     chain_from_json(record.at("xi"), map, bits),
                     record.at("criticality").get<int>(),
                     record.value("validation", "strict") == std::string("strict")
                         ? PairValidationMode::Strict
                         : PairValidationMode::Relaxed);
  return pair;
}

void save_pair(const std::string& path, const CommutingPair& pair,
               const nlohmann::json& provenance) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write pair record to " + path);
  out << pair_to_json(pair, provenance).dump(2) << "\n";
}

CommutingPair load_pair(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read pair record from " + path);
  nlohmann::json record;
  in >> record;
  return pair_from_json(record);
}

}  // namespace renormlab
