#pragma once

#include <json.hpp>
#include <string>

#include "renormlab/pair.hpp"

namespace renormlab {

/// Versioned, human-readable record of a pair: the generating family with its
/// parameters at full precision, both chain step lists, domains, and optional
/// provenance (level, digit prefix, cached period). Numbers are decimal
/// strings faithful at the pair's precision.
nlohmann::json pair_to_json(const CommutingPair& pair,
                            const nlohmann::json& provenance = nlohmann::json::object());

CommutingPair pair_from_json(const nlohmann::json& record);

void save_pair(const std::string& path, const CommutingPair& pair,
               const nlohmann::json& provenance = nlohmann::json::object());
CommutingPair load_pair(const std::string& path);

}  // namespace renormlab
