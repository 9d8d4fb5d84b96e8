#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace renormlab {

/// SHA-1 hex digest, used to stamp reports with a hash of their resolved
/// configuration.
std::string sha1_hex(const std::string& data);

/// Column-ordered table whose body renders deterministically; re-running an
/// experiment with the same configuration reproduces the body byte for byte.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string body() const;
};

void write_text_file(const std::string& path, const std::string& content);

/// Common report header: experiment id, numerical metadata and the config
/// hash. The caller merges experiment-specific fields and rows.
nlohmann::json report_header(const std::string& experiment, const nlohmann::json& config);

}  // namespace renormlab
