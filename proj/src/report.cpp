#include "renormlab/report.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include "renormlab/errors.hpp"

namespace renormlab {

std::string sha1_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha1(), nullptr)) {
    throw Error("sha1 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string CsvTable::body() const {
  std::ostringstream os;
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) os << ',';
    os << columns[i];
  }
  os << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << row[i];
    }
    os << '\n';
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << content;
}

nlohmann::json report_header(const std::string& experiment, const nlohmann::json& config) {
  nlohmann::json header;
  header["experiment"] = experiment;
  header["precision_bits"] = config.value("precision_bits", 0);
  header["grid_size"] = config.value("grid_size", 0L);
  header["depth"] = config.value("depth", 0L);
  header["config_hash"] = sha1_hex(config.dump());
  header["config"] = config;
  return header;
}

}  // namespace renormlab
