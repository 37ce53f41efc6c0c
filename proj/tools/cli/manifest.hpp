#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace retrodict::cli {

std::string sha256_hex(const std::string& bytes);

/// Record of one CLI run: what was asked for and what it produced.
struct RunManifest {
  std::string subcommand;
  std::string config_json;  // resolved configuration, a JSON object
  std::uint64_t seed = 0;
  std::string version;
  double duration_seconds = 0.0;
  std::map<std::string, std::string> output_digests;  // file name -> SHA-256

  std::string to_json() const;
};

}  // namespace retrodict::cli
