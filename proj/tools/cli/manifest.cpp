#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <json.hpp>

#include "retrodict/errors.hpp"

namespace retrodict::cli {

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 digest failed");
  }
  std::string hex;
  char buffer[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buffer, sizeof buffer, "%02x", digest[i]);
    hex += buffer;
  }
  return hex;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json doc;
  doc["subcommand"] = subcommand;
  doc["config"] = nlohmann::ordered_json::parse(config_json);
  doc["seed"] = seed;
  doc["version"] = version;
  doc["duration_seconds"] = duration_seconds;
  doc["outputs"] = nlohmann::ordered_json::object();
  for (const auto& [name, digest] : output_digests) doc["outputs"][name] = {{"sha256", digest}};
  return doc.dump(2) + "\n";
}

}  // namespace retrodict::cli
