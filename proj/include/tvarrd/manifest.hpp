#pragma once

#include <string>

#include <json.hpp>

namespace tvarrd {

// Reproducibility record written beside every output file.  Identical
// manifests imply byte-identical outputs for seeded commands.
struct RunManifest {
  std::string command;
  std::string model_hash;   // empty when the command takes no model
  nlohmann::json settings;  // every numeric setting of the run
  std::string tool_version;
  std::string timestamp;    // UTC ISO-8601; honors SOURCE_DATE_EPOCH
};

RunManifest make_manifest(const std::string& command,
                          const std::string& model_hash,
                          nlohmann::json settings);

nlohmann::json manifest_to_json(const RunManifest& m);

// Atomic write of the manifest JSON to `path`.
void write_manifest(const std::string& path, const RunManifest& m);

// Current UTC time formatted as ISO-8601; SOURCE_DATE_EPOCH, when set,
// overrides the clock so repeated runs emit identical bytes.
std::string manifest_timestamp();

}  // namespace tvarrd
