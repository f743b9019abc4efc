#include "tvarrd/manifest.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>

#include "tvarrd/csv_io.hpp"
#include "tvarrd/version.hpp"

namespace tvarrd {

std::string manifest_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* e = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(e, &end, 10);
    if (end != e && *end == '\0') t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec);
  return buf;
}

RunManifest make_manifest(const std::string& command,
                          const std::string& model_hash,
                          nlohmann::json settings) {
  RunManifest m;
  m.command = command;
  m.model_hash = model_hash;
  m.settings = std::move(settings);
  m.tool_version = kVersion;
  m.timestamp = manifest_timestamp();
  return m;
}

nlohmann::json manifest_to_json(const RunManifest& m) {
  nlohmann::json doc;
  doc["command"] = m.command;
  doc["model_hash"] = m.model_hash;
  doc["settings"] = m.settings;
  doc["timestamp"] = m.timestamp;
  doc["tool_version"] = m.tool_version;
  return doc;
}

void write_manifest(const std::string& path, const RunManifest& m) {
  atomic_write_file(path, manifest_to_json(m).dump(2) + "\n");
}

}  // namespace tvarrd
