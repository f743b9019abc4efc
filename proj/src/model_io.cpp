#include "tvarrd/model_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace tvarrd {

using nlohmann::json;

namespace {

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

TvarModel parse_model_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ModelParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw ModelParseError("model document must be an object");
    const int order = doc.at("order").get<int>();
    const double s2 = doc.at("noise_variance").get<double>();
    std::vector<std::vector<double>> coeffs;
    for (const auto& row : doc.at("coeffs"))
      coeffs.push_back(row.get<std::vector<double>>());
    const std::string name = doc.value("name", std::string());
    return TvarModel(order, std::move(coeffs), s2, name);
  } catch (const ModelParseError&) {
    throw;
  } catch (const json::exception& e) {
    throw ModelParseError(std::string("bad model document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ModelParseError(std::string("bad model document: ") + e.what());
  }
}

TvarModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelParseError("cannot open model file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model_json(ss.str());
}

std::string model_to_json(const TvarModel& model) {
  json doc;
  doc["name"] = model.name;
  doc["order"] = model.order;
  doc["noise_variance"] = model.noise_variance;
  doc["coeffs"] = model.coeffs;
  return doc.dump(2) + "\n";
}

std::string canonical_model_json(const TvarModel& model) {
  // Keys in sorted order, numbers in a fixed format; this string feeds the
  // content digest, so its byte layout must never drift.
  std::string out = "{\"coeffs\":[";
  for (std::size_t m = 0; m < model.coeffs.size(); ++m) {
    if (m) out += ',';
    out += '[';
    for (std::size_t p = 0; p < model.coeffs[m].size(); ++p) {
      if (p) out += ',';
      out += g17(model.coeffs[m][p]);
    }
    out += ']';
  }
  out += "],\"name\":";
  out += json(model.name).dump();
  out += ",\"noise_variance\":";
  out += g17(model.noise_variance);
  out += ",\"order\":";
  out += std::to_string(model.order);
  out += '}';
  return out;
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string model_hash(const TvarModel& model) {
  const std::string canon = canonical_model_json(model);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canon.data(), canon.size())));
  return buf;
}

}  // namespace tvarrd
