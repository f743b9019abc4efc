#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "tvarrd/model.hpp"

namespace tvarrd {

// Model config document:
//   {"name": str, "order": M, "noise_variance": s2,
//    "coeffs": [[c10, c11, ...], [c20, ...], ...]}
// coeffs[m-1] lists the polynomial coefficients of a_m(r) in ascending degree.

class ModelParseError : public std::runtime_error {
 public:
  explicit ModelParseError(const std::string& msg) : std::runtime_error(msg) {}
};

TvarModel load_model_file(const std::string& path);   // throws ModelParseError
TvarModel parse_model_json(const std::string& text);  // throws ModelParseError
std::string model_to_json(const TvarModel& model);    // pretty, round-trips

// Canonical serialization: keys in sorted order, every number printed with
// "%.17g".  Input to the content digest.
std::string canonical_model_json(const TvarModel& model);

// FNV-1a 64-bit digest, 16 lowercase hex chars.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::string model_hash(const TvarModel& model);

}  // namespace tvarrd
