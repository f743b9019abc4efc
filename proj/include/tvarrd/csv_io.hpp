#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tvarrd/model.hpp"
#include "tvarrd/rd_curve.hpp"

namespace tvarrd {

// Frozen curve header; downstream diffs rely on it.
inline constexpr const char* kCurveCsvHeader =
    "theta,distortion,rate_nats,rate_bits";

class CsvParseError : public std::runtime_error {
 public:
  explicit CsvParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// All numbers are written with "%.17g" so identical values give identical
// bytes.  rate_bits = rate_nats / ln 2.
void write_curve_csv(std::ostream& os, const RdCurve& curve);
RdCurve read_curve_csv(std::istream& is, const std::string& origin = "");

void write_paths_csv(std::ostream& os, const SamplePaths& paths);

// "r,omega,g" triples, row-major over the grid.
void write_spectrum_csv(std::ostream& os, const SpectrumGrid& grid);

// Writes content to path via a temp file and rename, so readers never see a
// partial file.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);  // throws std::runtime_error

}  // namespace tvarrd
