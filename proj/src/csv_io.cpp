#include "tvarrd/csv_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace tvarrd {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

void append_g17(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

std::vector<double> split_doubles(const std::string& line,
                                  const std::string& origin, int lineno) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t comma = line.find(',', pos);
    const std::string cell =
        line.substr(pos, comma == std::string::npos ? comma : comma - pos);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0' || errno == ERANGE)
      throw CsvParseError(origin + ": line " + std::to_string(lineno) +
                          ": bad number '" + cell + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

void write_curve_csv(std::ostream& os, const RdCurve& curve) {
  std::string text(kCurveCsvHeader);
  text += '\n';
  for (const RdPoint& p : curve.points) {
    append_g17(text, p.theta);
    text += ',';
    append_g17(text, p.distortion);
    text += ',';
    append_g17(text, p.rate);
    text += ',';
    append_g17(text, p.rate / kLn2);
    text += '\n';
  }
  os << text;
}

RdCurve read_curve_csv(std::istream& is, const std::string& origin) {
  std::string line;
  if (!std::getline(is, line))
    throw CsvParseError(origin + ": empty curve file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCurveCsvHeader)
    throw CsvParseError(origin + ": expected header '" +
                        std::string(kCurveCsvHeader) + "', got '" + line + "'");
  RdCurve curve;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<double> cells = split_doubles(line, origin, lineno);
    if (cells.size() != 4)
      throw CsvParseError(origin + ": line " + std::to_string(lineno) +
                          ": expected 4 columns, got " +
                          std::to_string(cells.size()));
    RdPoint p;
    p.theta = cells[0];
    p.distortion = cells[1];
    p.rate = cells[2];
    curve.points.push_back(p);
  }
  if (curve.points.empty())
    throw CsvParseError(origin + ": curve has no points");
  curve.d_max = curve.points.back().distortion;
  for (const RdPoint& p : curve.points)
    if (p.rate <= 0.0) {
      curve.d_max = p.distortion;
      break;
    }
  return curve;
}

void write_paths_csv(std::ostream& os, const SamplePaths& paths) {
  std::string line;
  for (int p = 0; p < paths.num_paths; ++p) {
    line.clear();
    for (int t = 0; t < paths.n; ++t) {
      if (t) line += ',';
      append_g17(line, paths.at(p, t));
    }
    line += '\n';
    os << line;
  }
}

void write_spectrum_csv(std::ostream& os, const SpectrumGrid& grid) {
  std::string text("r,omega,g\n");
  for (std::size_t i = 0; i < grid.r_nodes.size(); ++i)
    for (std::size_t j = 0; j < grid.omega_nodes.size(); ++j) {
      append_g17(text, grid.r_nodes[i]);
      text += ',';
      append_g17(text, grid.omega_nodes[j]);
      text += ',';
      append_g17(text, grid.at(i, j));
      text += '\n';
    }
  os << text;
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tvarrd
