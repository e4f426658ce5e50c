#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "monoculus/world.hpp"

namespace monoculus {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& field, std::size_t line_no) {
  const std::string t = trim(field);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw InvalidConfig(fmt::format("line {}: bad number '{}'", line_no, t));
  }
  return value;
}

}  // namespace

Configuration read_configuration_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (line.rfind("dim=", 0) != 0) throw InvalidConfig("configuration CSV must start with dim=<d>");
    dim = static_cast<std::size_t>(parse_double(line.substr(4), line_no));
    break;
  }
  if (dim < 2 || dim > kMaxDim) throw InvalidConfig(fmt::format("unsupported dimension {}", dim));

  std::vector<Point> pts;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    Point p(dim);
    std::size_t k = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      if (k >= dim) throw InvalidConfig(fmt::format("line {}: too many columns", line_no));
      p[k++] = parse_double(line.substr(start, comma - start), line_no);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (k != dim) throw InvalidConfig(fmt::format("line {}: expected {} columns", line_no, dim));
    pts.push_back(p);
  }
  return Configuration(std::move(pts));
}

void write_configuration_csv(std::ostream& out, const Configuration& config) {
  out << "dim=" << config.dim() << '\n';
  for (const auto& p : config.positions()) {
    out << fmt::format("{}", fmt::join(p.coords(), ",")) << '\n';
  }
}

Configuration load_configuration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_configuration_csv(in);
}

void save_configuration(const std::string& path, const Configuration& config) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  write_configuration_csv(out, config);
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace monoculus
