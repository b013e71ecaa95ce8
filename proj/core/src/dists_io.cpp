#include <charconv>
#include <cmath>
#include <fstream>

#include "cumulant/dists.hpp"

namespace cumulant {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view token, const std::filesystem::path& path, std::size_t line) {
  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size() || !std::isfinite(value)) {
    throw ParseError(path.string() + ":" + std::to_string(line) + ": not a finite number: '" +
                     std::string(token) + "'");
  }
  return value;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

}  // namespace

std::vector<double> read_samples_file(const std::filesystem::path& path) {
  auto in = open(path);
  std::vector<double> xs;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    const auto token = trim(line);
    if (token.empty()) continue;
    xs.push_back(parse_number(token, path, no));
  }
  if (xs.empty()) throw ParseError(path.string() + ": no samples");
  return xs;
}

DistributionModel read_grid_cdf_file(const std::filesystem::path& path) {
  auto in = open(path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "t,F") {
    throw ParseError(path.string() + ": expected header 't,F'");
  }
  std::vector<double> t, F;
  for (std::size_t no = 2; std::getline(in, line); ++no) {
    const auto row = trim(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError(path.string() + ":" + std::to_string(no) + ": expected two columns");
    }
    t.push_back(parse_number(trim(row.substr(0, comma)), path, no));
    F.push_back(parse_number(trim(row.substr(comma + 1)), path, no));
  }
  try {
    return DistributionModel::from_grid(std::move(t), std::move(F));
  } catch (const ModelError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace cumulant
