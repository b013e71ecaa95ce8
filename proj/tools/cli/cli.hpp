#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cumulant::cli {

enum class Method { moments, truncated, theorem1, factorized, mrl };
enum class OutputFormat { json, csv };

struct RunConfig {
  std::string dist_spec = "uniform01";
  int max_order = 4;
  std::vector<Method> methods;  // empty selects every applicable method
  double eps_tail = 1e-10;
  std::size_t grid_points = 20001;
  OutputFormat output_format = OutputFormat::json;
  std::uint64_t seed = 20240601;
  double rel_tol = 1e-3;
  double abs_tol = 1e-5;
};

enum ExitCode : int { kSuccess = 0, kToleranceFailure = 1, kUsageError = 2, kNumericalError = 3 };

const char* method_name(Method m);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cumulant::cli
