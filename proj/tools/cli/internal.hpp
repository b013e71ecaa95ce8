#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "cumulant/dists.hpp"

namespace cumulant::cli {

struct MethodColumn {
  Method method;
  std::vector<std::optional<double>> values;  // values[n - 1] is kappa_n
};

struct Deviation {
  std::string first;
  std::string second;
  double max_abs = 0.0;
  double max_rel = 0.0;
  int worst_order = 0;
  bool pass = true;
};

struct CumulantReport {
  std::string command;
  RunConfig config;
  std::vector<MethodColumn> columns;
  std::optional<std::vector<double>> reference;
  std::vector<Deviation> deviations;
  bool pass = true;
};

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

struct VerifyReport {
  std::string suite;
  RunConfig config;
  std::vector<Check> checks;
  bool pass = true;
};

DistributionModel load_distribution(const std::string& spec);

/// Validates order caps and resolves an empty method list.
void resolve_methods(RunConfig& config, const DistributionModel& d);

CumulantReport compute_cumulants(const RunConfig& config);
void add_deviations(CumulantReport& report);

VerifyReport run_verify(const std::string& suite, const RunConfig& config);

void write_json(std::ostream& out, const CumulantReport& report);
void write_csv(std::ostream& out, const CumulantReport& report);
void write_json(std::ostream& out, const VerifyReport& report);
void write_csv(std::ostream& out, const VerifyReport& report);

}  // namespace cumulant::cli
