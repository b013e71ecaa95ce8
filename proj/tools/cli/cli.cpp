#include <CLI11.hpp>
#include <fmt/format.h>
#include <ostream>
#include <sstream>

#include "cli/internal.hpp"
#include "cumulant/error.hpp"

namespace cumulant::cli {

namespace {

std::vector<Method> parse_methods(const std::string& text) {
  std::vector<Method> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "all") return {};
    if (item == "moments") out.push_back(Method::moments);
    else if (item == "truncated") out.push_back(Method::truncated);
    else if (item == "theorem1") out.push_back(Method::theorem1);
    else if (item == "factorized") out.push_back(Method::factorized);
    else if (item == "mrl") out.push_back(Method::mrl);
    else throw ParseError("unknown method '" + item + "'");
  }
  if (out.empty()) throw ParseError("--methods is empty");
  return out;
}

struct Options {
  RunConfig config;
  std::string methods = "all";
  std::string format = "json";
  std::string suite;
};

void add_common(CLI::App* app, Options& o, bool with_dist) {
  if (with_dist) {
    app->add_option("--dist", o.config.dist_spec,
                    "uniform01 | exponential1 | stdnormal | twopoint(p,x0,x1) | grid:<csv> | samples:<file>")
        ->capture_default_str();
    app->add_option("--max-order", o.config.max_order, "Highest cumulant order")->capture_default_str();
    app->add_option("--methods", o.methods,
                    "Comma list of moments,truncated,theorem1,factorized,mrl or all")
        ->capture_default_str();
    app->add_option("--rel-tol", o.config.rel_tol, "Relative agreement tolerance")->capture_default_str();
    app->add_option("--abs-tol", o.config.abs_tol, "Absolute agreement tolerance")->capture_default_str();
  }
  app->add_option("--eps-tail", o.config.eps_tail, "Tail mass cut from each side of the support")
      ->capture_default_str();
  app->add_option("--grid-points", o.config.grid_points, "Odd number of grid nodes, at least 1001")
      ->capture_default_str();
  app->add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app->add_option("--seed", o.config.seed, "Seed for randomized checks")->capture_default_str();
}

template <class Report>
void emit(std::ostream& out, const Report& report, OutputFormat format) {
  if (format == OutputFormat::json) {
    write_json(out, report);
  } else {
    write_csv(out, report);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cumulants of univariate and small multivariate distributions by several routes",
               "cumulant-kit"};
  app.require_subcommand(1);
  Options o;
  auto* cumulants = app.add_subcommand("cumulants", "Cumulants per order and method");
  add_common(cumulants, o, true);
  auto* compare = app.add_subcommand("compare", "Pairwise agreement of the selected methods");
  add_common(compare, o, true);
  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("suite", o.suite, "combinatorics | shuffle | hoeffding | mrl")
      ->required()
      ->check(CLI::IsMember({"combinatorics", "shuffle", "hoeffding", "mrl"}));
  add_common(verify, o, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    o.config.output_format = o.format == "csv" ? OutputFormat::csv : OutputFormat::json;
    if (verify->parsed()) {
      const auto report = run_verify(o.suite, o.config);
      emit(out, report, o.config.output_format);
      return report.pass ? kSuccess : kToleranceFailure;
    }
    o.config.methods = parse_methods(o.methods);
    auto report = compute_cumulants(o.config);
    report.command = compare->parsed() ? "compare" : "cumulants";
    if (compare->parsed()) {
      if (report.columns.size() < 2) throw ModelError("compare needs at least two methods");
      add_deviations(report);
    }
    emit(out, report, o.config.output_format);
    return report.pass ? kSuccess : kToleranceFailure;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalError;
  }
}

}  // namespace cumulant::cli
