#include <algorithm>
#include <cmath>

#include "cli/internal.hpp"
#include "cumulant/error.hpp"
#include "cumulant/volterra.hpp"

namespace cumulant::cli {

const char* method_name(Method m) {
  switch (m) {
    case Method::moments: return "moments";
    case Method::truncated: return "truncated";
    case Method::theorem1: return "theorem1";
    case Method::factorized: return "factorized";
    case Method::mrl: return "mrl";
  }
  return "?";
}

DistributionModel load_distribution(const std::string& spec) {
  constexpr std::string_view grid_prefix = "grid:";
  constexpr std::string_view samples_prefix = "samples:";
  if (spec.starts_with(grid_prefix)) return read_grid_cdf_file(spec.substr(grid_prefix.size()));
  if (spec.starts_with(samples_prefix)) {
    return DistributionModel::empirical_from_samples(read_samples_file(spec.substr(samples_prefix.size())));
  }
  return builtin(spec);
}

namespace {

bool has_moments(const DistributionModel& d) { return d.kind() != DistributionKind::grid; }

int method_cap(Method m) {
  switch (m) {
    case Method::theorem1:
    case Method::factorized: return kMaxSimplexRouteOrder;
    case Method::mrl: return 4;
    default: return kMaxIteratedOrder;
  }
}

std::vector<double> reference_cumulants(const DistributionModel& d, int order) {
  std::vector<double> out;
  if (auto m = d.reference_moments(order)) {
    const auto k = moments_to_cumulants(*m);
    for (const auto& v : k.values()) out.push_back(to_double(v));
  } else if (auto em = d.empirical_moments(order)) {
    const auto k = moments_to_cumulants(*em);
    out.assign(k.values().begin(), k.values().end());
  }
  return out;
}

}  // namespace

void resolve_methods(RunConfig& config, const DistributionModel& d) {
  if (config.max_order < 1) throw ModelError("--max-order must be at least 1");
  if (config.max_order > kMaxIteratedOrder) {
    throw SizeLimitError("--max-order is capped at " + std::to_string(kMaxIteratedOrder));
  }
  if (config.grid_points < 1001 || config.grid_points % 2 == 0) {
    throw ModelError("--grid-points must be odd and at least 1001");
  }
  if (!(config.eps_tail > 0.0 && config.eps_tail < 0.5)) {
    throw ModelError("--eps-tail must lie in (0, 0.5)");
  }

  if (config.methods.empty()) {
    if (has_moments(d)) config.methods.push_back(Method::moments);
    config.methods.push_back(Method::truncated);
    if (config.max_order <= kMaxSimplexRouteOrder) {
      config.methods.push_back(Method::theorem1);
      config.methods.push_back(Method::factorized);
    }
    if (config.max_order >= 3) config.methods.push_back(Method::mrl);
    return;
  }

  std::vector<Method> unique;
  for (Method m : config.methods) {
    if (std::find(unique.begin(), unique.end(), m) == unique.end()) unique.push_back(m);
  }
  std::sort(unique.begin(), unique.end());
  config.methods = unique;
  for (Method m : config.methods) {
    if (m == Method::moments && !has_moments(d)) {
      throw ModelError("--methods moments needs a builtin or sample distribution");
    }
    if (m == Method::mrl && config.max_order < 3) {
      throw SizeLimitError("--methods mrl needs --max-order 3 or 4");
    }
    if (m != Method::mrl && config.max_order > method_cap(m)) {
      throw SizeLimitError(std::string(method_name(m)) + " is capped at order " +
                           std::to_string(method_cap(m)));
    }
    if (m == Method::mrl && config.max_order > 4) {
      throw SizeLimitError("mrl is capped at order 4");
    }
  }
}

CumulantReport compute_cumulants(const RunConfig& input) {
  RunConfig config = input;
  const DistributionModel d = load_distribution(config.dist_spec);
  resolve_methods(config, d);

  CumulantReport report;
  report.config = config;
  const int N = config.max_order;
  const bool needs_grid = std::any_of(config.methods.begin(), config.methods.end(),
                                      [](Method m) { return m != Method::moments; });
  std::optional<SampledCdf> grid;
  if (needs_grid) grid = SampledCdf::build(d, GridOptions{config.eps_tail, config.grid_points});

  for (Method m : config.methods) {
    MethodColumn col{m, std::vector<std::optional<double>>(static_cast<std::size_t>(N))};
    auto fill = [&](const RealCumulantSequence& k) {
      for (int n = 1; n <= N; ++n) col.values[n - 1] = k[n];
    };
    switch (m) {
      case Method::moments: {
        const auto k = reference_cumulants(d, N);
        for (int n = 1; n <= N; ++n) col.values[n - 1] = k[n - 1];
        break;
      }
      case Method::truncated: fill(cumulants_via_truncated(*grid, N)); break;
      case Method::theorem1: fill(cumulants_via_theorem1(*grid, N)); break;
      case Method::factorized: fill(cumulants_via_factorized(*grid, N)); break;
      case Method::mrl:
        for (int n = 3; n <= std::min(N, 4); ++n) col.values[n - 1] = cumulants_via_mrl(*grid, n);
        break;
    }
    report.columns.push_back(std::move(col));
  }
  if (d.reference_moments(N)) report.reference = reference_cumulants(d, N);
  return report;
}

void add_deviations(CumulantReport& report) {
  const auto& cfg = report.config;
  report.pass = true;
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    for (std::size_t j = i + 1; j < report.columns.size(); ++j) {
      const auto& a = report.columns[i];
      const auto& b = report.columns[j];
      Deviation dev{method_name(a.method), method_name(b.method)};
      double worst_excess = -INFINITY;
      for (std::size_t n = 0; n < a.values.size(); ++n) {
        if (!a.values[n] || !b.values[n]) continue;
        const double x = *a.values[n];
        const double y = *b.values[n];
        const double diff = std::abs(x - y);
        const double scale = std::max(std::abs(x), std::abs(y));
        const double rel = scale > 0.0 ? diff / scale : 0.0;
        dev.max_abs = std::max(dev.max_abs, diff);
        dev.max_rel = std::max(dev.max_rel, rel);
        const bool ok = diff <= cfg.abs_tol || rel <= cfg.rel_tol;
        dev.pass = dev.pass && ok;
        const double excess = std::min(diff / cfg.abs_tol, rel / cfg.rel_tol);
        if (excess > worst_excess) {
          worst_excess = excess;
          dev.worst_order = static_cast<int>(n) + 1;
        }
      }
      report.pass = report.pass && dev.pass;
      report.deviations.push_back(std::move(dev));
    }
  }
}

}  // namespace cumulant::cli
