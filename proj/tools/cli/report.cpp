#include <fmt/format.h>
#include <ostream>

#include "cli/internal.hpp"

namespace cumulant::cli {

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          out += fmt::format("\\u{:04x}", static_cast<int>(c));
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string number(double x) {
  if (!std::isfinite(x)) return "null";
  return fmt::format("{:.17g}", x);
}

std::string number(const std::optional<double>& x) { return x ? number(*x) : "null"; }

std::string csv_number(const std::optional<double>& x) {
  return x && std::isfinite(*x) ? fmt::format("{:.12g}", *x) : "";
}

std::string csv_text(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

void write_config(std::ostream& out, const RunConfig& c) {
  out << "  \"config\": {\n";
  out << "    \"dist\": " << quote(c.dist_spec) << ",\n";
  out << "    \"max_order\": " << c.max_order << ",\n";
  out << "    \"methods\": [";
  for (std::size_t i = 0; i < c.methods.size(); ++i) {
    out << (i ? ", " : "") << quote(method_name(c.methods[i]));
  }
  out << "],\n";
  out << "    \"eps_tail\": " << number(c.eps_tail) << ",\n";
  out << "    \"grid_points\": " << c.grid_points << ",\n";
  out << "    \"format\": " << quote(c.output_format == OutputFormat::json ? "json" : "csv") << ",\n";
  out << "    \"seed\": " << c.seed << ",\n";
  out << "    \"rel_tol\": " << number(c.rel_tol) << ",\n";
  out << "    \"abs_tol\": " << number(c.abs_tol) << "\n";
  out << "  },\n";
}

template <class Range, class F>
void json_array(std::ostream& out, const Range& range, F&& item) {
  out << "[";
  bool first = true;
  for (const auto& x : range) {
    out << (first ? "" : ", ") << item(x);
    first = false;
  }
  out << "]";
}

}  // namespace

void write_json(std::ostream& out, const CumulantReport& r) {
  out << "{\n  \"command\": " << quote(r.command) << ",\n";
  write_config(out, r.config);
  out << "  \"orders\": [";
  for (int n = 1; n <= r.config.max_order; ++n) out << (n > 1 ? ", " : "") << n;
  out << "],\n  \"methods\": [";
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    out << (i ? "," : "") << "\n    {\"name\": " << quote(method_name(r.columns[i].method))
        << ", \"values\": ";
    json_array(out, r.columns[i].values, [](const auto& v) { return number(v); });
    out << "}";
  }
  out << (r.columns.empty() ? "" : "\n  ") << "],\n  \"reference\": ";
  if (r.reference) {
    json_array(out, *r.reference, [](double v) { return number(v); });
  } else {
    out << "null";
  }
  out << ",\n  \"deviations\": [";
  for (std::size_t i = 0; i < r.deviations.size(); ++i) {
    const auto& d = r.deviations[i];
    out << (i ? "," : "") << "\n    {\"first\": " << quote(d.first) << ", \"second\": " << quote(d.second)
        << ", \"max_abs\": " << number(d.max_abs) << ", \"max_rel\": " << number(d.max_rel)
        << ", \"worst_order\": " << d.worst_order << ", \"pass\": " << bool_text(d.pass) << "}";
  }
  out << (r.deviations.empty() ? "" : "\n  ") << "],\n";
  out << "  \"pass\": " << bool_text(r.pass) << "\n}\n";
}

void write_csv(std::ostream& out, const CumulantReport& r) {
  out << "n";
  for (const auto& c : r.columns) out << "," << method_name(c.method);
  if (r.reference) out << ",reference";
  out << "\n";
  for (int n = 1; n <= r.config.max_order; ++n) {
    out << n;
    for (const auto& c : r.columns) out << "," << csv_number(c.values[n - 1]);
    if (r.reference) out << "," << csv_number((*r.reference)[n - 1]);
    out << "\n";
  }
  if (r.command == "compare") {
    out << "\nfirst,second,max_abs,max_rel,worst_order,pass\n";
    for (const auto& d : r.deviations) {
      out << d.first << "," << d.second << "," << csv_number(d.max_abs) << "," << csv_number(d.max_rel)
          << "," << d.worst_order << "," << bool_text(d.pass) << "\n";
    }
  }
}

void write_json(std::ostream& out, const VerifyReport& r) {
  out << "{\n  \"command\": \"verify\",\n  \"suite\": " << quote(r.suite) << ",\n";
  write_config(out, r.config);
  out << "  \"checks\": [";
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const auto& c = r.checks[i];
    out << (i ? "," : "") << "\n    {\"name\": " << quote(c.name) << ", \"residual\": " << number(c.residual)
        << ", \"tolerance\": " << number(c.tolerance) << ", \"pass\": " << bool_text(c.pass) << "}";
  }
  out << (r.checks.empty() ? "" : "\n  ") << "],\n";
  out << "  \"pass\": " << bool_text(r.pass) << "\n}\n";
}

void write_csv(std::ostream& out, const VerifyReport& r) {
  out << "check,residual,tolerance,pass\n";
  for (const auto& c : r.checks) {
    out << csv_text(c.name) << "," << csv_number(c.residual) << "," << csv_number(c.tolerance) << ","
        << bool_text(c.pass) << "\n";
  }
}

}  // namespace cumulant::cli
