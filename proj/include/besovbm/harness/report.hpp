#pragma once

// Experiment results and their CSV / JSON-text / SVG renderings.
//
// Every row carries the band [lower, upper] its verdict was taken against:
// verdict == (lower <= estimate <= upper). Informational rows use an infinite
// band.

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "besovbm/error.hpp"

namespace besovbm::harness {

inline constexpr std::size_t kParamColumns = 3;

struct Param {
  std::string name;
  double value = 0.0;
};

struct ResultRow {
  std::string experiment;
  std::vector<Param> params;
  double estimate = 0.0;
  double ci = 0.0;
  double reference = std::numeric_limits<double>::quiet_NaN();
  double ratio = std::numeric_limits<double>::quiet_NaN();
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool verdict = true;
};

inline double safe_ratio(double estimate, double reference) {
  if (reference != 0.0) return estimate / reference;
  return estimate == 0.0 ? 1.0 : std::numeric_limits<double>::quiet_NaN();
}

inline bool band_verdict(double estimate, double lower, double upper) {
  return lower <= estimate && estimate <= upper;
}

struct ExperimentResult {
  std::string id;
  std::vector<ResultRow> rows;

  /// Appends a row; ratio and verdict are derived from the numbers.
  ResultRow& add(std::string experiment, std::vector<Param> params, double estimate, double ci, double reference,
                 double lower = -std::numeric_limits<double>::infinity(),
                 double upper = std::numeric_limits<double>::infinity()) {
    require(params.size() <= kParamColumns, "ExperimentResult::add: too many parameters");
    ResultRow r;
    r.experiment = std::move(experiment);
    r.params = std::move(params);
    r.estimate = estimate;
    r.ci = ci;
    r.reference = reference;
    r.ratio = safe_ratio(estimate, reference);
    r.lower = lower;
    r.upper = upper;
    r.verdict = band_verdict(estimate, lower, upper);
    rows.push_back(std::move(r));
    return rows.back();
  }

  [[nodiscard]] bool passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const ResultRow& r) { return r.verdict; });
  }

  void append(const ExperimentResult& other) { rows.insert(rows.end(), other.rows.begin(), other.rows.end()); }
};

/// Shortest round-trip decimal ("inf", "-inf", "nan" for non-finite values).
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

inline std::string format_param(const Param& p) { return p.name + "=" + format_number(p.value); }

inline const char* kCsvHeader = "experiment,param_1,param_2,param_3,estimate,ci,reference,ratio,lower,upper,verdict";

inline std::string to_csv(const ExperimentResult& result) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : result.rows) {
    out += r.experiment;
    for (std::size_t i = 0; i < kParamColumns; ++i) {
      out += ',';
      if (i < r.params.size()) out += format_param(r.params[i]);
    }
    for (double x : {r.estimate, r.ci, r.reference, r.ratio, r.lower, r.upper}) {
      out += ',';
      out += format_number(x);
    }
    out += r.verdict ? ",pass\n" : ",fail\n";
  }
  return out;
}

inline nlohmann::ordered_json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

inline std::string to_json(const ExperimentResult& result) {
  nlohmann::ordered_json j;
  j["id"] = result.id;
  j["passed"] = result.passed();
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : result.rows) {
    nlohmann::ordered_json row;
    row["experiment"] = r.experiment;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& p : r.params) params[p.name] = json_number(p.value);
    row["params"] = params;
    row["estimate"] = json_number(r.estimate);
    row["ci"] = json_number(r.ci);
    row["reference"] = json_number(r.reference);
    row["ratio"] = json_number(r.ratio);
    row["lower"] = json_number(r.lower);
    row["upper"] = json_number(r.upper);
    row["verdict"] = r.verdict ? "pass" : "fail";
    j["rows"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

namespace detail {

inline std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

} // namespace detail

/// Scatter/line plot of estimate (blue, with CI whiskers) and reference
/// (orange, dashed) against row index. Rows are grouped by experiment name.
inline std::string to_svg(const ExperimentResult& result) {
  using detail::fixed;
  constexpr double kW = 720, kH = 420, kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& r : result.rows) {
    for (double y : {r.estimate - r.ci, r.estimate + r.ci, r.reference}) {
      if (std::isfinite(y)) {
        lo = std::min(lo, y);
        hi = std::max(hi, y);
      }
    }
  }
  if (!std::isfinite(lo)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  const std::size_t n = result.rows.size();
  auto px = [&](std::size_t i) {
    return kLeft + (n <= 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(n - 1)) * (kW - kLeft - kRight);
  };
  auto py = [&](double y) { return kTop + (hi - y) / (hi - lo) * (kH - kTop - kBottom); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 "
     << kW << ' ' << kH << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kLeft << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">"
     << detail::xml_escape(result.id) << "</text>\n";
  os << "<line x1=\"" << kLeft << "\" y1=\"" << fixed(kH - kBottom) << "\" x2=\"" << fixed(kW - kRight) << "\" y2=\""
     << fixed(kH - kBottom) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << fixed(kH - kBottom)
     << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double y = lo + (hi - lo) * t / 4.0;
    os << "<text x=\"" << fixed(kLeft - 6) << "\" y=\"" << fixed(py(y) + 4)
       << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << format_number(std::round(y * 1e4) / 1e4)
       << "</text>\n";
  }

  auto polyline = [&](auto value, const char* colour, const char* dash) {
    std::string pts;
    for (std::size_t i = 0; i < n; ++i) {
      const double y = value(result.rows[i]);
      if (!std::isfinite(y)) continue;
      if (i > 0 && result.rows[i].experiment != result.rows[i - 1].experiment && !pts.empty()) {
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\"" << dash << " points=\"" << pts << "\"/>\n";
        pts.clear();
      }
      pts += fixed(px(i)) + "," + fixed(py(y)) + " ";
    }
    if (!pts.empty()) os << "<polyline fill=\"none\" stroke=\"" << colour << "\"" << dash << " points=\"" << pts << "\"/>\n";
  };
  polyline([](const ResultRow& r) { return r.reference; }, "#e6862a", " stroke-dasharray=\"4 3\"");
  polyline([](const ResultRow& r) { return r.estimate; }, "#2a6fe6", "");

  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = result.rows[i];
    if (!std::isfinite(r.estimate)) continue;
    if (r.ci > 0.0 && std::isfinite(r.ci)) {
      os << "<line x1=\"" << fixed(px(i)) << "\" y1=\"" << fixed(py(r.estimate - r.ci)) << "\" x2=\"" << fixed(px(i))
         << "\" y2=\"" << fixed(py(r.estimate + r.ci)) << "\" stroke=\"#2a6fe6\"/>\n";
    }
    os << "<circle cx=\"" << fixed(px(i)) << "\" cy=\"" << fixed(py(r.estimate)) << "\" r=\"3\" fill=\""
       << (r.verdict ? "#2a6fe6" : "#d62728") << "\"/>\n";
  }
  os << "<text x=\"" << fixed(kW / 2) << "\" y=\"" << fixed(kH - 20)
     << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">row (estimate: blue, reference: "
        "orange dashed, failed rows red)</text>\n";
  os << "</svg>\n";
  return os.str();
}

enum class ReportFormat { Csv, Json, Svg };

inline ReportFormat parse_format(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json" || s == "json-text") return ReportFormat::Json;
  if (s == "svg") return ReportFormat::Svg;
  throw std::invalid_argument("unknown report format '" + s + "' (expected csv, json or svg)");
}

inline const char* format_extension(ReportFormat f) {
  switch (f) {
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Json: return "json";
    case ReportFormat::Svg: return "svg";
  }
  return "";
}

inline std::string render(const ExperimentResult& result, ReportFormat f) {
  switch (f) {
    case ReportFormat::Csv: return to_csv(result);
    case ReportFormat::Json: return to_json(result);
    case ReportFormat::Svg: return to_svg(result);
  }
  return {};
}

/// Writes the rendering to `path`; I/O failures name the path.
inline void emit_report(const ExperimentResult& result, ReportFormat f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing: " + std::strerror(errno));
  const std::string text = render(result, f);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw std::runtime_error("failed writing report to '" + path + "'");
}

} // namespace besovbm::harness
