#pragma once

// JSON and CSV serialization of configurations and reports.
//
//   Config            {"points": [[x, y, z], ...]}
//   SymplecticConfig  {"sym_points": [[x, y, z], ...]}
//   DetReport         {"abs", "log_abs", "phase": [re, im], "cond_hint"}
//   FoldReport        {"m", "set_equal", "long_mult", "short_mult", "a_size", "c_size"}
//   ProbeReport CSV   kind,size,seed,method,iterations,abs_value,log_abs,coords...
//
// Doubles are written in shortest round-trip form.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <numeric>
#include <ostream>
#include <string>
#include <system_error>
#include <variant>
#include <vector>

#include "asdet/determinant.hpp"
#include "asdet/errors.hpp"
#include "asdet/probe.hpp"
#include "asdet/rootsys.hpp"
#include "asdet/spinorgeom.hpp"
#include "json.hpp"

namespace asdet {

using Json = nlohmann::json;

inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Configurations

namespace detail {

inline Json points_json(std::span<const Point> pts) {
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back({p.x1, p.x2, p.x3});
  return arr;
}

inline double coord_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    double x = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec == std::errc{} && res.ptr == s.data() + s.size()) return x;
  }
  throw InvalidInput("coordinate is not a number: " + j.dump());
}

inline std::vector<Point> points_from_json(const Json& arr) {
  if (!arr.is_array()) throw InvalidInput("point list must be a JSON array");
  std::vector<Point> out;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 3) throw InvalidInput("each point must be [x, y, z]");
    out.push_back({coord_from_json(p[0]), coord_from_json(p[1]), coord_from_json(p[2])});
  }
  return out;
}

}  // namespace detail

inline Json to_json(const Config& c) { return Json{{"points", detail::points_json(c.points())}}; }
inline Json to_json(const SymplecticConfig& sc) { return Json{{"sym_points", detail::points_json(sc.points())}}; }

using AnyConfig = std::variant<Config, SymplecticConfig>;

/// Dispatches on the top-level key: "points" or "sym_points".
inline AnyConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("configuration must be a JSON object");
  const bool plain = j.contains("points");
  const bool symp = j.contains("sym_points");
  if (plain == symp) throw InvalidInput("configuration needs exactly one of \"points\" or \"sym_points\"");
  if (plain) return Config(detail::points_from_json(j.at("points")));
  return SymplecticConfig(detail::points_from_json(j.at("sym_points")));
}

inline AnyConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
  return config_from_json(j);
}

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const DetReport& r) {
  return Json{{"abs", r.abs},
              {"log_abs", r.log_abs()},
              {"phase", {r.value.phase().real(), r.value.phase().imag()}},
              {"cond_hint", r.cond_hint}};
}

inline Json to_json(const FoldReport& r) {
  return Json{{"m", r.m},           {"set_equal", r.set_equal}, {"long_mult", r.long_mult},
              {"short_mult", r.short_mult}, {"a_size", r.a_size}, {"c_size", r.c_size}};
}

inline Json to_json(const ProbeRecord& r) {
  return Json{{"kind", to_string(r.kind)}, {"size", r.size},         {"seed", r.seed},
              {"method", r.method},        {"iterations", r.iterations}, {"abs_value", r.abs_value},
              {"log_abs", r.log_abs},      {"coords", r.coords}};
}

inline Json to_json(const ProbeReport& r) {
  Json records = Json::array();
  for (const auto& rec : r.records) records.push_back(to_json(rec));
  return Json{{"kind", to_string(r.kind)},
              {"size", r.size},
              {"samples", r.samples()},
              {"violations", r.violations},
              {"tol_violation", r.tol_violation},
              {"min_record", r.records.empty() ? Json() : to_json(r.min_record())},
              {"records", std::move(records)}};
}

inline Json to_json(const ReductionReport& r) {
  return Json{{"m", r.m},     {"samples", r.samples}, {"max_rel_discrepancy", r.max_rel_discrepancy},
              {"tol", r.tol}, {"pass", r.pass()},     {"worst_seed", r.worst_seed}};
}

inline void write_csv(std::ostream& out, const ProbeReport& r) {
  std::size_t width = 0;
  for (const auto& rec : r.records) width = std::max(width, rec.coords.size());
  out << "kind,size,seed,method,iterations,abs_value,log_abs";
  static constexpr const char* kAxes[] = {"x", "y", "z"};
  for (std::size_t k = 0; k < width; ++k) out << ',' << kAxes[k % 3] << (k / 3 + 1);
  out << '\n';
  for (const auto& rec : r.records) {
    out << to_string(rec.kind) << ',' << rec.size << ',' << rec.seed << ',' << rec.method << ',' << rec.iterations
        << ',' << format_double(rec.abs_value) << ',' << format_double(rec.log_abs);
    for (double c : rec.coords) out << ',' << format_double(c);
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Plot data

struct HistogramBin {
  double lower = 0.0;  // |D| - 1 range; the first bin may be the degenerate [0, 0]
  double upper = 0.0;
  std::size_t count = 0;
};

struct PlotData {
  std::vector<std::pair<std::size_t, double>> sorted;  // (sample index, abs_value), nondecreasing
  std::vector<HistogramBin> histogram;
};

/// Values of |D| - 1 at or below this go to the bin at 0.
inline constexpr double kHistogramFloor = 1e-12;
inline constexpr int kHistogramBins = 20;

/// Rows sorted by |D| (ties by index), plus a histogram of |D| - 1: one bin
/// at 0 for values <= kHistogramFloor, then 20 log-spaced bins up to the max.
inline PlotData emit_plot_data(const ProbeReport& r) {
  if (r.records.empty()) throw InvalidInput("plot data needs a nonempty report");
  PlotData out;
  out.sorted.reserve(r.records.size());
  for (std::size_t i = 0; i < r.records.size(); ++i) out.sorted.emplace_back(i, r.records[i].abs_value);
  std::stable_sort(out.sorted.begin(), out.sorted.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });

  std::size_t at_zero = 0;
  std::vector<double> excess;
  for (const auto& rec : r.records) {
    const double e = rec.abs_value - 1.0;
    if (e <= kHistogramFloor) ++at_zero;
    else excess.push_back(e);
  }
  if (at_zero > 0) out.histogram.push_back({0.0, 0.0, at_zero});
  if (excess.empty()) return out;

  const double lo = std::log10(*std::min_element(excess.begin(), excess.end()));
  const double hi = std::log10(*std::max_element(excess.begin(), excess.end()));
  const double width = std::max(hi - lo, 1e-12) / kHistogramBins;
  std::vector<std::size_t> counts(kHistogramBins, 0);
  for (double e : excess) {
    const int b = std::clamp(static_cast<int>((std::log10(e) - lo) / width), 0, kHistogramBins - 1);
    ++counts[b];
  }
  for (int b = 0; b < kHistogramBins; ++b) {
    out.histogram.push_back({std::pow(10.0, lo + b * width), std::pow(10.0, lo + (b + 1) * width), counts[b]});
  }
  return out;
}

inline void write_plot_data(std::ostream& out, const PlotData& p) {
  out << "# rank,sample_index,abs_value\n";
  for (std::size_t i = 0; i < p.sorted.size(); ++i)
    out << i << ',' << p.sorted[i].first << ',' << format_double(p.sorted[i].second) << '\n';
  out << "\n# histogram of abs_value - 1: lower,upper,count\n";
  for (const auto& b : p.histogram) out << format_double(b.lower) << ',' << format_double(b.upper) << ',' << b.count << '\n';
}

}  // namespace asdet
