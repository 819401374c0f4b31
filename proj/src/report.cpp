#include "neocalc/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <string_view>

#include "neocalc/errors.hpp"

namespace neocalc::report {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::string strip_bom(std::string line) {
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  return line;
}

ApproachMode mode_from(const Json& j) {
  const auto m = parse_mode(j.get<std::string>());
  if (!m) throw std::invalid_argument("unknown approach mode in JSON");
  return *m;
}

}  // namespace

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double number_from(const Json& j) { return j.is_null() ? kInf : j.get<double>(); }

Json to_json(const Interval& v) {
  if (v.is_empty()) return nullptr;
  return Json::array({number(v.lo()), number(v.hi())});
}

Interval interval_from_json(const Json& j) {
  if (j.is_null()) return Interval::empty();
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("interval JSON must be null or [lo, hi]");
  const double lo = j[0].is_null() ? -kInf : j[0].get<double>();
  const double hi = j[1].is_null() ? kInf : j[1].get<double>();
  return Interval(lo, hi);
}

Json to_json(const std::vector<Interval>& v) {
  Json out = Json::array();
  for (const auto& iv : v) out.push_back(to_json(iv));
  return out;
}

Json to_json(const TailBounds& v) {
  return {{"sup_estimate", number(v.sup_estimate)},
          {"inf_estimate", number(v.inf_estimate)},
          {"raw_sup", number(v.raw_sup)},
          {"raw_inf", number(v.raw_inf)},
          {"window_size", v.window_size},
          {"source_length", v.source_length},
          {"tail_fraction", number(v.tail_fraction)},
          {"stable", v.stable},
          {"bounded", v.bounded},
          {"extrapolated", v.extrapolated}};
}

TailBounds tail_bounds_from_json(const Json& j) {
  TailBounds v;
  v.sup_estimate = number_from(j.at("sup_estimate"));
  v.inf_estimate = number_from(j.at("inf_estimate"));
  v.raw_sup = number_from(j.at("raw_sup"));
  v.raw_inf = number_from(j.at("raw_inf"));
  v.window_size = j.at("window_size").get<std::size_t>();
  v.source_length = j.at("source_length").get<std::size_t>();
  v.tail_fraction = number_from(j.at("tail_fraction"));
  v.stable = j.at("stable").get<bool>();
  v.bounded = j.at("bounded").get<bool>();
  v.extrapolated = j.at("extrapolated").get<bool>();
  return v;
}

Json to_json(const LimitReport& v) {
  Json sets = Json::array();
  for (const auto& [r, iv] : v.requested_sets) sets.push_back({{"r", number(r)}, {"set", to_json(iv)}});
  return {{"bounds", to_json(v.bounds)},
          {"measure_of_convergence", number(v.measure_of_convergence)},
          {"best_point", v.best_point ? number(*v.best_point) : Json(nullptr)},
          {"requested_sets", sets}};
}

LimitReport limit_report_from_json(const Json& j) {
  LimitReport v;
  v.bounds = tail_bounds_from_json(j.at("bounds"));
  v.measure_of_convergence = number_from(j.at("measure_of_convergence"));
  if (!j.at("best_point").is_null()) v.best_point = j.at("best_point").get<double>();
  for (const auto& e : j.at("requested_sets")) {
    v.requested_sets.emplace_back(number_from(e.at("r")), interval_from_json(e.at("set")));
  }
  return v;
}

Json to_json(const QuotientBounds& v) {
  Json bands = Json::array();
  for (const auto& b : v.scale_diagnostics) {
    bands.push_back({{"scale", number(b.scale)}, {"band_min", number(b.band_min)}, {"band_max", number(b.band_max)}});
  }
  return {{"mode", std::string(to_string(v.mode))},
          {"x", number(v.x)},
          {"d_lower", number(v.d_lower)},
          {"d_upper", number(v.d_upper)},
          {"raw_lower", number(v.raw_lower)},
          {"raw_upper", number(v.raw_upper)},
          {"left_cluster", to_json(v.left_cluster)},
          {"right_cluster", to_json(v.right_cluster)},
          {"bounded", v.bounded},
          {"available", v.available},
          {"stable", v.stable},
          {"collapsed", v.collapsed},
          {"cluster_is_hull", v.cluster_is_hull},
          {"degraded_to", v.degraded_to ? Json(std::string(to_string(*v.degraded_to))) : Json(nullptr)},
          {"budget_exhausted", v.budget_exhausted},
          {"domain_clipped", v.domain_clipped},
          {"mesh_limited", v.mesh_limited},
          {"smallest_scale", number(v.smallest_scale)},
          {"scale_diagnostics", bands}};
}

QuotientBounds quotient_bounds_from_json(const Json& j) {
  QuotientBounds v;
  v.mode = mode_from(j.at("mode"));
  v.x = number_from(j.at("x"));
  v.d_lower = number_from(j.at("d_lower"));
  v.d_upper = number_from(j.at("d_upper"));
  v.raw_lower = number_from(j.at("raw_lower"));
  v.raw_upper = number_from(j.at("raw_upper"));
  v.left_cluster = interval_from_json(j.at("left_cluster"));
  v.right_cluster = interval_from_json(j.at("right_cluster"));
  v.bounded = j.at("bounded").get<bool>();
  v.available = j.at("available").get<bool>();
  v.stable = j.at("stable").get<bool>();
  v.collapsed = j.at("collapsed").get<bool>();
  v.cluster_is_hull = j.at("cluster_is_hull").get<bool>();
  if (!j.at("degraded_to").is_null()) v.degraded_to = mode_from(j.at("degraded_to"));
  v.budget_exhausted = j.at("budget_exhausted").get<bool>();
  v.domain_clipped = j.at("domain_clipped").get<bool>();
  v.mesh_limited = j.at("mesh_limited").get<bool>();
  v.smallest_scale = number_from(j.at("smallest_scale"));
  for (const auto& b : j.at("scale_diagnostics")) {
    v.scale_diagnostics.push_back(
        {number_from(b.at("scale")), number_from(b.at("band_min")), number_from(b.at("band_max"))});
  }
  return v;
}

Json to_json(const DerivativeReport& v) {
  Json modes = Json::object();
  for (const auto& [mode, qb] : v.per_mode) modes[std::string(to_string(mode))] = to_json(qb);
  Json strong = Json::array();
  for (const auto& [key, iv] : v.strong_sets) {
    strong.push_back({{"mode", std::string(to_string(key.first))}, {"r", number(key.second)}, {"set", to_json(iv)}});
  }
  Json weak = Json::array();
  for (const auto& [key, parts] : v.weak_sets) {
    weak.push_back({{"mode", std::string(to_string(key.first))}, {"r", number(key.second)}, {"sets", to_json(parts)}});
  }
  return {{"x", number(v.x)},
          {"classification", std::string(to_string(v.classification))},
          {"defect", number(v.defect)},
          {"continuity_defect", number(v.continuity_defect)},
          {"evaluations", v.evaluations},
          {"per_mode", modes},
          {"strong_sets", strong},
          {"weak_sets", weak}};
}

Json to_json(const ProfilePoint& v) {
  return {{"x", number(v.x)},
          {"set", to_json(v.strong_set)},
          {"defect", number(v.defect)},
          {"mu_half_band", to_json(v.mu_half_band)},
          {"error", v.error.empty() ? Json(nullptr) : Json(v.error)}};
}

Json to_json(const oracle::OracleVerdict& v) {
  Json grid = Json::array();
  for (double k : v.k_grid) grid.push_back(number(k));
  return {{"holds", v.holds},
          {"witness_index", v.witness_index ? Json(*v.witness_index) : Json(nullptr)},
          {"k_grid", grid}};
}

Json to_json(const Warning& w) { return {{"code", w.code}, {"paper_note", w.paper_note}}; }

std::vector<double> read_sequence_csv(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) line = strip_bom(line);
    const std::string_view t = trim(line);
    if (t.empty()) continue;
    if (!seen_content && t == "value") {
      seen_content = true;
      continue;
    }
    seen_content = true;
    double v = 0.0;
    if (!parse_double(t, v)) {
      throw ParseError("line " + std::to_string(line_no) + ": expected one number, got '" + std::string(t) + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::pair<std::vector<double>, std::vector<double>> read_samples_csv(std::istream& in) {
  std::pair<std::vector<double>, std::vector<double>> out;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) line = strip_bom(line);
    const std::string_view t = trim(line);
    if (t.empty()) continue;
    const std::size_t comma = t.find(',');
    const std::string_view a = trim(t.substr(0, comma));
    const std::string_view b = comma == std::string_view::npos ? std::string_view{} : trim(t.substr(comma + 1));
    if (!seen_content && a == "x" && b == "y") {
      seen_content = true;
      continue;
    }
    seen_content = true;
    double x = 0.0;
    double y = 0.0;
    if (comma == std::string_view::npos || !parse_double(a, x) || !parse_double(b, y)) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'x,y', got '" + std::string(t) + "'");
    }
    out.first.push_back(x);
    out.second.push_back(y);
  }
  return out;
}

}  // namespace neocalc::report
