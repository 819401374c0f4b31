#include "neocalc/gallery.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "neocalc/errors.hpp"

namespace neocalc::gallery {
namespace {

double distance_to_integer(double y) { return std::fabs(y - std::nearbyint(y)); }

double parse_number(std::string_view text, std::string_view spec) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw ParseError("gallery spec '" + std::string(spec) + "': bad number '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> parse_params(std::string_view params, std::size_t expected, std::string_view spec) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = params.find(',', start);
    out.push_back(parse_number(params.substr(start, comma - start), spec));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.size() != expected) {
    throw ParseError("gallery spec '" + std::string(spec) + "': expected " + std::to_string(expected) +
                     " parameter(s)");
  }
  return out;
}

}  // namespace

FunctionOracle abs() {
  FunctionOracle f;
  f.eval = [](double x) { return std::fabs(x); };
  f.name = "abs";
  return f;
}

FunctionOracle square() {
  FunctionOracle f;
  f.eval = [](double x) { return x * x; };
  f.name = "square";
  return f;
}

FunctionOracle linear(double m, double c) {
  if (!std::isfinite(m) || !std::isfinite(c)) throw std::invalid_argument("linear: parameters must be finite");
  FunctionOracle f;
  f.eval = [m, c](double x) { return m * x + c; };
  f.name = "linear";
  return f;
}

FunctionOracle skew_tent(double a, double b) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("skew_tent: requires 0 < a < 1");
  if (!std::isfinite(b)) throw std::invalid_argument("skew_tent: b must be finite");
  FunctionOracle f;
  const double rise = (1.0 - b) / a;
  const double fall = 1.0 / (1.0 - a);
  f.eval = [a, b, rise, fall](double x) { return x <= a ? b + rise * x : (1.0 - x) * fall; };
  f.domain = Interval(0.0, 1.0);
  f.name = "skew_tent";
  return f;
}

FunctionOracle van_der_waerden(int depth) {
  if (depth < 1) throw std::invalid_argument("van_der_waerden: depth must be >= 1");
  if (depth > 26) throw std::invalid_argument("van_der_waerden: depth above 26 is below double resolution");
  FunctionOracle f;
  f.eval = [depth](double x) {
    double sum = 0.0;
    double scale = 1.0;
    for (int n = 0; n < depth; ++n, scale *= 4.0) sum += distance_to_integer(scale * x) / scale;
    return sum;
  };
  f.name = "vdw";
  return f;
}

FunctionOracle spike_remark33() {
  FunctionOracle f;
  f.eval = [](double x) { return x == 0.0 ? 1.0 : std::fabs(x); };
  f.name = "spike33";
  return f;
}

FunctionOracle from_spec(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const bool has_params = colon != std::string_view::npos;
  const std::string_view params = has_params ? spec.substr(colon + 1) : std::string_view{};

  auto no_params = [&](FunctionOracle f) {
    if (has_params) throw ParseError("gallery function '" + std::string(name) + "' takes no parameters");
    return f;
  };
  auto need_params = [&]() {
    if (!has_params) throw ParseError("gallery function '" + std::string(name) + "' needs parameters");
  };

  if (name == "abs") return no_params(abs());
  if (name == "square") return no_params(square());
  if (name == "spike33") return no_params(spike_remark33());
  if (name == "linear") {
    need_params();
    const auto p = parse_params(params, 2, spec);
    return linear(p[0], p[1]);
  }
  if (name == "skew_tent") {
    need_params();
    const auto p = parse_params(params, 2, spec);
    return skew_tent(p[0], p[1]);
  }
  if (name == "vdw") {
    need_params();
    const auto p = parse_params(params, 1, spec);
    if (p[0] != std::floor(p[0]) || std::fabs(p[0]) > 1e6) {
      throw ParseError("gallery spec '" + std::string(spec) + "': depth must be an integer");
    }
    return van_der_waerden(static_cast<int>(p[0]));
  }
  throw ParseError("unknown gallery function '" + std::string(name) + "'");
}

std::vector<std::string> names() {
  return {"abs", "square", "linear:m,c", "skew_tent:a,b", "vdw:depth", "spike33"};
}

FunctionOracle sampled(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("sampled: x and y columns differ in length");
  if (xs.size() < 2) throw std::invalid_argument("sampled: need at least 2 samples");
  double mesh = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
      throw std::invalid_argument("sampled: non-finite sample at row " + std::to_string(i + 1));
    }
    if (i > 0) {
      if (!(xs[i] > xs[i - 1])) throw std::invalid_argument("sampled: x must be strictly increasing");
      mesh = std::max(mesh, xs[i] - xs[i - 1]);
    }
  }
  FunctionOracle f;
  f.domain = Interval(xs.front(), xs.back());
  f.mesh_spacing = mesh;
  f.name = "samples";
  auto data = std::make_shared<const std::pair<std::vector<double>, std::vector<double>>>(std::move(xs),
                                                                                            std::move(ys));
  f.eval = [data](double x) {
    const auto& [px, py] = *data;
    const auto it = std::upper_bound(px.begin(), px.end(), x);
    if (it == px.begin()) return py.front();
    if (it == px.end()) return py.back();
    const std::size_t i = static_cast<std::size_t>(it - px.begin());
    const double t = (x - px[i - 1]) / (px[i] - px[i - 1]);
    return py[i - 1] + t * (py[i] - py[i - 1]);
  };
  return f;
}

ScaleLadder vdw_ladder(int depth) {
  if (depth < 1) throw std::invalid_argument("vdw_ladder: depth must be >= 1");
  ScaleLadder ladder;
  // Half the period of the finest term: every scale still spans one of its kinks.
  ladder.floor_fraction = 0.5 * std::pow(4.0, -(depth - 1));
  const int needed = ladder.band_size * ladder.bands_used;
  ladder.base_fraction = std::max(ladder.base_fraction, ladder.floor_fraction / std::pow(ladder.ratio, needed - 1));
  return ladder;
}

}  // namespace neocalc::gallery
