#include "neocalc/sequence_limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "neocalc/kernels.hpp"

namespace neocalc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_radius(double r, const char* what) {
  if (!(r >= 0.0) || std::isinf(r)) {
    throw std::invalid_argument(std::string(what) + ": radius must be finite and >= 0");
  }
}

std::size_t window_length(double fraction, std::size_t n) {
  // The 1e-12 shave keeps exact products such as 0.1 * 10000 from rounding up.
  const double w = std::ceil(fraction * static_cast<double>(n) * (1.0 - 1e-12));
  return std::min(n, static_cast<std::size_t>(std::max(0.0, w)));
}

kernels::MinMax trailing_envelope(std::span<const double> prefix, double fraction) {
  const std::size_t w = window_length(fraction, prefix.size());
  return kernels::minmax(prefix.last(w));
}

// Aitken step on three envelope values from doubling prefixes. Returns t2 when
// the drift is not a geometric contraction.
double accelerate(double t0, double t1, double t2) {
  const double d1 = t1 - t0;
  const double d2 = t2 - t1;
  if (d1 == 0.0 || d2 == 0.0 || (d1 > 0.0) != (d2 > 0.0)) return t2;
  const double ratio = d2 / d1;
  if (ratio > 0.75) return t2;
  return t2 + d2 * ratio / (1.0 - ratio);
}

bool growth_detected(std::span<const double> v, double growth_tolerance) {
  const std::size_t n = v.size();
  if (n < 8) return false;
  const double m0 = kernels::abs_max(v.first(n / 8));
  const double m1 = kernels::abs_max(v.first(n / 4));
  const double m2 = kernels::abs_max(v.first(n / 2));
  const double m3 = kernels::abs_max(v);
  const double g1 = m1 - m0;
  const double g2 = m2 - m1;
  const double g3 = m3 - m2;
  if (!(g1 > 0.0)) return false;
  if (g2 < 0.75 * g1 || g3 < 0.75 * g2) return false;
  return g3 > growth_tolerance * (1.0 + m2);
}

}  // namespace

SequenceWindow::SequenceWindow(std::vector<double> values, std::size_t start_index)
    : values_(std::move(values)), start_index_(start_index) {
  if (values_.empty()) throw std::invalid_argument("SequenceWindow: empty sequence");
  if (start_index_ == 0) throw std::invalid_argument("SequenceWindow: start_index must be >= 1");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("SequenceWindow: non-finite value at index " +
                                  std::to_string(index_at(i)));
    }
  }
}

TailBounds tail_bounds(const SequenceWindow& seq, double tail_fraction, double tolerance) {
  TailOptions options;
  options.tail_fraction = tail_fraction;
  options.tolerance = tolerance;
  return tail_bounds(seq, options);
}

TailBounds tail_bounds(const SequenceWindow& seq, const TailOptions& options) {
  if (!(options.tail_fraction > 0.0 && options.tail_fraction <= 1.0)) {
    throw std::invalid_argument("tail_bounds: tail_fraction must lie in (0, 1]");
  }
  if (!(options.tolerance >= 0.0) || !(options.growth_tolerance >= 0.0)) {
    throw std::invalid_argument("tail_bounds: tolerances must be >= 0");
  }
  const auto v = seq.values();
  const std::size_t n = v.size();
  const std::size_t w = window_length(options.tail_fraction, n);
  if (w < 2) {
    throw std::invalid_argument("tail_bounds: tail window has fewer than 2 elements");
  }

  TailBounds out;
  out.window_size = w;
  out.source_length = n;
  out.tail_fraction = options.tail_fraction;

  const auto window = kernels::minmax(v.last(w));
  const auto half = kernels::minmax(v.last((w + 1) / 2));
  out.raw_sup = window.max;
  out.raw_inf = window.min;

  double sup = window.max;
  double inf = window.min;
  if (options.extrapolate && window_length(options.tail_fraction, n / 4) >= 2) {
    const auto e0 = trailing_envelope(v.first(n / 4), options.tail_fraction);
    const auto e1 = trailing_envelope(v.first(n / 2), options.tail_fraction);
    sup = accelerate(e0.max, e1.max, window.max);
    inf = accelerate(e0.min, e1.min, window.min);
    if (sup < inf) {
      const double pick =
          std::fabs(sup - window.max) <= std::fabs(inf - window.min) ? sup : inf;
      sup = inf = pick;
    }
    out.extrapolated = sup != window.max || inf != window.min;
  }
  out.sup_estimate = sup;
  out.inf_estimate = inf;

  const double scale =
      std::max({1.0, std::fabs(window.max), std::fabs(window.min)});
  const double tol = options.tolerance * scale;
  out.stable = std::fabs(window.max - half.max) <= tol &&
               std::fabs(window.min - half.min) <= tol &&
               std::fabs(sup - window.max) <= tol && std::fabs(inf - window.min) <= tol;
  out.bounded = !growth_detected(v, options.growth_tolerance);
  return out;
}

Interval r_limit_set(const TailBounds& bounds, double r) {
  require_radius(r, "r_limit_set");
  if (!bounds.bounded) return Interval::empty();
  const double S = bounds.sup_estimate;
  const double s = bounds.inf_estimate;
  // Same predicate as is_r_fundamental, so the two can never disagree.
  if (S - s > 2.0 * r) return Interval::empty();
  double lo = S - r;
  double hi = s + r;
  if (lo > hi) lo = hi = lo + (hi - lo) / 2;
  return Interval(lo, hi);
}

bool is_r_limit(const TailBounds& bounds, double a, double r) {
  if (!std::isfinite(a)) throw std::invalid_argument("is_r_limit: non-finite point");
  return r_limit_set(bounds, r).contains(a);
}

double limit_defect(const TailBounds& bounds, double a) {
  if (!std::isfinite(a)) throw std::invalid_argument("limit_defect: non-finite point");
  if (!bounds.bounded) return kInf;
  return std::max({bounds.sup_estimate - a, a - bounds.inf_estimate, 0.0});
}

ConvergenceMeasure measure_of_convergence(const TailBounds& bounds) {
  if (!bounds.bounded) return {kInf, std::nullopt};
  const double S = bounds.sup_estimate;
  const double s = bounds.inf_estimate;
  return {(S - s) / 2, s + (S - s) / 2};
}

bool is_r_fundamental(const TailBounds& bounds, double r) {
  require_radius(r, "is_r_fundamental");
  return bounds.bounded && !(bounds.sup_estimate - bounds.inf_estimate > 2.0 * r);
}

bool fuzzy_converges(const TailBounds& bounds) { return bounds.bounded; }

double membership_lim(const TailBounds& bounds, double a) {
  const double m = limit_defect(bounds, a);
  return std::isinf(m) ? 0.0 : 1.0 / (1.0 + m);
}

CombineResult combine(const SequenceWindow& l, const SequenceWindow& h, CombineOp op,
                      double r, double q, const TailOptions& options) {
  require_radius(r, "combine");
  require_radius(q, "combine");
  const auto lv = l.values();
  std::vector<double> values(lv.begin(), lv.end());

  if (op.kind == CombineOp::Kind::Scale) {
    if (!std::isfinite(op.factor)) throw std::invalid_argument("combine: non-finite factor");
    for (double& x : values) x *= op.factor;
    const auto lb = tail_bounds(l, options);
    const double radius = std::fabs(op.factor) * r;
    return {SequenceWindow(std::move(values), l.start_index()), radius,
            r_limit_set(lb, r).scaled(op.factor)};
  }

  if (l.size() != h.size() || l.start_index() != h.start_index()) {
    throw std::invalid_argument("combine: operands must share length and start index");
  }
  const auto hv = h.values();
  const bool add = op.kind == CombineOp::Kind::Add;
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += add ? hv[i] : -hv[i];

  const Interval ls = r_limit_set(tail_bounds(l, options), r);
  const Interval hs = r_limit_set(tail_bounds(h, options), q);
  return {SequenceWindow(std::move(values), l.start_index()), r + q,
          add ? ls + hs : ls - hs};
}

LimitReport analyze_sequence(const SequenceWindow& seq, std::span<const double> r_values,
                             const TailOptions& options) {
  LimitReport report;
  report.bounds = tail_bounds(seq, options);
  const auto m = measure_of_convergence(report.bounds);
  report.measure_of_convergence = m.measure;
  report.best_point = m.best_point;
  for (double r : r_values) {
    report.requested_sets.emplace_back(r, r_limit_set(report.bounds, r));
  }
  return report;
}

}  // namespace neocalc
