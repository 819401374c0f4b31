#include "neocalc/fuzzy_derivatives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "neocalc/kernels.hpp"

namespace neocalc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::array<double, 7> kMixingRatios = {1e-7, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0 - 1e-7};
// Envelope agreement between the two finest bands.
constexpr double kStabilityTolerance = 1e-6;
// A band narrower than this fraction of (1 + |centre|) may still be shrinking.
constexpr double kCollapseCeiling = 1e-3;

class Evaluator {
 public:
  explicit Evaluator(const FunctionOracle& f) : f_(f) {}

  std::optional<double> operator()(double y) {
    if (used_ >= f_.eval_budget) {
      exhausted_ = true;
      return std::nullopt;
    }
    ++used_;
    const double v = f_.eval(y);
    if (!std::isfinite(v)) {
      throw std::domain_error("function oracle returned a non-finite value");
    }
    return v;
  }

  std::size_t used() const { return used_; }
  bool exhausted() const { return exhausted_; }

 private:
  const FunctionOracle& f_;
  std::size_t used_ = 0;
  bool exhausted_ = false;
};

struct LadderPlan {
  std::vector<double> scales;
  bool mesh_limited = false;
};

LadderPlan plan_ladder(const ScaleLadder& ladder, double x, double mesh) {
  ladder.validate();
  const double sx = std::max(1.0, std::fabs(x));
  double base = ladder.base_fraction * sx;
  double floor = ladder.floor_fraction * sx;
  LadderPlan plan;
  if (mesh > 0.0 && floor < mesh) {
    floor = mesh;
    plan.mesh_limited = true;
    const int needed = ladder.band_size * std::max(2, ladder.bands_used);
    const double finest = base * std::pow(ladder.ratio, needed - 1);
    if (finest < floor) base = floor / std::pow(ladder.ratio, needed - 1);
  }
  double h = base;
  for (int j = 0; j < ladder.count; ++j, h *= ladder.ratio) {
    if (h < floor * (1.0 - 1e-12)) break;
    plan.scales.push_back(h);
  }
  return plan;
}

// Quotients tagged with the ladder index of their scale.
struct Cloud {
  std::vector<int> index;
  std::vector<double> scale;
  std::vector<double> quotient;
  std::vector<double> value_change;
  bool clipped = false;

  void append(const Cloud& other) {
    index.insert(index.end(), other.index.begin(), other.index.end());
    scale.insert(scale.end(), other.scale.begin(), other.scale.end());
    quotient.insert(quotient.end(), other.quotient.begin(), other.quotient.end());
    value_change.insert(value_change.end(), other.value_change.begin(), other.value_change.end());
    clipped = clipped || other.clipped;
  }
};

Cloud sample_side(Evaluator& eval, const FunctionOracle& f, double x, double f0, int sign,
                  const std::vector<double>& scales) {
  Cloud cloud;
  std::vector<double> fy;
  std::vector<double> dx;
  for (std::size_t j = 0; j < scales.size(); ++j) {
    const double y = x + sign * scales[j];
    if (!f.domain.contains(y) || y == x) {
      cloud.clipped = true;
      continue;
    }
    const auto v = eval(y);
    if (!v) break;
    cloud.index.push_back(static_cast<int>(j));
    cloud.scale.push_back(scales[j]);
    fy.push_back(*v);
    dx.push_back(y - x);
  }
  cloud.quotient.resize(fy.size());
  kernels::quotients(f0, fy, dx, cloud.quotient);
  cloud.value_change.resize(fy.size());
  for (std::size_t i = 0; i < fy.size(); ++i) cloud.value_change[i] = fy[i] - f0;
  return cloud;
}

Cloud sample_straddle(Evaluator& eval, const FunctionOracle& f, double x,
                      const std::vector<double>& scales) {
  Cloud cloud;
  std::vector<double> f_hi;
  std::vector<double> f_lo;
  std::vector<double> width;
  bool stop = false;
  for (std::size_t j = 0; j < scales.size() && !stop; ++j) {
    for (double lambda : kMixingRatios) {
      const double s = scales[j];
      const double z = x - lambda * s;
      const double zp = x + (1.0 - lambda) * s;
      if (!f.domain.contains(z) || !f.domain.contains(zp) || !(z < x) || !(x < zp)) {
        cloud.clipped = true;
        continue;
      }
      const auto lo = eval(z);
      const auto hi = lo ? eval(zp) : std::nullopt;
      if (!lo || !hi) {
        stop = true;
        break;
      }
      cloud.index.push_back(static_cast<int>(j));
      cloud.scale.push_back(s);
      f_lo.push_back(*lo);
      f_hi.push_back(*hi);
      width.push_back(zp - z);
    }
  }
  cloud.quotient.resize(f_hi.size());
  kernels::secants(f_hi, f_lo, width, cloud.quotient);
  cloud.value_change.assign(f_hi.size(), 0.0);
  return cloud;
}

struct Envelope {
  bool available = false;
  bool bounded = false;
  bool collapsed = false;
  bool stable = false;
  double lower = 0.0;
  double upper = 0.0;
  double raw_lower = 0.0;
  double raw_upper = 0.0;
  std::vector<BandDiagnostic> bands;
};

// Bands are groups of band_size consecutive ladder indices aligned at the
// finest scale; only complete bands contiguous from the finest end count.
Envelope analyze_cloud(const Cloud& cloud, const ScaleLadder& ladder, int ladder_size) {
  Envelope env;
  const int bs = ladder.band_size;
  std::vector<BandDiagnostic> fine_to_coarse;
  std::vector<double> gathered;
  for (int hi_idx = ladder_size; hi_idx - bs >= 0; hi_idx -= bs) {
    const int lo_idx = hi_idx - bs;
    std::vector<bool> seen(static_cast<std::size_t>(bs), false);
    gathered.clear();
    for (std::size_t i = 0; i < cloud.index.size(); ++i) {
      const int j = cloud.index[i];
      if (j >= lo_idx && j < hi_idx) {
        seen[static_cast<std::size_t>(j - lo_idx)] = true;
        gathered.push_back(cloud.quotient[i]);
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) break;
    const auto mm = kernels::minmax(gathered);
    double coarsest = 0.0;
    for (std::size_t i = 0; i < cloud.index.size(); ++i) {
      if (cloud.index[i] == lo_idx) coarsest = cloud.scale[i];
    }
    fine_to_coarse.push_back({coarsest, mm.min, mm.max});
  }
  const int needed = std::max(2, ladder.bands_used);
  if (static_cast<int>(fine_to_coarse.size()) < needed) return env;
  env.available = true;
  env.bands.assign(fine_to_coarse.rbegin(), fine_to_coarse.rend());
  const auto& bands = env.bands;
  const std::size_t nb = bands.size();

  bool finite = true;
  for (const auto& b : bands) finite = finite && std::isfinite(b.band_min) && std::isfinite(b.band_max);
  bool growing = false;
  if (nb >= 4) {
    growing = true;
    for (std::size_t b = nb - 4; b + 1 < nb; ++b) {
      const double m0 = std::max(std::fabs(bands[b].band_min), std::fabs(bands[b].band_max));
      const double m1 = std::max(std::fabs(bands[b + 1].band_min), std::fabs(bands[b + 1].band_max));
      growing = growing && m0 > 0.0 && m1 >= 2.0 * m0;
    }
  }
  env.bounded = finite && !growing;

  env.raw_lower = kInf;
  env.raw_upper = -kInf;
  for (std::size_t b = nb - static_cast<std::size_t>(ladder.bands_used); b < nb; ++b) {
    env.raw_lower = std::min(env.raw_lower, bands[b].band_min);
    env.raw_upper = std::max(env.raw_upper, bands[b].band_max);
  }
  env.lower = env.raw_lower;
  env.upper = env.raw_upper;
  if (!env.bounded) return env;

  const auto& a = bands[nb - 2];
  const auto& b = bands[nb - 1];
  const double width_a = a.band_max - a.band_min;
  const double width_b = b.band_max - b.band_min;
  const double centre_a = a.band_min + width_a / 2;
  const double centre_b = b.band_min + width_b / 2;
  const double tol = kStabilityTolerance * (1.0 + std::fabs(centre_b));
  env.collapsed = width_b <= tol ||
                  (width_b <= width_a / 8 && width_b <= kCollapseCeiling * (1.0 + std::fabs(centre_b)));
  if (env.collapsed) {
    // Richardson step: band centres drift linearly in the scale, which shrinks
    // by rho = ratio^band_size from one band to the next.
    const double rho = std::pow(ladder.ratio, ladder.band_size);
    const double limit = centre_b + (centre_b - centre_a) * rho / (1.0 - rho);
    env.lower = env.upper = limit;
  }
  env.stable = env.collapsed || (std::fabs(a.band_min - b.band_min) <= tol &&
                                 std::fabs(a.band_max - b.band_max) <= tol);
  return env;
}

Interval cluster_of(const Envelope& env) {
  if (!env.available || !env.bounded) return Interval::empty();
  return Interval(env.lower, env.upper);
}

QuotientBounds bounds_from(ApproachMode mode, double x, const Envelope& env) {
  QuotientBounds qb;
  qb.mode = mode;
  qb.x = x;
  qb.available = env.available;
  qb.bounded = env.available && env.bounded;
  qb.collapsed = env.collapsed;
  qb.stable = env.stable;
  qb.d_lower = env.lower;
  qb.d_upper = env.upper;
  qb.raw_lower = env.raw_lower;
  qb.raw_upper = env.raw_upper;
  qb.scale_diagnostics = env.bands;
  return qb;
}

void apply_flags(QuotientBounds& qb, const Cloud& cloud, const Evaluator& eval, bool mesh_limited) {
  qb.budget_exhausted = eval.exhausted();
  qb.domain_clipped = cloud.clipped;
  qb.mesh_limited = mesh_limited;
  qb.smallest_scale = cloud.scale.empty() ? 0.0 : *std::min_element(cloud.scale.begin(), cloud.scale.end());
}

// Everything classify needs, sampled once.
struct ModeSet {
  std::map<ApproachMode, QuotientBounds> modes;
  double continuity_defect = 0.0;
  std::size_t evaluations = 0;
};

QuotientBounds one_sided(ApproachMode mode, double x, const Envelope& env) {
  QuotientBounds qb = bounds_from(mode, x, env);
  (mode == ApproachMode::Left ? qb.left_cluster : qb.right_cluster) = cluster_of(env);
  return qb;
}

QuotientBounds degrade(const QuotientBounds& side, ApproachMode mode) {
  QuotientBounds qb = side;
  qb.mode = mode;
  qb.degraded_to = side.mode;
  return qb;
}

ModeSet analyze_point(const FunctionOracle& f, double x, const ScaleLadder& ladder,
                      std::span<const ApproachMode> wanted) {
  if (!f.eval) throw std::invalid_argument("function oracle has no evaluator");
  if (!std::isfinite(x) || !f.domain.contains(x)) {
    throw std::invalid_argument("point " + std::to_string(x) + " is outside the oracle domain");
  }
  const LadderPlan plan = plan_ladder(ladder, x, f.mesh_spacing);
  const int m = static_cast<int>(plan.scales.size());
  Evaluator eval(f);
  const auto f0 = eval(x);
  if (!f0) throw std::invalid_argument("evaluation budget is zero");

  auto wants = [&](ApproachMode mode) {
    return std::find(wanted.begin(), wanted.end(), mode) != wanted.end();
  };
  const bool need_sides = wants(ApproachMode::Left) || wants(ApproachMode::Right) ||
                          wants(ApproachMode::Centered) || wants(ApproachMode::TwoSided);

  ModeSet out;
  Cloud left;
  Cloud right;
  if (need_sides) {
    left = sample_side(eval, f, x, *f0, -1, plan.scales);
    right = sample_side(eval, f, x, *f0, +1, plan.scales);
  }
  const Envelope env_left = analyze_cloud(left, ladder, m);
  const Envelope env_right = analyze_cloud(right, ladder, m);
  QuotientBounds qb_left = one_sided(ApproachMode::Left, x, env_left);
  QuotientBounds qb_right = one_sided(ApproachMode::Right, x, env_right);
  apply_flags(qb_left, left, eval, plan.mesh_limited);
  apply_flags(qb_right, right, eval, plan.mesh_limited);

  if (wants(ApproachMode::Left)) out.modes[ApproachMode::Left] = qb_left;
  if (wants(ApproachMode::Right)) out.modes[ApproachMode::Right] = qb_right;

  if (wants(ApproachMode::Centered)) {
    QuotientBounds qb;
    if (env_left.available && env_right.available) {
      Cloud pooled = left;
      pooled.append(right);
      const Envelope env_pooled = analyze_cloud(pooled, ladder, m);
      qb = bounds_from(ApproachMode::Centered, x, env_pooled);
      qb.bounded = env_left.bounded && env_right.bounded;
      qb.left_cluster = qb_left.left_cluster;
      qb.right_cluster = qb_right.right_cluster;
      if (qb.bounded && env_pooled.collapsed) {
        qb.d_lower = qb.d_upper = env_pooled.lower;
        qb.left_cluster = qb.right_cluster = Interval::point(env_pooled.lower);
        qb.stable = true;
      } else {
        qb.collapsed = false;
        qb.d_lower = std::min(env_left.lower, env_right.lower);
        qb.d_upper = std::max(env_left.upper, env_right.upper);
        qb.stable = env_left.stable && env_right.stable;
      }
      apply_flags(qb, pooled, eval, plan.mesh_limited);
    } else if (env_right.available) {
      qb = degrade(qb_right, ApproachMode::Centered);
    } else if (env_left.available) {
      qb = degrade(qb_left, ApproachMode::Centered);
    } else {
      Cloud pooled = left;
      pooled.append(right);
      qb = bounds_from(ApproachMode::Centered, x, Envelope{});
      apply_flags(qb, pooled, eval, plan.mesh_limited);
    }
    out.modes[ApproachMode::Centered] = qb;
  }

  if (wants(ApproachMode::TwoSided)) {
    const Cloud straddle = sample_straddle(eval, f, x, plan.scales);
    const Envelope env = analyze_cloud(straddle, ladder, m);
    QuotientBounds qb;
    if (env.available) {
      qb = bounds_from(ApproachMode::TwoSided, x, env);
      qb.left_cluster = qb.right_cluster = cluster_of(env);
      apply_flags(qb, straddle, eval, plan.mesh_limited);
    } else if (env_right.available && !env_left.available) {
      qb = degrade(qb_right, ApproachMode::TwoSided);
    } else if (env_left.available && !env_right.available) {
      qb = degrade(qb_left, ApproachMode::TwoSided);
    } else {
      qb = bounds_from(ApproachMode::TwoSided, x, env);
      apply_flags(qb, straddle, eval, plan.mesh_limited);
    }
    qb.budget_exhausted = eval.exhausted();
    out.modes[ApproachMode::TwoSided] = qb;
  }

  // Oscillation of f over the finest band of one-sided samples.
  const int finest_lo = m - ladder.band_size;
  double osc = 0.0;
  for (const Cloud* c : {&left, &right}) {
    for (std::size_t i = 0; i < c->index.size(); ++i) {
      if (c->index[i] >= finest_lo) osc = std::max(osc, std::fabs(c->value_change[i]));
    }
  }
  out.continuity_defect = osc;
  out.evaluations = eval.used();
  return out;
}

}  // namespace

std::string_view to_string(ApproachMode mode) {
  switch (mode) {
    case ApproachMode::Centered: return "centered";
    case ApproachMode::Left: return "left";
    case ApproachMode::Right: return "right";
    case ApproachMode::TwoSided: return "two-sided";
  }
  return "unknown";
}

std::optional<ApproachMode> parse_mode(std::string_view text) {
  if (text == "centered") return ApproachMode::Centered;
  if (text == "left") return ApproachMode::Left;
  if (text == "right") return ApproachMode::Right;
  if (text == "two-sided" || text == "twosided" || text == "two_sided") return ApproachMode::TwoSided;
  return std::nullopt;
}

std::string_view to_string(Differentiability d) {
  switch (d) {
    case Differentiability::ClassicallyDifferentiable: return "ClassicallyDifferentiable";
    case Differentiability::FuzzyDifferentiable: return "FuzzyDifferentiable";
    case Differentiability::NotFuzzyDifferentiable: return "NotFuzzyDifferentiable";
  }
  return "unknown";
}

void ScaleLadder::validate() const {
  if (!(base_fraction > 0.0) || !(floor_fraction > 0.0) || !(floor_fraction < base_fraction)) {
    throw std::invalid_argument("ScaleLadder: need 0 < floor_fraction < base_fraction");
  }
  if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("ScaleLadder: ratio must lie in (0, 1)");
  if (band_size < 1 || bands_used < 1 || count < 1) {
    throw std::invalid_argument("ScaleLadder: count, band_size and bands_used must be positive");
  }
  int usable = 0;
  double h = base_fraction;
  for (int j = 0; j < count && h >= floor_fraction * (1.0 - 1e-12); ++j, h *= ratio) ++usable;
  if (usable / band_size < std::max(2, bands_used)) {
    throw std::invalid_argument("ScaleLadder: too few scales above the floor for the requested bands");
  }
}

std::vector<double> ScaleLadder::scales(double x) const {
  return plan_ladder(*this, x, 0.0).scales;
}

SampleSet quotient_samples(const FunctionOracle& f, double x, ApproachMode mode,
                           const ScaleLadder& ladder) {
  if (!f.eval) throw std::invalid_argument("function oracle has no evaluator");
  if (!std::isfinite(x) || !f.domain.contains(x)) {
    throw std::invalid_argument("point is outside the oracle domain");
  }
  const LadderPlan plan = plan_ladder(ladder, x, f.mesh_spacing);
  Evaluator eval(f);
  SampleSet out;
  out.mesh_limited = plan.mesh_limited;
  const auto f0 = eval(x);
  if (!f0) {
    out.budget_exhausted = true;
    return out;
  }
  Cloud cloud;
  switch (mode) {
    case ApproachMode::Left: cloud = sample_side(eval, f, x, *f0, -1, plan.scales); break;
    case ApproachMode::Right: cloud = sample_side(eval, f, x, *f0, +1, plan.scales); break;
    case ApproachMode::Centered:
      cloud = sample_side(eval, f, x, *f0, -1, plan.scales);
      cloud.append(sample_side(eval, f, x, *f0, +1, plan.scales));
      break;
    case ApproachMode::TwoSided: cloud = sample_straddle(eval, f, x, plan.scales); break;
  }
  for (std::size_t i = 0; i < cloud.quotient.size(); ++i) {
    out.samples.push_back({cloud.scale[i], cloud.quotient[i], cloud.value_change[i]});
  }
  out.budget_exhausted = eval.exhausted();
  out.domain_clipped = cloud.clipped;
  out.evaluations = eval.used();
  out.smallest_scale = cloud.scale.empty() ? 0.0 : *std::min_element(cloud.scale.begin(), cloud.scale.end());
  return out;
}

QuotientBounds dini_bounds(const FunctionOracle& f, double x, ApproachMode mode,
                           const ScaleLadder& ladder) {
  const std::array<ApproachMode, 1> wanted = {mode};
  return analyze_point(f, x, ladder, wanted).modes.at(mode);
}

Interval strong_set(const QuotientBounds& bounds, double r) {
  if (!(r >= 0.0) || std::isinf(r)) throw std::invalid_argument("strong_set: r must be finite and >= 0");
  if (!bounds.available || !bounds.bounded) return Interval::empty();
  if (bounds.d_upper - bounds.d_lower > 2.0 * r) return Interval::empty();
  double lo = bounds.d_upper - r;
  double hi = bounds.d_lower + r;
  if (lo > hi) lo = hi = lo + (hi - lo) / 2;
  return Interval(lo, hi);
}

std::vector<Interval> weak_set(const QuotientBounds& bounds, double r) {
  if (!(r >= 0.0) || std::isinf(r)) throw std::invalid_argument("weak_set: r must be finite and >= 0");
  if (!bounds.available) return {};
  switch (bounds.mode) {
    case ApproachMode::TwoSided: {
      if (!bounds.bounded) return {};
      const Interval h = bounds.left_cluster.hull(bounds.right_cluster);
      if (h.is_empty()) return {};
      return {h.inflated(r)};
    }
    default:
      return merge_intervals({bounds.left_cluster.inflated(r), bounds.right_cluster.inflated(r)});
  }
}

double derivative_defect(const QuotientBounds& bounds) {
  if (!bounds.available || !bounds.bounded) return kInf;
  return (bounds.d_upper - bounds.d_lower) / 2;
}

double membership_mu(const QuotientBounds& bounds, double z) {
  if (!bounds.available || !bounds.bounded) return 0.0;
  const double m = std::max({bounds.d_upper - z, z - bounds.d_lower, 0.0});
  return 1.0 / (1.0 + m);
}

double membership_mu(const DerivativeReport& report, ApproachMode mode, double z) {
  return membership_mu(report.bounds(mode), z);
}

DerivativeReport classify(const FunctionOracle& f, double x, const ScaleLadder& ladder,
                          std::span<const double> r_values) {
  const ModeSet set = analyze_point(f, x, ladder, kAllModes);
  DerivativeReport report;
  report.x = x;
  report.per_mode = set.modes;
  report.continuity_defect = set.continuity_defect;
  report.evaluations = set.evaluations;
  const QuotientBounds& centered = report.bounds(ApproachMode::Centered);
  report.defect = derivative_defect(centered);
  if (centered.available && centered.bounded) {
    report.classification = centered.collapsed ? Differentiability::ClassicallyDifferentiable
                                               : Differentiability::FuzzyDifferentiable;
  } else {
    report.classification = Differentiability::NotFuzzyDifferentiable;
  }
  for (ApproachMode mode : kAllModes) {
    for (double r : r_values) {
      report.strong_sets[{mode, r}] = strong_set(report.bounds(mode), r);
      report.weak_sets[{mode, r}] = weak_set(report.bounds(mode), r);
    }
  }
  return report;
}

PredictedBound combine_reports(const DerivativeReport& rf, const DerivativeReport& rg, CombineOp op,
                               ApproachMode mode) {
  if (rf.x != rg.x) throw std::invalid_argument("combine_reports: reports are at different points");
  const QuotientBounds& bf = rf.bounds(mode);
  if (op.kind == CombineOp::Kind::Scale) {
    if (!bf.available || !bf.bounded) return {mode, kInf, Interval::empty()};
    const double a = derivative_defect(bf);
    return {mode, std::fabs(op.factor) * a, strong_set(bf, a).scaled(op.factor)};
  }
  const QuotientBounds& bg = rg.bounds(mode);
  if (bf.available != bg.available || bf.degraded_to != bg.degraded_to) {
    throw std::invalid_argument("combine_reports: mode availability differs between operands");
  }
  if (!bf.bounded || !bg.bounded || !bf.available) return {mode, kInf, Interval::empty()};
  const double a = derivative_defect(bf);
  const double d = derivative_defect(bg);
  const Interval sf = strong_set(bf, a);
  const Interval sg = strong_set(bg, d);
  return {mode, a + d, op.kind == CombineOp::Kind::Add ? sf + sg : sf - sg};
}

bool prediction_holds(const PredictedBound& predicted, const DerivativeReport& direct, double slack) {
  if (std::isinf(predicted.radius) || predicted.set.is_empty()) return true;
  // Rounding in f itself can push the direct defect a few ulps past the bound.
  const double r = predicted.radius + slack * std::max(1.0, predicted.radius);
  const Interval actual = strong_set(direct.bounds(predicted.mode), r);
  if (actual.is_empty()) return false;
  return actual.inflated(slack).contains(predicted.set);
}

FunctionOracle combine_oracles(const FunctionOracle& f, const FunctionOracle& g, CombineOp op) {
  FunctionOracle out;
  const auto fe = f.eval;
  const auto ge = g.eval;
  switch (op.kind) {
    case CombineOp::Kind::Add:
      out.eval = [fe, ge](double x) { return fe(x) + ge(x); };
      out.domain = f.domain.intersect(g.domain);
      out.name = f.name + "+" + g.name;
      break;
    case CombineOp::Kind::Sub:
      out.eval = [fe, ge](double x) { return fe(x) - ge(x); };
      out.domain = f.domain.intersect(g.domain);
      out.name = f.name + "-" + g.name;
      break;
    case CombineOp::Kind::Scale: {
      const double k = op.factor;
      out.eval = [fe, k](double x) { return k * fe(x); };
      out.domain = f.domain;
      out.name = std::to_string(k) + "*" + f.name;
      break;
    }
  }
  if (out.domain.is_empty()) throw std::invalid_argument("combine_oracles: disjoint domains");
  out.eval_budget = std::min(f.eval_budget, op.kind == CombineOp::Kind::Scale ? f.eval_budget : g.eval_budget);
  out.mesh_spacing = std::max(f.mesh_spacing, op.kind == CombineOp::Kind::Scale ? 0.0 : g.mesh_spacing);
  return out;
}

std::vector<ProfilePoint> global_profile(const FunctionOracle& f, std::span<const double> grid,
                                         double r, const ScaleLadder& ladder, unsigned threads) {
  if (!(r >= 0.0) || std::isinf(r)) throw std::invalid_argument("global_profile: r must be finite and >= 0");
  ladder.validate();
  std::vector<ProfilePoint> out(grid.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    const std::array<ApproachMode, 1> wanted = {ApproachMode::Centered};
    for (std::size_t i = begin; i < end; ++i) {
      ProfilePoint& p = out[i];
      p.x = grid[i];
      try {
        const auto set = analyze_point(f, grid[i], ladder, wanted);
        const QuotientBounds& qb = set.modes.at(ApproachMode::Centered);
        p.strong_set = strong_set(qb, r);
        p.defect = derivative_defect(qb);
        p.mu_half_band = strong_set(qb, 1.0);
      } catch (const std::exception& e) {
        p.error = e.what();
        p.defect = kInf;
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, grid.size())));
  if (threads <= 1) {
    work(0, grid.size());
    return out;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (grid.size() + threads - 1) / threads;
  for (std::size_t begin = 0; begin < grid.size(); begin += chunk) {
    pool.emplace_back(work, begin, std::min(grid.size(), begin + chunk));
  }
  return out;  // jthreads join on destruction before `out` is returned
}

std::vector<double> make_grid(double start, double end, std::size_t count) {
  if (count < 2) throw std::invalid_argument("grid: count must be >= 2");
  if (!std::isfinite(start) || !std::isfinite(end) || !(start <= end)) {
    throw std::invalid_argument("grid: need finite start <= end");
  }
  std::vector<double> grid(count);
  const double span = end - start;
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = start + span * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  grid.back() = end;
  return grid;
}

}  // namespace neocalc
