#pragma once

// Interval-valued derivatives from difference-quotient envelopes.
//
// For an approach mode the quotients (f(x) - f(y)) / (x - y) are sampled on a
// geometric ladder of scales. The envelope of the finest bands estimates the
// extreme cluster values D- <= D+ over all approach sequences; from those:
//   strong r-set   [D+ - r, D- + r]            (empty when D+ - D- > 2r)
//   weak r-set     per-side clusters inflated by r, merged
//   defect         (D+ - D-) / 2
//   membership     1 / (1 + max(D+ - z, z - D-))
// Envelopes are estimates with stability flags, not certified enclosures.

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "neocalc/interval.hpp"
#include "neocalc/sequence_limits.hpp"

namespace neocalc {

enum class ApproachMode { Centered, Left, Right, TwoSided };

inline constexpr std::array<ApproachMode, 4> kAllModes = {
    ApproachMode::Centered, ApproachMode::Left, ApproachMode::Right, ApproachMode::TwoSided};

std::string_view to_string(ApproachMode mode);
/// Accepts "centered", "left", "right", "two-sided" (also "twosided", "two_sided").
std::optional<ApproachMode> parse_mode(std::string_view text);

/// A real function together with the region it may be evaluated on.
///
/// `eval` must be deterministic and safe to call concurrently.
struct FunctionOracle {
  std::function<double(double)> eval;
  Interval domain = Interval::entire();
  std::size_t eval_budget = 100000;
  /// Spacing of the underlying samples for data-backed oracles; 0 otherwise.
  double mesh_spacing = 0.0;
  std::string name;
};

/// Geometric scale ladder h_j = base * ratio^j, j = 0..count-1, truncated at
/// floor. base and floor are relative: both are multiplied by max(1, |x|).
struct ScaleLadder {
  double base_fraction = 0.1;
  double floor_fraction = 1e-7;
  double ratio = 0.5;
  int count = 41;
  int band_size = 4;
  int bands_used = 2;

  /// Throws std::invalid_argument for inconsistent parameters, or when fewer
  /// than max(2, bands_used) full bands fit above the floor.
  void validate() const;
  /// Descending scales around x.
  std::vector<double> scales(double x) const;
};

struct QuotientSample {
  double scale;
  double quotient;
  /// f(y) - f(x) for one-sided samples (0 for straddling pairs).
  double value_change = 0.0;
};

struct SampleSet {
  std::vector<QuotientSample> samples;
  bool budget_exhausted = false;
  bool domain_clipped = false;
  bool mesh_limited = false;
  double smallest_scale = 0.0;
  std::size_t evaluations = 0;
};

/// Raw quotient cloud for one mode. Left/Right use (f(x) - f(x -/+ h)) / (+/-h);
/// Centered returns both sides; TwoSided uses straddling pairs
/// z = x - lambda s, z' = x + (1 - lambda) s with lambda in
/// {1e-7, 0.1, 0.25, 0.5, 0.75, 0.9, 1 - 1e-7}.
SampleSet quotient_samples(const FunctionOracle& f, double x, ApproachMode mode,
                           const ScaleLadder& ladder = {});

struct BandDiagnostic {
  double scale;  // coarsest scale in the band
  double band_min;
  double band_max;
};

struct QuotientBounds {
  ApproachMode mode = ApproachMode::Centered;
  double x = 0.0;
  double d_lower = 0.0;  // D-
  double d_upper = 0.0;  // D+
  Interval left_cluster;
  Interval right_cluster;
  bool bounded = false;
  bool available = true;
  bool stable = false;
  /// Band envelopes shrink toward a single value; D- = D+ is then its
  /// extrapolated limit.
  bool collapsed = false;
  double raw_lower = 0.0;
  double raw_upper = 0.0;
  /// Per-side clusters are reported as [liminf, limsup] hulls.
  bool cluster_is_hull = true;
  std::optional<ApproachMode> degraded_to;
  bool budget_exhausted = false;
  bool domain_clipped = false;
  bool mesh_limited = false;
  double smallest_scale = 0.0;
  std::vector<BandDiagnostic> scale_diagnostics;
};

QuotientBounds dini_bounds(const FunctionOracle& f, double x, ApproachMode mode,
                           const ScaleLadder& ladder = {});

Interval strong_set(const QuotientBounds& bounds, double r);
std::vector<Interval> weak_set(const QuotientBounds& bounds, double r);
/// (D+ - D-) / 2; +inf when unbounded or unavailable.
double derivative_defect(const QuotientBounds& bounds);
/// 1 / (1 + m) with m the least r placing z in the strong set; 0 if unbounded.
double membership_mu(const QuotientBounds& bounds, double z);

enum class Differentiability { ClassicallyDifferentiable, FuzzyDifferentiable, NotFuzzyDifferentiable };
std::string_view to_string(Differentiability d);

struct DerivativeReport {
  double x = 0.0;
  std::map<ApproachMode, QuotientBounds> per_mode;
  /// Centered-mode defect.
  double defect = 0.0;
  std::map<std::pair<ApproachMode, double>, Interval> strong_sets;
  std::map<std::pair<ApproachMode, double>, std::vector<Interval>> weak_sets;
  Differentiability classification = Differentiability::NotFuzzyDifferentiable;
  /// max |f(y) - f(x)| over the finest band of one-sided samples.
  double continuity_defect = 0.0;
  std::size_t evaluations = 0;

  const QuotientBounds& bounds(ApproachMode mode) const { return per_mode.at(mode); }
};

/// All four modes at x, plus strong/weak sets for each requested r.
DerivativeReport classify(const FunctionOracle& f, double x, const ScaleLadder& ladder = {},
                          std::span<const double> r_values = {});

double membership_mu(const DerivativeReport& report, ApproachMode mode, double z);

struct PredictedBound {
  ApproachMode mode;
  double radius;  // +inf when an operand is unbounded
  Interval set;
};

/// Strong-set bound for f (op) g from the operands' minimal strong sets.
/// Throws std::invalid_argument when the reports are at different points or
/// the mode is available in only one of them.
PredictedBound combine_reports(const DerivativeReport& rf, const DerivativeReport& rg, CombineOp op,
                               ApproachMode mode = ApproachMode::Centered);

/// Whether the directly computed strong set of `direct` at the predicted
/// radius contains the predicted set, up to `slack` on each endpoint.
bool prediction_holds(const PredictedBound& predicted, const DerivativeReport& direct,
                      double slack = 1e-9);

/// f (op) g on the intersection of the domains.
FunctionOracle combine_oracles(const FunctionOracle& f, const FunctionOracle& g, CombineOp op);

struct ProfilePoint {
  double x = 0.0;
  Interval strong_set;
  double defect = 0.0;
  /// {z : membership >= 1/2}, i.e. the strong 1-set.
  Interval mu_half_band;
  std::string error;
};

/// Centered strong r-set, defect and half-membership band at each grid point,
/// in grid order. Per-point failures are recorded and the profile continues.
std::vector<ProfilePoint> global_profile(const FunctionOracle& f, std::span<const double> grid,
                                         double r, const ScaleLadder& ladder = {},
                                         unsigned threads = 0);

/// Grid "start:end:count" materialized as start + (end - start) * i / (count - 1).
std::vector<double> make_grid(double start, double end, std::size_t count);

}  // namespace neocalc
