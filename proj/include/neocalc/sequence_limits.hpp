#pragma once

// r-limits, convergence measure and fuzzy-limit membership for real sequences
// given as finite prefixes.
//
// A number a is an r-limit of {a_i} when every k > 0 leaves only finitely many
// a_i with |a - a_i| > r + k. For real sequences this is
//     max(S - a, a - s) <= r,   S = limsup a_i, s = liminf a_i,
// so the set of r-limits is [S - r, s + r] (or empty). Everything in this
// header works from estimates of S and s taken over a trailing window of the
// prefix; see TailBounds for the diagnostics that come with those estimates.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "neocalc/interval.hpp"

namespace neocalc {

/// Finite prefix a_start, a_start+1, ... of a real sequence.
class SequenceWindow {
 public:
  /// Throws std::invalid_argument on empty input, non-finite values or
  /// start_index == 0.
  explicit SequenceWindow(std::vector<double> values, std::size_t start_index = 1);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  std::size_t start_index() const { return start_index_; }
  /// Sequence index of the element at 0-based position pos.
  std::size_t index_at(std::size_t pos) const { return start_index_ + pos; }
  double operator[](std::size_t pos) const { return values_[pos]; }

 private:
  std::vector<double> values_;
  std::size_t start_index_;
};

struct TailOptions {
  /// Fraction of the prefix (counted from the end) used as the tail window.
  double tail_fraction = 0.25;
  /// Relative agreement required for a window to count as stable.
  double tolerance = 1e-9;
  /// Minimum relative widening of max|a_i| per prefix doubling for the
  /// growth (unboundedness) heuristic.
  double growth_tolerance = 1e-2;
  /// Accelerate drifting envelopes over prefix doublings.
  bool extrapolate = true;
};

/// Estimated limit superior / inferior of a prefix.
struct TailBounds {
  double sup_estimate = 0.0;  // S
  double inf_estimate = 0.0;  // s
  std::size_t window_size = 0;
  bool stable = false;
  bool bounded = true;

  // Diagnostics.
  double raw_sup = 0.0;  // max over the tail window
  double raw_inf = 0.0;  // min over the tail window
  bool extrapolated = false;
  std::size_t source_length = 0;
  double tail_fraction = 0.0;
};

/// Tail envelope of `seq`.
///
/// S and s start as the max/min over the trailing ceil(tail_fraction * n)
/// elements. When the envelopes of the n/4, n/2 and n prefixes drift
/// geometrically (contraction ratio <= 0.75) they are Aitken-extrapolated; if
/// the two extrapolants cross, the sequence is read as convergent and both
/// collapse onto the extrapolant that moved less. `stable` requires the window
/// and its trailing half to agree within tolerance and no extrapolation shift
/// beyond tolerance. `bounded` is false when max|a_i| widens by more than
/// growth_tolerance (relative) on each of the last three prefix doublings
/// without decelerating.
///
/// Throws std::invalid_argument when the tail window has fewer than 2
/// elements or the options are out of range.
TailBounds tail_bounds(const SequenceWindow& seq, const TailOptions& options = {});
TailBounds tail_bounds(const SequenceWindow& seq, double tail_fraction, double tolerance);

/// [S - r, s + r], or Empty when S - s > 2r or the sequence is unbounded.
Interval r_limit_set(const TailBounds& bounds, double r);

/// a is an r-limit iff it lies in r_limit_set(bounds, r). Unbounded: false.
bool is_r_limit(const TailBounds& bounds, double a, double r);

/// max(S - a, a - s): the least r making a an r-limit. Unbounded: +inf.
double limit_defect(const TailBounds& bounds, double a);

struct ConvergenceMeasure {
  double measure;                   // (S - s) / 2, or +inf
  std::optional<double> best_point; // (S + s) / 2; absent when unbounded
};

ConvergenceMeasure measure_of_convergence(const TailBounds& bounds);

/// S - s <= 2r (and bounded). Equivalent to r_limit_set being non-empty.
bool is_r_fundamental(const TailBounds& bounds, double r);

bool fuzzy_converges(const TailBounds& bounds);

/// 1 / (1 + limit_defect(a)); 0 for unbounded sequences.
double membership_lim(const TailBounds& bounds, double a);

struct CombineOp {
  enum class Kind { Add, Sub, Scale };
  Kind kind = Kind::Add;
  double factor = 1.0;

  static CombineOp add() { return {Kind::Add, 1.0}; }
  static CombineOp sub() { return {Kind::Sub, 1.0}; }
  static CombineOp scale(double k) { return {Kind::Scale, k}; }
};

struct CombineResult {
  SequenceWindow sequence;
  /// Radius of the predicted set: r + q for add/sub, |k| r for scale.
  double radius;
  /// Minkowski combination of the operands' r- and q-limit sets.
  Interval predicted;
};

/// Element-wise l (op) h with the predicted limit set of the result. For
/// scale, h is ignored and q is unused. Throws std::invalid_argument when
/// add/sub operands differ in length or start index, or r, q < 0.
CombineResult combine(const SequenceWindow& l, const SequenceWindow& h, CombineOp op,
                      double r, double q, const TailOptions& options = {});

struct LimitReport {
  TailBounds bounds;
  double measure_of_convergence = 0.0;
  std::optional<double> best_point;
  std::vector<std::pair<double, Interval>> requested_sets;
};

LimitReport analyze_sequence(const SequenceWindow& seq, std::span<const double> r_values,
                             const TailOptions& options = {});

}  // namespace neocalc
