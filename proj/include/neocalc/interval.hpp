#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

namespace neocalc {

/// Closed real interval [lo, hi], or the empty set.
///
/// This is the value type of every r-limit and r-derivative set. Endpoints are
/// inclusive. Infinite endpoints are allowed (used for unbounded domains) but
/// NaN never is.
class Interval {
 public:
  /// The empty set.
  constexpr Interval() = default;

  Interval(double lo, double hi) : lo_(lo), hi_(hi), empty_(false) {
    if (std::isnan(lo) || std::isnan(hi)) {
      throw std::invalid_argument("Interval: NaN endpoint");
    }
    if (lo > hi) {
      throw std::invalid_argument("Interval: lo > hi");
    }
  }

  static Interval empty() { return Interval(); }
  static Interval point(double x) { return Interval(x, x); }
  static Interval entire() {
    return Interval(-std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity());
  }
  /// [lo, hi] if lo <= hi, otherwise Empty.
  static Interval ordered_or_empty(double lo, double hi) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi) return Interval();
    return Interval(lo, hi);
  }

  bool is_empty() const { return empty_; }
  explicit operator bool() const { return !empty_; }

  // Accessors on an empty interval are a logic error.
  double lo() const { check_nonempty(); return lo_; }
  double hi() const { check_nonempty(); return hi_; }
  double width() const { check_nonempty(); return hi_ - lo_; }
  double midpoint() const { check_nonempty(); return lo_ + (hi_ - lo_) / 2; }

  bool contains(double x) const { return !empty_ && lo_ <= x && x <= hi_; }

  /// Set inclusion; the empty set is a subset of everything.
  bool contains(const Interval& other) const {
    if (other.empty_) return true;
    if (empty_) return false;
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }

  bool is_singleton() const { return !empty_ && lo_ == hi_; }

  /// Distance from x to the set (0 inside, +inf for Empty).
  double distance_to(double x) const {
    if (empty_) return std::numeric_limits<double>::infinity();
    if (x < lo_) return lo_ - x;
    if (x > hi_) return x - hi_;
    return 0.0;
  }

  Interval intersect(const Interval& other) const {
    if (empty_ || other.empty_) return Interval();
    return ordered_or_empty(std::max(lo_, other.lo_), std::min(hi_, other.hi_));
  }

  Interval hull(const Interval& other) const {
    if (empty_) return other;
    if (other.empty_) return *this;
    return Interval(std::min(lo_, other.lo_), std::max(hi_, other.hi_));
  }

  /// Minkowski sum {a + b}.
  Interval operator+(const Interval& other) const {
    if (empty_ || other.empty_) return Interval();
    return Interval(lo_ + other.lo_, hi_ + other.hi_);
  }

  /// Minkowski difference {a - b}.
  Interval operator-(const Interval& other) const {
    if (empty_ || other.empty_) return Interval();
    return Interval(lo_ - other.hi_, hi_ - other.lo_);
  }

  Interval scaled(double k) const {
    if (empty_) return Interval();
    const double a = k * lo_;
    const double b = k * hi_;
    return Interval(std::min(a, b), std::max(a, b));
  }

  /// Minkowski sum with [-r, r]; r must be nonnegative.
  Interval inflated(double r) const {
    if (r < 0) throw std::invalid_argument("Interval::inflated: negative radius");
    if (empty_) return Interval();
    return Interval(lo_ - r, hi_ + r);
  }

  bool operator==(const Interval& other) const {
    if (empty_ || other.empty_) return empty_ == other.empty_;
    return lo_ == other.lo_ && hi_ == other.hi_;
  }

 private:
  void check_nonempty() const {
    if (empty_) throw std::logic_error("Interval: access to empty interval");
  }

  double lo_ = 0.0;
  double hi_ = 0.0;
  bool empty_ = true;
};

inline std::ostream& operator<<(std::ostream& os, const Interval& iv) {
  if (iv.is_empty()) return os << "Empty";
  return os << '[' << iv.lo() << ", " << iv.hi() << ']';
}

/// Sorts and merges overlapping or touching intervals; drops Empty entries.
inline std::vector<Interval> merge_intervals(std::vector<Interval> parts) {
  std::erase_if(parts, [](const Interval& iv) { return iv.is_empty(); });
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
    return a.lo() < b.lo() || (a.lo() == b.lo() && a.hi() < b.hi());
  });
  std::vector<Interval> merged;
  for (const auto& iv : parts) {
    if (!merged.empty() && iv.lo() <= merged.back().hi()) {
      merged.back() = merged.back().hull(iv);
    } else {
      merged.push_back(iv);
    }
  }
  return merged;
}

/// Whether x lies in the union of the given intervals.
inline bool union_contains(std::span<const Interval> parts, double x) {
  return std::any_of(parts.begin(), parts.end(),
                     [x](const Interval& iv) { return iv.contains(x); });
}

/// Whether `inner` is covered by a single component of `parts`.
inline bool union_contains(std::span<const Interval> parts, const Interval& inner) {
  if (inner.is_empty()) return true;
  return std::any_of(parts.begin(), parts.end(),
                     [&](const Interval& iv) { return iv.contains(inner); });
}

}  // namespace neocalc
