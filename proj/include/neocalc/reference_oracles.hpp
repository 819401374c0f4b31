#pragma once

// Definition-level checkers for r-limits and r-fundamentality.
//
// These scan the prefix literally: for each k in a descending grid they look
// for an n after which every element (or every pair of elements) stays within
// the slack. They are deliberately naive and share no code with the envelope
// estimators in sequence_limits, which they exist to cross-check.

#include <cstddef>
#include <optional>
#include <vector>

#include "neocalc/sequence_limits.hpp"

namespace neocalc::oracle {

struct OracleVerdict {
  bool holds = false;
  /// When holds: sequence index from which the finest k is satisfied.
  /// When not: sequence index of a violating element.
  std::optional<std::size_t> witness_index;
  std::vector<double> k_grid;
};

/// {1, 1e-1, 1e-2, 1e-3}.
std::vector<double> default_k_grid();

/// Tail attainment rule: the n found for every k must leave the violations
/// inside the first floor(0.9 * length) elements.
std::size_t attainment_limit(std::size_t length);

/// |a - a_i| <= r + k for all elements after some n, for every k in the grid.
/// Throws std::invalid_argument when the grid is empty, non-positive or not
/// sorted descending, or r < 0.
OracleVerdict is_r_limit_direct(const SequenceWindow& seq, double a, double r,
                                const std::vector<double>& k_grid = default_k_grid());

/// |a_i - a_j| <= 2r + k for all pairs i, j in the tail after
/// attainment_limit(length), by direct pairwise comparison. Tails longer than
/// 2000 elements are subsampled with a uniform stride (last element kept).
OracleVerdict is_r_fundamental_direct(const SequenceWindow& seq, double r,
                                      const std::vector<double>& k_grid = default_k_grid());

/// Caller-materialized difference quotients along one approach sequence:
/// b is an r-limit of them.
OracleVerdict weak_quotient_limit_direct(const SequenceWindow& quotients, double b, double r,
                                         const std::vector<double>& k_grid = default_k_grid());

}  // namespace neocalc::oracle
