#include "neocalc/reference_oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace neocalc::oracle {
namespace {

constexpr std::size_t kPairwiseCap = 2000;

void check_args(double r, const std::vector<double>& k_grid) {
  if (!(r >= 0.0) || std::isinf(r)) throw std::invalid_argument("oracle: r must be finite and >= 0");
  if (k_grid.empty()) throw std::invalid_argument("oracle: empty k grid");
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    if (!(k_grid[i] > 0.0)) throw std::invalid_argument("oracle: k grid must be positive");
    if (i > 0 && !(k_grid[i] < k_grid[i - 1])) {
      throw std::invalid_argument("oracle: k grid must be strictly descending");
    }
  }
}

}  // namespace

std::vector<double> default_k_grid() { return {1.0, 1e-1, 1e-2, 1e-3}; }

std::size_t attainment_limit(std::size_t length) {
  return (length * 9) / 10;
}

OracleVerdict is_r_limit_direct(const SequenceWindow& seq, double a, double r,
                                const std::vector<double>& k_grid) {
  check_args(r, k_grid);
  OracleVerdict verdict;
  verdict.k_grid = k_grid;
  const std::size_t len = seq.size();
  const std::size_t limit = attainment_limit(len);

  std::size_t n_finest = 0;
  for (double k : k_grid) {
    // n = number of leading elements up to and including the last violation.
    std::size_t n = 0;
    for (std::size_t pos = len; pos-- > 0;) {
      if (std::fabs(a - seq[pos]) > r + k) {
        n = pos + 1;
        break;
      }
    }
    if (n > limit) {
      verdict.holds = false;
      verdict.witness_index = seq.index_at(n - 1);
      return verdict;
    }
    n_finest = n;
  }
  verdict.holds = true;
  verdict.witness_index = seq.index_at(n_finest);
  return verdict;
}

OracleVerdict is_r_fundamental_direct(const SequenceWindow& seq, double r,
                                      const std::vector<double>& k_grid) {
  check_args(r, k_grid);
  OracleVerdict verdict;
  verdict.k_grid = k_grid;
  const std::size_t len = seq.size();
  const std::size_t first = std::min(attainment_limit(len), len - 1);

  std::vector<std::size_t> tail;
  const std::size_t count = len - first;
  if (count <= kPairwiseCap) {
    for (std::size_t p = first; p < len; ++p) tail.push_back(p);
  } else {
    const double stride = static_cast<double>(count - 1) / static_cast<double>(kPairwiseCap - 1);
    for (std::size_t j = 0; j < kPairwiseCap; ++j) {
      tail.push_back(first + static_cast<std::size_t>(std::llround(stride * static_cast<double>(j))));
    }
    tail.back() = len - 1;
  }

  for (double k : k_grid) {
    for (std::size_t i = 0; i < tail.size(); ++i) {
      for (std::size_t j = i + 1; j < tail.size(); ++j) {
        if (std::fabs(seq[tail[i]] - seq[tail[j]]) > 2.0 * r + k) {
          verdict.holds = false;
          verdict.witness_index = seq.index_at(tail[j]);
          return verdict;
        }
      }
    }
  }

  // Extend the satisfied tail backwards for the finest k to report its start.
  const double slack = 2.0 * r + k_grid.back();
  std::size_t start = first;
  while (start > 0 && len - start < kPairwiseCap) {
    const double candidate = seq[start - 1];
    bool ok = true;
    for (std::size_t p = start; p < len && ok; ++p) ok = std::fabs(candidate - seq[p]) <= slack;
    if (!ok) break;
    --start;
  }
  verdict.holds = true;
  verdict.witness_index = seq.index_at(start);
  return verdict;
}

OracleVerdict weak_quotient_limit_direct(const SequenceWindow& quotients, double b, double r,
                                         const std::vector<double>& k_grid) {
  return is_r_limit_direct(quotients, b, r, k_grid);
}

}  // namespace neocalc::oracle
