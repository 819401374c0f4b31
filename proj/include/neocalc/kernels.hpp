#pragma once

// Data-parallel inner loops used by the envelope estimators.
//
// Every kernel has a scalar reference implementation; an AVX2 variant is
// compiled on x86-64 and selected at runtime when the CPU supports it. The
// variants are required to produce bit-identical results (no FMA contraction,
// IEEE division), which the kernel equivalence tests check.
//
// Set NEOCALC_KERNELS=scalar in the environment to force the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace neocalc::kernels {

struct MinMax {
  double min;
  double max;
};

struct KernelTable {
  std::string_view name;
  /// Minimum and maximum of n >= 1 finite values.
  MinMax (*minmax)(const double* values, std::size_t n);
  /// max |v_i| over n >= 1 finite values.
  double (*abs_max)(const double* values, std::size_t n);
  /// out_i = (f_i - f0) / dx_i.
  void (*quotients)(double f0, const double* f, const double* dx, double* out,
                    std::size_t n);
  /// out_i = (f_hi_i - f_lo_i) / width_i.
  void (*secants)(const double* f_hi, const double* f_lo, const double* width,
                  double* out, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the variant is not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

/// The table chosen at first use (AVX2 if available, unless overridden).
const KernelTable& active_kernels();

// Span front ends over the active table. Sizes must agree; empty input to
// minmax/abs_max throws std::invalid_argument.
MinMax minmax(std::span<const double> values);
double abs_max(std::span<const double> values);
void quotients(double f0, std::span<const double> f, std::span<const double> dx,
               std::span<double> out);
void secants(std::span<const double> f_hi, std::span<const double> f_lo,
             std::span<const double> width, std::span<double> out);

}  // namespace neocalc::kernels
