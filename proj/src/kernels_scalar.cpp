#include "kernels_impl.hpp"

#include <cmath>

namespace neocalc::kernels {
namespace {

MinMax minmax_scalar(const double* v, std::size_t n) {
  MinMax r{v[0], v[0]};
  for (std::size_t i = 1; i < n; ++i) {
    r.min = v[i] < r.min ? v[i] : r.min;
    r.max = v[i] > r.max ? v[i] : r.max;
  }
  return r;
}

double abs_max_scalar(const double* v, std::size_t n) {
  double m = std::fabs(v[0]);
  for (std::size_t i = 1; i < n; ++i) {
    const double a = std::fabs(v[i]);
    m = a > m ? a : m;
  }
  return m;
}

void quotients_scalar(double f0, const double* f, const double* dx, double* out,
                      std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (f[i] - f0) / dx[i];
}

void secants_scalar(const double* f_hi, const double* f_lo, const double* width,
                    double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (f_hi[i] - f_lo[i]) / width[i];
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", minmax_scalar, abs_max_scalar,
                                 quotients_scalar, secants_scalar};
  return table;
}

}  // namespace neocalc::kernels
