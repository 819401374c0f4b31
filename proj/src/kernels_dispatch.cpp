#include "kernels_impl.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string_view>

namespace neocalc::kernels {

const KernelTable* avx2_kernels() {
#if defined(NEOCALC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* env = std::getenv("NEOCALC_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
    if (const KernelTable* t = avx2_kernels()) return *t;
    return scalar_kernels();
  }();
  return chosen;
}

MinMax minmax(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("minmax: empty input");
  return active_kernels().minmax(values.data(), values.size());
}

double abs_max(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("abs_max: empty input");
  return active_kernels().abs_max(values.data(), values.size());
}

void quotients(double f0, std::span<const double> f, std::span<const double> dx,
               std::span<double> out) {
  if (f.size() != dx.size() || f.size() != out.size()) {
    throw std::invalid_argument("quotients: size mismatch");
  }
  if (f.empty()) return;
  active_kernels().quotients(f0, f.data(), dx.data(), out.data(), f.size());
}

void secants(std::span<const double> f_hi, std::span<const double> f_lo,
             std::span<const double> width, std::span<double> out) {
  if (f_hi.size() != f_lo.size() || f_hi.size() != width.size() ||
      f_hi.size() != out.size()) {
    throw std::invalid_argument("secants: size mismatch");
  }
  if (f_hi.empty()) return;
  active_kernels().secants(f_hi.data(), f_lo.data(), width.data(), out.data(),
                           f_hi.size());
}

}  // namespace neocalc::kernels
