#include <doctest.h>

#include <stdexcept>

#include <cstring>
#include <random>
#include <vector>

#include "neocalc/kernels.hpp"

namespace kn = neocalc::kernels;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar kernels on small inputs") {
  const auto& s = kn::scalar_kernels();
  const double v[] = {3.0, -7.5, 2.0, 9.25, -1.0};
  const auto mm = s.minmax(v, 5);
  CHECK(mm.min == -7.5);
  CHECK(mm.max == 9.25);
  CHECK(s.abs_max(v, 5) == 9.25);

  const double f[] = {1.0, 4.0};
  const double dx[] = {0.5, -2.0};
  double out[2];
  s.quotients(0.0, f, dx, out, 2);
  CHECK(out[0] == 2.0);
  CHECK(out[1] == -2.0);

  const double lo[] = {1.0, 1.0};
  const double w[] = {2.0, 4.0};
  s.secants(f, lo, w, out, 2);
  CHECK(out[0] == 0.0);
  CHECK(out[1] == 0.75);
}

TEST_CASE("span wrappers validate sizes") {
  std::vector<double> a(3, 1.0), b(2, 1.0), out(3);
  CHECK_THROWS_AS(kn::minmax(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(kn::abs_max(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(kn::quotients(0.0, a, b, out), std::invalid_argument);
  CHECK_THROWS_AS(kn::secants(a, a, b, out), std::invalid_argument);
  std::vector<double> none;
  CHECK_NOTHROW(kn::quotients(0.0, none, none, none));
}

TEST_CASE("avx2 kernels are bit-identical to the scalar reference") {
  const kn::KernelTable* avx = kn::avx2_kernels();
  if (avx == nullptr) {
    MESSAGE("AVX2 variant unavailable on this machine; equivalence not exercised");
    return;
  }
  const auto& s = kn::scalar_kernels();
  std::mt19937_64 rng(2024);
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 33u, 100u, 1001u}) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto v = random_values(rng, n);
      const auto ms = s.minmax(v.data(), n);
      const auto mv = avx->minmax(v.data(), n);
      CHECK(same_bits(ms.min, mv.min));
      CHECK(same_bits(ms.max, mv.max));
      CHECK(same_bits(s.abs_max(v.data(), n), avx->abs_max(v.data(), n)));

      const auto f = random_values(rng, n);
      auto dx = random_values(rng, n);
      for (auto& d : dx) d = d == 0.0 ? 1.0 : d;
      std::vector<double> qs(n), qv(n);
      s.quotients(0.125, f.data(), dx.data(), qs.data(), n);
      avx->quotients(0.125, f.data(), dx.data(), qv.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(same_bits(qs[i], qv[i]));

      s.secants(f.data(), v.data(), dx.data(), qs.data(), n);
      avx->secants(f.data(), v.data(), dx.data(), qv.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(same_bits(qs[i], qv[i]));
    }
  }
}

TEST_CASE("avx2 minmax handles signed zeros and extremes like the scalar path") {
  const kn::KernelTable* avx = kn::avx2_kernels();
  if (avx == nullptr) return;
  const auto& s = kn::scalar_kernels();
  const std::vector<double> v = {0.0, -0.0, 1e308, -1e308, 5e-324, -5e-324, 0.0, -0.0, 2.0};
  const auto ms = s.minmax(v.data(), v.size());
  const auto mv = avx->minmax(v.data(), v.size());
  CHECK(ms.min == mv.min);
  CHECK(ms.max == mv.max);
  CHECK(s.abs_max(v.data(), v.size()) == avx->abs_max(v.data(), v.size()));
}
