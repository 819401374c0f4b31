#include <doctest.h>

#include <cmath>
#include <random>

#include "neocalc/interval.hpp"

using neocalc::Interval;

TEST_CASE("interval construction rejects bad endpoints") {
  CHECK_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Interval(std::nan(""), 1.0), std::invalid_argument);
  CHECK(Interval().is_empty());
  CHECK(Interval::ordered_or_empty(3.0, 1.0).is_empty());
  CHECK_THROWS_AS((void)Interval().lo(), std::logic_error);
}

TEST_CASE("interval basic queries") {
  const Interval a(-1.0, 3.0);
  CHECK(a.width() == 4.0);
  CHECK(a.midpoint() == 1.0);
  CHECK(a.contains(-1.0));
  CHECK(a.contains(3.0));
  CHECK_FALSE(a.contains(3.0000001));
  CHECK(a.contains(Interval(0.0, 1.0)));
  CHECK(a.contains(Interval::empty()));
  CHECK_FALSE(Interval::empty().contains(0.0));
  CHECK(Interval::point(2.0).is_singleton());
  CHECK(a.distance_to(5.0) == 2.0);
  CHECK(a.distance_to(0.0) == 0.0);
}

TEST_CASE("interval set operations") {
  const Interval a(0.0, 2.0);
  const Interval b(1.0, 5.0);
  CHECK(a.intersect(b) == Interval(1.0, 2.0));
  CHECK(a.intersect(Interval(3.0, 4.0)).is_empty());
  CHECK(a.hull(Interval(4.0, 6.0)) == Interval(0.0, 6.0));
  CHECK(a.hull(Interval::empty()) == a);
  CHECK(a + b == Interval(1.0, 7.0));
  CHECK(a - b == Interval(-5.0, 1.0));
  CHECK((a + Interval::empty()).is_empty());
  CHECK(a.scaled(-3.0) == Interval(-6.0, 0.0));
  CHECK(a.inflated(0.5) == Interval(-0.5, 2.5));
  CHECK_THROWS_AS((void)a.inflated(-1.0), std::invalid_argument);
}

TEST_CASE("merge_intervals joins overlapping and touching parts") {
  const auto merged = neocalc::merge_intervals(
      {Interval(3.0, 4.0), Interval::empty(), Interval(-1.0, 0.5), Interval(0.5, 1.0), Interval(3.5, 3.6)});
  REQUIRE(merged.size() == 2);
  CHECK(merged[0] == Interval(-1.0, 1.0));
  CHECK(merged[1] == Interval(3.0, 4.0));
  CHECK(neocalc::union_contains(merged, 0.75));
  CHECK_FALSE(neocalc::union_contains(merged, 2.0));
}

TEST_CASE("minkowski sum matches pointwise sums on random samples") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double a0 = u(rng), a1 = u(rng), b0 = u(rng), b1 = u(rng);
    const Interval a(std::min(a0, a1), std::max(a0, a1));
    const Interval b(std::min(b0, b1), std::max(b0, b1));
    std::uniform_real_distribution<double> t(0.0, 1.0);
    const double x = a.lo() + t(rng) * a.width();
    const double y = b.lo() + t(rng) * b.width();
    CHECK((a + b).inflated(1e-12).contains(x + y));
    CHECK((a - b).inflated(1e-12).contains(x - y));
  }
}
