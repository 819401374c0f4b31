#include <doctest.h>

#include <cmath>

#include "neocalc/errors.hpp"
#include "neocalc/gallery.hpp"

using namespace neocalc;
namespace gal = neocalc::gallery;

TEST_CASE("skew tent values") {
  const auto f = gal::skew_tent(0.5, 0.0);
  CHECK(f.eval(0.25) == 0.5);
  CHECK(f.eval(0.5) == 1.0);
  CHECK(f.eval(1.0) == 0.0);
  CHECK(gal::skew_tent(0.3, 0.4).eval(1.0) == 0.0);
  CHECK(f.domain == Interval(0.0, 1.0));
  CHECK_THROWS_AS(gal::skew_tent(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(gal::skew_tent(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("van der Waerden partial sums") {
  // First term only: distance from 0.25 to the nearest integer.
  CHECK(gal::van_der_waerden(1).eval(0.25) == 0.25);
  // 0.25 + dist(1, Z)/4 = 0.25
  CHECK(gal::van_der_waerden(2).eval(0.25) == 0.25);
  // 0.1 + dist(0.4, Z)/4 + dist(1.6, Z)/16 = 0.1 + 0.1 + 0.025
  CHECK(gal::van_der_waerden(3).eval(0.1) == doctest::Approx(0.225).epsilon(1e-15));
  CHECK(gal::van_der_waerden(5).eval(3.0) == 0.0);
  CHECK_THROWS_AS(gal::van_der_waerden(0), std::invalid_argument);
  const auto ladder = gal::vdw_ladder(8);
  CHECK_NOTHROW(ladder.validate());
  CHECK(ladder.floor_fraction == doctest::Approx(0.5 * std::pow(4.0, -7)));
}

TEST_CASE("spike function") {
  const auto f = gal::spike_remark33();
  CHECK(f.eval(0.0) == 1.0);
  CHECK(f.eval(-0.25) == 0.25);
  CHECK(f.eval(2.0) == 2.0);
}

TEST_CASE("gallery spec strings") {
  CHECK(gal::from_spec("abs").eval(-3.0) == 3.0);
  CHECK(gal::from_spec("square").eval(-3.0) == 9.0);
  CHECK(gal::from_spec("linear:2,-1").eval(3.0) == 5.0);
  CHECK(gal::from_spec("skew_tent:0.5,0").eval(0.25) == 0.5);
  CHECK(gal::from_spec("vdw:1").eval(0.25) == 0.25);
  CHECK(gal::from_spec("spike33").eval(0.0) == 1.0);
  CHECK(gal::names().size() == 6);

  CHECK_THROWS_AS(gal::from_spec("cosh"), ParseError);
  CHECK_THROWS_AS(gal::from_spec("abs:1"), ParseError);
  CHECK_THROWS_AS(gal::from_spec("linear:1"), ParseError);
  CHECK_THROWS_AS(gal::from_spec("linear"), ParseError);
  CHECK_THROWS_AS(gal::from_spec("linear:1,x"), ParseError);
  CHECK_THROWS_AS(gal::from_spec("vdw:2.5"), ParseError);
  CHECK_THROWS_AS(gal::from_spec("skew_tent:1.5,0"), std::invalid_argument);
  CHECK_THROWS_AS(gal::from_spec("vdw:0"), std::invalid_argument);
}

TEST_CASE("sampled oracle interpolates linearly") {
  const auto f = gal::sampled({0.0, 1.0, 3.0}, {0.0, 2.0, 0.0});
  CHECK(f.eval(0.5) == 1.0);
  CHECK(f.eval(2.0) == 1.0);
  CHECK(f.eval(3.0) == 0.0);
  CHECK(f.mesh_spacing == 2.0);
  CHECK(f.domain == Interval(0.0, 3.0));
  CHECK_THROWS_AS(gal::sampled({0.0, 0.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(gal::sampled({0.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(gal::sampled({0.0, 1.0}, {1.0}), std::invalid_argument);
}
