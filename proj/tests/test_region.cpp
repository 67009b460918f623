#include <cmath>
#include <limits>

#include "doctest.h"
#include "tern/errors.hpp"
#include "tern/region.hpp"

using namespace tern;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("interval factories normalize endpoints") {
  const Interval a = Interval::at_least(2.0);
  CHECK(a.lo == 2.0);
  CHECK(a.hi == kInf);
  CHECK_FALSE(a.lo_open);
  CHECK(a.hi_open);  // infinite ends are forced open

  const Interval p = Interval::point(1.5);
  CHECK(p.degenerate());
  CHECK(p.contains(1.5));
  CHECK_FALSE(p.contains(1.5 + 1e-12));

  CHECK(Interval::open(3.0, 3.0).empty());
  CHECK(Interval::make(2.0, 1.0, false, false).empty());
  CHECK_THROWS_AS(Interval::make(std::nan(""), 1.0, false, false), UsageError);
}

TEST_CASE("interval membership honors open flags") {
  const Interval iv = Interval::make(0.0, 1.0, true, false);  // (0, 1]
  CHECK_FALSE(iv.contains(0.0));
  CHECK(iv.contains(1e-300));
  CHECK(iv.contains(1.0));
  CHECK_FALSE(iv.contains(1.0 + 1e-15));
}

TEST_CASE("interval intersection keeps the tighter flag") {
  const Interval a = Interval::make(0.0, 2.0, false, true);   // [0, 2)
  const Interval b = Interval::make(0.0, 2.0, true, false);   // (0, 2]
  const Interval c = intersect(a, b);
  CHECK(c.lo == 0.0);
  CHECK(c.hi == 2.0);
  CHECK(c.lo_open);
  CHECK(c.hi_open);
}

TEST_CASE("interval subset is flag-exact") {
  CHECK(subset(Interval::open(0.0, 1.0), Interval::closed(0.0, 1.0)));
  CHECK_FALSE(subset(Interval::closed(0.0, 1.0), Interval::open(0.0, 1.0)));
  CHECK(subset(Interval::closed(0.0, 1.0), Interval::at_least(0.0)));
  CHECK(subset(Interval::open(2.0, 2.0), Interval::point(7.0)));  // empty set
}

TEST_CASE("interval subtraction produces the right pieces") {
  const auto pieces = subtract(Interval::closed(0.0, 10.0),
                               Interval::open(2.0, 3.0));
  REQUIRE(pieces.size() == 2);
  CHECK(pieces[0].lo == 0.0);
  CHECK(pieces[0].hi == 2.0);
  CHECK_FALSE(pieces[0].hi_open);  // closed at 2 since (2,3) excludes 2
  CHECK(pieces[1].lo == 3.0);
  CHECK_FALSE(pieces[1].lo_open);
  CHECK(subtract(Interval::closed(0.0, 1.0), Interval::all()).empty());
  const auto whole = subtract(Interval::closed(0.0, 1.0),
                              Interval::closed(5.0, 6.0));
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].lo == 0.0);
  CHECK(whole[0].hi == 1.0);
}

TEST_CASE("region decision geometry from the three reference cases") {
  // 95% z-interval at x = -0.5 is [-2.46, 1.46]: straddles {theta >= 0}.
  const ParameterRegion h0 =
      ParameterRegion::from_interval(Interval::at_least(0.0));
  const ParameterRegion straddling =
      ParameterRegion::from_interval(Interval::closed(-2.46, 1.46));
  CHECK_FALSE(straddling.is_subset_of(h0));
  CHECK_FALSE(straddling.is_subset_of_complement(h0));

  const ParameterRegion inside =
      ParameterRegion::from_interval(Interval::closed(1.0, 3.0));
  CHECK(inside.is_subset_of(h0));

  const ParameterRegion outside =
      ParameterRegion::from_interval(Interval::closed(-4.46, -0.54));
  CHECK(outside.is_subset_of_complement(h0));
  CHECK_FALSE(outside.is_subset_of(h0));
}

TEST_CASE("open/closed boundary subtleties in subset tests") {
  const ParameterRegion h_gt =
      ParameterRegion::from_interval(Interval::above(0.0));  // theta > 0
  const ParameterRegion touching =
      ParameterRegion::from_interval(Interval::closed(0.0, 1.0));
  CHECK_FALSE(touching.is_subset_of(h_gt));  // contains 0 itself
  const ParameterRegion interior =
      ParameterRegion::from_interval(Interval::make(0.0, 1.0, true, false));
  CHECK(interior.is_subset_of(h_gt));

  // [-1, 0] is disjoint from (0, inf) even though they touch at 0.
  const ParameterRegion left =
      ParameterRegion::from_interval(Interval::closed(-1.0, 0.0));
  CHECK(left.is_subset_of_complement(h_gt));
}

TEST_CASE("complement round trips") {
  const ParameterRegion band =
      ParameterRegion::from_interval(Interval::open(-1.0, 1.0));
  const ParameterRegion comp = band.complement();
  CHECK(comp.contains(-1.0));
  CHECK(comp.contains(1.0));
  CHECK_FALSE(comp.contains(0.0));
  CHECK(comp.contains(-5.0));
  CHECK(comp.complement().same_set_as(band));
  CHECK(ParameterRegion::all(1).complement().is_empty());
  CHECK(ParameterRegion::empty(1).complement().same_set_as(
      ParameterRegion::all(1)));
}

TEST_CASE("union components merge touching pieces") {
  const ParameterRegion u = ParameterRegion::from_intervals(
      {Interval::closed(0.0, 1.0), Interval::closed(1.0, 2.0),
       Interval::closed(5.0, 6.0)});
  const auto comps = u.components1();
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].lo == 0.0);
  CHECK(comps[0].hi == 2.0);
  CHECK(comps[1].lo == 5.0);
  const Interval hull = u.hull1();
  CHECK(hull.lo == 0.0);
  CHECK(hull.hi == 6.0);
}

TEST_CASE("adjacent open intervals do not merge") {
  const ParameterRegion u = ParameterRegion::from_intervals(
      {Interval::open(0.0, 1.0), Interval::open(1.0, 2.0)});
  CHECK(u.components1().size() == 2);
  CHECK_FALSE(u.contains(1.0));

  const ParameterRegion v = ParameterRegion::from_intervals(
      {Interval::open(0.0, 1.0), Interval::make(1.0, 2.0, false, true)});
  CHECK(v.components1().size() == 1);
  CHECK(v.contains(1.0));
}

TEST_CASE("multi-box subset uses exact subtraction") {
  // [0,1] u [2,3] inside [0,3]? Yes. Inside [0,1] u [2,3]? Yes, itself.
  const ParameterRegion two = ParameterRegion::from_intervals(
      {Interval::closed(0.0, 1.0), Interval::closed(2.0, 3.0)});
  CHECK(two.is_subset_of(
      ParameterRegion::from_interval(Interval::closed(0.0, 3.0))));
  CHECK(two.is_subset_of(two));
  // [0,3] is not inside the union with the (1,2) gap.
  CHECK_FALSE(ParameterRegion::from_interval(Interval::closed(0.0, 3.0))
                  .is_subset_of(two));
  // But [0,3] minus the gap is.
  const ParameterRegion no_gap = ParameterRegion::from_interval(
      Interval::closed(0.0, 3.0))
                                     .intersect_with(two);
  CHECK(no_gap.same_set_as(two));
}

TEST_CASE("two-dimensional boxes") {
  Box unit;
  unit.coords = {Interval::closed(0.0, 1.0), Interval::closed(0.0, 1.0)};
  const ParameterRegion square = ParameterRegion::from_box(unit);
  CHECK(square.dim() == 2);
  Eigen::VectorXd p(2);
  p << 0.5, 0.5;
  CHECK(square.contains(p));
  p << 0.5, 1.5;
  CHECK_FALSE(square.contains(p));

  const ParameterRegion half =
      ParameterRegion::half_space(2, 0, HalfSpaceDir::Geq, 0.0);
  CHECK(square.is_subset_of(half));
  const ParameterRegion upper =
      ParameterRegion::half_space(2, 1, HalfSpaceDir::Gt, 2.0);
  CHECK(square.is_subset_of_complement(upper));

  Box shifted;
  shifted.coords = {Interval::closed(0.25, 0.75), Interval::closed(0.25, 2.0)};
  const ParameterRegion tall = ParameterRegion::from_box(shifted);
  CHECK_FALSE(tall.is_subset_of(square));
  CHECK_FALSE(tall.is_subset_of_complement(square));
}

TEST_CASE("dimension mismatches are rejected") {
  const ParameterRegion line =
      ParameterRegion::from_interval(Interval::closed(0.0, 1.0));
  const ParameterRegion plane = ParameterRegion::all(2);
  CHECK_THROWS_AS((void)line.is_subset_of(plane), UsageError);
  CHECK_THROWS_AS((void)line.intersect_with(plane), UsageError);
  Eigen::VectorXd p(2);
  p << 0.0, 0.0;
  CHECK_THROWS_AS((void)line.contains(p), UsageError);
  CHECK_THROWS_AS((void)plane.components1(), UsageError);
}

TEST_CASE("hull of the empty region is an error") {
  CHECK_THROWS_AS((void)ParameterRegion::empty(1).hull1(), UsageError);
}

TEST_CASE("point regions") {
  const ParameterRegion p = ParameterRegion::point1(3.5);
  CHECK(p.contains(3.5));
  CHECK_FALSE(p.contains(3.5000001));
  CHECK(p.is_subset_of(ParameterRegion::from_interval(Interval::closed(3.0, 4.0))));
  CHECK(p.is_subset_of_complement(
      ParameterRegion::from_interval(Interval::open(3.5, 4.0))));
}
