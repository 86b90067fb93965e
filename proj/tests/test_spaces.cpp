#include "doctest.h"

#include <random>
#include <stdexcept>

#include "expansia/random_models.hpp"
#include "expansia/spaces.hpp"
#include "oracles.hpp"

using namespace expansia;

namespace {

Box arc_box(Rational lo, Rational len) { return Box{{Arc(lo, len)}}; }

FiniteTopSpace sierpinski() { return FiniteTopSpace({"a", "b"}, {singleton(0)}); }

}  // namespace

TEST_CASE("torus distance")
{
  TorusPoint o = TorusPoint::origin(2);
  CHECK(torus_distance(o, o) == 0);
  CHECK(torus_distance(o, TorusPoint({3, 0}, 4)) == Rational(1, 4));
  CHECK(torus_distance(TorusPoint({2, 3}, 6), TorusPoint({4, 3}, 6)) == Rational(1, 3));

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> num(-30, 30), den(1, 12);
  for (int k = 0; k < 300; ++k) {
    auto pick = [&] { return TorusPoint::from_rationals({Rational(num(rng), den(rng)), Rational(num(rng), den(rng))}); };
    auto x = pick(), y = pick(), z = pick();
    CHECK(torus_distance(x, y) == oracle::torus_distance(x.coords(), y.coords()));
    CHECK(torus_distance(x, y) == torus_distance(y, x));
    CHECK((torus_distance(x, y) == 0) == (x == y));
    CHECK(torus_distance(x, z) <= torus_distance(x, y) + torus_distance(y, z));
  }
}

TEST_CASE("metric space text")
{
  auto m = parse_metric_space("a b c\n1\n2 1\n");
  CHECK(m.size() == 3);
  CHECK(m.distance(2, 0) == 2);
  CHECK(m.distance(0, 2) == 2);
  CHECK(m.diameter() == 2);
  CHECK(m.triangle_violations().empty());
  auto bad = parse_metric_space("a b c\n1\n3 1\n");
  CHECK_FALSE(bad.triangle_violations().empty());
  CHECK_THROWS_AS(parse_metric_space("a b c\n1\n"), std::invalid_argument);
}

TEST_CASE("topologies")
{
  auto t = parse_topology("a b c\na\na,b\n");
  CHECK(t.is_open(singleton(0) | singleton(1)));
  CHECK_FALSE(t.is_open(singleton(1)));
  CHECK(t.minimal_neighborhood(1) == (singleton(0) | singleton(1)));
  CHECK_THROWS_AS(FiniteTopSpace({"a", "b", "c"}, {singleton(0), singleton(1)}), std::invalid_argument);
  auto g = FiniteTopSpace::generated({"a", "b", "c"}, {singleton(0), singleton(1)});
  CHECK(g.is_open(singleton(0) | singleton(1)));
  CHECK(g.opens().size() == 5);
}

TEST_CASE("separation axioms")
{
  CHECK(is_T1(FiniteTopSpace::discrete(3)));
  CHECK(FiniteTopSpace::discrete(3).is_discrete());
  CHECK_FALSE(is_T1(sierpinski()));
  CHECK(hausdorff_violation(sierpinski()) == std::make_pair(std::size_t{0}, std::size_t{1}));
  CHECK_FALSE(hausdorff_violation(FiniteTopSpace::discrete(3)));

  // On finite spaces T1 means discrete; checked against the oracles on random models.
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    auto a = random_topological_action(rng);
    const auto& x = std::get<FiniteTopSpace>(a.space());
    CHECK(is_T1(x) == oracle::t1(x));
    CHECK(is_T1(x) == x.is_discrete());
    CHECK(hausdorff_violation(x).has_value() == !oracle::hausdorff(x));
  }
}

TEST_CASE("refinement and join")
{
  Space s = FiniteTopSpace::discrete(4);
  auto halves = finite_cover({0b0011, 0b1100});
  auto singles = finite_cover({0b0001, 0b0010, 0b0100, 0b1000});
  CHECK(refines(halves, halves));
  CHECK(refines(singles, halves));
  CHECK_FALSE(refines(halves, singles));

  auto odd = finite_cover({0b0101, 0b1010});
  auto j = cover_join(halves, odd);
  CHECK(refines(j, halves));
  CHECK(refines(j, odd));
  CHECK(j.size() == 4);
  CHECK(covers(s, j));

  CHECK(cover_join(halves, halves).size() == halves.size());
  auto whole = finite_cover({0b1111});
  auto jw = cover_join(whole, odd);
  REQUIRE(jw.size() == odd.size());
  for (std::size_t i = 0; i < jw.size(); ++i)
    CHECK(jw.members[i].points() == odd.members[i].points());
}

TEST_CASE("join of shifted half circles")
{
  Space circle = TorusSpace{1};
  auto u = torus_box_cover({arc_box(0, Rational(1, 2)), arc_box(Rational(1, 2), Rational(1, 2))});
  auto v = torus_box_cover({arc_box(Rational(1, 4), Rational(1, 2)), arc_box(Rational(3, 4), Rational(1, 2))});
  auto j = cover_join(u, v);
  CHECK(j.size() == 4);
  CHECK(covers(circle, j));
  // Each member is a quarter arc: exactly 6 of the 24 grid points, pairwise disjoint.
  for (const auto& m : j.members) {
    int hits = 0;
    for (int i = 0; i < 24; ++i)
      hits += m.contains(Point(TorusPoint({i}, 24)));
    CHECK(hits == 6);
  }
}

TEST_CASE("Lebesgue numbers")
{
  SUBCASE("whole space")
  {
    auto m = FiniteMetricSpace::discrete(3);
    CHECK(lebesgue_number(m, finite_cover({0b111})) == 2);
  }
  SUBCASE("three pairs of a discrete triangle")
  {
    auto m = FiniteMetricSpace::discrete(3);
    auto u = finite_cover({0b011, 0b110, 0b101});
    CHECK(lebesgue_number(m, u) == 1);
    CHECK(oracle::lebesgue(m, oracle::member_sets(u)) == 1);
  }
  SUBCASE("overlapping circle arcs")
  {
    Space circle = TorusSpace{1};
    auto u = torus_box_cover({arc_box(0, Rational(2, 3)), arc_box(Rational(1, 2), Rational(2, 3))});
    auto delta = lebesgue_number(circle, u);
    CHECK(delta > 0);
    CHECK(delta <= Rational(1, 6));
    // Every arc of length delta on a fine grid fits inside a member.
    for (int i = 0; i < 120; ++i) {
      Rational lo(i, 120);
      bool fits = false;
      for (const auto& m : u.members) {
        bool inside = true;
        for (int k = 0; k <= 12; ++k) {
          auto t = lo + delta * Rational(k, 13);
          inside = inside && m.contains(Point(TorusPoint::from_rationals({frac(t)})));
        }
        fits = fits || inside;
      }
      CHECK(fits);
    }
  }
  SUBCASE("random covers of random metrics")
  {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 100; ++k) {
      auto a = random_metric_action(rng);
      auto u = random_cover(rng, a.space());
      const auto& m = std::get<FiniteMetricSpace>(a.space());
      CHECK(lebesgue_number(a.space(), u) == oracle::lebesgue(m, oracle::member_sets(u)));
    }
  }
  CHECK_THROWS_AS(lebesgue_number(FiniteMetricSpace::discrete(3), finite_cover({0b011})), std::invalid_argument);
}

TEST_CASE("Property P witnesses")
{
  auto m = FiniteMetricSpace::discrete(4);
  auto w = property_p_witness(m, Rational(1, 2));
  REQUIRE(w.finite_set);
  CHECK(*w.finite_set == full_set(4));
  CHECK(property_p_holds(m, Rational(1, 2), *w.finite_set));
  CHECK_FALSE(property_p_holds(m, Rational(1, 2), 0b0111));

  CHECK(property_p_witness(TorusSpace{2}, Rational(1, 3)).whole_space);

  auto iw = property_p_witness_interval(Rational(1, 4));
  REQUIRE(iw.closed_interval);
  CHECK(iw.closed_interval->first == Rational(1, 4));
  CHECK(iw.closed_interval->second == Rational(3, 4));
  // The interval [eps, 1 - eps] does not satisfy the identity: the pair (eps/2, 1 - eps/2)
  // is far apart yet lies outside it.
  auto bad = interval_property_p_violation(Rational(1, 4), Rational(1, 4), Rational(3, 4), 8);
  REQUIRE(bad);
  CHECK(bad->first == Rational(1, 8));
  CHECK(bad->second == Rational(3, 8));
  CHECK(interval_property_p_violation(Rational(1, 4), Rational(1, 8), Rational(7, 8), 8) == std::nullopt);
}

TEST_CASE("boxes and covers from text")
{
  auto b = parse_box("0..1/2 x 3/4..5/4");
  CHECK(b.contains(TorusPoint({1, 0}, 4)));
  CHECK(b.contains(TorusPoint({1, 7}, 8)));
  CHECK_FALSE(b.contains(TorusPoint({1, 1}, 2)));
  CHECK_THROWS_AS(parse_box("1/2..1/4 x 0..1"), std::invalid_argument);

  Space t = TorusSpace{2};
  auto u = parse_cover(t, "L: 0..1/2 x 0..1\nR: 1/2..1 x 0..1\n");
  CHECK(u.size() == 2);
  CHECK(covers(t, u));
  CHECK_NOTHROW(validate_cover(t, u));
  auto gap = parse_cover(t, "L: 0..1/2 x 0..1\n");
  CHECK_FALSE(covers(t, gap));
  CHECK_THROWS_AS(validate_cover(t, gap), std::invalid_argument);

  Space x = parse_topology("a b c\na\na,b\n");
  CHECK_THROWS_AS(validate_cover(x, parse_cover(x, "U: b\nV: a c\n")), std::invalid_argument);
  CHECK_NOTHROW(validate_cover(x, parse_cover(x, "U: a b\nV: a b c\n")));
}

TEST_CASE("arc intersections")
{
  Arc a(Rational(3, 4), Rational(1, 2));  // wraps through 0
  Arc b(0, Rational(1, 2));
  auto i = intersect(a, b);
  REQUIRE(i.size() == 1);
  CHECK(i[0] == Arc(0, Rational(1, 4)));
  CHECK(intersect(Arc(0, Rational(1, 4)), Arc(Rational(1, 2), Rational(1, 4))).empty());
  CHECK(intersect(Arc(0, 1), a) == std::vector<Arc>{a});
}
