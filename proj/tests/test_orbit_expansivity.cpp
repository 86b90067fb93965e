#include "doctest.h"

#include <random>
#include <stdexcept>

#include "expansia/orbit_expansivity.hpp"
#include "expansia/random_models.hpp"
#include "oracles.hpp"

using namespace expansia;

namespace {

const IntMatrix kB{{-1, 1}, {0, 1}};
const IntMatrix kBC{{2, 1}, {1, 1}};

OpenCover quarter_boxes()
{
  std::vector<Box> boxes;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      boxes.push_back(Box{{Arc(Rational(i, 4), Rational(1, 4)), Arc(Rational(j, 4), Rational(1, 4))}});
  return torus_box_cover(boxes);
}

OpenCover singletons(std::size_t n)
{
  std::vector<PointSet> s;
  for (std::size_t x = 0; x < n; ++x)
    s.push_back(singleton(x));
  return finite_cover(s);
}

std::vector<PointSet> sorted_sets(const OpenCover& u)
{
  auto s = oracle::member_sets(u);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Action cyclic_on(std::size_t n, Space s)
{
  std::vector<std::uint32_t> rot;
  for (std::size_t i = 0; i < n; ++i)
    rot.push_back(static_cast<std::uint32_t>((i + 1) % n));
  return Action(GroupPresentation::from_permutations({{"r", Permutation(rot)}}), std::move(s));
}

}  // namespace

TEST_CASE("bounded by a member")
{
  auto boxes = quarter_boxes();
  CHECK(prec({Point(TorusPoint({1, 2}, 7))}, boxes));
  CHECK_FALSE(prec({Point(TorusPoint::origin(2)), Point(TorusPoint({1, 1}, 2))}, boxes));
  CHECK(prec({Point(TorusPoint::origin(2)), Point(TorusPoint({1, 1}, 2))}, parse_cover(TorusSpace{2}, "X: 0..1 x 0..1")));
}

TEST_CASE("verifying orbit expansive covers")
{
  SUBCASE("singletons of a discrete pair")
  {
    Action a(GroupPresentation::from_permutations({{"t", Permutation({1, 0})}}), FiniteTopSpace::discrete(2));
    auto v = verify_orbit_expansive(a, singletons(2), 4);
    CHECK(v.kind == OrbitCoverKind::DecidedExpansiveCover);
    CHECK(exit_code(v) == 0);
  }
  SUBCASE("the whole space never separates")
  {
    Action a(GroupPresentation::from_permutations({{"t", Permutation({1, 2, 0})}}), FiniteMetricSpace::discrete(3));
    auto v = verify_orbit_expansive(a, finite_cover({0b111}), 4);
    CHECK(v.kind == OrbitCoverKind::Refuted);
    CHECK(v.exact);
    REQUIRE(v.pair);
    CHECK(v.pair->first != v.pair->second);
    CHECK(exit_code(v) == 1);
  }
  SUBCASE("quarter boxes under BC")
  {
    Action a(GroupPresentation::from_matrices({{"BC", kBC}}), TorusSpace{2});
    auto v = verify_orbit_expansive(a, quarter_boxes(), 8, Sampler{20});
    CHECK(v.kind == OrbitCoverKind::VerifiedAtDepth);
    CHECK(v.depth == 8);
  }
  SUBCASE("quarter boxes under B")
  {
    Action a(GroupPresentation::from_matrices({{"B", kB}}), TorusSpace{2});
    auto v = verify_orbit_expansive(a, quarter_boxes(), 8, Sampler{20});
    CHECK(v.kind == OrbitCoverKind::Refuted);
    CHECK_FALSE(v.exact);
  }
  SUBCASE("a family with gaps is rejected")
  {
    Action a(GroupPresentation::from_permutations({{"t", Permutation({1, 0})}}), FiniteTopSpace::discrete(2));
    CHECK_THROWS_AS(verify_orbit_expansive(a, finite_cover({0b01}), 4), std::invalid_argument);
  }
}

TEST_CASE("exact verification matches the definition")
{
  std::mt19937_64 rng(53);
  for (int k = 0; k < 200; ++k) {
    auto a = k % 2 ? random_metric_action(rng) : random_topological_action(rng);
    auto u = random_cover(rng, a.space());
    CHECK(is_orbit_expansive_cover(a, u) == oracle::orbit_expansive(a, oracle::member_sets(u)));
  }
}

TEST_CASE("deciding finite spaces")
{
  Action id(GroupPresentation::from_permutations({{"e", Permutation({0, 1})}}), FiniteTopSpace::discrete(2));
  CHECK(decide_orbit_expansive_finite(id).expansive);

  FiniteTopSpace sierpinski({"a", "b"}, {singleton(0)});
  Action s(GroupPresentation::from_permutations({{"e", Permutation({0, 1})}}), sierpinski);
  auto d = decide_orbit_expansive_finite(s);
  CHECK_FALSE(d.expansive);
  CHECK(sorted_sets(d.cover) == std::vector<PointSet>{0b01, 0b11});

  // Expansive exactly when the minimal neighbourhoods are; and then the space is T1.
  std::mt19937_64 rng(59);
  for (int k = 0; k < 300; ++k) {
    auto a = random_topological_action(rng);
    const auto& x = std::get<FiniteTopSpace>(a.space());
    std::vector<PointSet> minimal;
    for (std::size_t p = 0; p < x.size(); ++p)
      minimal.push_back(x.minimal_neighborhood(p));
    auto dec = decide_orbit_expansive_finite(a);
    CHECK(dec.expansive == oracle::orbit_expansive(a, minimal));
    if (dec.expansive)
      CHECK(oracle::t1(x));
  }
}

TEST_CASE("covers from constants")
{
  SUBCASE("large constant on a finite space")
  {
    Action a(GroupPresentation::from_permutations({{"t", Permutation({1, 0, 2})}}), FiniteMetricSpace::discrete(3));
    auto u = cover_from_constant(a, Rational(3));
    CHECK(u.size() == 3);
    for (const auto& m : u.members)
      CHECK(m.points() == 0b111);
  }
  SUBCASE("arcs on the circle")
  {
    Action a(GroupPresentation::from_matrices({{"m", IntMatrix{{-1}}}}), TorusSpace{1});
    auto u = cover_from_constant(a, Rational(1, 2), 8);
    CHECK(u.size() == 8);
    CHECK(covers(a.space(), u));
    for (std::size_t i = 0; i < u.size(); ++i)
      CHECK(u.members[i].contains(Point(TorusPoint({static_cast<std::int64_t>(i)}, 8))));
    CHECK_THROWS_AS(cover_from_constant(a, Rational(1, 10), 4), std::invalid_argument);
  }
  SUBCASE("certified constants give verified covers")
  {
    std::mt19937_64 rng(61);
    for (int k = 0; k < 100; ++k) {
      auto a = random_metric_action(rng);
      auto c = oracle::sup_constant(a) * Rational(2, 3);
      REQUIRE(oracle::expansive(a, c));
      auto u = cover_from_constant(a, c);
      CHECK(oracle::orbit_expansive(a, oracle::member_sets(u)));
      CHECK(constant_from_cover(a.space(), u) > 0);
    }
  }
}

TEST_CASE("constants from covers")
{
  auto m = FiniteMetricSpace::discrete(3);
  CHECK(constant_from_cover(m, finite_cover({0b111})) == Rational(2, 3));

  Action a(GroupPresentation::from_permutations({{"r", Permutation({1, 2, 0})}}), m);
  auto u = singletons(3);
  REQUIRE(is_orbit_expansive_cover(a, u));
  auto c = constant_from_cover(m, u);
  CHECK(c == Rational(1, 3));
  CHECK(oracle::expansive(a, c));

  std::mt19937_64 rng(67);
  for (int k = 0; k < 150; ++k) {
    auto f = random_metric_action(rng);
    auto v = random_cover(rng, f.space());
    if (!oracle::orbit_expansive(f, oracle::member_sets(v)))
      continue;
    CHECK(oracle::expansive(f, constant_from_cover(f.space(), v)));
  }
}

TEST_CASE("image covers")
{
  SUBCASE("empty word")
  {
    Action a(GroupPresentation::from_permutations({{"r", Permutation({1, 2, 0})}}), FiniteMetricSpace::discrete(3));
    auto u = finite_cover({0b011, 0b100});
    CHECK(sorted_sets(image_cover(a, u, Word{})) == sorted_sets(u));
  }
  SUBCASE("finite models")
  {
    std::mt19937_64 rng(71);
    for (int k = 0; k < 150; ++k) {
      auto a = random_metric_action(rng);
      auto u = random_cover(rng, a.space());
      Word w{{rng() % a.group().generators().size(), rng() % a.group().generators().size()}};
      auto img = image_cover(a, u, w);
      auto p = canonicalize(a.group(), w).permutation();
      for (std::size_t i = 0; i < u.size(); ++i) {
        PointSet want = 0;
        for (auto x : members(u.members[i].points()))
          want |= singleton(p(x));
        CHECK(img.members[i].points() == want);
      }
      CHECK(oracle::orbit_expansive(a, oracle::member_sets(img)) == oracle::orbit_expansive(a, oracle::member_sets(u)));
    }
  }
  SUBCASE("sheared boxes on the torus")
  {
    Action a(GroupPresentation::from_matrices({{"B", kB}}), TorusSpace{2});
    auto u = quarter_boxes();
    auto img = image_cover(a, u, Word{{0}});
    REQUIRE(img.size() == u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::int64_t x = 0; x < 12; ++x)
        for (std::int64_t y = 0; y < 12; ++y) {
          TorusPoint p({x, y}, 12);
          // p lies in B(U) exactly when B^-1 p lies in U.
          CHECK(img.members[i].contains(Point(p)) == u.members[i].contains(Point(p.mapped(kB.inverse()))));
        }
  }
}

TEST_CASE("covers for finite-index subgroups")
{
  SUBCASE("whole group")
  {
    auto a = cyclic_on(6, FiniteMetricSpace::discrete(6));
    auto u = finite_cover({0b000111, 0b111000, 0b100001});
    CHECK(sorted_sets(subgroup_cover(u, a, {Word{}})) == sorted_sets(u));
  }
  SUBCASE("even rotations of a hexagon")
  {
    auto a = cyclic_on(6, FiniteMetricSpace::discrete(6));
    Subgroup h(a.group(), {a.group().parse_word("r r")});
    auto t = coset_transversal(h, 8);
    REQUIRE(t);
    REQUIRE(t->representatives.size() == 2);
    auto r = restrict_to_subgroup(a, h);
    for (auto mode : {SubgroupCoverMode::Join, SubgroupCoverMode::Union}) {
      auto v = subgroup_cover(singletons(6), a, t->representatives, mode);
      CHECK(v.size() == 6);
      CHECK(is_orbit_expansive_cover(r, v));
    }
  }
  SUBCASE("the union of translated covers can fail")
  {
    // Points a b c d, sigma = (a b)(c d), H trivial. U is orbit expansive for <sigma>,
    // but U together with sigma^-1 U puts b and d in one member.
    auto g = GroupPresentation::from_permutations({{"s", Permutation({1, 0, 3, 2})}});
    Action a(g, FiniteTopSpace::discrete(4));
    auto u = finite_cover({0b0101, 0b0010, 0b1000});
    REQUIRE(is_orbit_expansive_cover(a, u));
    Subgroup trivial(g, {g.parse_word("s s")});
    auto t = coset_transversal(trivial, 8);
    REQUIRE(t);
    REQUIRE(t->representatives.size() == 2);
    auto r = restrict_to_subgroup(a, trivial);

    auto uni = subgroup_cover(u, a, t->representatives, SubgroupCoverMode::Union);
    CHECK(uni.size() <= t->representatives.size() * u.size());
    CHECK_FALSE(is_orbit_expansive_cover(r, uni));
    CHECK_FALSE(oracle::orbit_expansive(r, oracle::member_sets(uni)));

    auto join = subgroup_cover(u, a, t->representatives);
    CHECK(is_orbit_expansive_cover(r, join));
    CHECK(oracle::orbit_expansive(r, oracle::member_sets(join)));
  }
  SUBCASE("join covers on random models")
  {
    std::mt19937_64 rng(73);
    RandomModelOptions opts;
    opts.max_points = 6;
    int checked = 0;
    for (int k = 0; k < 150; ++k) {
      auto a = random_metric_action(rng, opts);
      auto u = random_cover(rng, a.space());
      if (!oracle::orbit_expansive(a, oracle::member_sets(u)))
        continue;
      Subgroup h(a.group(), {Word{{0, 0}}});
      auto t = coset_transversal(h, 64);
      REQUIRE(t);
      auto r = restrict_to_subgroup(a, h);
      CHECK(oracle::orbit_expansive(r, oracle::member_sets(subgroup_cover(u, a, t->representatives))));
      ++checked;
    }
    CHECK(checked > 20);
  }
}

TEST_CASE("closure under refinement, join, conjugacy and traces")
{
  std::mt19937_64 rng(79);
  for (int k = 0; k < 150; ++k) {
    auto a = random_metric_action(rng);
    auto u = random_cover(rng, a.space());
    bool oe = oracle::orbit_expansive(a, oracle::member_sets(u));
    auto v = random_cover(rng, a.space());
    if (oe)
      CHECK(is_orbit_expansive_cover(a, cover_join(u, v)));
    if (oe && refines(v, u))
      CHECK(is_orbit_expansive_cover(a, v));

    ConjugacyWitness h{random_permutation(rng, finite_size(a.space())), std::nullopt};
    CHECK(is_orbit_expansive_cover(conjugate_action(a, h), map_cover(h, u)) == oe);
  }
}

TEST_CASE("twin of a fixed point")
{
  // Three discrete points, a transposition fixing x0, singleton cover.
  Action a(GroupPresentation::from_permutations({{"t", Permutation({0, 2, 1})}}), FiniteTopSpace::discrete(3));
  auto ex = doubled_point_example(a, 0, singletons(3));
  CHECK(ex.space.size() == 4);
  CHECK(ex.cover.size() == 4);
  CHECK(ex.x1 == 3);
  CHECK(ex.t1);
  CHECK(is_T1(ex.space));
  CHECK(ex.cover_verified);
  CHECK(oracle::orbit_expansive(ex.action, oracle::member_sets(ex.cover)));
  CHECK(decide_orbit_expansive_finite(ex.action).expansive);
  // On a finite space the twin is separated from x0 by {x0} and {x1}, so the result is
  // discrete and Hausdorff rather than a non-Hausdorff T1 space.
  CHECK(ex.space.is_open(singleton(ex.x1)));
  CHECK_FALSE(ex.hausdorff_violation);
  CHECK(oracle::hausdorff(ex.space));

  CHECK_THROWS_AS(doubled_point_example(a, 1, singletons(3)), std::invalid_argument);
}
