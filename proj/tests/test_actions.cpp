#include "doctest.h"

#include <random>
#include <stdexcept>

#include "expansia/actions.hpp"
#include "oracles.hpp"

using namespace expansia;

namespace {

const IntMatrix kBC{{2, 1}, {1, 1}};

Action bc_action() { return Action(GroupPresentation::from_matrices({{"BC", kBC}}), TorusSpace{2}); }

Action three_cycle()
{
  return Action(GroupPresentation::from_permutations({{"s", Permutation({1, 2, 0})}}), FiniteMetricSpace::discrete(3));
}

std::vector<TorusPoint> orbit(const IntMatrix& a, TorusPoint x)
{
  std::vector<TorusPoint> out;
  while (std::find(out.begin(), out.end(), x) == out.end()) {
    out.push_back(x);
    x = x.mapped(a);
  }
  return out;
}

}  // namespace

TEST_CASE("applying words")
{
  auto a = bc_action();
  Point x = TorusPoint({1, 0}, 5);
  CHECK(apply_word(a, Word{}, x) == x);
  CHECK(apply_word(a, Word{{0}}, x) == Point(TorusPoint({2, 1}, 5)));
  CHECK(apply_word(a, Word{{0, 1}}, x) == x);

  auto p = three_cycle();
  CHECK(apply_word(p, Word{{0, 0, 0}}, Point(std::size_t{1})) == Point(std::size_t{1}));
  CHECK(apply_word(p, Word{{0}}, Point(std::size_t{1})) == Point(std::size_t{2}));

  // Letters act right to left.
  auto g = GroupPresentation::from_permutations({{"a", Permutation({1, 0, 2})}, {"b", Permutation({1, 2, 0})}});
  Action two(g, FiniteMetricSpace::discrete(3));
  auto ab = apply_word(two, g.parse_word("a b"), Point(std::size_t{0}));
  CHECK(ab == apply_word(two, g.parse_word("a"), apply_word(two, g.parse_word("b"), Point(std::size_t{0}))));
  CHECK(ab == Point(std::size_t{0}));

  CHECK_THROWS_AS(a.validate_point(Point(std::size_t{0})), std::invalid_argument);
  CHECK_THROWS_AS(p.validate_point(Point(std::size_t{3})), std::invalid_argument);
}

TEST_CASE("action axioms")
{
  SUBCASE("unimodular torus action")
  {
    auto g = GroupPresentation::from_matrices({{"B", IntMatrix{{-1, 1}, {0, 1}}}, {"C", IntMatrix{{-1, 0}, {1, 1}}}});
    Action a(g, TorusSpace{2});
    std::vector<Word> words{Word{}, Word{{0}}, Word{{1}}, Word{{0, 1}}, Word{{1, 0, 1}}};
    std::vector<Point> pts{TorusPoint({1, 0}, 5), TorusPoint({1, 2}, 3), TorusPoint({3, 7}, 11)};
    auto rep = check_axioms(a, words, pts);
    CHECK(rep.ok());
    CHECK(rep.checks > 0);
  }
  SUBCASE("planted wrong inverse")
  {
    std::vector<Generator> gens{{0, 1, "s"}, {1, 0, "s^-1"}};
    Permutation s({1, 2, 0});
    auto g = GroupPresentation::unchecked(gens, {Element(s), Element(s)});
    Action a(g, FiniteMetricSpace::discrete(3));
    auto rep = check_axioms(a, {Word{{0}}, Word{{0, 1}}}, {Point(std::size_t{0})});
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations.front().axiom == "inverse");
    CHECK(rep.violations.front().word == Word{{0, 1}});
  }
  SUBCASE("generator dropping an open set")
  {
    auto g = GroupPresentation::from_permutations({{"t", Permutation({1, 0})}});
    FiniteTopSpace sierpinski({"a", "b"}, {singleton(0)});
    CHECK_THROWS_AS(Action(g, sierpinski), std::invalid_argument);
  }
}

TEST_CASE("conjugate actions")
{
  auto a = bc_action();
  SUBCASE("identity")
  {
    auto b = conjugate_action(a, {IntMatrix::identity(2), std::nullopt});
    CHECK(b.group().image(0) == a.group().image(0));
  }
  SUBCASE("by a shear")
  {
    IntMatrix p{{1, 1}, {0, 1}};
    auto b = conjugate_action(a, {p, std::nullopt});
    auto m = b.group().image(0).matrix();
    CHECK(m == oracle::multiply(oracle::multiply(p, kBC), p.inverse()));
    CHECK(m.trace() == 3);
    CHECK(m.determinant() == 1);
    // h(phi(x)) = psi(h(x)) pointwise.
    ConjugacyWitness h{p, std::nullopt};
    for (int i = 0; i < 7; ++i) {
      Point x = TorusPoint({i, 2 * i + 1}, 7);
      CHECK(map_point(h, apply_word(a, Word{{0}}, x)) == apply_word(b, Word{{0}}, map_point(h, x)));
    }
  }
  SUBCASE("finite relabeling")
  {
    auto p = three_cycle();
    ConjugacyWitness h{Permutation({2, 0, 1}), std::nullopt};
    auto q = conjugate_action(p, h);
    for (std::size_t x = 0; x < 3; ++x)
      CHECK(map_point(h, apply_word(p, Word{{0}}, Point(x))) == apply_word(q, Word{{0}}, map_point(h, Point(x))));
    auto back = inverse(h, p.space());
    CHECK(map_point(back, map_point(h, Point(std::size_t{2}))) == Point(std::size_t{2}));
  }
}

TEST_CASE("restriction to invariant sets")
{
  SUBCASE("fixed points")
  {
    auto g = GroupPresentation::from_permutations({{"t", Permutation({0, 2, 1, 3})}});
    Action a(g, FiniteMetricSpace::discrete(4));
    auto r = restrict_to_invariant(a, singleton(0) | singleton(3));
    REQUIRE(r.embedding.size() == 2);
    CHECK(r.action.group().image(0).is_identity());
    CHECK_THROWS_AS(restrict_to_invariant(a, singleton(1)), std::invalid_argument);
  }
  SUBCASE("a periodic torus orbit")
  {
    auto a = bc_action();
    auto y = orbit(kBC, TorusPoint({1, 1}, 5));
    CHECK(y.size() == 10);
    auto r = restrict_to_invariant(a, y);
    CHECK(finite_size(r.action.space()) == y.size());
    const auto& m = std::get<FiniteMetricSpace>(r.action.space());
    for (std::size_t i = 0; i < y.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) {
        CHECK(m.distance(i, j) == torus_distance(std::get<TorusPoint>(r.embedding[i]), std::get<TorusPoint>(r.embedding[j])));
      }
    for (std::size_t i = 0; i < y.size(); ++i) {
      auto image = std::get<std::size_t>(apply_word(r.action, Word{{0}}, Point(i)));
      CHECK(r.embedding[image] == apply_word(a, Word{{0}}, r.embedding[i]));
    }
    y.pop_back();
    CHECK_THROWS_AS(restrict_to_invariant(a, y), std::invalid_argument);
  }
}

TEST_CASE("restriction to a subgroup")
{
  auto g = GroupPresentation::from_permutations({{"r", Permutation({1, 2, 3, 4, 5, 0})}});
  Action a(g, FiniteMetricSpace::discrete(6));
  auto r = restrict_to_subgroup(a, Subgroup(g, {g.parse_word("r r")}));
  CHECK(apply_word(r, Word{{0}}, Point(std::size_t{1})) == Point(std::size_t{3}));
}

TEST_CASE("semiconjugacy")
{
  auto a = bc_action();
  CHECK(check_semiconjugacy(CoveringMap(IntMatrix::scalar(2, 2)), a, a).holds);

  Action shear(GroupPresentation::from_matrices({{"A", IntMatrix{{1, 1}, {0, 1}}}}), TorusSpace{2});
  Action shear2(GroupPresentation::from_matrices({{"A", IntMatrix{{1, 2}, {0, 1}}}}), TorusSpace{2});
  CoveringMap d(IntMatrix{{1, 0}, {0, 2}});
  CHECK(d.matrix() * IntMatrix{{1, 1}, {0, 1}} == IntMatrix{{1, 1}, {0, 2}});
  CHECK(IntMatrix{{1, 2}, {0, 1}} * d.matrix() == IntMatrix{{1, 4}, {0, 2}});
  auto rep = check_semiconjugacy(d, shear, shear2);
  CHECK_FALSE(rep.holds);
  CHECK(rep.failing_generators == std::vector<std::string>{"A", "A^-1"});

  CoveringMap id(IntMatrix::identity(2));
  CHECK(check_semiconjugacy(id, shear, shear).holds);
  CHECK_FALSE(check_semiconjugacy(id, shear, shear2).holds);
}

TEST_CASE("covering fibers")
{
  CoveringMap two(IntMatrix::scalar(2, 2));
  auto f = covering_fiber(two, TorusPoint::origin(2));
  CHECK(f == std::vector<TorusPoint>{TorusPoint({0, 0}, 1), TorusPoint({0, 1}, 2), TorusPoint({1, 0}, 2),
                                     TorusPoint({1, 1}, 2)});

  TorusPoint y({2, 3}, 7);
  CHECK(covering_fiber(CoveringMap(IntMatrix::identity(2)), y) == std::vector<TorusPoint>{y});
  CoveringMap h(kBC);
  CHECK(covering_fiber(h, y) == std::vector<TorusPoint>{y.mapped(kBC.inverse())});

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> entry(-3, 3);
  for (int found = 0; found < 30;) {
    IntMatrix d{{entry(rng), entry(rng)}, {entry(rng), entry(rng)}};
    auto det = std::abs(d.determinant());
    if (det == 0 || det > 12)
      continue;
    ++found;
    TorusPoint y({entry(rng), entry(rng)}, 3);
    auto fib = covering_fiber(CoveringMap(d), y);
    CHECK(fib == oracle::fiber(d, y));
    CHECK(static_cast<std::int64_t>(fib.size()) == det);
  }
}

TEST_CASE("fiber separation")
{
  CHECK(fiber_separation_beta(CoveringMap(IntMatrix::scalar(2, 2))) == Rational(1, 2));
  CHECK(fiber_separation_beta(CoveringMap(IntMatrix::scalar(2, 3))) == Rational(1, 3));
  CHECK(fiber_separation_beta(CoveringMap(IntMatrix{{2, 0}, {0, 1}})) == Rational(1, 2));
  CHECK_THROWS_AS(fiber_separation_beta(CoveringMap(kBC)), std::invalid_argument);
  for (auto d : {IntMatrix{{2, 1}, {0, 3}}, IntMatrix{{3, 1}, {1, 2}}, IntMatrix{{4, 0}, {0, 1}}, IntMatrix{{1, 2}, {3, 1}}})
    CHECK(fiber_separation_beta(CoveringMap(d)) == oracle::beta(d));
}
