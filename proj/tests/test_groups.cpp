#include "doctest.h"

#include <stdexcept>

#include "expansia/groups.hpp"
#include "oracles.hpp"

using namespace expansia;

namespace {

const IntMatrix kB{{-1, 1}, {0, 1}};
const IntMatrix kC{{-1, 0}, {1, 1}};

GroupPresentation cyclic(std::size_t n)
{
  std::vector<std::uint32_t> shift;
  for (std::size_t i = 0; i < n; ++i)
    shift.push_back(static_cast<std::uint32_t>((i + 1) % n));
  return GroupPresentation::from_permutations({{"r", Permutation(shift)}});
}

std::set<Element> ball_set(const CayleyBall& b)
{
  std::set<Element> out;
  for (const auto& e : b.entries)
    out.insert(e.element);
  return out;
}

}  // namespace

TEST_CASE("inverse generators")
{
  auto g = GroupPresentation::from_matrices({{"B", kB}, {"U", IntMatrix{{1, 1}, {0, 1}}}});
  // B squares to the identity and gets no separate inverse.
  REQUIRE(g.generators().size() == 3);
  CHECK(g.generators()[0].inverse_id == 0);
  CHECK(g.generators()[2].name == "U^-1");
  CHECK(g.rank() == 2);
  CHECK_THROWS_AS(GroupPresentation::from_matrices({{"D", IntMatrix::scalar(2, 2)}}), std::invalid_argument);
}

TEST_CASE("canonicalize")
{
  auto g = GroupPresentation::from_matrices({{"B", kB}, {"C", kC}});
  CHECK(canonicalize(g, Word{}).matrix() == IntMatrix::identity(2));
  CHECK(canonicalize(g, g.parse_word("B B")).matrix() == IntMatrix::identity(2));
  CHECK(canonicalize(g, g.parse_word("B C")).matrix() == IntMatrix{{2, 1}, {1, 1}});
  CHECK(canonicalize(g, g.parse_word("B C")).matrix() == oracle::multiply(kB, kC));
  CHECK_THROWS_AS(canonicalize(g, Word{{7}}), std::out_of_range);
  CHECK_THROWS_AS(g.parse_word("B Q"), std::out_of_range);
  CHECK(g.parse_word("e").empty());
  CHECK(g.format_word(g.parse_word("C B")) == "C B");
}

TEST_CASE("cayley balls match word enumeration")
{
  SUBCASE("5-cycle wraps")
  {
    auto g = cyclic(5);
    auto ball = cayley_ball(g, 2);
    CHECK(ball.entries.size() == 5);
    auto want = oracle::words_upto(oracle::generator_perms(g), Permutation::identity(5), 2, oracle::compose);
    CHECK(want.size() == 5);
  }
  SUBCASE("free cyclic group by a shear")
  {
    auto g = GroupPresentation::from_matrices({{"U", IntMatrix{{1, 1}, {0, 1}}}});
    auto ball = cayley_ball(g, 3);
    CHECK(ball.entries.size() == 7);
    CHECK_FALSE(ball.exhausted);
  }
  SUBCASE("B and C are involutions")
  {
    auto g = GroupPresentation::from_matrices({{"B", kB}, {"C", kC}});
    auto ball = cayley_ball(g, 1);
    CHECK(ball_set(ball) == std::set<Element>{IntMatrix::identity(2), kB, kC});
    std::vector<IntMatrix> letters{kB, kC};
    for (std::size_t n = 0; n <= 5; ++n)
      CHECK(cayley_ball(g, n).entries.size() ==
            oracle::words_upto(letters, IntMatrix::identity(2), n, oracle::multiply).size());
  }
  SUBCASE("witnesses are shortest and evaluate to their element")
  {
    auto g = GroupPresentation::from_matrices({{"B", kB}, {"C", kC}});
    auto ball = cayley_ball(g, 4);
    for (std::size_t i = 0; i < ball.entries.size(); ++i) {
      CHECK(canonicalize(g, ball.entries[i].witness) == ball.entries[i].element);
      if (i > 0)
        CHECK(ball.entries[i - 1].witness < ball.entries[i].witness);
    }
  }
}

TEST_CASE("image group of a permutation presentation")
{
  auto g = GroupPresentation::from_permutations({{"a", Permutation({1, 0, 2, 3})}, {"b", Permutation({1, 2, 3, 0})}});
  auto all = image_group(g);
  REQUIRE(all);
  CHECK(all->exhausted);
  CHECK(all->entries.size() == oracle::all_elements(g).size());
  CHECK(all->entries.size() == 24);
}

TEST_CASE("syndetic witnesses")
{
  auto g = cyclic(6);
  Subgroup even(g, {g.parse_word("r r")});

  CHECK(verify_syndetic_witness(even, {{Word{}, g.parse_word("r")}}, {6, 8}).certified());

  auto v = verify_syndetic_witness(even, {{Word{}}}, {2, 8});
  CHECK(v.falsified());
  REQUIRE(v.word);
  CHECK(g.format_word(*v.word) == "r");

  CHECK_THROWS_AS(verify_syndetic_witness(even, {{}}, {2, 8}), std::invalid_argument);

  SUBCASE("bounded membership never falsifies")
  {
    auto bc = GroupPresentation::from_matrices({{"B", kB}, {"C", kC}});
    Subgroup h(bc, {bc.parse_word("B C")});
    auto w = verify_syndetic_witness(h, {{Word{}, bc.parse_word("B")}}, {3, 8});
    CHECK_FALSE(w.falsified());
  }
}

TEST_CASE("syndetic verdict agrees with a brute-force check")
{
  // Kg meets H for every g of the finite image group.
  auto g = cyclic(6);
  auto all = oracle::all_elements(g);
  for (const char* hw : {"r r", "r r r"}) {
    Subgroup h(g, {g.parse_word(hw)});
    auto hset = oracle::closure({canonicalize(g, g.parse_word(hw)).permutation()}, 6);
    for (const char* kw : {"e", "r", "r^-1"}) {
      std::vector<Word> k{Word{}, g.parse_word(kw)};
      bool want = true;
      for (const auto& x : all) {
        bool hit = false;
        for (const auto& w : k)
          hit = hit || hset.count(oracle::compose(canonicalize(g, w).permutation(), x));
        want = want && hit;
      }
      CHECK(verify_syndetic_witness(h, {k}, {6, 8}).certified() == want);
    }
  }
}

TEST_CASE("coset transversals")
{
  auto g = cyclic(6);
  auto t2 = coset_transversal(Subgroup(g, {g.parse_word("r r")}), 8);
  REQUIRE(t2);
  CHECK(t2->exact);
  CHECK(t2->representatives == std::vector<Word>{Word{}, g.parse_word("r")});

  auto whole = coset_transversal(Subgroup(g, {g.parse_word("r")}), 8);
  REQUIRE(whole);
  CHECK(whole->representatives == std::vector<Word>{Word{}});

  auto t3 = coset_transversal(Subgroup(g, {g.parse_word("r r r")}), 8);
  REQUIRE(t3);
  CHECK(t3->representatives.size() == 3);
  CHECK(t3->representatives.size() * 2 == oracle::all_elements(g).size());
}
