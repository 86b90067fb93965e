#include "doctest.h"

#include <limits>
#include <set>
#include <stdexcept>

#include "expansia/linalg.hpp"
#include "expansia/point.hpp"
#include "expansia/rational.hpp"
#include "oracles.hpp"

using namespace expansia;

TEST_CASE("rational text round trip")
{
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-2/4") == Rational(-1, 2));
  CHECK(parse_rational("7") == 7);
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK(to_string(Rational(-1, 3)) == "-1/3");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1//2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("rational compared with integers terminates")
{
  Rational half(1, 2);
  CHECK(half != 0);
  CHECK_FALSE(half == 1);
  CHECK(Rational(3) == 3);
}

TEST_CASE("floor helpers")
{
  CHECK(floor_div(-7, 2) == -4);
  CHECK(mod_floor(-7, 3) == 2);
  CHECK(frac(Rational(-1, 3)) == Rational(2, 3));
  CHECK(lcm_checked(4, 6) == 12);
}

TEST_CASE("checked arithmetic overflows loudly")
{
  const auto big = std::numeric_limits<std::int64_t>::max();
  CHECK_THROWS_AS(checked_add(big, 1), std::overflow_error);
  CHECK_THROWS_AS(checked_mul(big / 2, 3), std::overflow_error);
  CHECK(checked_mul(-4, 5) == -20);
}

TEST_CASE("matrix parsing")
{
  auto b = parse_matrix("-1,1;0,1");
  CHECK(b == IntMatrix{{-1, 1}, {0, 1}});
  CHECK(to_string(b) == "-1,1;0,1");

  SUBCASE("ragged row reports its column")
  {
    try {
      parse_matrix("1,2;3");
      FAIL("accepted a ragged matrix");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("column 5") != std::string::npos);
    }
  }
  CHECK_THROWS_AS(parse_matrix("1,x;0,1"), std::invalid_argument);
}

TEST_CASE("matrix algebra against schoolbook products")
{
  IntMatrix b{{-1, 1}, {0, 1}}, c{{-1, 0}, {1, 1}};
  CHECK(b * c == oracle::multiply(b, c));
  CHECK(b * c == IntMatrix{{2, 1}, {1, 1}});
  CHECK((b * c).trace() == 3);
  CHECK((b * c).determinant() == 1);
  CHECK(b.determinant() == -1);
  CHECK(b.inverse() * b == IntMatrix::identity(2));
  CHECK_THROWS_AS(IntMatrix::scalar(2, 2).inverse(), std::domain_error);
  IntMatrix m3{{2, 1, 0}, {1, 1, 0}, {0, 0, 1}};
  CHECK(m3.determinant() == 1);
  CHECK(m3 * m3.inverse() == IntMatrix::identity(3));
}

TEST_CASE("permutations compose right to left")
{
  Permutation a({1, 2, 0}), b({1, 0, 2});
  CHECK((a * b)(0) == a(b(0)));
  CHECK(a * a * a == Permutation::identity(3));
  CHECK(a.inverse() * a == Permutation::identity(3));
  CHECK(parse_permutation("2,0,1") == Permutation({2, 0, 1}));
  CHECK_THROWS_AS(parse_permutation("0,0,1"), std::invalid_argument);
  CHECK(to_string(a) == "1,2,0");
}

TEST_CASE("lattice coset representatives count |det|")
{
  for (auto m : {IntMatrix{{2, 0}, {0, 3}}, IntMatrix{{1, 1}, {1, 0}}, IntMatrix{{3, 1}, {1, 2}}, IntMatrix{{2, 1}, {0, -2}}}) {
    auto reps = lattice_coset_representatives(m);
    auto det = std::abs(m.determinant());
    REQUIRE(static_cast<std::int64_t>(reps.size()) == det);
    // Representatives are pairwise inequivalent: v - w is never in M Z^2.
    auto adj = m.adjugate();
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j) {
        std::vector<std::int64_t> d{reps[i][0] - reps[j][0], reps[i][1] - reps[j][1]};
        auto w = adj.apply(d);
        CHECK_FALSE((w[0] % det == 0 && w[1] % det == 0));
      }
    auto h = hermite_lower(m);
    CHECK(std::abs(h.determinant()) == det);
    CHECK(h(0, 1) == 0);
  }
}

TEST_CASE("torus points are reduced")
{
  TorusPoint p({3, -1}, 2);
  CHECK(p == TorusPoint({1, 1}, 2));
  CHECK(to_string(TorusPoint({2, 4}, 8)) == "(1/4, 1/2)");
  CHECK(parse_torus_point("1/5,0") == TorusPoint({1, 0}, 5));
  CHECK(TorusPoint({1, 0}, 5).mapped(IntMatrix{{2, 1}, {1, 1}}) == TorusPoint({2, 1}, 5));
  CHECK(TorusPoint({1, 0}, 3) < TorusPoint({1, 0}, 2));
  CHECK(TorusPoint({0, 1}, 2) < TorusPoint({1, 0}, 3));
  CHECK_THROWS_AS(TorusPoint({1}, 0), std::invalid_argument);
}
