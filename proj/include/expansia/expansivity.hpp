#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "expansia/actions.hpp"
#include "expansia/groups.hpp"
#include "expansia/verdict.hpp"

namespace expansia {

/// g with d(g x, g y) > constant.
struct SeparationCertificate {
  Point x;
  Point y;
  Word word;
  Rational distance;
  Rational constant;

  /// Recomputes the orbit distance exactly.
  bool replays(const Action& a) const;
};

/// Which pairs a bounded search looks at.
struct Sampler {
  /// Torus grid denominator: points (1/q)Z^d / Z^d. Ignored on finite spaces.
  std::int64_t grid = 12;
  /// Restrict candidate points (finite indices, or torus points on a common grid).
  std::optional<std::vector<Point>> subset;
  /// When nonzero and smaller than the number of pairs, that many pairs are drawn with
  /// the seeded generator instead of scanning all of them.
  std::size_t max_pairs = 0;
  std::uint64_t seed = 0;
};

/// No eigenvalue of modulus one. Exact for d <= 2; floating point (tolerance 1e-9) above.
bool is_hyperbolic(const IntMatrix& a);

/// Certified if some element of the Cayley ball is hyperbolic. A cyclic group generated
/// by a non-hyperbolic matrix (d <= 2) is Falsified with a pair that stays within
/// `witness_constant` along the whole orbit.
Verdict certify_linear(const GroupPresentation& g, std::size_t search_depth,
                       const Rational& witness_constant = Rational(1, 100));

/// First element of the Cayley ball, in shortlex order, separating x and y beyond c.
std::optional<SeparationCertificate> find_separating_element(const Action& a, const Point& x, const Point& y,
                                                             const Rational& c, std::size_t depth);

/// Searches for a pair never separated beyond c within the ball. Exact on finite spaces
/// when every pair is sampled and the ball is the whole image group; a candidate otherwise.
Verdict falsify_expansive(const Action& a, const Rational& c, std::size_t depth, const Sampler& sampler = {});

struct SupEstimate {
  Rational lo;
  Rational hi;
  /// Least, over sampled pairs, of the largest separation seen within the ball.
  Rational threshold;
  std::optional<PairWitness> tightest;
};

/// Expansive constants below `threshold` survive the sampled evidence; lo and hi are
/// the neighbouring multiples of diameter / q.
SupEstimate estimate_sup_constant(const Action& a, std::size_t depth, std::int64_t q);

struct UniformBound {
  /// Smallest n with every sampled eps-apart pair separated beyond c inside ball(n).
  std::optional<std::size_t> n;
  std::optional<PairWitness> unresolved;
  /// ceil(log(c / eps) / log lambda_max) for a single hyperbolic 2x2 generator.
  std::optional<double> analytic;
};

UniformBound uniform_separation_bound(const Action& a, const Rational& c, const Rational& eps, std::size_t depth,
                                      const Sampler& sampler = {});

struct DynamicalBallSample {
  Point center;
  Rational constant;
  std::size_t depth = 0;
  std::vector<Point> points;
};

/// Points t of the grid (or finite space) with d(g x, g t) < c for all g in the ball.
DynamicalBallSample dynamical_ball(const Action& a, const Point& x, const Rational& c, std::size_t depth,
                                   std::int64_t q);

/// Common fixed points of all generators, or nullopt when every torus generator has
/// det(A - I) = 0 (possibly infinitely many).
std::optional<std::vector<Point>> fixed_points(const Action& a);

}  // namespace expansia
