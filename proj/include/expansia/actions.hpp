#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "expansia/groups.hpp"
#include "expansia/spaces.hpp"

namespace expansia {

/// A group presentation bound to a space: matrices act on the torus by x -> A x mod 1,
/// permutations act on the points of a finite space. On a finite topological space
/// every generator must map open sets to open sets.
class Action {
 public:
  Action(GroupPresentation group, Space space);

  const GroupPresentation& group() const noexcept { return group_; }
  const Space& space() const noexcept { return space_; }
  bool on_torus() const noexcept { return std::holds_alternative<TorusSpace>(space_); }

  /// Throws std::invalid_argument if p is not a point of the space.
  void validate_point(const Point& p) const;
  Point apply(const Element& e, const Point& p) const;

 private:
  GroupPresentation group_;
  Space space_;
};

/// Left action, letters applied right to left: apply_word(u v, x) = u(v(x)).
Point apply_word(const Action& a, const Word& w, const Point& x);

struct AxiomViolation {
  std::string axiom;
  Word word;
  Point point;
};

struct AxiomReport {
  std::vector<AxiomViolation> violations;
  std::size_t checks = 0;
  bool ok() const noexcept { return violations.empty(); }
};

/// Identity, inverse-letter cancellation, agreement with the representation, and
/// compatibility u(v(x)) = (uv)(x) over all sample words and points.
AxiomReport check_axioms(const Action& a, const std::vector<Word>& sample_words,
                         const std::vector<Point>& sample_points);

/// h : X -> Y. On the torus h(x) = P x mod 1 with P unimodular; on finite spaces an
/// explicit bijection of point indices. Without a target, Y carries the structure of X
/// transported along h.
struct ConjugacyWitness {
  std::variant<IntMatrix, Permutation> map;
  std::optional<Space> target;
};

Point map_point(const ConjugacyWitness& h, const Point& p);
/// h(U), member by member.
OpenCover map_cover(const ConjugacyWitness& h, const OpenCover& u);
/// psi_s = h phi_s h^-1 for every generator.
Action conjugate_action(const Action& a, const ConjugacyWitness& h);
ConjugacyWitness inverse(const ConjugacyWitness& h, const Space& source);

struct Restriction {
  Action action;
  /// Original point of each point of the restricted space.
  std::vector<Point> embedding;
};

/// Restriction to a finite invariant set: a subset of a finite space, or a finite set of
/// rational torus points (which becomes a finite metric space with the induced metric).
Restriction restrict_to_invariant(const Action& a, PointSet y);
Restriction restrict_to_invariant(const Action& a, const std::vector<TorusPoint>& y);

/// The action of a subgroup given by words in the acting group.
Action restrict_to_subgroup(const Action& a, const Subgroup& h);

/// Linear self-cover of the torus, x -> D x mod 1.
class CoveringMap {
 public:
  explicit CoveringMap(IntMatrix d);
  const IntMatrix& matrix() const noexcept { return d_; }
  std::int64_t degree() const { return d_.determinant() < 0 ? -d_.determinant() : d_.determinant(); }
  TorusPoint operator()(const TorusPoint& x) const { return x.mapped(d_); }

 private:
  IntMatrix d_;
};

struct SemiconjugacyReport {
  bool holds = true;
  std::vector<std::string> failing_generators;
};

/// D A_s = A'_s D for every generator s.
SemiconjugacyReport check_semiconjugacy(const CoveringMap& f, const Action& phi, const Action& psi);

/// All x with D x = y mod 1, sorted; exactly |det D| points.
std::vector<TorusPoint> covering_fiber(const CoveringMap& f, const TorusPoint& y);

/// Least torus norm of a nonzero class of D^-1 Z^d / Z^d; distinct points of one fiber
/// are at least this far apart. Requires |det D| >= 2.
Rational fiber_separation_beta(const CoveringMap& f);

}  // namespace expansia
