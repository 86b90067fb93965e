#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "expansia/actions.hpp"
#include "expansia/expansivity.hpp"
#include "expansia/spaces.hpp"

namespace expansia {

enum class OrbitCoverKind { VerifiedAtDepth, Refuted, DecidedExpansiveCover };

std::string to_string(OrbitCoverKind k);

struct OrbitCoverVerdict {
  OrbitCoverKind kind = OrbitCoverKind::Refuted;
  std::size_t depth = 0;
  /// Refuted: distinct points whose images stay inside single members.
  std::optional<std::pair<Point, Point>> pair;
  /// Refuted over the whole group rather than a searched ball.
  bool exact = false;
  std::string reason;

  bool verified() const noexcept { return kind != OrbitCoverKind::Refuted; }
};

/// 0 for either positive outcome, 1 for Refuted.
int exit_code(const OrbitCoverVerdict& v);

/// Some member of u contains every point.
bool prec(const std::vector<Point>& points, const OpenCover& u);

/// Finite spaces: exact, by a greatest fixed point over co-bounded pairs.
/// Torus: every sampled grid pair must leave the cover at some element of ball(depth).
OrbitCoverVerdict verify_orbit_expansive(const Action& a, const OpenCover& u, std::size_t depth,
                                         const Sampler& sampler = {});

/// Exact test on a finite space.
bool is_orbit_expansive_cover(const Action& a, const OpenCover& u);

struct FiniteOrbitDecision {
  bool expansive = false;
  /// Minimal open neighbourhoods (singletons on metric spaces), deduplicated.
  OpenCover cover;
};

/// The minimal-neighbourhood cover refines every open cover, so it alone decides.
FiniteOrbitDecision decide_orbit_expansive_finite(const Action& a);

/// Balls of radius c/2 about every point (finite spaces), or half-open boxes of side c
/// centred at the grid (1/q)Z^d on the torus. Throws when the grid leaves gaps.
OpenCover cover_from_constant(const Action& a, const Rational& c, std::int64_t q = 0);

/// lebesgue_number(u) / 3.
Rational constant_from_cover(const Space& s, const OpenCover& u);

/// Members phi_w(U_i).
OpenCover image_cover(const Action& a, const OpenCover& u, const Word& w);

enum class SubgroupCoverMode {
  /// Intersections of g_i^-1 U over all representatives: orbit expansive for H.
  Join,
  /// The family of all g_i^-1 U_m. Not orbit expansive for H in general.
  Union,
};

/// Cover for the restriction to a finite-index subgroup, built from left coset
/// representatives g_i (G = union of g_i H). Duplicates are removed.
OpenCover subgroup_cover(const OpenCover& u, const Action& a, const std::vector<Word>& transversal,
                         SubgroupCoverMode mode = SubgroupCoverMode::Join);

struct DoubledPointExample {
  FiniteTopSpace space;
  Action action;
  OpenCover cover;
  std::size_t x0 = 0;
  std::size_t x1 = 0;
  bool t1 = false;
  bool cover_verified = false;
  std::optional<std::pair<std::size_t, std::size_t>> hausdorff_violation;
};

/// Adds a twin x1 of the common fixed point x0: opens of X, U + x1 and U - x0 + x1 for
/// opens U containing x0. The action fixes x1, and the cover gains (U_n - x0) + x1
/// where U_n is the first member containing x0.
DoubledPointExample doubled_point_example(const Action& a, std::size_t x0, const OpenCover& u);

}  // namespace expansia
