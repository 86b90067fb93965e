#pragma once

// Seeded generators of small finite models for property checks.

#include <cstddef>
#include <random>

#include "expansia/actions.hpp"

namespace expansia {

struct RandomModelOptions {
  std::size_t min_points = 2;
  std::size_t max_points = 8;
  std::size_t max_generators = 3;
};

Permutation random_permutation(std::mt19937_64& rng, std::size_t n);

/// Shortest-path metric of a random weighted complete graph, acted on by random
/// permutations.
Action random_metric_action(std::mt19937_64& rng, const RandomModelOptions& opts = {});

/// Topology generated by the orbit of a few random sets under a random permutation
/// group, so that every generator maps opens to opens. Roughly one model in four is
/// discrete.
Action random_topological_action(std::mt19937_64& rng, const RandomModelOptions& opts = {});

/// Random open cover: unions of minimal neighbourhoods (arbitrary subsets on metric
/// spaces), topped up until every point is covered.
OpenCover random_cover(std::mt19937_64& rng, const Space& s, std::size_t max_members = 6);

}  // namespace expansia
