#include "expansia/random_models.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace expansia {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi)
{
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<std::string> point_labels(std::size_t n)
{
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back("p" + std::to_string(i));
  return out;
}

GroupPresentation random_group(std::mt19937_64& rng, std::size_t n, std::size_t max_gens)
{
  std::vector<std::pair<std::string, Permutation>> gens;
  const auto k = pick(rng, 1, max_gens);
  for (std::size_t i = 0; i < k; ++i)
    gens.emplace_back("s" + std::to_string(i), random_permutation(rng, n));
  return GroupPresentation::from_permutations(gens);
}

PointSet random_subset(std::mt19937_64& rng, std::size_t n)
{
  PointSet s = 0;
  while (s == 0)
    s = std::uniform_int_distribution<PointSet>(0, full_set(n))(rng);
  return s;
}

PointSet image(const Permutation& p, PointSet s)
{
  PointSet out = 0;
  for (auto x : members(s))
    out |= singleton(p(x));
  return out;
}

}  // namespace

Permutation random_permutation(std::mt19937_64& rng, std::size_t n)
{
  std::vector<std::uint32_t> img(n);
  std::iota(img.begin(), img.end(), 0u);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(std::move(img));
}

Action random_metric_action(std::mt19937_64& rng, const RandomModelOptions& opts)
{
  const auto n = pick(rng, opts.min_points, opts.max_points);
  std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      w[i][j] = w[j][i] = static_cast<std::int64_t>(pick(rng, 1, 6));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        w[i][j] = std::min(w[i][j], w[i][k] + w[k][j]);
  const auto scale = static_cast<std::int64_t>(pick(rng, 1, 3));
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d[i][j] = Rational(w[i][j], scale);
  return Action(random_group(rng, n, opts.max_generators), FiniteMetricSpace(point_labels(n), std::move(d)));
}

Action random_topological_action(std::mt19937_64& rng, const RandomModelOptions& opts)
{
  const auto n = pick(rng, opts.min_points, opts.max_points);
  auto g = random_group(rng, n, opts.max_generators);
  std::vector<PointSet> seeds;
  if (pick(rng, 0, 3) == 0) {
    for (std::size_t x = 0; x < n; ++x)
      seeds.push_back(singleton(x));
  } else {
    const auto k = pick(rng, 1, 3);
    for (std::size_t i = 0; i < k; ++i)
      seeds.push_back(random_subset(rng, n));
  }
  // Close the seed family under the group so the generated topology is invariant.
  std::set<PointSet> family(seeds.begin(), seeds.end());
  std::vector<PointSet> todo(seeds.begin(), seeds.end());
  while (!todo.empty()) {
    auto s = todo.back();
    todo.pop_back();
    for (const auto& gen : g.generators()) {
      auto t = image(g.image(gen.id).permutation(), s);
      if (family.insert(t).second)
        todo.push_back(t);
    }
  }
  auto top = FiniteTopSpace::generated(point_labels(n), {family.begin(), family.end()});
  return Action(std::move(g), std::move(top));
}

OpenCover random_cover(std::mt19937_64& rng, const Space& s, std::size_t max_members)
{
  const auto n = finite_size(s);
  const auto* top = std::get_if<FiniteTopSpace>(&s);
  auto neighbourhood = [&](std::size_t x) { return top ? top->minimal_neighborhood(x) : singleton(x); };
  std::vector<PointSet> sets;
  const auto k = pick(rng, 1, max_members);
  for (std::size_t i = 0; i < k; ++i) {
    PointSet m = 0;
    for (auto x : members(random_subset(rng, n)))
      if (pick(rng, 0, 2) == 0 || m == 0)
        m |= neighbourhood(x);
    sets.push_back(m);
  }
  PointSet covered = 0;
  for (auto m : sets)
    covered |= m;
  for (std::size_t x = 0; x < n; ++x)
    if (!contains(covered, x)) {
      auto m = neighbourhood(x);
      sets.push_back(m);
      covered |= m;
    }
  return finite_cover(sets);
}

}  // namespace expansia
