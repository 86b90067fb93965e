#include "expansia/orbit_expansivity.hpp"

#include <algorithm>
#include <stdexcept>

#include "orbit_model.hpp"

namespace expansia {

std::string to_string(OrbitCoverKind k)
{
  switch (k) {
    case OrbitCoverKind::VerifiedAtDepth:
      return "VerifiedAtDepth";
    case OrbitCoverKind::Refuted:
      return "Refuted";
    case OrbitCoverKind::DecidedExpansiveCover:
      return "DecidedExpansiveCover";
  }
  return "?";
}

int exit_code(const OrbitCoverVerdict& v) { return v.verified() ? 0 : 1; }

bool prec(const std::vector<Point>& points, const OpenCover& u)
{
  return std::any_of(u.members.begin(), u.members.end(), [&](const CoverSet& m) {
    return std::all_of(points.begin(), points.end(), [&](const Point& p) { return m.contains(p); });
  });
}

namespace {

// Bitset of members containing each point of the universe.
class MemberMasks {
 public:
  MemberMasks(const detail::Universe& u, const OpenCover& cover)
      : blocks_((cover.size() + 63) / 64), bits_(u.size() * blocks_, 0)
  {
    for (std::size_t i = 0; i < u.size(); ++i) {
      auto p = u.point(i);
      for (std::size_t m = 0; m < cover.size(); ++m)
        if (cover.members[m].contains(p))
          bits_[i * blocks_ + m / 64] |= std::uint64_t{1} << (m % 64);
    }
  }

  bool cobounded(std::size_t i, std::size_t j) const
  {
    for (std::size_t b = 0; b < blocks_; ++b)
      if (bits_[i * blocks_ + b] & bits_[j * blocks_ + b])
        return true;
    return false;
  }

 private:
  std::size_t blocks_;
  std::vector<std::uint64_t> bits_;
};

// Pairs whose whole orbit stays co-bounded: the largest set of co-bounded pairs closed
// under every generator. Returns the first surviving pair.
std::optional<std::pair<std::size_t, std::size_t>> surviving_pair(const Action& a, const detail::Universe& u,
                                                                  const MemberMasks& masks)
{
  const auto n = u.size();
  std::vector<std::vector<std::uint32_t>> gens;
  for (const auto& s : a.group().generators())
    gens.push_back(u.permutation(a.group().image(s.id)));
  std::vector<char> alive(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      alive[i * n + j] = i != j && masks.cobounded(i, j);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!alive[i * n + j])
          continue;
        for (const auto& p : gens)
          if (!alive[p[i] * n + p[j]]) {
            alive[i * n + j] = alive[j * n + i] = 0;
            changed = true;
            break;
          }
      }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (alive[i * n + j])
        return std::pair{i, j};
  return std::nullopt;
}

void require_cover(const Space& s, const OpenCover& u)
{
  if (u.members.empty() || !covers(s, u))
    throw std::invalid_argument("the family does not cover the space");
}

void require_finite(const Action& a, const char* what)
{
  if (a.on_torus())
    throw std::invalid_argument(std::string(what) + " needs a finite space");
}

CoverSet image_member(const Element& g, const CoverSet& m, std::string name)
{
  if (m.is_finite()) {
    PointSet out = 0;
    const auto& p = g.permutation();
    for (auto x : members(m.points()))
      out |= singleton(p(x));
    return {std::move(name), out};
  }
  const auto& r = m.region();
  const auto& mat = g.matrix();
  return {std::move(name), TorusRegion{mat * r.map, r.pullback * mat.inverse(), r.boxes}};
}

}  // namespace

OrbitCoverVerdict verify_orbit_expansive(const Action& a, const OpenCover& u, std::size_t depth,
                                         const Sampler& sampler)
{
  require_cover(a.space(), u);
  OrbitCoverVerdict v;
  v.depth = depth;
  if (!a.on_torus()) {
    auto uni = detail::Universe::finite(a);
    MemberMasks masks(uni, u);
    v.exact = true;
    if (auto p = surviving_pair(a, uni, masks)) {
      v.kind = OrbitCoverKind::Refuted;
      v.pair = std::pair{uni.point(p->first), uni.point(p->second)};
      v.reason = "orbits of the pair stay inside single members";
    } else {
      v.kind = OrbitCoverKind::DecidedExpansiveCover;
      v.reason = "no pair of distinct points is co-bounded along its whole orbit";
    }
    return v;
  }

  std::int64_t q = sampler.grid;
  if (sampler.subset) {
    q = 1;
    for (const auto& p : *sampler.subset)
      q = lcm_checked(q, std::get<TorusPoint>(p).denominator());
  }
  auto uni = detail::Universe::grid(a, q);
  MemberMasks masks(uni, u);
  auto table = detail::element_table(a, uni, depth);
  std::vector<std::size_t> idx;
  if (sampler.subset) {
    for (const auto& p : *sampler.subset)
      idx.push_back(*uni.index_of(p));
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  } else {
    idx.resize(uni.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      idx[i] = i;
  }
  for (std::size_t s = 0; s < idx.size(); ++s)
    for (std::size_t t = s + 1; t < idx.size(); ++t) {
      auto i = idx[s], j = idx[t];
      bool escapes = std::any_of(table.perms.begin(), table.perms.end(),
                                 [&](const auto& p) { return !masks.cobounded(p[i], p[j]); });
      if (!escapes) {
        v.kind = OrbitCoverKind::Refuted;
        v.pair = std::pair{uni.point(i), uni.point(j)};
        v.reason = "grid pair stays inside single members throughout the searched ball";
        return v;
      }
    }
  v.kind = OrbitCoverKind::VerifiedAtDepth;
  v.reason = "every sampled pair leaves the cover within the searched ball";
  return v;
}

bool is_orbit_expansive_cover(const Action& a, const OpenCover& u)
{
  require_finite(a, "the exact cover check");
  return verify_orbit_expansive(a, u, 0).verified();
}

FiniteOrbitDecision decide_orbit_expansive_finite(const Action& a)
{
  require_finite(a, "the orbit-expansivity decision");
  const auto n = finite_size(a.space());
  std::vector<PointSet> sets;
  for (std::size_t x = 0; x < n; ++x) {
    if (auto t = std::get_if<FiniteTopSpace>(&a.space()))
      sets.push_back(t->minimal_neighborhood(x));
    else
      sets.push_back(singleton(x));
  }
  FiniteOrbitDecision out;
  out.cover = finite_cover(sets, "N").deduplicated();
  out.expansive = is_orbit_expansive_cover(a, out.cover);
  return out;
}

OpenCover cover_from_constant(const Action& a, const Rational& c, std::int64_t q)
{
  if (c <= 0)
    throw std::invalid_argument("constant must be positive");
  const auto& s = a.space();
  if (auto m = std::get_if<FiniteMetricSpace>(&s)) {
    OpenCover out;
    for (std::size_t x = 0; x < m->size(); ++x) {
      PointSet ball = 0;
      for (std::size_t y = 0; y < m->size(); ++y)
        if (m->distance(x, y) < c / 2)
          ball |= singleton(y);
      out.members.push_back({"B(" + m->label(x) + ")", ball});
    }
    return out;
  }
  if (!a.on_torus())
    throw std::invalid_argument("cover_from_constant needs a metric space");
  if (q < 1)
    throw std::invalid_argument("grid denominator must be positive");
  const auto d = std::get<TorusSpace>(s).dim;
  const Rational r = c / 2;
  std::vector<Box> boxes;
  std::vector<std::int64_t> k(d, 0);
  while (true) {
    Box b;
    for (std::size_t i = 0; i < d; ++i)
      b.arcs.push_back(c >= 1 ? Arc(Rational(0), Rational(1)) : Arc(Rational(k[i], q) - r, c));
    boxes.push_back(std::move(b));
    std::size_t i = d;
    while (i > 0 && ++k[i - 1] == q)
      k[--i] = 0;
    if (i == 0)
      break;
  }
  auto out = torus_box_cover(boxes, "B");
  if (!covers(s, out)) {
    auto need = (c.denominator() + c.numerator() - 1) / c.numerator();
    throw std::invalid_argument("grid too coarse for boxes of side " + to_string(c) + ": need q >= " +
                                std::to_string(need));
  }
  return out;
}

Rational constant_from_cover(const Space& s, const OpenCover& u) { return lebesgue_number(s, u) / 3; }

OpenCover image_cover(const Action& a, const OpenCover& u, const Word& w)
{
  if (w.empty())
    return u;
  const auto g = canonicalize(a.group(), w);
  const auto prefix = a.group().format_word(w);
  OpenCover out;
  for (const auto& m : u.members)
    out.members.push_back(image_member(g, m, prefix + "(" + m.name + ")"));
  return out;
}

OpenCover subgroup_cover(const OpenCover& u, const Action& a, const std::vector<Word>& transversal,
                         SubgroupCoverMode mode)
{
  if (transversal.empty())
    throw std::invalid_argument("empty transversal");
  if (transversal.size() == 1 && transversal.front().empty())
    return u;
  std::vector<OpenCover> pulled;
  for (const auto& w : transversal)
    pulled.push_back(image_cover(a, u, a.group().inverse(w)));
  OpenCover out;
  if (mode == SubgroupCoverMode::Union) {
    for (auto& c : pulled)
      for (auto& m : c.members)
        out.members.push_back(std::move(m));
    return out.deduplicated();
  }
  if (a.on_torus())
    throw std::invalid_argument("joined subgroup covers are only available on finite spaces");
  out = pulled.front();
  for (std::size_t i = 1; i < pulled.size(); ++i)
    out = cover_join(out, pulled[i]);
  return out.deduplicated();
}

DoubledPointExample doubled_point_example(const Action& a, std::size_t x0, const OpenCover& u)
{
  require_finite(a, "the doubled-point construction");
  const auto n = finite_size(a.space());
  if (n + 1 > kMaxFinitePoints)
    throw std::invalid_argument("space too large to add a point");
  if (x0 >= n)
    throw std::invalid_argument("x0 is not a point of the space");
  const auto& g = a.group();
  for (const auto& s : g.generators())
    if (g.image(s.id).permutation()(x0) != x0)
      throw std::invalid_argument("x0 is not fixed by generator " + s.name);
  if (!is_orbit_expansive_cover(a, u))
    throw std::invalid_argument("the given cover is not orbit expansive");

  const std::size_t x1 = n;
  const PointSet b0 = singleton(x0), b1 = singleton(x1);
  std::vector<PointSet> opens;
  if (auto t = std::get_if<FiniteTopSpace>(&a.space()))
    opens = t->opens();
  else
    for (std::size_t x = 0; x < n; ++x)
      opens.push_back(singleton(x));
  std::vector<PointSet> family = opens;
  for (auto o : opens)
    if (o & b0) {
      family.push_back(o | b1);
      family.push_back((o & ~b0) | b1);
    }
  auto labels = finite_labels(a.space());
  labels.push_back(labels[x0] + "'");
  auto space = FiniteTopSpace::generated(labels, family);

  std::vector<std::pair<std::string, Permutation>> gens;
  for (const auto& s : g.generators()) {
    if (s.inverse_id < s.id)
      continue;
    auto img = g.image(s.id).permutation().images();
    img.push_back(static_cast<std::uint32_t>(x1));
    gens.emplace_back(s.name, Permutation(std::move(img)));
  }
  Action psi(GroupPresentation::from_permutations(gens), space);

  auto first = std::find_if(u.members.begin(), u.members.end(), [&](const CoverSet& m) { return m.contains(x0); });
  OpenCover v = u;
  v.members.push_back({first->name + "'", (first->points() & ~b0) | b1});

  DoubledPointExample out{space, psi, v, x0, x1, false, false, std::nullopt};
  out.t1 = is_T1(space);
  out.cover_verified = is_orbit_expansive_cover(psi, v);
  out.hausdorff_violation = hausdorff_violation(space);
  return out;
}

}  // namespace expansia
