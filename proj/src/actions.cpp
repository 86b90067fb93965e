#include "expansia/actions.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace expansia {

namespace {

Permutation image_permutation(const Element& e) { return e.permutation(); }

PointSet map_set(const Permutation& p, PointSet s)
{
  PointSet out = 0;
  for (auto x : members(s))
    out |= singleton(p(x));
  return out;
}

Space transport(const Space& source, const Permutation& h)
{
  if (auto m = std::get_if<FiniteMetricSpace>(&source)) {
    const auto n = m->size();
    std::vector<std::string> labels(n);
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t x = 0; x < n; ++x) {
      labels[h(x)] = m->label(x);
      for (std::size_t y = 0; y < n; ++y)
        d[h(x)][h(y)] = m->distance(x, y);
    }
    return FiniteMetricSpace(std::move(labels), std::move(d));
  }
  const auto& t = std::get<FiniteTopSpace>(source);
  std::vector<std::string> labels(t.size());
  for (std::size_t x = 0; x < t.size(); ++x)
    labels[h(x)] = t.label(x);
  std::vector<PointSet> opens;
  for (auto s : t.opens())
    opens.push_back(map_set(h, s));
  return FiniteTopSpace(std::move(labels), std::move(opens));
}

}  // namespace

Action::Action(GroupPresentation group, Space space) : group_(std::move(group)), space_(std::move(space))
{
  if (on_torus()) {
    if (group_.kind() != RepKind::Matrix)
      throw std::invalid_argument("torus actions need a matrix representation");
    if (group_.degree() != std::get<TorusSpace>(space_).dim)
      throw std::invalid_argument("matrix size does not match the torus dimension");
    return;
  }
  if (group_.kind() != RepKind::Permutation)
    throw std::invalid_argument("finite-space actions need a permutation representation");
  if (group_.degree() != finite_size(space_))
    throw std::invalid_argument("permutation degree " + std::to_string(group_.degree()) +
                                " does not match the " + std::to_string(finite_size(space_)) + "-point space");
  if (auto t = std::get_if<FiniteTopSpace>(&space_)) {
    for (const auto& g : group_.generators()) {
      const auto& p = group_.image(g.id).permutation();
      for (auto s : t->opens())
        if (!t->is_open(map_set(p, s)))
          throw std::invalid_argument("generator " + g.name + " does not map open sets to open sets");
    }
  }
}

void Action::validate_point(const Point& p) const
{
  if (on_torus()) {
    auto t = std::get_if<TorusPoint>(&p);
    if (!t || t->dim() != std::get<TorusSpace>(space_).dim)
      throw std::invalid_argument("point is not on the " + std::to_string(std::get<TorusSpace>(space_).dim) +
                                  "-torus");
    return;
  }
  auto i = std::get_if<std::size_t>(&p);
  if (!i || *i >= finite_size(space_))
    throw std::invalid_argument("point is outside the finite space");
}

Point Action::apply(const Element& e, const Point& p) const
{
  if (on_torus())
    return std::get<TorusPoint>(p).mapped(e.matrix());
  return static_cast<std::size_t>(image_permutation(e)(std::get<std::size_t>(p)));
}

Point apply_word(const Action& a, const Word& w, const Point& x)
{
  a.validate_point(x);
  a.group().validate_word(w);
  Point cur = x;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    cur = a.apply(a.group().image(*it), cur);
  return cur;
}

AxiomReport check_axioms(const Action& a, const std::vector<Word>& sample_words,
                         const std::vector<Point>& sample_points)
{
  AxiomReport rep;
  const auto& g = a.group();
  auto check = [&](bool ok, const char* axiom, const Word& w, const Point& x) {
    ++rep.checks;
    if (!ok)
      rep.violations.push_back({axiom, w, x});
  };
  for (const auto& x : sample_points) {
    check(apply_word(a, Word{}, x) == x, "identity", Word{}, x);
    for (const auto& gen : g.generators()) {
      Word w{{gen.id, gen.inverse_id}};
      check(apply_word(a, w, x) == x, "inverse", w, x);
    }
    for (const auto& w : sample_words)
      check(apply_word(a, w, x) == a.apply(canonicalize(g, w), x), "representation", w, x);
    for (const auto& u : sample_words)
      for (const auto& v : sample_words)
        check(apply_word(a, u * v, x) == apply_word(a, u, apply_word(a, v, x)), "compatibility", u * v, x);
  }
  return rep;
}

Point map_point(const ConjugacyWitness& h, const Point& p)
{
  if (auto m = std::get_if<IntMatrix>(&h.map))
    return std::get<TorusPoint>(p).mapped(*m);
  return static_cast<std::size_t>(std::get<Permutation>(h.map)(std::get<std::size_t>(p)));
}

OpenCover map_cover(const ConjugacyWitness& h, const OpenCover& u)
{
  OpenCover out;
  for (const auto& m : u.members) {
    CoverSet c{"h(" + m.name + ")", m.shape};
    if (auto p = std::get_if<Permutation>(&h.map)) {
      c.shape = map_set(*p, m.points());
    } else {
      const auto& mat = std::get<IntMatrix>(h.map);
      TorusRegion r = m.region();
      r.map = mat * r.map;
      r.pullback = r.pullback * mat.inverse();
      c.shape = std::move(r);
    }
    out.members.push_back(std::move(c));
  }
  return out;
}

Action conjugate_action(const Action& a, const ConjugacyWitness& h)
{
  const auto& g = a.group();
  std::vector<Element> images;
  if (auto p = std::get_if<IntMatrix>(&h.map)) {
    if (!a.on_torus())
      throw std::invalid_argument("matrix conjugacy needs a torus action");
    if (!p->is_unimodular() || p->dim() != g.degree())
      throw std::invalid_argument("conjugacy matrix must be unimodular of matching size");
    auto pinv = p->inverse();
    for (const auto& gen : g.generators())
      images.emplace_back(*p * g.image(gen.id).matrix() * pinv);
    return Action(GroupPresentation::unchecked(g.generators(), images), h.target.value_or(a.space()));
  }
  if (a.on_torus())
    throw std::invalid_argument("finite bijection cannot conjugate a torus action");
  const auto& hp = std::get<Permutation>(h.map);
  if (hp.degree() != finite_size(a.space()))
    throw std::invalid_argument("conjugacy bijection has the wrong size");
  Space target = h.target ? *h.target : transport(a.space(), hp);
  if (finite_size(target) != hp.degree())
    throw std::invalid_argument("conjugacy target has the wrong size");
  if (auto src = std::get_if<FiniteTopSpace>(&a.space())) {
    const auto* dst = std::get_if<FiniteTopSpace>(&target);
    if (!dst || dst->opens().size() != src->opens().size())
      throw std::invalid_argument("conjugacy is not a homeomorphism");
    for (auto s : src->opens())
      if (!dst->is_open(map_set(hp, s)))
        throw std::invalid_argument("conjugacy does not map open sets to open sets");
  }
  auto hinv = hp.inverse();
  for (const auto& gen : g.generators())
    images.emplace_back(hp * g.image(gen.id).permutation() * hinv);
  return Action(GroupPresentation::unchecked(g.generators(), images), std::move(target));
}

ConjugacyWitness inverse(const ConjugacyWitness& h, const Space& source)
{
  if (auto m = std::get_if<IntMatrix>(&h.map))
    return {m->inverse(), source};
  return {std::get<Permutation>(h.map).inverse(), source};
}

Restriction restrict_to_invariant(const Action& a, PointSet y)
{
  if (a.on_torus())
    throw std::invalid_argument("torus restrictions take a list of rational points");
  const auto n = finite_size(a.space());
  y &= full_set(n);
  if (y == 0)
    throw std::invalid_argument("invariant set must be nonempty");
  const auto& g = a.group();
  for (const auto& gen : g.generators()) {
    const auto& p = g.image(gen.id).permutation();
    for (auto x : members(y))
      if (!contains(y, p(x)))
        throw std::invalid_argument("set is not invariant: generator " + gen.name + " maps " +
                                    finite_labels(a.space())[x] + " outside it");
  }
  auto idx = members(y);
  std::vector<std::uint32_t> renumber(n, 0);
  for (std::size_t k = 0; k < idx.size(); ++k)
    renumber[idx[k]] = static_cast<std::uint32_t>(k);
  std::vector<Element> images;
  for (const auto& gen : g.generators()) {
    const auto& p = g.image(gen.id).permutation();
    std::vector<std::uint32_t> q;
    for (auto x : idx)
      q.push_back(renumber[p(x)]);
    images.emplace_back(Permutation(std::move(q)));
  }
  Space sub = std::holds_alternative<FiniteMetricSpace>(a.space())
                  ? Space(std::get<FiniteMetricSpace>(a.space()).induced(y))
                  : Space(std::get<FiniteTopSpace>(a.space()).induced(y));
  std::vector<Point> embedding(idx.begin(), idx.end());
  return {Action(GroupPresentation::unchecked(g.generators(), images), std::move(sub)), std::move(embedding)};
}

Restriction restrict_to_invariant(const Action& a, const std::vector<TorusPoint>& y)
{
  if (!a.on_torus())
    throw std::invalid_argument("point-list restriction needs a torus action");
  std::vector<TorusPoint> pts = y;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty() || pts.size() > kMaxFinitePoints)
    throw std::invalid_argument("invariant point list must hold between 1 and 64 points");
  std::map<TorusPoint, std::uint32_t> index;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    a.validate_point(pts[i]);
    index[pts[i]] = static_cast<std::uint32_t>(i);
  }
  const auto& g = a.group();
  std::vector<Element> images;
  for (const auto& gen : g.generators()) {
    std::vector<std::uint32_t> q;
    for (const auto& x : pts) {
      auto it = index.find(x.mapped(g.image(gen.id).matrix()));
      if (it == index.end())
        throw std::invalid_argument("set is not invariant: generator " + gen.name + " maps " + to_string(x) +
                                    " outside it");
      q.push_back(it->second);
    }
    images.emplace_back(Permutation(std::move(q)));
  }
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> d(pts.size(), std::vector<Rational>(pts.size(), Rational(0)));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    labels.push_back(to_string(pts[i]));
    for (std::size_t j = 0; j < pts.size(); ++j)
      d[i][j] = torus_distance(pts[i], pts[j]);
  }
  std::vector<Point> embedding(pts.begin(), pts.end());
  return {Action(GroupPresentation::unchecked(g.generators(), images),
                 FiniteMetricSpace(std::move(labels), std::move(d))),
          std::move(embedding)};
}

Action restrict_to_subgroup(const Action& a, const Subgroup& h)
{
  if (h.parent.generators().size() != a.group().generators().size())
    throw std::invalid_argument("subgroup is not given in the acting group's letters");
  return Action(h.as_presentation(), a.space());
}

CoveringMap::CoveringMap(IntMatrix d) : d_(std::move(d))
{
  if (d_.dim() == 0 || d_.determinant() == 0)
    throw std::invalid_argument("covering map matrix must be nonsingular");
}

SemiconjugacyReport check_semiconjugacy(const CoveringMap& f, const Action& phi, const Action& psi)
{
  if (!phi.on_torus() || !psi.on_torus())
    throw std::invalid_argument("semiconjugacy check needs torus actions");
  const auto d = f.matrix().dim();
  if (phi.group().degree() != d || psi.group().degree() != d)
    throw std::invalid_argument("dimension mismatch between covering map and actions");
  const auto& gp = phi.group().generators();
  if (gp.size() != psi.group().generators().size())
    throw std::invalid_argument("actions have different generator counts");
  SemiconjugacyReport rep;
  for (const auto& gen : gp) {
    const auto& a = phi.group().image(gen.id).matrix();
    const auto& b = psi.group().image(gen.id).matrix();
    if (!(f.matrix() * a == b * f.matrix())) {
      rep.holds = false;
      rep.failing_generators.push_back(gen.name);
    }
  }
  return rep;
}

std::vector<TorusPoint> covering_fiber(const CoveringMap& f, const TorusPoint& y)
{
  const auto& d = f.matrix();
  if (y.dim() != d.dim())
    throw std::invalid_argument("point and covering map dimensions differ");
  auto det = d.determinant();
  auto adj = d.adjugate();
  std::int64_t sign = det < 0 ? -1 : 1;
  std::vector<TorusPoint> out;
  // x = D^-1 (y + k) = adj(D) (num + N k) / (N det)
  for (const auto& k : lattice_coset_representatives(d)) {
    std::vector<std::int64_t> v(y.dim());
    for (std::size_t i = 0; i < y.dim(); ++i)
      v[i] = checked_add(y.numerators()[i], checked_mul(y.denominator(), k[i]));
    auto num = adj.apply(v);
    for (auto& n : num)
      n = checked_mul(n, sign);
    out.emplace_back(std::move(num), checked_mul(y.denominator(), det * sign));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational fiber_separation_beta(const CoveringMap& f)
{
  if (f.degree() < 2)
    throw std::invalid_argument("a degree-one cover has no two distinct points in a fiber");
  auto fiber = covering_fiber(f, TorusPoint::origin(f.matrix().dim()));
  std::optional<Rational> best;
  for (const auto& v : fiber) {
    auto n = torus_norm(v);
    if (n != 0 && (!best || n < *best))
      best = n;
  }
  return *best;
}

}  // namespace expansia
