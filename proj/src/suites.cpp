#include "expansia/suites.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "expansia/actions.hpp"
#include "expansia/expansivity.hpp"
#include "expansia/orbit_expansivity.hpp"
#include "expansia/random_models.hpp"

namespace expansia {

const std::vector<std::string>& suite_names()
{
  static const std::vector<std::string> names{"toral", "finite-models"};
  return names;
}

namespace {

constexpr std::size_t kExhaustiveDepth = 64;

std::string describe_model(const Action& a)
{
  std::ostringstream out;
  const auto& g = a.group();
  out << finite_size(a.space()) << " points;";
  for (const auto& s : g.generators())
    if (s.inverse_id >= s.id)
      out << ' ' << s.name << '=' << to_string(g.image(s.id).permutation());
  if (auto m = std::get_if<FiniteMetricSpace>(&a.space())) {
    out << "; d=";
    for (std::size_t i = 1; i < m->size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        out << to_string(m->distance(i, j)) << (i + 1 == m->size() && j + 1 == i ? "" : " ");
  } else if (auto t = std::get_if<FiniteTopSpace>(&a.space())) {
    out << "; opens=" << t->opens().size();
  }
  return out.str();
}

std::string describe_cover(const Space& s, const OpenCover& u)
{
  std::string out;
  for (const auto& m : u.members)
    out += (out.empty() ? "{" : " {") + format_member(s, m) + "}";
  return out;
}

class Property {
 public:
  explicit Property(std::string name) { r_.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& describe)
  {
    ++r_.cases;
    if (ok)
      ++r_.passed;
    else if (r_.counterexample.empty())
      r_.counterexample = describe();
  }
  PropertyResult result() const { return r_; }

 private:
  PropertyResult r_;
};

// Min over distinct pairs of the max over the image group, compared with c.
bool brute_force_expansive(const Action& a, const Rational& c)
{
  auto group = image_group(a.group());
  const auto& m = std::get<FiniteMetricSpace>(a.space());
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = x + 1; y < m.size(); ++y) {
      bool separated = std::any_of(group->entries.begin(), group->entries.end(), [&](const BallEntry& e) {
        const auto& p = e.element.permutation();
        return m.distance(p(x), p(y)) > c;
      });
      if (!separated)
        return false;
    }
  return true;
}

std::vector<Rational> candidate_constants(const FiniteMetricSpace& m)
{
  std::set<Rational> out;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      out.insert(m.distance(i, j));
      out.insert(m.distance(i, j) / 2);
    }
  return {out.begin(), out.end()};
}

template <class T>
const T& choose(std::mt19937_64& rng, const std::vector<T>& v)
{
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

// Splits every member into random pieces; on discrete spaces every piece is open.
OpenCover random_refinement(std::mt19937_64& rng, const OpenCover& u)
{
  std::vector<PointSet> sets;
  for (const auto& m : u.members) {
    PointSet rest = m.points();
    while (rest) {
      PointSet piece = 0;
      for (auto x : members(rest))
        if (piece == 0 || rng() % 2)
          piece |= singleton(x);
      sets.push_back(piece);
      rest &= ~piece;
    }
  }
  return finite_cover(sets, "V");
}

std::vector<PropertyResult> finite_models(std::uint64_t seed, std::size_t models)
{
  std::mt19937_64 rng(seed);
  Property brute("brute-force-expansivity"), to_cover("constant-to-cover"), to_constant("cover-to-constant"),
      t1("t1-theorem"), refine("refinement-closure"), join("join-closure"), index("finite-index"),
      conj("conjugacy"), image("image-cover"), trace("invariant-trace"), doubled("doubled-point");

  for (std::size_t k = 0; k < models; ++k) {
    auto a = random_metric_action(rng);
    const auto& m = std::get<FiniteMetricSpace>(a.space());
    auto candidates = candidate_constants(m);
    auto c = choose(rng, candidates);
    auto v = falsify_expansive(a, c, kExhaustiveDepth);
    bool oracle = brute_force_expansive(a, c);
    brute.check((v.certified() == oracle) && (v.certified() || v.exact),
                [&] { return describe_model(a) + "; c=" + to_string(c); });

    // Largest candidate below the exact threshold, then the cover it induces.
    auto threshold = estimate_sup_constant(a, kExhaustiveDepth, 2).threshold;
    auto below = std::find_if(candidates.rbegin(), candidates.rend(), [&](const Rational& r) { return r < threshold; });
    if (below != candidates.rend()) {
      auto cc = *below;
      bool certified = falsify_expansive(a, cc, kExhaustiveDepth).certified();
      to_cover.check(certified && is_orbit_expansive_cover(a, cover_from_constant(a, cc)),
                     [&] { return describe_model(a) + "; c=" + to_string(cc); });
    }

    auto u = random_cover(rng, a.space());
    const bool verified = is_orbit_expansive_cover(a, u);
    if (verified) {
      auto cu = constant_from_cover(a.space(), u);
      to_constant.check(falsify_expansive(a, cu, kExhaustiveDepth).certified(), [&] {
        return describe_model(a) + "; U=" + describe_cover(a.space(), u) + "; c=" + to_string(cu);
      });
      auto r = random_refinement(rng, u);
      refine.check(is_orbit_expansive_cover(a, r), [&] { return describe_model(a); });
      auto w = random_cover(rng, a.space());
      join.check(is_orbit_expansive_cover(a, cover_join(u, w)), [&] { return describe_model(a); });
    }

    auto h = random_permutation(rng, m.size());
    ConjugacyWitness hw{h, std::nullopt};
    auto b = conjugate_action(a, hw);
    conj.check(verified == is_orbit_expansive_cover(b, map_cover(hw, u)),
               [&] { return describe_model(a) + "; h=" + to_string(h); });

    auto word = std::vector<GeneratorId>{};
    for (std::size_t i = 0, len = rng() % 4; i < len; ++i)
      word.push_back(rng() % a.group().generators().size());
    Word w{word};
    image.check(verified == is_orbit_expansive_cover(a, image_cover(a, u, w)), [&] { return describe_model(a); });

    // Orbit of a random point is invariant.
    PointSet y = singleton(rng() % m.size());
    for (PointSet prev = 0; prev != y;) {
      prev = y;
      for (const auto& s : a.group().generators())
        for (auto x : members(y))
          y |= singleton(a.group().image(s.id).permutation()(x));
    }
    auto res = restrict_to_invariant(a, y);
    std::vector<PointSet> traces;
    for (const auto& mem : u.members) {
      PointSet t = 0;
      for (std::size_t i = 0; i < res.embedding.size(); ++i)
        if (contains(mem.points(), std::get<std::size_t>(res.embedding[i])))
          t |= singleton(i);
      if (t)
        traces.push_back(t);
    }
    if (verified)
      trace.check(is_orbit_expansive_cover(res.action, finite_cover(traces)), [&] { return describe_model(a); });
  }

  for (std::size_t k = 0; k < models; ++k) {
    auto a = random_topological_action(rng);
    auto d = decide_orbit_expansive_finite(a);
    const auto& top = std::get<FiniteTopSpace>(a.space());
    t1.check(!d.expansive || is_T1(top), [&] { return describe_model(a); });
  }

  RandomModelOptions small;
  small.max_points = 6;
  for (std::size_t k = 0; k < models; ++k) {
    auto a = random_metric_action(rng, small);
    auto u = random_cover(rng, a.space());
    if (!is_orbit_expansive_cover(a, u))
      u = cover_from_constant(a, Rational(1, 1000));
    const auto& g = a.group();
    std::vector<Word> gens;
    switch (rng() % 3) {
      case 0:
        gens = {Word{{0, 0}}};
        break;
      case 1:
        gens = {Word{{0}}};
        break;
      default:
        gens = {Word{{0, g.generators().size() - 1}}};
        break;
    }
    Subgroup sub(g, gens);
    auto tr = coset_transversal(sub, kExhaustiveDepth);
    if (!tr || !tr->exact)
      continue;
    auto v = subgroup_cover(u, a, tr->representatives);
    auto r = restrict_to_subgroup(a, sub);
    index.check(is_orbit_expansive_cover(r, v), [&] { return describe_model(a); });
  }

  // Twin of a common fixed point: generators permute the other points only.
  for (std::size_t k = 0; k < models; ++k) {
    auto base = random_metric_action(rng, small);
    const auto n = finite_size(base.space());
    std::vector<std::pair<std::string, Permutation>> gens;
    for (const auto& s : base.group().generators()) {
      if (s.inverse_id < s.id)
        continue;
      auto img = base.group().image(s.id).permutation().images();
      std::vector<std::uint32_t> fixed0{0};
      auto rest = random_permutation(rng, n - 1).images();
      for (auto x : rest)
        fixed0.push_back(x + 1);
      gens.emplace_back(s.name, Permutation(fixed0));
    }
    Action a(GroupPresentation::from_permutations(gens), base.space());
    std::vector<PointSet> singles;
    for (std::size_t x = 0; x < n; ++x)
      singles.push_back(singleton(x));
    auto ex = doubled_point_example(a, 0, finite_cover(singles));
    doubled.check(ex.t1 && ex.cover_verified, [&] { return describe_model(a); });
  }

  return {brute.result(), to_cover.result(), to_constant.result(), refine.result(), join.result(),
          conj.result(),  image.result(),    trace.result(),       t1.result(),     index.result(),
          doubled.result()};
}

std::vector<PropertyResult> toral(std::uint64_t seed)
{
  const IntMatrix b{{-1, 1}, {0, 1}}, c{{-1, 0}, {1, 1}}, bc{{2, 1}, {1, 1}};
  std::vector<PropertyResult> out;

  Property cert("linear-certification");
  auto expect = [&](const char* label, GroupPresentation g, VerdictKind want) {
    auto v = certify_linear(g, 4);
    cert.check(v.kind == want, [&] { return std::string(label) + " gave " + to_string(v.kind); });
  };
  expect("<B,C>", GroupPresentation::from_matrices({{"B", b}, {"C", c}}), VerdictKind::Certified);
  expect("<BC>", GroupPresentation::from_matrices({{"BC", bc}}), VerdictKind::Certified);
  expect("<B>", GroupPresentation::from_matrices({{"B", b}}), VerdictKind::Falsified);
  expect("<C>", GroupPresentation::from_matrices({{"C", c}}), VerdictKind::Falsified);
  out.push_back(cert.result());

  Property beta("fiber-separation");
  for (std::int64_t k : {2, 3}) {
    CoveringMap f(IntMatrix::scalar(2, k));
    auto bk = fiber_separation_beta(f);
    beta.check(bk == Rational(1, k), [&] { return "beta(" + std::to_string(k) + "I)=" + to_string(bk); });
    auto fib = covering_fiber(f, TorusPoint({1, 2}, 7));
    bool apart = fib.size() == static_cast<std::size_t>(k * k);
    for (std::size_t i = 0; i < fib.size(); ++i)
      for (std::size_t j = i + 1; j < fib.size(); ++j)
        apart = apart && torus_distance(fib[i], fib[j]) >= bk;
    beta.check(apart, [&] { return "fiber of " + std::to_string(k) + "I not separated"; });
  }
  out.push_back(beta.result());

  Action phi(GroupPresentation::from_matrices({{"BC", bc}}), TorusSpace{2});
  Property semi("semiconjugacy-transfer");
  semi.check(check_semiconjugacy(CoveringMap(IntMatrix::scalar(2, 2)), phi, phi).holds,
             [] { return std::string("2I does not commute with BC"); });
  auto v = falsify_expansive(phi, Rational(1, 10), 8, Sampler{24, std::nullopt, 0, seed});
  semi.check(!v.falsified(), [&] { return "surviving pair at c=1/10"; });
  auto ball = dynamical_ball(phi, TorusPoint::origin(2), Rational(1, 10), 8, 30);
  semi.check(ball.points.size() == 1 && ball.points.front() == Point(TorusPoint::origin(2)),
             [&] { return "dynamical ball has " + std::to_string(ball.points.size()) + " points"; });
  out.push_back(semi.result());

  Property fixed("fixed-points");
  auto fp = fixed_points(phi);
  fixed.check(fp && fp->size() == 1, [] { return std::string("BC fixed points"); });
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> entry(-4, 4);
  for (std::size_t found = 0; found < 20;) {
    IntMatrix a{{entry(rng), entry(rng)}, {entry(rng), entry(rng)}};
    if (!a.is_unimodular() || !is_hyperbolic(a))
      continue;
    ++found;
    auto pts = fixed_points(Action(GroupPresentation::from_matrices({{"A", a}}), TorusSpace{2}));
    auto want = (a - IntMatrix::identity(2)).determinant();
    fixed.check(pts && static_cast<std::int64_t>(pts->size()) == (want < 0 ? -want : want),
                [&] { return "A=" + to_string(a); });
  }
  out.push_back(fixed.result());

  Property orbit("orbit-cover");
  std::vector<Box> boxes;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      boxes.push_back(Box{{Arc(Rational(i, 4), Rational(1, 4)), Arc(Rational(j, 4), Rational(1, 4))}});
  auto ov = verify_orbit_expansive(phi, torus_box_cover(boxes), 8, Sampler{20, std::nullopt, 0, seed});
  orbit.check(ov.kind == OrbitCoverKind::VerifiedAtDepth, [] { return std::string("quarter boxes refuted"); });
  out.push_back(orbit.result());
  return out;
}

}  // namespace

std::vector<PropertyResult> run_suite(const std::string& name, std::uint64_t seed, std::size_t models)
{
  if (name == "toral")
    return toral(seed);
  if (name == "finite-models")
    return finite_models(seed, models);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace expansia
