#include "expansia/expansivity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "orbit_model.hpp"

namespace expansia {

using detail::ElementTable;
using detail::Universe;

bool SeparationCertificate::replays(const Action& a) const
{
  auto gx = apply_word(a, word, x);
  auto gy = apply_word(a, word, y);
  auto d = expansia::distance(a.space(), gx, gy);
  return d == distance && d > constant;
}

bool is_hyperbolic(const IntMatrix& a)
{
  const auto d = a.dim();
  if (d == 0)
    return false;
  if (d == 1)
    return a(0, 0) != 1 && a(0, 0) != -1;
  if (d == 2) {
    const __int128 t = a.trace();
    const __int128 det = a.determinant();
    // Complex pair: |lambda|^2 = det. Real roots: +-1 is a root of x^2 - t x + det.
    if (t * t < 4 * det)
      return det != 1;
    return 1 - t + det != 0 && 1 + t + det != 0;
  }
  Eigen::MatrixXd m(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = static_cast<double>(a(r, c));
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  for (const auto& ev : solver.eigenvalues())
    if (std::abs(std::abs(ev) - 1.0) <= 1e-9)
      return false;
  return true;
}

namespace {

void require_positive(const Rational& c, const char* what)
{
  if (c <= 0)
    throw std::invalid_argument(std::string(what) + " must be positive");
}

// Pair (0, y) whose whole orbit under <A> stays within c, for a non-hyperbolic A of
// size at most two: y lies on an integer eigenvector for +-1, or A has finite order.
PairWitness nonexpansive_pair(const IntMatrix& a, const Rational& c)
{
  const auto d = a.dim();
  std::vector<std::int64_t> v;
  for (std::int64_t lambda : {1, -1}) {
    auto m = a - IntMatrix::scalar(d, lambda);
    if (m.determinant() != 0)
      continue;
    if (d == 1) {
      v = {1};
    } else {
      std::size_t row = (m(0, 0) != 0 || m(0, 1) != 0) ? 0 : 1;
      if (m(row, 0) == 0 && m(row, 1) == 0) {
        v = {1, 0};
      } else {
        auto g = std::gcd(m(row, 0), m(row, 1));
        if (m(row, 1) > 0 || (m(row, 1) == 0 && m(row, 0) < 0))
          g = -g;
        v = {-m(row, 1) / g, m(row, 0) / g};
      }
    }
    break;
  }
  std::vector<IntMatrix> powers{IntMatrix::identity(d)};
  if (v.empty()) {
    while (!(powers.back() * a == IntMatrix::identity(d))) {
      powers.push_back(powers.back() * a);
      if (powers.size() > 12)
        throw std::logic_error("non-hyperbolic matrix without eigenvalue +-1 must have finite order");
    }
    v.assign(d, 0);
    v[0] = 1;
  }
  std::int64_t k = 0;
  for (const auto& p : powers)
    for (auto x : p.apply(v))
      k = std::max<std::int64_t>(k, x < 0 ? -x : x);
  // y = v / N with k / N <= min(c, 1/2).
  Rational bound = std::min(c, Rational(1, 2));
  auto n = static_cast<std::int64_t>(std::ceil(static_cast<double>(k) * bound.denominator() /
                                               static_cast<double>(bound.numerator())));
  while (Rational(k, n) > bound)
    ++n;
  TorusPoint y(v, n);
  TorusPoint x = TorusPoint::origin(d);
  Rational sep(0);
  for (const auto& p : powers)
    sep = std::max(sep, torus_norm(y.mapped(p)));
  return {x, y, sep};
}

std::vector<std::size_t> sample_indices(const Universe& u, const Sampler& s)
{
  std::vector<std::size_t> idx;
  if (!s.subset) {
    idx.resize(u.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
  }
  for (const auto& p : *s.subset) {
    auto i = u.index_of(p);
    if (!i)
      throw std::invalid_argument("sampled point outside the search universe");
    idx.push_back(*i);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

std::int64_t subset_grid(const Sampler& s)
{
  if (!s.subset)
    return s.grid;
  std::int64_t q = 1;
  for (const auto& p : *s.subset)
    if (auto t = std::get_if<TorusPoint>(&p))
      q = lcm_checked(q, t->denominator());
  return q;
}

struct PairPlan {
  std::vector<std::pair<std::size_t, std::size_t>> drawn;  // used when subsampling
  bool subsampled = false;
};

PairPlan plan_pairs(const std::vector<std::size_t>& idx, const Sampler& s)
{
  PairPlan plan;
  const std::size_t m = idx.size();
  const std::size_t total = m < 2 ? 0 : m * (m - 1) / 2;
  if (s.max_pairs == 0 || s.max_pairs >= total)
    return plan;
  plan.subsampled = true;
  std::mt19937_64 rng(s.seed);
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  std::set<std::pair<std::size_t, std::size_t>> chosen;
  while (chosen.size() < s.max_pairs) {
    auto a = pick(rng), b = pick(rng);
    if (a == b)
      continue;
    chosen.emplace(std::min(idx[a], idx[b]), std::max(idx[a], idx[b]));
  }
  plan.drawn.assign(chosen.begin(), chosen.end());
  return plan;
}

template <class Fn>
void for_each_pair(const std::vector<std::size_t>& idx, const PairPlan& plan, Fn&& fn)
{
  if (plan.subsampled) {
    for (const auto& [i, j] : plan.drawn)
      if (!fn(i, j))
        return;
    return;
  }
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      if (!fn(idx[a], idx[b]))
        return;
}

// Images of pairs under the ball of the given radius. Finite universes walk pair orbits;
// torus grids scan the ball's permutations.
class PairImages {
 public:
  PairImages(const Action& a, const Universe& u, std::size_t depth) : depth_(depth)
  {
    if (u.is_grid())
      table_ = detail::element_table(a, u, depth);
    else
      orbits_.emplace(a, u);
  }

  // visit(i', j', length) returns false to stop. The result is true when the images seen
  // are all images of (i, j) under the whole group.
  template <class Visit>
  bool scan(std::size_t i, std::size_t j, Visit&& visit)
  {
    if (orbits_)
      return orbits_->walk(i, j, depth_, visit);
    for (std::size_t k = 0; k < table_.perms.size(); ++k) {
      const auto& p = table_.perms[k];
      if (!visit(p[i], p[j], table_.words[k].length()))
        return false;
    }
    return table_.exhausted;
  }

 private:
  std::size_t depth_;
  detail::ElementTable table_;
  std::optional<detail::PairOrbits> orbits_;
};

void require_metric(const Action& a)
{
  if (!has_metric(a.space()))
    throw std::invalid_argument("this search needs a metric space");
}

}  // namespace

Verdict certify_linear(const GroupPresentation& g, std::size_t search_depth, const Rational& witness_constant)
{
  if (g.kind() != RepKind::Matrix)
    throw std::invalid_argument("linear certification needs a matrix representation");
  require_positive(witness_constant, "witness constant");
  for (const auto& gen : g.generators())
    if (!g.image(gen.id).matrix().is_unimodular())
      throw std::invalid_argument("generator " + gen.name + " is not invertible over the integers");

  Verdict v;
  v.depth = search_depth;
  auto ball = cayley_ball(g, search_depth);
  for (const auto& e : ball.entries) {
    const auto& m = e.element.matrix();
    if (!is_hyperbolic(m))
      continue;
    v.kind = VerdictKind::Certified;
    v.word = e.witness;
    v.numeric = m.dim() > 2;
    v.reason = "hyperbolic element " + to_string(m) + " (trace " + std::to_string(m.trace()) + ", det " +
               std::to_string(m.determinant()) + ")";
    return v;
  }
  if (g.rank() == 1 && g.degree() <= 2) {
    const auto& a = g.image(0).matrix();
    v.kind = VerdictKind::Falsified;
    v.exact = true;
    v.constant = witness_constant;
    v.pair = nonexpansive_pair(a, witness_constant);
    v.reason = "cyclic group of " + to_string(a) + " (trace " + std::to_string(a.trace()) + ", det " +
               std::to_string(a.determinant()) + ") has an eigenvalue of modulus one";
    return v;
  }
  v.kind = VerdictKind::Inconclusive;
  v.reason = "no hyperbolic element within the searched ball";
  return v;
}

std::optional<SeparationCertificate> find_separating_element(const Action& a, const Point& x, const Point& y,
                                                             const Rational& c, std::size_t depth)
{
  require_metric(a);
  require_positive(c, "constant");
  a.validate_point(x);
  a.validate_point(y);
  if (x == y)
    throw std::invalid_argument("points must be distinct");
  auto ball = cayley_ball(a.group(), depth);
  for (const auto& e : ball.entries) {
    auto d = distance(a.space(), a.apply(e.element, x), a.apply(e.element, y));
    if (d > c)
      return SeparationCertificate{x, y, e.witness, d, c};
  }
  return std::nullopt;
}

Verdict falsify_expansive(const Action& a, const Rational& c, std::size_t depth, const Sampler& sampler)
{
  require_metric(a);
  require_positive(c, "constant");
  auto u = Universe::of(a, subset_grid(sampler));
  auto idx = sample_indices(u, sampler);
  auto plan = plan_pairs(idx, sampler);
  PairImages images(a, u, depth);

  const bool all_points = idx.size() == u.size() && !u.is_grid();
  Verdict v;
  v.depth = depth;
  v.constant = c;
  bool found = false;
  bool closed = false;
  for_each_pair(idx, plan, [&](std::size_t i, std::size_t j) {
    std::int64_t best = 0;
    bool separated = false;
    bool whole = images.scan(i, j, [&](std::size_t x, std::size_t y, std::size_t) {
      auto d = u.dist(x, y);
      best = std::max(best, d);
      separated = u.exceeds(d, c);
      return !separated;
    });
    if (separated)
      return true;
    v.pair = PairWitness{u.point(i), u.point(j), Rational(best, u.denominator())};
    found = true;
    closed = whole;
    return false;
  });

  if (found) {
    v.kind = VerdictKind::Falsified;
    v.exact = !u.is_grid() && closed;
    v.reason = v.exact ? "pair never separated beyond c by any group element"
                       : "candidate pair not separated beyond c within the searched ball";
    return v;
  }
  if (all_points && !plan.subsampled) {
    v.kind = VerdictKind::Certified;
    v.reason = "every pair of distinct points is separated beyond c";
    return v;
  }
  v.kind = VerdictKind::Inconclusive;
  v.reason = "every sampled pair separated beyond c within the searched ball";
  return v;
}

SupEstimate estimate_sup_constant(const Action& a, std::size_t depth, std::int64_t q)
{
  require_metric(a);
  if (depth < 1 || q < 2)
    throw std::invalid_argument("estimate needs depth >= 1 and q >= 2");
  auto u = Universe::of(a, q);
  std::vector<std::size_t> idx(u.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  PairImages images(a, u, depth);
  const Rational diam = diameter(a.space());

  SupEstimate est;
  std::optional<std::int64_t> least;
  for_each_pair(idx, PairPlan{}, [&](std::size_t i, std::size_t j) {
    std::int64_t best = 0;
    images.scan(i, j, [&](std::size_t x, std::size_t y, std::size_t) {
      best = std::max(best, u.dist(x, y));
      return !(least && best >= *least);
    });
    if (least && best >= *least)
      return true;
    least = best;
    est.tightest = PairWitness{u.point(i), u.point(j), Rational(best, u.denominator())};
    return true;
  });
  if (!least) {
    est.lo = est.hi = est.threshold = diam;
    return est;
  }
  est.threshold = Rational(*least, u.denominator());
  // Smallest k with k * diam / q >= threshold.
  Rational t = est.threshold * q / diam;
  auto k_hi = floor_div(t.numerator(), t.denominator());
  if (Rational(k_hi) < t)
    ++k_hi;
  est.lo = diam * (k_hi - 1) / q;
  est.hi = diam * k_hi / q;
  return est;
}

UniformBound uniform_separation_bound(const Action& a, const Rational& c, const Rational& eps, std::size_t depth,
                                      const Sampler& sampler)
{
  require_metric(a);
  require_positive(c, "constant");
  require_positive(eps, "epsilon");
  auto u = Universe::of(a, subset_grid(sampler));
  auto idx = sample_indices(u, sampler);
  auto plan = plan_pairs(idx, sampler);
  PairImages images(a, u, depth);

  UniformBound out;
  std::size_t n = 0;
  bool resolved = true;
  for_each_pair(idx, plan, [&](std::size_t i, std::size_t j) {
    if (Rational(u.dist(i, j), u.denominator()) < eps)
      return true;
    bool separated = false;
    images.scan(i, j, [&](std::size_t x, std::size_t y, std::size_t len) {
      if (!u.exceeds(u.dist(x, y), c))
        return true;
      n = std::max(n, len);
      separated = true;
      return false;
    });
    if (separated)
      return true;
    resolved = false;
    out.unresolved = PairWitness{u.point(i), u.point(j), Rational(0)};
    return false;
  });
  if (resolved)
    out.n = n;

  const auto& g = a.group();
  if (a.on_torus() && g.rank() == 1 && g.degree() == 2 && is_hyperbolic(g.image(0).matrix())) {
    const auto& m = g.image(0).matrix();
    double t = static_cast<double>(m.trace());
    double det = static_cast<double>(m.determinant());
    double disc = t * t - 4 * det;
    double lambda = disc >= 0 ? (std::abs(t) + std::sqrt(disc)) / 2 : std::sqrt(std::abs(det));
    double ratio = boost::rational_cast<double>(c / eps);
    out.analytic = std::max(0.0, std::ceil(std::log(ratio) / std::log(lambda)));
  }
  return out;
}

DynamicalBallSample dynamical_ball(const Action& a, const Point& x, const Rational& c, std::size_t depth,
                                   std::int64_t q)
{
  require_metric(a);
  require_positive(c, "constant");
  a.validate_point(x);
  auto u = Universe::of(a, q);
  auto ball = cayley_ball(a.group(), depth);
  std::vector<Point> orbit_x;
  std::vector<std::vector<std::uint32_t>> perms;
  for (const auto& e : ball.entries) {
    orbit_x.push_back(a.apply(e.element, x));
    perms.push_back(u.permutation(e.element));
  }
  DynamicalBallSample out{x, c, depth, {}};
  for (std::size_t t = 0; t < u.size(); ++t) {
    bool inside = true;
    for (std::size_t k = 0; k < perms.size() && inside; ++k)
      inside = distance(a.space(), orbit_x[k], u.point(perms[k][t])) < c;
    if (inside)
      out.points.push_back(u.point(t));
  }
  return out;
}

std::optional<std::vector<Point>> fixed_points(const Action& a)
{
  const auto& g = a.group();
  std::vector<Point> out;
  if (!a.on_torus()) {
    for (std::size_t x = 0; x < finite_size(a.space()); ++x) {
      bool fixed = std::all_of(g.generators().begin(), g.generators().end(),
                               [&](const Generator& s) { return g.image(s.id).permutation()(x) == x; });
      if (fixed)
        out.emplace_back(x);
    }
    return out;
  }
  const auto d = g.degree();
  for (const auto& s : g.generators()) {
    auto m = g.image(s.id).matrix() - IntMatrix::identity(d);
    auto det = m.determinant();
    if (det == 0)
      continue;
    // (A - I) x = k mod Z^d, one solution per class of Z^d / (A - I) Z^d.
    auto adj = m.adjugate();
    std::int64_t sign = det < 0 ? -1 : 1;
    std::vector<TorusPoint> pts;
    for (const auto& k : lattice_coset_representatives(m)) {
      auto num = adj.apply(k);
      for (auto& v : num)
        v *= sign;
      TorusPoint p(std::move(num), det * sign);
      bool fixed = std::all_of(g.generators().begin(), g.generators().end(),
                               [&](const Generator& t) { return p.mapped(g.image(t.id).matrix()) == p; });
      if (fixed)
        pts.push_back(std::move(p));
    }
    std::sort(pts.begin(), pts.end());
    out.assign(pts.begin(), pts.end());
    return out;
  }
  return std::nullopt;
}

}  // namespace expansia
