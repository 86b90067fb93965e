#include "expansia/spaces.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace expansia {

std::vector<std::size_t> members(PointSet s)
{
  std::vector<std::size_t> out;
  for (std::size_t i = 0; s; ++i, s >>= 1)
    if (s & 1u)
      out.push_back(i);
  return out;
}

namespace {

std::vector<std::string> tokens(std::string_view line)
{
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\r') {
      if (!cur.empty())
        out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty())
    out.push_back(std::move(cur));
  return out;
}

std::vector<std::string> content_lines(std::string_view text)
{
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    out.push_back(line);
  }
  return out;
}

std::size_t label_index(const std::vector<std::string>& labels, std::string_view l)
{
  auto it = std::find(labels.begin(), labels.end(), l);
  if (it == labels.end())
    throw std::invalid_argument("unknown point label '" + std::string(l) + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

PointSet compress(PointSet s, PointSet subset)
{
  PointSet out = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < 64; ++i) {
    if (!contains(subset, i))
      continue;
    if (contains(s, i))
      out |= singleton(k);
    ++k;
  }
  return out;
}

}  // namespace

Rational torus_distance(const TorusPoint& x, const TorusPoint& y)
{
  if (x.dim() != y.dim())
    throw std::invalid_argument("torus points of different dimensions");
  auto l = lcm_checked(x.denominator(), y.denominator());
  auto sx = l / x.denominator();
  auto sy = l / y.denominator();
  std::int64_t best = 0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    auto diff = mod_floor(checked_mul(x.numerators()[i], sx) - checked_mul(y.numerators()[i], sy), l);
    best = std::max(best, std::min(diff, l - diff));
  }
  return Rational(best, l);
}

Rational torus_norm(const TorusPoint& x) { return torus_distance(x, TorusPoint::origin(x.dim())); }

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, std::vector<std::vector<Rational>> dist)
    : labels_(std::move(labels)), dist_(std::move(dist))
{
  const auto n = labels_.size();
  if (n == 0 || n > kMaxFinitePoints)
    throw std::invalid_argument("finite spaces hold between 1 and 64 points");
  if (dist_.size() != n)
    throw std::invalid_argument("distance matrix has the wrong number of rows");
  for (std::size_t i = 0; i < n; ++i) {
    if (dist_[i].size() != n)
      throw std::invalid_argument("distance matrix row " + std::to_string(i) + " has the wrong length");
    if (dist_[i][i] != 0)
      throw std::invalid_argument("nonzero self-distance at " + labels_[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (dist_[i][j] != dist_[j][i])
        throw std::invalid_argument("asymmetric distance between " + labels_[i] + " and " + labels_[j]);
      if (dist_[i][j] <= 0)
        throw std::invalid_argument("distinct points " + labels_[i] + ", " + labels_[j] + " at distance <= 0");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (i < k && dist_[i][k] > dist_[i][j] + dist_[j][k])
          warnings_.push_back("triangle inequality fails for " + labels_[i] + ", " + labels_[j] + ", " + labels_[k]);
  std::set<std::string> uniq(labels_.begin(), labels_.end());
  if (uniq.size() != n)
    throw std::invalid_argument("duplicate point labels");
}

FiniteMetricSpace FiniteMetricSpace::discrete(std::size_t n)
{
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(1)));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("p" + std::to_string(i));
    d[i][i] = 0;
  }
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

std::size_t FiniteMetricSpace::index_of(std::string_view label) const { return label_index(labels_, label); }

Rational FiniteMetricSpace::diameter() const
{
  Rational best(0);
  for (const auto& row : dist_)
    for (const auto& v : row)
      best = std::max(best, v);
  return best;
}

FiniteMetricSpace FiniteMetricSpace::induced(PointSet subset) const
{
  auto idx = members(subset & full_set(size()));
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> d;
  for (auto i : idx) {
    labels.push_back(labels_[i]);
    std::vector<Rational> row;
    for (auto j : idx)
      row.push_back(dist_[i][j]);
    d.push_back(std::move(row));
  }
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

FiniteTopSpace::FiniteTopSpace(std::vector<std::string> labels, std::vector<PointSet> opens)
    : labels_(std::move(labels)), opens_(std::move(opens))
{
  const auto n = labels_.size();
  if (n == 0 || n > kMaxFinitePoints)
    throw std::invalid_argument("finite spaces hold between 1 and 64 points");
  std::set<std::string> uniq(labels_.begin(), labels_.end());
  if (uniq.size() != n)
    throw std::invalid_argument("duplicate point labels");
  const auto all = full_set(n);
  for (auto s : opens_)
    if (!is_subset(s, all))
      throw std::invalid_argument("open set mentions points outside the space");
  opens_.push_back(0);
  opens_.push_back(all);
  std::sort(opens_.begin(), opens_.end());
  opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
  for (std::size_t i = 0; i < opens_.size(); ++i)
    for (std::size_t j = i + 1; j < opens_.size(); ++j) {
      if (!is_open(opens_[i] | opens_[j]) || !is_open(opens_[i] & opens_[j]))
        throw std::invalid_argument("open family is not closed under union and intersection");
    }
}

FiniteTopSpace FiniteTopSpace::generated(std::vector<std::string> labels, const std::vector<PointSet>& subbasis)
{
  const auto n = labels.size();
  if (n == 0 || n > kMaxFinitePoints)
    throw std::invalid_argument("finite spaces hold between 1 and 64 points");
  std::vector<PointSet> nbhd(n, full_set(n));
  for (auto s : subbasis)
    for (auto x : members(s))
      if (x < n)
        nbhd[x] &= s;
  // Every open set is a union of minimal neighborhoods.
  std::unordered_set<PointSet> family{0};
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<PointSet> add;
    for (auto f : family)
      add.push_back(f | nbhd[x]);
    family.insert(add.begin(), add.end());
    if (family.size() > (1u << 20))
      throw std::invalid_argument("generated topology too large");
  }
  FiniteTopSpace t;
  t.labels_ = std::move(labels);
  t.opens_.assign(family.begin(), family.end());
  std::sort(t.opens_.begin(), t.opens_.end());
  return t;
}

FiniteTopSpace FiniteTopSpace::discrete(std::size_t n)
{
  std::vector<std::string> labels;
  std::vector<PointSet> sub;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("p" + std::to_string(i));
    sub.push_back(singleton(i));
  }
  return generated(std::move(labels), sub);
}

std::size_t FiniteTopSpace::index_of(std::string_view label) const { return label_index(labels_, label); }

bool FiniteTopSpace::is_open(PointSet s) const { return std::binary_search(opens_.begin(), opens_.end(), s); }

bool FiniteTopSpace::is_discrete() const
{
  for (std::size_t x = 0; x < size(); ++x)
    if (!is_open(singleton(x)))
      return false;
  return true;
}

PointSet FiniteTopSpace::minimal_neighborhood(std::size_t x) const
{
  PointSet n = full_set(size());
  for (auto s : opens_)
    if (contains(s, x))
      n &= s;
  return n;
}

FiniteTopSpace FiniteTopSpace::induced(PointSet subset) const
{
  subset &= full_set(size());
  std::vector<std::string> labels;
  for (auto i : members(subset))
    labels.push_back(labels_[i]);
  std::vector<PointSet> opens;
  for (auto s : opens_)
    opens.push_back(compress(s & subset, subset));
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  return FiniteTopSpace(std::move(labels), std::move(opens));
}

bool is_finite(const Space& s) { return !std::holds_alternative<TorusSpace>(s); }

std::size_t finite_size(const Space& s)
{
  if (auto m = std::get_if<FiniteMetricSpace>(&s))
    return m->size();
  if (auto t = std::get_if<FiniteTopSpace>(&s))
    return t->size();
  throw std::invalid_argument("the torus is not a finite space");
}

const std::vector<std::string>& finite_labels(const Space& s)
{
  if (auto m = std::get_if<FiniteMetricSpace>(&s))
    return m->labels();
  if (auto t = std::get_if<FiniteTopSpace>(&s))
    return t->labels();
  throw std::invalid_argument("the torus has no point labels");
}

bool has_metric(const Space& s) { return !std::holds_alternative<FiniteTopSpace>(s); }

Rational distance(const Space& s, const Point& x, const Point& y)
{
  if (std::holds_alternative<TorusSpace>(s))
    return torus_distance(std::get<TorusPoint>(x), std::get<TorusPoint>(y));
  if (auto m = std::get_if<FiniteMetricSpace>(&s))
    return m->distance(std::get<std::size_t>(x), std::get<std::size_t>(y));
  throw std::invalid_argument("a finite topological space carries no metric");
}

Rational diameter(const Space& s)
{
  if (std::holds_alternative<TorusSpace>(s))
    return torus_diameter();
  if (auto m = std::get_if<FiniteMetricSpace>(&s))
    return m->diameter();
  throw std::invalid_argument("a finite topological space carries no metric");
}

std::string describe(const Space& s, const Point& p)
{
  if (auto t = std::get_if<TorusPoint>(&p))
    return to_string(*t);
  return finite_labels(s).at(std::get<std::size_t>(p));
}

bool is_T1(const FiniteTopSpace& x)
{
  const auto all = full_set(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x.is_open(all & ~singleton(i)))
      return false;
  return true;
}

std::optional<std::pair<std::size_t, std::size_t>> hausdorff_violation(const FiniteTopSpace& x)
{
  std::vector<PointSet> nb;
  for (std::size_t i = 0; i < x.size(); ++i)
    nb.push_back(x.minimal_neighborhood(i));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (nb[i] & nb[j])
        return std::make_pair(i, j);
  return std::nullopt;
}

Arc::Arc(Rational lo_, Rational len_) : lo(frac(lo_)), len(len_)
{
  if (len <= 0 || len > 1)
    throw std::invalid_argument("arc length must lie in (0, 1]");
}

bool Arc::contains(const Rational& t) const { return frac(t - lo) < len; }

std::vector<Arc> intersect(const Arc& a, const Arc& b)
{
  if (a.full())
    return {b};
  if (b.full())
    return {a};
  std::vector<Arc> out;
  for (int shift = -1; shift <= 1; ++shift) {
    Rational lo = std::max(a.lo, b.lo + shift);
    Rational hi = std::min(a.lo + a.len, b.lo + shift + b.len);
    if (lo < hi)
      out.emplace_back(lo, hi - lo);
  }
  return out;
}

bool Box::contains(const TorusPoint& p) const
{
  if (p.dim() != arcs.size())
    throw std::invalid_argument("box and point dimensions differ");
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (!arcs[i].contains(p.coord(i)))
      return false;
  return true;
}

bool Box::full() const
{
  return std::all_of(arcs.begin(), arcs.end(), [](const Arc& a) { return a.full(); });
}

Box parse_box(std::string_view text)
{
  std::string s(text);
  // Accept the multiplication sign as a separator.
  for (std::size_t pos; (pos = s.find("\xC3\x97")) != std::string::npos;)
    s.replace(pos, 2, "x");
  Box b;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find('x', start);
    auto piece = s.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    auto dots = piece.find("..");
    if (dots == std::string::npos)
      throw std::invalid_argument("box factor '" + piece + "' is not of the form lo..hi");
    auto lo = parse_rational(piece.substr(0, dots));
    auto hi = parse_rational(piece.substr(dots + 2));
    if (hi <= lo || hi - lo > 1)
      throw std::invalid_argument("box factor '" + piece + "' must satisfy lo < hi <= lo + 1");
    b.arcs.emplace_back(lo, hi - lo);
    if (pos == std::string::npos)
      break;
    start = pos + 1;
  }
  return b;
}

std::string to_string(const Box& b)
{
  std::string out;
  for (std::size_t i = 0; i < b.arcs.size(); ++i) {
    if (i)
      out += " x ";
    out += to_string(b.arcs[i].lo) + ".." + to_string(b.arcs[i].lo + b.arcs[i].len);
  }
  return out;
}

TorusRegion TorusRegion::from_boxes(std::vector<Box> boxes)
{
  if (boxes.empty())
    throw std::invalid_argument("a torus region needs at least one box");
  auto d = boxes.front().arcs.size();
  for (const auto& b : boxes)
    if (b.arcs.size() != d)
      throw std::invalid_argument("boxes of different dimensions");
  return TorusRegion{IntMatrix::identity(d), IntMatrix::identity(d), std::move(boxes)};
}

bool TorusRegion::contains(const TorusPoint& p) const
{
  auto q = is_plain() ? p : p.mapped(pullback);
  return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return b.contains(q); });
}

bool CoverSet::contains(const Point& p) const
{
  if (is_finite())
    return expansia::contains(points(), std::get<std::size_t>(p));
  return region().contains(std::get<TorusPoint>(p));
}

OpenCover OpenCover::deduplicated() const
{
  OpenCover out;
  for (const auto& m : members) {
    bool dup = std::any_of(out.members.begin(), out.members.end(),
                           [&](const CoverSet& o) { return o.shape == m.shape; });
    if (!dup)
      out.members.push_back(m);
  }
  return out;
}

OpenCover finite_cover(const std::vector<PointSet>& sets, std::string_view prefix)
{
  OpenCover u;
  for (std::size_t i = 0; i < sets.size(); ++i)
    u.members.push_back({std::string(prefix) + std::to_string(i + 1), sets[i]});
  return u;
}

OpenCover torus_box_cover(const std::vector<Box>& boxes, std::string_view prefix)
{
  OpenCover u;
  for (std::size_t i = 0; i < boxes.size(); ++i)
    u.members.push_back({std::string(prefix) + std::to_string(i + 1), TorusRegion::from_boxes({boxes[i]})});
  return u;
}

namespace {

// Breakpoints of the arcs along one axis; on every half-open cell between
// consecutive breakpoints each arc is either everywhere present or absent.
std::vector<std::vector<Rational>> breakpoints(const std::vector<const Box*>& boxes, std::size_t dim)
{
  std::vector<std::vector<Rational>> axes(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::set<Rational> pts{Rational(0)};
    for (auto b : boxes) {
      const auto& a = b->arcs[i];
      if (a.full())
        continue;
      pts.insert(a.lo);
      pts.insert(frac(a.lo + a.len));
    }
    axes[i].assign(pts.begin(), pts.end());
  }
  return axes;
}

struct Cell {
  std::vector<Rational> lower;
  std::vector<Rational> upper;
};

template <class Fn>
bool for_each_cell(const std::vector<std::vector<Rational>>& axes, Fn&& fn)
{
  const auto d = axes.size();
  std::vector<std::size_t> idx(d, 0);
  for (;;) {
    Cell c;
    for (std::size_t i = 0; i < d; ++i) {
      c.lower.push_back(axes[i][idx[i]]);
      c.upper.push_back(idx[i] + 1 < axes[i].size() ? axes[i][idx[i] + 1] : Rational(1));
    }
    if (!fn(c))
      return false;
    std::size_t i = d;
    for (;;) {
      if (i == 0)
        return true;
      --i;
      if (++idx[i] < axes[i].size())
        break;
      idx[i] = 0;
    }
  }
}

bool boxes_contain(const std::vector<Box>& boxes, const TorusPoint& p)
{
  return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return b.contains(p); });
}

bool boxes_cover(const std::vector<Box>& boxes)
{
  std::vector<const Box*> ptrs;
  for (const auto& b : boxes)
    ptrs.push_back(&b);
  return for_each_cell(breakpoints(ptrs, boxes.front().arcs.size()),
                       [&](const Cell& c) { return boxes_contain(boxes, TorusPoint::from_rationals(c.lower)); });
}

bool boxes_subset(const std::vector<Box>& inner, const std::vector<Box>& outer)
{
  std::vector<const Box*> ptrs;
  for (const auto& b : inner)
    ptrs.push_back(&b);
  for (const auto& b : outer)
    ptrs.push_back(&b);
  return for_each_cell(breakpoints(ptrs, inner.front().arcs.size()), [&](const Cell& c) {
    auto p = TorusPoint::from_rationals(c.lower);
    return !boxes_contain(inner, p) || boxes_contain(outer, p);
  });
}

bool member_subset(const CoverSet& a, const CoverSet& b)
{
  if (a.is_finite() != b.is_finite())
    throw std::invalid_argument("covers of different space families");
  if (a.is_finite())
    return is_subset(a.points(), b.points());
  if (a.region().map != b.region().map)
    throw std::invalid_argument("containment between differently mapped torus regions is not supported");
  return boxes_subset(a.region().boxes, b.region().boxes);
}

}  // namespace

bool covers(const Space& s, const OpenCover& u)
{
  if (u.members.empty())
    return false;
  if (is_finite(s)) {
    PointSet acc = 0;
    for (const auto& m : u.members) {
      if (!m.is_finite())
        throw std::invalid_argument("torus region in a finite-space cover");
      acc |= m.points();
    }
    return acc == full_set(finite_size(s));
  }
  std::map<IntMatrix, std::vector<Box>> by_map;
  for (const auto& m : u.members) {
    if (m.is_finite())
      throw std::invalid_argument("finite subset in a torus cover");
    if (m.region().map.dim() != std::get<TorusSpace>(s).dim)
      throw std::invalid_argument("torus region of the wrong dimension");
    auto& dst = by_map[m.region().map];
    dst.insert(dst.end(), m.region().boxes.begin(), m.region().boxes.end());
  }
  // A family sharing one map covers iff its boxes do; the map is a bijection.
  for (const auto& [map, boxes] : by_map)
    if (boxes_cover(boxes))
      return true;
  return false;
}

void validate_cover(const Space& s, const OpenCover& u)
{
  if (auto t = std::get_if<FiniteTopSpace>(&s))
    for (const auto& m : u.members)
      if (!m.is_finite() || !t->is_open(m.points()))
        throw std::invalid_argument("cover member " + m.name + " is not open");
  if (!covers(s, u))
    throw std::invalid_argument("the sets do not cover the space");
}

bool refines(const OpenCover& v, const OpenCover& u)
{
  for (const auto& a : v.members) {
    bool inside = std::any_of(u.members.begin(), u.members.end(),
                              [&](const CoverSet& b) { return member_subset(a, b); });
    if (!inside)
      return false;
  }
  return true;
}

OpenCover cover_join(const OpenCover& u, const OpenCover& v)
{
  OpenCover out;
  for (const auto& a : u.members)
    for (const auto& b : v.members) {
      if (a.is_finite() != b.is_finite())
        throw std::invalid_argument("covers of different space families");
      std::string name = a.name + "^" + b.name;
      if (a.is_finite()) {
        if (auto s = a.points() & b.points())
          out.members.push_back({name, s});
        continue;
      }
      if (a.region().map != b.region().map)
        throw std::invalid_argument("join of differently mapped torus regions is not supported");
      std::vector<Box> pieces;
      for (const auto& ba : a.region().boxes)
        for (const auto& bb : b.region().boxes) {
          std::vector<Box> partial{Box{}};
          for (std::size_t i = 0; i < ba.arcs.size(); ++i) {
            std::vector<Box> next;
            for (const auto& arc : intersect(ba.arcs[i], bb.arcs[i]))
              for (auto p : partial) {
                p.arcs.push_back(arc);
                next.push_back(std::move(p));
              }
            partial = std::move(next);
          }
          pieces.insert(pieces.end(), partial.begin(), partial.end());
        }
      if (pieces.empty())
        continue;
      TorusRegion r = a.region();
      r.boxes = std::move(pieces);
      out.members.push_back({name, std::move(r)});
    }
  return out.deduplicated();
}

Rational lebesgue_number(const Space& s, const OpenCover& u)
{
  validate_cover(s, u);
  if (std::holds_alternative<FiniteTopSpace>(s))
    throw std::invalid_argument("Lebesgue numbers need a metric space");

  if (auto m = std::get_if<FiniteMetricSpace>(&s)) {
    const auto n = m->size();
    if (n > 20)
      throw std::invalid_argument("exact Lebesgue number limited to 20 points");
    for (const auto& c : u.members)
      if (c.points() == full_set(n))
        return m->diameter() + 1;
    const std::size_t total = std::size_t{1} << n;
    std::vector<Rational> diam(total, Rational(0));
    std::optional<Rational> worst;
    for (std::size_t mask = 1; mask < total; ++mask) {
      auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
      auto rest = mask & (mask - 1);
      Rational d = diam[rest];
      for (auto j : members(rest))
        d = std::max(d, m->distance(low, j));
      diam[mask] = d;
      bool fits = std::any_of(u.members.begin(), u.members.end(),
                              [&](const CoverSet& c) { return is_subset(mask, c.points()); });
      if (!fits && (!worst || d < *worst))
        worst = d;
    }
    return *worst;
  }

  // Torus: any set of diameter < delta <= 1/3 lies in a box [a, a + delta)^d, so a
  // lower bound follows from the slack of the containing boxes over each cell.
  std::vector<const Box*> boxes;
  for (const auto& c : u.members) {
    if (!c.region().is_plain())
      throw std::invalid_argument("Lebesgue bound needs a cover by plain boxes");
    for (const auto& b : c.region().boxes) {
      if (b.full())
        return torus_diameter() + 1;
      boxes.push_back(&b);
    }
  }
  const auto d = boxes.front()->arcs.size();
  Rational bound(1, 3);
  for_each_cell(breakpoints(boxes, d), [&](const Cell& c) {
    auto p = TorusPoint::from_rationals(c.lower);
    std::optional<Rational> best;
    for (auto b : boxes) {
      if (!b->contains(p))
        continue;
      std::optional<Rational> slack;
      for (std::size_t i = 0; i < d; ++i) {
        const auto& a = b->arcs[i];
        if (a.full())
          continue;
        Rational offset = frac(c.lower[i] - a.lo);
        Rational s_i = a.len - offset - (c.upper[i] - c.lower[i]);
        if (!slack || s_i < *slack)
          slack = s_i;
      }
      Rational v = slack.value_or(Rational(1));
      if (!best || v > *best)
        best = v;
    }
    bound = std::min(bound, *best);
    return true;
  });
  if (bound <= 0)
    throw std::invalid_argument("no positive Lebesgue number can be certified for this cover");
  return bound;
}

PropertyPWitness property_p_witness(const Space& s, const Rational& eps)
{
  if (eps <= 0)
    throw std::invalid_argument("epsilon must be positive");
  PropertyPWitness w;
  w.whole_space = true;
  if (is_finite(s))
    w.finite_set = full_set(finite_size(s));
  return w;
}

PropertyPWitness property_p_witness_interval(const Rational& eps)
{
  if (eps <= 0)
    throw std::invalid_argument("epsilon must be positive");
  PropertyPWitness w;
  w.closed_interval = std::make_pair(eps, Rational(1) - eps);
  return w;
}

bool property_p_holds(const FiniteMetricSpace& x, const Rational& eps, PointSet c)
{
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (!(x.distance(i, j) < eps) && !(contains(c, i) && contains(c, j)))
        return false;
  return true;
}

std::optional<std::pair<Rational, Rational>> interval_property_p_violation(const Rational& eps, const Rational& a,
                                                                          const Rational& b, std::int64_t q)
{
  auto in_c = [&](const Rational& t) { return a <= t && t <= b; };
  for (std::int64_t i = 1; i < q; ++i)
    for (std::int64_t j = 1; j < q; ++j) {
      Rational x(i, q), y(j, q);
      Rational d = x > y ? x - y : y - x;
      if (!(d < eps) && !(in_c(x) && in_c(y)))
        return std::make_pair(x, y);
    }
  return std::nullopt;
}

FiniteMetricSpace parse_metric_space(std::string_view text)
{
  auto lines = content_lines(text);
  if (lines.empty())
    throw std::invalid_argument("metric space text is empty");
  auto labels = tokens(lines[0]);
  const auto n = labels.size();
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i)
    rows.push_back(tokens(lines[i]));
  // Rows either omit the diagonal (n-1 rows, row i has i entries) or include it.
  bool with_diag = rows.size() == n && (n == 0 || rows[0].size() == 1);
  std::size_t offset = with_diag ? 0 : 1;
  if (rows.size() + offset != n)
    throw std::invalid_argument("expected " + std::to_string(n - 1) + " lower-triangular rows, got " +
                                std::to_string(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t i = r + offset;
    std::size_t expect = with_diag ? i + 1 : i;
    if (rows[r].size() != expect)
      throw std::invalid_argument("row for " + labels[i] + " has " + std::to_string(rows[r].size()) +
                                  " entries, expected " + std::to_string(expect));
    for (std::size_t j = 0; j < i; ++j) {
      d[i][j] = parse_rational(rows[r][j]);
      d[j][i] = d[i][j];
    }
  }
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

FiniteTopSpace parse_topology(std::string_view text)
{
  auto lines = content_lines(text);
  if (lines.empty())
    throw std::invalid_argument("topology text is empty");
  auto labels = tokens(lines[0]);
  std::vector<PointSet> opens;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    PointSet s = 0;
    for (const auto& tok : tokens(lines[i])) {
      if (tok == "{}" || tok == "-")
        continue;
      s |= singleton(label_index(labels, tok));
    }
    opens.push_back(s);
  }
  return FiniteTopSpace(std::move(labels), std::move(opens));
}

OpenCover parse_cover(const Space& s, std::string_view text)
{
  OpenCover u;
  for (const auto& line : content_lines(text)) {
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("cover line '" + line + "' lacks 'name:'");
    auto name = tokens(line.substr(0, colon));
    if (name.size() != 1)
      throw std::invalid_argument("cover member name must be one word in '" + line + "'");
    auto spec = line.substr(colon + 1);
    if (is_finite(s)) {
      PointSet p = 0;
      for (const auto& tok : tokens(spec))
        p |= singleton(label_index(finite_labels(s), tok));
      u.members.push_back({name[0], p});
    } else {
      std::vector<Box> boxes;
      std::size_t start = 0;
      for (;;) {
        auto bar = spec.find('|', start);
        boxes.push_back(parse_box(spec.substr(start, bar == std::string::npos ? std::string::npos : bar - start)));
        if (bar == std::string::npos)
          break;
        start = bar + 1;
      }
      u.members.push_back({name[0], TorusRegion::from_boxes(std::move(boxes))});
    }
  }
  if (u.members.empty())
    throw std::invalid_argument("cover has no members");
  return u;
}

std::string format_member(const Space& s, const CoverSet& m)
{
  if (m.is_finite()) {
    std::string out;
    for (auto i : members(m.points())) {
      if (!out.empty())
        out += ",";
      out += finite_labels(s).at(i);
    }
    return out;
  }
  std::string out;
  if (!m.region().is_plain())
    out = "[" + to_string(m.region().map) + "] ";
  for (std::size_t i = 0; i < m.region().boxes.size(); ++i) {
    if (i)
      out += " | ";
    out += to_string(m.region().boxes[i]);
  }
  return out;
}

}  // namespace expansia
