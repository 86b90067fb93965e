#include "expansia/groups.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace expansia {

Element Element::operator*(const Element& rhs) const
{
  if (is_matrix() != rhs.is_matrix())
    throw std::invalid_argument("cannot multiply a matrix by a permutation");
  if (is_matrix())
    return Element(matrix() * rhs.matrix());
  return Element(permutation() * rhs.permutation());
}

Element Element::inverse() const
{
  if (is_matrix())
    return Element(matrix().inverse());
  return Element(permutation().inverse());
}

bool Element::is_identity() const
{
  if (is_matrix())
    return matrix() == IntMatrix::identity(matrix().dim());
  return permutation().is_identity();
}

std::string to_string(const Element& e)
{
  return e.is_matrix() ? to_string(e.matrix()) : to_string(e.permutation());
}

namespace {

template <class Rep>
GroupPresentation build_symmetric(const std::vector<std::pair<std::string, Rep>>& gens,
                                  std::vector<Generator>& out_gens, std::vector<Element>& out_images)
{
  for (const auto& [name, rep] : gens) {
    Element e(rep);
    Element inv = e.inverse();
    GeneratorId id = out_gens.size();
    if (inv == e) {
      out_gens.push_back({id, id, name});
      out_images.push_back(e);
    } else {
      out_gens.push_back({id, id + 1, name});
      out_images.push_back(e);
      out_gens.push_back({id + 1, id, name + "^-1"});
      out_images.push_back(inv);
    }
  }
  return GroupPresentation::unchecked(out_gens, out_images);
}

}  // namespace

GroupPresentation GroupPresentation::from_matrices(const std::vector<std::pair<std::string, IntMatrix>>& gens)
{
  if (gens.empty())
    throw std::invalid_argument("a group needs at least one generator");
  for (const auto& [name, m] : gens) {
    if (m.dim() != gens.front().second.dim())
      throw std::invalid_argument("generator " + name + " has a different dimension");
    if (!m.is_unimodular())
      throw std::invalid_argument("generator " + name + " = " + to_string(m) +
                                  " is not invertible over the integers (det " +
                                  std::to_string(m.determinant()) + ")");
  }
  std::vector<Generator> g;
  std::vector<Element> img;
  return build_symmetric(gens, g, img);
}

GroupPresentation GroupPresentation::from_permutations(const std::vector<std::pair<std::string, Permutation>>& gens)
{
  if (gens.empty())
    throw std::invalid_argument("a group needs at least one generator");
  for (const auto& [name, p] : gens)
    if (p.degree() != gens.front().second.degree())
      throw std::invalid_argument("generator " + name + " has a different degree");
  std::vector<Generator> g;
  std::vector<Element> img;
  return build_symmetric(gens, g, img);
}

GroupPresentation GroupPresentation::unchecked(std::vector<Generator> gens, std::vector<Element> images)
{
  if (gens.empty() || gens.size() != images.size())
    throw std::invalid_argument("generator and image tables differ in size");
  GroupPresentation g;
  g.kind_ = images.front().is_matrix() ? RepKind::Matrix : RepKind::Permutation;
  g.degree_ = images.front().is_matrix() ? images.front().matrix().dim() : images.front().permutation().degree();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& e = images[i];
    if (e.is_matrix() != (g.kind_ == RepKind::Matrix))
      throw std::invalid_argument("mixed matrix and permutation generators");
    std::size_t deg = e.is_matrix() ? e.matrix().dim() : e.permutation().degree();
    if (deg != g.degree_)
      throw std::invalid_argument("generator " + gens[i].name + " has a different size");
    if (gens[i].id != i || gens[i].inverse_id >= gens.size())
      throw std::invalid_argument("generator ids must be 0..n-1 with valid inverse ids");
  }
  g.gens_ = std::move(gens);
  g.images_ = std::move(images);
  return g;
}

Element GroupPresentation::identity() const
{
  if (kind_ == RepKind::Matrix)
    return Element(IntMatrix::identity(degree_));
  return Element(Permutation::identity(degree_));
}

std::size_t GroupPresentation::rank() const
{
  std::size_t n = 0;
  for (const auto& g : gens_)
    if (g.inverse_id >= g.id)
      ++n;
  return n;
}

GeneratorId GroupPresentation::find(std::string_view name) const
{
  for (const auto& g : gens_)
    if (g.name == name)
      return g.id;
  throw std::out_of_range("unknown generator '" + std::string(name) + "'");
}

Word GroupPresentation::parse_word(std::string_view text) const
{
  Word w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "e")
      continue;
    w.letters.push_back(find(tok));
  }
  return w;
}

std::string GroupPresentation::format_word(const Word& w) const
{
  if (w.empty())
    return "e";
  std::string out;
  for (auto l : w.letters) {
    if (!out.empty())
      out += ' ';
    out += gens_.at(l).name;
  }
  return out;
}

std::vector<std::string> GroupPresentation::word_names(const Word& w) const
{
  std::vector<std::string> out;
  for (auto l : w.letters)
    out.push_back(gens_.at(l).name);
  return out;
}

Word GroupPresentation::inverse(const Word& w) const
{
  Word out;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back(gens_.at(*it).inverse_id);
  return out;
}

void GroupPresentation::validate_word(const Word& w) const
{
  for (auto l : w.letters)
    if (l >= gens_.size())
      throw std::out_of_range("generator id " + std::to_string(l) + " out of range");
}

Element canonicalize(const GroupPresentation& g, const Word& w)
{
  g.validate_word(w);
  Element acc = g.identity();
  for (auto l : w.letters)
    acc = acc * g.image(l);
  return acc;
}

bool CayleyBall::contains(const Element& e) const
{
  return std::any_of(entries.begin(), entries.end(), [&](const BallEntry& b) { return b.element == e; });
}

namespace {

// Layered BFS. Frontier words are visited in shortlex order and extended on the
// right in id order, so the first word reaching an element is its shortlex minimum.
CayleyBall bfs(const GroupPresentation& g, std::size_t radius, std::size_t max_elements, bool& overflow)
{
  CayleyBall ball;
  std::unordered_map<Element, std::size_t> seen;
  ball.entries.push_back({g.identity(), Word{}});
  seen.emplace(g.identity(), 0);
  std::vector<std::size_t> frontier{0};
  overflow = false;
  std::size_t layer = 0;
  for (; layer < radius && !frontier.empty(); ++layer) {
    std::vector<std::size_t> next;
    for (auto idx : frontier) {
      for (const auto& gen : g.generators()) {
        Element e = ball.entries[idx].element * g.image(gen.id);
        if (seen.count(e))
          continue;
        Word w = ball.entries[idx].witness;
        w.letters.push_back(gen.id);
        seen.emplace(e, ball.entries.size());
        next.push_back(ball.entries.size());
        ball.entries.push_back({std::move(e), std::move(w)});
        if (ball.entries.size() > max_elements) {
          overflow = true;
          return ball;
        }
      }
    }
    frontier = std::move(next);
  }
  ball.radius = radius;
  ball.exhausted = true;
  for (auto idx : frontier) {
    for (const auto& gen : g.generators())
      if (!seen.count(ball.entries[idx].element * g.image(gen.id))) {
        ball.exhausted = false;
        return ball;
      }
  }
  return ball;
}

}  // namespace

CayleyBall cayley_ball(const GroupPresentation& g, std::size_t radius)
{
  bool overflow = false;
  return bfs(g, radius, SIZE_MAX, overflow);
}

std::optional<CayleyBall> image_group(const GroupPresentation& g, std::size_t max_elements)
{
  bool overflow = false;
  auto ball = bfs(g, SIZE_MAX, max_elements, overflow);
  if (overflow)
    return std::nullopt;
  std::size_t r = 0;
  for (const auto& e : ball.entries)
    r = std::max(r, e.witness.length());
  ball.radius = r;
  ball.exhausted = true;
  return ball;
}

Subgroup::Subgroup(GroupPresentation p, std::vector<Word> g) : parent(std::move(p)), gens(std::move(g))
{
  if (gens.empty())
    throw std::invalid_argument("a subgroup needs at least one generator word");
  for (const auto& w : gens)
    parent.validate_word(w);
}

GroupPresentation Subgroup::as_presentation() const
{
  if (parent.kind() == RepKind::Matrix) {
    std::vector<std::pair<std::string, IntMatrix>> m;
    for (const auto& w : gens)
      m.emplace_back(parent.format_word(w), canonicalize(parent, w).matrix());
    return GroupPresentation::from_matrices(m);
  }
  std::vector<std::pair<std::string, Permutation>> p;
  for (const auto& w : gens)
    p.emplace_back(parent.format_word(w), canonicalize(parent, w).permutation());
  return GroupPresentation::from_permutations(p);
}

bool Subgroup::is_whole_group() const
{
  std::unordered_set<Element> sub;
  for (const auto& w : gens) {
    auto e = canonicalize(parent, w);
    sub.insert(e.inverse());
    sub.insert(std::move(e));
  }
  for (const auto& g : parent.generators())
    if (!sub.count(parent.image(g.id)))
      return false;
  return true;
}

SyndeticWitness SyndeticWitness::symmetrized(const GroupPresentation& g) const
{
  SyndeticWitness out = *this;
  for (const auto& w : elements) {
    auto inv = g.inverse(w);
    if (std::find(out.elements.begin(), out.elements.end(), inv) == out.elements.end())
      out.elements.push_back(std::move(inv));
  }
  return out;
}

namespace {

/// Membership oracle for a subgroup: exact for permutation images and for H = G,
/// positive-only (bounded ball search) otherwise.
class Membership {
 public:
  Membership(const Subgroup& h, std::size_t depth)
  {
    if (h.is_whole_group()) {
      everything_ = true;
      exact_ = true;
      return;
    }
    auto pres = h.as_presentation();
    if (pres.kind() == RepKind::Permutation) {
      auto all = image_group(pres);
      if (!all)
        throw std::runtime_error("subgroup image too large to enumerate");
      fill(*all);
      exact_ = true;
    } else {
      auto ball = cayley_ball(pres, depth);
      fill(ball);
      exact_ = ball.exhausted;
    }
  }

  bool contains(const Element& e) const { return everything_ || members_.count(e) > 0; }
  bool exact() const { return exact_; }

 private:
  void fill(const CayleyBall& b)
  {
    for (const auto& e : b.entries)
      members_.insert(e.element);
  }

  bool everything_ = false;
  bool exact_ = false;
  std::unordered_set<Element> members_;
};

}  // namespace

Verdict verify_syndetic_witness(const Subgroup& h, const SyndeticWitness& k, const SyndeticOptions& opts)
{
  if (k.elements.empty())
    throw std::invalid_argument("syndetic witness K must be nonempty");
  const auto& g = h.parent;
  std::vector<Element> kimg;
  for (const auto& w : k.elements)
    kimg.push_back(canonicalize(g, w));

  Membership member(h, opts.membership_depth);
  auto ball = cayley_ball(g, opts.depth);

  Verdict v;
  v.depth = opts.depth;
  for (const auto& entry : ball.entries) {
    bool hit = std::any_of(kimg.begin(), kimg.end(),
                           [&](const Element& ke) { return member.contains(ke * entry.element); });
    if (hit)
      continue;
    v.word = entry.witness;
    if (member.exact()) {
      v.kind = VerdictKind::Falsified;
      v.exact = true;
      v.reason = "Kg misses H for g = " + g.format_word(entry.witness);
    } else {
      v.kind = VerdictKind::Inconclusive;
      v.exact = false;
      v.reason = "no k in K with kg found in the searched ball of H for g = " + g.format_word(entry.witness);
    }
    return v;
  }
  v.kind = VerdictKind::Certified;
  v.reason = ball.exhausted ? "Kg meets H for every g in the image group"
                            : "Kg meets H for every g in the searched ball";
  return v;
}

std::optional<CosetTransversal> coset_transversal(const Subgroup& h, std::size_t bound)
{
  if (bound < 1)
    throw std::invalid_argument("coset transversal bound must be at least 1");
  const auto& g = h.parent;
  if (h.is_whole_group())
    return CosetTransversal{{Word{}}, true};

  const std::size_t membership_depth = 2 * bound + 2;
  Membership member(h, membership_depth);

  auto reps_of = [&](const CayleyBall& ball) {
    std::vector<Word> reps;
    std::vector<Element> rep_inv;
    for (const auto& entry : ball.entries) {
      bool known = std::any_of(rep_inv.begin(), rep_inv.end(),
                               [&](const Element& ri) { return member.contains(ri * entry.element); });
      if (known)
        continue;
      reps.push_back(entry.witness);
      rep_inv.push_back(entry.element.inverse());
    }
    return reps;
  };

  if (g.kind() == RepKind::Permutation) {
    auto ball = cayley_ball(g, bound);
    if (!ball.exhausted)
      return std::nullopt;
    return CosetTransversal{reps_of(ball), true};
  }

  std::size_t prev = 0;
  for (std::size_t n = 1; n <= bound; ++n) {
    auto ball = cayley_ball(g, n);
    auto reps = reps_of(ball);
    if (ball.exhausted)
      return CosetTransversal{reps, member.exact()};
    if (n >= 2 && reps.size() == prev)
      return CosetTransversal{reps, false};
    prev = reps.size();
  }
  return std::nullopt;
}

}  // namespace expansia

std::size_t std::hash<expansia::Element>::operator()(const expansia::Element& e) const noexcept
{
  if (e.is_matrix())
    return std::hash<expansia::IntMatrix>{}(e.matrix());
  return std::hash<expansia::Permutation>{}(e.permutation()) ^ 0x5bd1e995u;
}
