#include "orbit_model.hpp"

#include <algorithm>
#include <stdexcept>

namespace expansia::detail {

Universe Universe::finite(const Action& a)
{
  Universe u;
  u.action_ = &a;
  u.n_ = finite_size(a.space());
  if (auto m = std::get_if<FiniteMetricSpace>(&a.space())) {
    std::int64_t den = 1;
    for (std::size_t i = 0; i < u.n_; ++i)
      for (std::size_t j = 0; j < u.n_; ++j)
        den = lcm_checked(den, m->distance(i, j).denominator());
    u.den_ = den;
    u.dist_.resize(u.n_ * u.n_);
    for (std::size_t i = 0; i < u.n_; ++i)
      for (std::size_t j = 0; j < u.n_; ++j) {
        const auto& r = m->distance(i, j);
        u.dist_[i * u.n_ + j] = checked_mul(r.numerator(), den / r.denominator());
      }
  }
  return u;
}

Universe Universe::grid(const Action& a, std::int64_t q)
{
  if (!a.on_torus())
    throw std::invalid_argument("grids live on the torus");
  if (q < 1)
    throw std::invalid_argument("grid denominator must be positive");
  Universe u;
  u.action_ = &a;
  u.d_ = std::get<TorusSpace>(a.space()).dim;
  u.q_ = q;
  u.den_ = q;
  std::size_t n = 1;
  for (std::size_t k = 0; k < u.d_; ++k) {
    n *= static_cast<std::size_t>(q);
    if (n > (std::size_t{1} << 22))
      throw std::invalid_argument("grid too large");
  }
  u.n_ = n;
  u.coords_.resize(n * u.d_);
  for (std::size_t i = 0; i < n; ++i) {
    auto rest = i;
    for (std::size_t k = u.d_; k-- > 0;) {
      u.coords_[i * u.d_ + k] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(q));
      rest /= static_cast<std::size_t>(q);
    }
  }
  return u;
}

Universe Universe::of(const Action& a, std::int64_t q)
{
  return a.on_torus() ? grid(a, q) : finite(a);
}

Point Universe::point(std::size_t i) const
{
  if (q_ == 0)
    return i;
  std::vector<std::int64_t> num(coords_.begin() + static_cast<std::ptrdiff_t>(i * d_),
                                coords_.begin() + static_cast<std::ptrdiff_t>((i + 1) * d_));
  return TorusPoint(std::move(num), q_);
}

std::optional<std::size_t> Universe::index_of(const Point& p) const
{
  if (q_ == 0) {
    auto i = std::get<std::size_t>(p);
    return i < n_ ? std::optional<std::size_t>(i) : std::nullopt;
  }
  const auto& t = std::get<TorusPoint>(p);
  if (t.dim() != d_ || q_ % t.denominator() != 0)
    return std::nullopt;
  std::size_t idx = 0;
  auto scale = q_ / t.denominator();
  for (std::size_t k = 0; k < d_; ++k)
    idx = idx * static_cast<std::size_t>(q_) + static_cast<std::size_t>(t.numerators()[k] * scale);
  return idx;
}

std::vector<std::uint32_t> Universe::permutation(const Element& e) const
{
  if (q_ == 0)
    return e.permutation().images();
  const auto& m = e.matrix();
  std::vector<std::uint32_t> out(n_);
  std::vector<std::int64_t> row(d_ * d_);
  for (std::size_t r = 0; r < d_; ++r)
    for (std::size_t c = 0; c < d_; ++c)
      row[r * d_ + c] = mod_floor(m(r, c), q_);
  for (std::size_t i = 0; i < n_; ++i) {
    std::size_t idx = 0;
    for (std::size_t r = 0; r < d_; ++r) {
      std::int64_t acc = 0;
      for (std::size_t c = 0; c < d_; ++c)
        acc = (acc + row[r * d_ + c] * coords_[i * d_ + c]) % q_;
      idx = idx * static_cast<std::size_t>(q_) + static_cast<std::size_t>(acc);
    }
    out[i] = static_cast<std::uint32_t>(idx);
  }
  return out;
}

ElementTable element_table(const Action& a, const Universe& u, std::size_t depth)
{
  auto ball = cayley_ball(a.group(), depth);
  ElementTable t;
  t.exhausted = ball.exhausted;
  for (const auto& e : ball.entries) {
    t.words.push_back(e.witness);
    t.perms.push_back(u.permutation(e.element));
  }
  return t;
}

PairOrbits::PairOrbits(const Action& a, const Universe& u) : n_(u.size()), seen_(u.size() * u.size(), 0)
{
  for (const auto& g : a.group().generators())
    gens_.push_back(u.permutation(a.group().image(g.id)));
}

void PairOrbits::start(std::size_t i, std::size_t j)
{
  if (++stamp_ == 0) {
    std::fill(seen_.begin(), seen_.end(), 0);
    stamp_ = 1;
  }
  queue_.clear();
  queue_.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
  seen_[i * n_ + j] = stamp_;
}

void PairOrbits::expand(std::size_t begin, std::size_t end)
{
  for (std::size_t k = begin; k < end; ++k) {
    auto [i, j] = queue_[k];
    for (const auto& g : gens_) {
      auto& mark = seen_[g[i] * n_ + g[j]];
      if (mark == stamp_)
        continue;
      mark = stamp_;
      queue_.emplace_back(g[i], g[j]);
    }
  }
}

bool PairOrbits::grows(std::size_t begin, std::size_t end) const
{
  for (std::size_t k = begin; k < end; ++k)
    for (const auto& g : gens_)
      if (seen_[g[queue_[k].first] * n_ + g[queue_[k].second]] != stamp_)
        return true;
  return false;
}

}  // namespace expansia::detail
