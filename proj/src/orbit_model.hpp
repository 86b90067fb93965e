#pragma once

// Finite universe of points closed under the action, with exact integer distances.
// Finite spaces use all their points; the torus uses the grid (1/q)Z^d / Z^d, which
// integer matrices map to itself.

#include <cstdint>
#include <optional>
#include <vector>

#include "expansia/actions.hpp"

namespace expansia::detail {

class Universe {
 public:
  static Universe finite(const Action& a);
  static Universe grid(const Action& a, std::int64_t q);
  /// Grid for the torus, whole space for finite models.
  static Universe of(const Action& a, std::int64_t q);

  std::size_t size() const noexcept { return n_; }
  bool is_grid() const noexcept { return q_ > 0; }
  std::int64_t grid_denominator() const noexcept { return q_; }

  Point point(std::size_t i) const;
  std::optional<std::size_t> index_of(const Point& p) const;
  std::vector<std::uint32_t> permutation(const Element& e) const;

  bool has_metric() const noexcept { return den_ > 0; }
  /// Distance numerator over denominator().
  std::int64_t dist(std::size_t i, std::size_t j) const
  {
    if (q_ > 0) {
      std::int64_t best = 0;
      for (std::size_t k = 0; k < d_; ++k) {
        auto diff = coords_[i * d_ + k] - coords_[j * d_ + k];
        if (diff < 0)
          diff = -diff;
        best = std::max(best, std::min(diff, q_ - diff));
      }
      return best;
    }
    return dist_[i * n_ + j];
  }
  std::int64_t denominator() const noexcept { return den_; }
  Rational distance(std::size_t i, std::size_t j) const { return Rational(dist(i, j), den_); }
  /// dist(i, j) > c, exactly.
  bool exceeds(std::int64_t num, const Rational& c) const
  {
    return static_cast<__int128>(num) * c.denominator() > static_cast<__int128>(c.numerator()) * den_;
  }

 private:
  const Action* action_ = nullptr;
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::int64_t q_ = 0;
  std::int64_t den_ = 0;
  std::vector<std::int64_t> coords_;  // grid: n x d numerators
  std::vector<std::int64_t> dist_;    // finite metric: n x n numerators
};

/// Ball elements with their permutations of a universe.
struct ElementTable {
  std::vector<Word> words;
  std::vector<std::vector<std::uint32_t>> perms;
  bool exhausted = false;
};

ElementTable element_table(const Action& a, const Universe& u, std::size_t depth);

/// Breadth-first search over images of one ordered pair under words of bounded length.
/// A finite universe has at most n^2 pairs, far fewer than a large image group.
class PairOrbits {
 public:
  PairOrbits(const Action& a, const Universe& u);

  /// Calls visit(i', j', length) for every image of (i, j) under words of length at most
  /// depth, shortest first, until visit returns false. Returns true when the images found
  /// are all images under the whole group.
  template <class Visit>
  bool walk(std::size_t i, std::size_t j, std::size_t depth, Visit&& visit)
  {
    start(i, j);
    for (std::size_t len = 0, begin = 0; begin < queue_.size(); ++len) {
      const std::size_t end = queue_.size();
      for (std::size_t k = begin; k < end; ++k)
        if (!visit(queue_[k].first, queue_[k].second, len))
          return false;
      if (len == depth)
        return !grows(begin, end);
      expand(begin, end);
      begin = end;
    }
    return true;
  }

 private:
  void start(std::size_t i, std::size_t j);
  void expand(std::size_t begin, std::size_t end);
  bool grows(std::size_t begin, std::size_t end) const;

  std::size_t n_ = 0;
  std::vector<std::vector<std::uint32_t>> gens_;
  std::vector<std::uint32_t> seen_;  // stamp per ordered pair
  std::uint32_t stamp_ = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> queue_;
};

}  // namespace expansia::detail
