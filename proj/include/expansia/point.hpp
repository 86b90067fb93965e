#pragma once

#include <cstddef>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "expansia/linalg.hpp"
#include "expansia/rational.hpp"

namespace expansia {

/// Point of the rational torus: coordinates num_i / den reduced into [0, 1),
/// stored over the least common denominator.
class TorusPoint {
 public:
  TorusPoint() = default;
  /// Numerators are reduced modulo den; den must be positive.
  TorusPoint(std::vector<std::int64_t> numerators, std::int64_t den);

  static TorusPoint from_rationals(const std::vector<Rational>& coords);
  static TorusPoint origin(std::size_t dim) { return TorusPoint(std::vector<std::int64_t>(dim, 0), 1); }

  std::size_t dim() const noexcept { return num_.size(); }
  std::int64_t denominator() const noexcept { return den_; }
  const std::vector<std::int64_t>& numerators() const noexcept { return num_; }
  Rational coord(std::size_t i) const { return Rational(num_[i], den_); }
  std::vector<Rational> coords() const;

  /// x -> A x mod 1.
  TorusPoint mapped(const IntMatrix& a) const;

  bool operator==(const TorusPoint&) const = default;
  /// Lexicographic in the coordinates.
  std::strong_ordering operator<=>(const TorusPoint& rhs) const;

 private:
  std::vector<std::int64_t> num_;
  std::int64_t den_ = 1;
};

/// "1/5,0" style coordinate list.
TorusPoint parse_torus_point(std::string_view text);
std::string to_string(const TorusPoint& p);
std::vector<std::string> coordinate_strings(const TorusPoint& p);

/// A point of one of the space families: an index into a finite space, or a torus point.
using Point = std::variant<std::size_t, TorusPoint>;

}  // namespace expansia
