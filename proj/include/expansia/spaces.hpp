#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "expansia/linalg.hpp"
#include "expansia/point.hpp"
#include "expansia/rational.hpp"

namespace expansia {

/// Subsets of a finite space with at most 64 points.
using PointSet = std::uint64_t;

constexpr std::size_t kMaxFinitePoints = 64;

inline PointSet singleton(std::size_t x) { return PointSet{1} << x; }
inline PointSet full_set(std::size_t n) { return n >= 64 ? ~PointSet{0} : (PointSet{1} << n) - 1; }
inline bool contains(PointSet s, std::size_t x) { return (s >> x) & 1u; }
inline bool is_subset(PointSet a, PointSet b) { return (a & ~b) == 0; }
std::vector<std::size_t> members(PointSet s);

/// Max over coordinates of the circle distance; exact.
Rational torus_distance(const TorusPoint& x, const TorusPoint& y);
Rational torus_norm(const TorusPoint& x);

/// Diameter of the torus under the max-circle metric.
inline Rational torus_diameter() { return Rational(1, 2); }

struct TorusSpace {
  std::size_t dim = 2;
  bool operator==(const TorusSpace&) const = default;
};

class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  /// dist must be symmetric with zero diagonal and positive off-diagonal entries.
  /// Triangle-inequality failures are recorded, not rejected.
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<std::vector<Rational>> dist);

  /// Every pair of distinct points at distance one.
  static FiniteMetricSpace discrete(std::size_t n);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t index_of(std::string_view label) const;
  const Rational& distance(std::size_t i, std::size_t j) const { return dist_[i][j]; }
  Rational diameter() const;
  const std::vector<std::string>& triangle_violations() const noexcept { return warnings_; }

  /// Induced metric on a subset, points renumbered in increasing order.
  FiniteMetricSpace induced(PointSet subset) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<Rational>> dist_;
  std::vector<std::string> warnings_;
};

class FiniteTopSpace {
 public:
  FiniteTopSpace() = default;
  /// The empty set and the whole space are added; the family must be closed under
  /// pairwise union and intersection.
  FiniteTopSpace(std::vector<std::string> labels, std::vector<PointSet> opens);

  /// Smallest topology containing the given sets.
  static FiniteTopSpace generated(std::vector<std::string> labels, const std::vector<PointSet>& subbasis);
  static FiniteTopSpace discrete(std::size_t n);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t index_of(std::string_view label) const;
  const std::vector<PointSet>& opens() const noexcept { return opens_; }
  bool is_open(PointSet s) const;
  bool is_discrete() const;
  /// Intersection of all open sets containing x.
  PointSet minimal_neighborhood(std::size_t x) const;

  FiniteTopSpace induced(PointSet subset) const;

 private:
  std::vector<std::string> labels_;
  std::vector<PointSet> opens_;  // sorted, unique
};

using Space = std::variant<TorusSpace, FiniteMetricSpace, FiniteTopSpace>;

bool is_finite(const Space& s);
std::size_t finite_size(const Space& s);
const std::vector<std::string>& finite_labels(const Space& s);
bool has_metric(const Space& s);
/// Distance in a metric family; throws std::invalid_argument for a bare topology.
Rational distance(const Space& s, const Point& x, const Point& y);
Rational diameter(const Space& s);
std::string describe(const Space& s, const Point& p);

bool is_T1(const FiniteTopSpace& x);
/// Distinct points that cannot be separated by disjoint open sets, if any.
std::optional<std::pair<std::size_t, std::size_t>> hausdorff_violation(const FiniteTopSpace& x);

/// Half-open arc [lo, lo + len) of the circle R/Z with lo in [0, 1) and len in (0, 1].
struct Arc {
  Rational lo;
  Rational len;

  Arc() = default;
  Arc(Rational lo, Rational len);
  bool contains(const Rational& t) const;
  bool full() const { return len == Rational(1); }
  bool operator==(const Arc&) const = default;
};

std::vector<Arc> intersect(const Arc& a, const Arc& b);

/// Product of arcs.
struct Box {
  std::vector<Arc> arcs;
  bool contains(const TorusPoint& p) const;
  bool full() const;
  bool operator==(const Box&) const = default;
};

/// "lo..hi x lo..hi" with rational endpoints; hi may exceed 1 to wrap.
Box parse_box(std::string_view text);
std::string to_string(const Box& b);

/// The set map(union of boxes) mod 1. Plain box unions carry the identity map.
struct TorusRegion {
  IntMatrix map;
  IntMatrix pullback;  // map^-1
  std::vector<Box> boxes;

  static TorusRegion from_boxes(std::vector<Box> boxes);
  bool contains(const TorusPoint& p) const;
  bool is_plain() const { return map == IntMatrix::identity(map.dim()); }
  bool operator==(const TorusRegion&) const = default;
};

struct CoverSet {
  std::string name;
  std::variant<PointSet, TorusRegion> shape;

  bool is_finite() const { return std::holds_alternative<PointSet>(shape); }
  PointSet points() const { return std::get<PointSet>(shape); }
  const TorusRegion& region() const { return std::get<TorusRegion>(shape); }
  bool contains(const Point& p) const;
  bool operator==(const CoverSet&) const = default;
};

struct OpenCover {
  std::vector<CoverSet> members;

  std::size_t size() const noexcept { return members.size(); }
  /// Drops members whose set equals an earlier member's set.
  OpenCover deduplicated() const;
};

OpenCover finite_cover(const std::vector<PointSet>& sets, std::string_view prefix = "U");
OpenCover torus_box_cover(const std::vector<Box>& boxes, std::string_view prefix = "U");

/// True when the union of members is the whole space. Exact for finite spaces and for
/// torus covers whose members share one map.
bool covers(const Space& s, const OpenCover& u);
/// Throws std::invalid_argument unless u covers s with members open in s.
void validate_cover(const Space& s, const OpenCover& u);

/// Every member of v lies inside some member of u.
bool refines(const OpenCover& v, const OpenCover& u);
/// Nonempty pairwise intersections, duplicates removed.
OpenCover cover_join(const OpenCover& u, const OpenCover& v);

/// Finite metric spaces: the largest delta such that every subset of diameter < delta
/// lies in a member (diameter + 1 if a member is the whole space).
/// Torus box covers: a certified positive lower bound.
Rational lebesgue_number(const Space& s, const OpenCover& u);

/// Compact C with d^-1([0, eps)) union C x C = X x X, for the supported families.
struct PropertyPWitness {
  bool whole_space = false;
  std::optional<PointSet> finite_set;
  std::optional<std::pair<Rational, Rational>> closed_interval;
};

PropertyPWitness property_p_witness(const Space& s, const Rational& eps);
/// The open interval (0, 1) with the usual metric.
PropertyPWitness property_p_witness_interval(const Rational& eps);
/// Exact check of the defining identity on a finite metric space.
bool property_p_holds(const FiniteMetricSpace& x, const Rational& eps, PointSet c);
/// First pair on the grid (1/q)Z inside (0, 1) violating the identity for the closed
/// interval [a, b], if any.
std::optional<std::pair<Rational, Rational>> interval_property_p_violation(const Rational& eps, const Rational& a,
                                                                          const Rational& b, std::int64_t q);

// Text formats.
FiniteMetricSpace parse_metric_space(std::string_view text);
FiniteTopSpace parse_topology(std::string_view text);
/// One member per line, "name: spec"; spec is a box union joined by '|' on the torus,
/// or comma separated labels on finite spaces.
OpenCover parse_cover(const Space& s, std::string_view text);
std::string format_member(const Space& s, const CoverSet& m);

}  // namespace expansia
