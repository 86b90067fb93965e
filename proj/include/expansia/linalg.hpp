#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace expansia {

/// Dense square integer matrix with overflow-checked arithmetic.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t dim);
  IntMatrix(std::size_t dim, std::vector<std::int64_t> row_major);
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static IntMatrix identity(std::size_t dim);
  static IntMatrix scalar(std::size_t dim, std::int64_t s);

  std::size_t dim() const noexcept { return dim_; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
  const std::vector<std::int64_t>& data() const noexcept { return a_; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& v) const;

  std::int64_t trace() const;
  std::int64_t determinant() const;
  IntMatrix adjugate() const;
  bool is_unimodular() const { return dim_ > 0 && (determinant() == 1 || determinant() == -1); }
  /// Inverse over the integers; throws std::domain_error unless unimodular.
  IntMatrix inverse() const;

  bool operator==(const IntMatrix& other) const = default;
  auto operator<=>(const IntMatrix& other) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<std::int64_t> a_;
};

/// Parses "a,b;c,d" (rows separated by ';', entries by ','). Throws ParseError-like
/// std::invalid_argument carrying the offending column in the message.
IntMatrix parse_matrix(std::string_view text);
std::string to_string(const IntMatrix& m);

/// Bijection of {0..n-1} stored as its image list.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> images);

  static Permutation identity(std::size_t n);
  static bool is_bijection(const std::vector<std::uint32_t>& images);

  std::size_t degree() const noexcept { return p_.size(); }
  std::uint32_t operator()(std::size_t x) const { return p_[x]; }
  const std::vector<std::uint32_t>& images() const noexcept { return p_; }

  /// (this * rhs)(x) = this(rhs(x)).
  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  bool is_identity() const;

  bool operator==(const Permutation& other) const = default;
  auto operator<=>(const Permutation& other) const = default;

 private:
  std::vector<std::uint32_t> p_;
};

Permutation parse_permutation(std::string_view text);
std::string to_string(const Permutation& p);

/// Lower-triangular Hermite basis of the column lattice of a nonsingular matrix.
/// Columns of the result generate the same lattice; diagonal entries are positive.
IntMatrix hermite_lower(const IntMatrix& m);

/// One representative per class of Z^d / M Z^d (M nonsingular), |det M| in total,
/// enumerated in lexicographic order of the Hermite box.
std::vector<std::vector<std::int64_t>> lattice_coset_representatives(const IntMatrix& m);

}  // namespace expansia

template <>
struct std::hash<expansia::IntMatrix> {
  std::size_t operator()(const expansia::IntMatrix& m) const noexcept;
};

template <>
struct std::hash<expansia::Permutation> {
  std::size_t operator()(const expansia::Permutation& p) const noexcept;
};
