#include "expansia/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "expansia/rational.hpp"

namespace expansia {

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v)
{
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return out;
}

std::int64_t parse_entry(std::string_view s, std::string_view whole, std::size_t column)
{
  try {
    auto r = parse_rational(s);
    if (r.denominator() != 1 || s.find('/') != std::string_view::npos)
      throw std::invalid_argument("");
    return r.numerator();
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("column " + std::to_string(column + 1) + ": bad integer entry in '" +
                                std::string(whole) + "'");
  }
}

}  // namespace

IntMatrix::IntMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, 0) {}

IntMatrix::IntMatrix(std::size_t dim, std::vector<std::int64_t> row_major)
    : dim_(dim), a_(std::move(row_major))
{
  if (a_.size() != dim_ * dim_)
    throw std::invalid_argument("matrix data does not match dimension");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : dim_(rows.size())
{
  for (const auto& r : rows) {
    if (r.size() != dim_)
      throw std::invalid_argument("matrix must be square");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t dim) { return scalar(dim, 1); }

IntMatrix IntMatrix::scalar(std::size_t dim, std::int64_t s)
{
  IntMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    m(i, i) = s;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const
{
  if (dim_ != rhs.dim_)
    throw std::invalid_argument("matrix dimension mismatch");
  IntMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k < dim_; ++k) {
      auto lhs = (*this)(i, k);
      if (lhs == 0)
        continue;
      for (std::size_t j = 0; j < dim_; ++j)
        out(i, j) = checked_add(out(i, j), checked_mul(lhs, rhs(k, j)));
    }
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const
{
  if (dim_ != rhs.dim_)
    throw std::invalid_argument("matrix dimension mismatch");
  IntMatrix out(dim_);
  for (std::size_t i = 0; i < a_.size(); ++i)
    out.a_[i] = checked_add(a_[i], -rhs.a_[i]);
  return out;
}

std::vector<std::int64_t> IntMatrix::apply(const std::vector<std::int64_t>& v) const
{
  if (v.size() != dim_)
    throw std::invalid_argument("vector dimension mismatch");
  std::vector<std::int64_t> out(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      out[i] = checked_add(out[i], checked_mul((*this)(i, j), v[j]));
  return out;
}

std::int64_t IntMatrix::trace() const
{
  std::int64_t t = 0;
  for (std::size_t i = 0; i < dim_; ++i)
    t = checked_add(t, (*this)(i, i));
  return t;
}

// Bareiss fraction-free elimination; all intermediate quotients are exact.
std::int64_t IntMatrix::determinant() const
{
  if (dim_ == 0)
    return 1;
  std::vector<__int128> m(a_.begin(), a_.end());
  auto at = [&](std::size_t r, std::size_t c) -> __int128& { return m[r * dim_ + c]; };
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < dim_; ++k) {
    if (at(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < dim_ && at(swap, k) == 0)
        ++swap;
      if (swap == dim_)
        return 0;
      for (std::size_t c = 0; c < dim_; ++c)
        std::swap(at(k, c), at(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < dim_; ++i)
      for (std::size_t j = k + 1; j < dim_; ++j)
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  __int128 det = sign * at(dim_ - 1, dim_ - 1);
  if (det > INT64_MAX || det < INT64_MIN)
    throw std::overflow_error("determinant exceeds int64");
  return static_cast<std::int64_t>(det);
}

IntMatrix IntMatrix::adjugate() const
{
  IntMatrix adj(dim_);
  if (dim_ == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      IntMatrix minor(dim_ - 1);
      for (std::size_t r = 0, mr = 0; r < dim_; ++r) {
        if (r == j)
          continue;
        for (std::size_t c = 0, mc = 0; c < dim_; ++c) {
          if (c == i)
            continue;
          minor(mr, mc++) = (*this)(r, c);
        }
        ++mr;
      }
      auto cof = minor.determinant();
      adj(i, j) = ((i + j) % 2 == 0) ? cof : -cof;
    }
  return adj;
}

IntMatrix IntMatrix::inverse() const
{
  auto det = determinant();
  if (det != 1 && det != -1)
    throw std::domain_error("matrix " + to_string(*this) + " is not invertible over the integers");
  auto adj = adjugate();
  if (det == -1)
    for (auto& v : adj.a_)
      v = -v;
  return adj;
}

IntMatrix parse_matrix(std::string_view text)
{
  auto rows = split(text, ';');
  std::vector<std::int64_t> data;
  std::size_t dim = rows.size();
  std::size_t column = 0;
  for (auto row : rows) {
    auto entries = split(row, ',');
    if (entries.size() != dim)
      throw std::invalid_argument("column " + std::to_string(column + 1) + ": row has " +
                                  std::to_string(entries.size()) + " entries, expected " +
                                  std::to_string(dim) + " in '" + std::string(text) + "'");
    for (auto e : entries) {
      data.push_back(parse_entry(e, text, column));
      column += e.size() + 1;
    }
  }
  return IntMatrix(dim, std::move(data));
}

std::string to_string(const IntMatrix& m)
{
  std::ostringstream out;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (i)
      out << ';';
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j)
        out << ',';
      out << m(i, j);
    }
  }
  return out.str();
}

Permutation::Permutation(std::vector<std::uint32_t> images) : p_(std::move(images))
{
  if (!is_bijection(p_))
    throw std::invalid_argument("permutation images are not a bijection");
}

Permutation Permutation::identity(std::size_t n)
{
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0u);
  return Permutation(std::move(p));
}

bool Permutation::is_bijection(const std::vector<std::uint32_t>& images)
{
  std::vector<bool> seen(images.size(), false);
  for (auto v : images) {
    if (v >= images.size() || seen[v])
      return false;
    seen[v] = true;
  }
  return true;
}

Permutation Permutation::operator*(const Permutation& rhs) const
{
  if (degree() != rhs.degree())
    throw std::invalid_argument("permutation degree mismatch");
  Permutation out;
  out.p_.resize(p_.size());
  for (std::size_t x = 0; x < p_.size(); ++x)
    out.p_[x] = p_[rhs.p_[x]];
  return out;
}

Permutation Permutation::inverse() const
{
  Permutation out;
  out.p_.resize(p_.size());
  for (std::size_t x = 0; x < p_.size(); ++x)
    out.p_[p_[x]] = static_cast<std::uint32_t>(x);
  return out;
}

bool Permutation::is_identity() const
{
  for (std::size_t x = 0; x < p_.size(); ++x)
    if (p_[x] != x)
      return false;
  return true;
}

Permutation parse_permutation(std::string_view text)
{
  std::vector<std::uint32_t> images;
  std::size_t column = 0;
  for (auto e : split(text, ',')) {
    auto v = parse_entry(e, text, column);
    if (v < 0)
      throw std::invalid_argument("column " + std::to_string(column + 1) + ": negative image in '" +
                                  std::string(text) + "'");
    images.push_back(static_cast<std::uint32_t>(v));
    column += e.size() + 1;
  }
  if (!Permutation::is_bijection(images))
    throw std::invalid_argument("'" + std::string(text) + "' is not a permutation of 0.." +
                                std::to_string(images.size() - 1));
  return Permutation(std::move(images));
}

std::string to_string(const Permutation& p)
{
  std::string out;
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (i)
      out += ',';
    out += std::to_string(p(i));
  }
  return out;
}

IntMatrix hermite_lower(const IntMatrix& m)
{
  const auto d = m.dim();
  if (m.determinant() == 0)
    throw std::domain_error("Hermite basis requires a nonsingular matrix");
  IntMatrix h = m;
  auto col_axpy = [&](std::size_t dst, std::size_t src, std::int64_t k) {
    for (std::size_t r = 0; r < d; ++r)
      h(r, dst) = checked_add(h(r, dst), -checked_mul(k, h(r, src)));
  };
  for (std::size_t i = 0; i < d; ++i) {
    // Euclid on row i across columns i..d-1 until only column i is nonzero.
    for (;;) {
      std::size_t pivot = d;
      for (std::size_t j = i; j < d; ++j)
        if (h(i, j) != 0 && (pivot == d || std::abs(h(i, j)) < std::abs(h(i, pivot))))
          pivot = j;
      bool done = true;
      for (std::size_t j = i; j < d; ++j) {
        if (j == pivot || h(i, j) == 0)
          continue;
        col_axpy(j, pivot, h(i, j) / h(i, pivot));
        if (h(i, j) != 0)
          done = false;
      }
      if (pivot != i)
        for (std::size_t r = 0; r < d; ++r)
          std::swap(h(r, i), h(r, pivot));
      if (done)
        break;
    }
    if (h(i, i) < 0)
      for (std::size_t r = 0; r < d; ++r)
        h(r, i) = -h(r, i);
    for (std::size_t j = 0; j < i; ++j)
      col_axpy(j, i, floor_div(h(i, j), h(i, i)));
  }
  return h;
}

std::vector<std::vector<std::int64_t>> lattice_coset_representatives(const IntMatrix& m)
{
  auto h = hermite_lower(m);
  const auto d = h.dim();
  std::vector<std::vector<std::int64_t>> reps;
  std::vector<std::int64_t> k(d, 0);
  for (;;) {
    reps.push_back(k);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (++k[i] < h(i, i))
        break;
      k[i] = 0;
      if (i == 0)
        return reps;
    }
    if (d == 0)
      return reps;
  }
}

}  // namespace expansia

std::size_t std::hash<expansia::IntMatrix>::operator()(const expansia::IntMatrix& m) const noexcept
{
  std::size_t seed = m.dim();
  for (auto v : m.data())
    seed = expansia::hash_combine(seed, std::hash<std::int64_t>{}(v));
  return seed;
}

std::size_t std::hash<expansia::Permutation>::operator()(const expansia::Permutation& p) const noexcept
{
  std::size_t seed = p.degree();
  for (auto v : p.images())
    seed = expansia::hash_combine(seed, v);
  return seed;
}
