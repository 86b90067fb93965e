#include "expansia/point.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace expansia {

TorusPoint::TorusPoint(std::vector<std::int64_t> numerators, std::int64_t den)
    : num_(std::move(numerators)), den_(den)
{
  if (den_ <= 0)
    throw std::invalid_argument("torus point denominator must be positive");
  std::int64_t g = den_;
  for (auto& n : num_) {
    n = mod_floor(n, den_);
    g = std::gcd(g, n);
  }
  if (g > 1) {
    for (auto& n : num_)
      n /= g;
    den_ /= g;
  }
}

std::strong_ordering TorusPoint::operator<=>(const TorusPoint& rhs) const
{
  for (std::size_t i = 0; i < std::min(num_.size(), rhs.num_.size()); ++i) {
    auto l = static_cast<__int128>(num_[i]) * rhs.den_;
    auto r = static_cast<__int128>(rhs.num_[i]) * den_;
    if (l != r)
      return l < r ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return num_.size() <=> rhs.num_.size();
}

TorusPoint TorusPoint::from_rationals(const std::vector<Rational>& coords)
{
  std::int64_t den = 1;
  for (const auto& c : coords)
    den = lcm_checked(den, c.denominator());
  std::vector<std::int64_t> num;
  for (const auto& c : coords)
    num.push_back(checked_mul(c.numerator(), den / c.denominator()));
  return TorusPoint(std::move(num), den);
}

std::vector<Rational> TorusPoint::coords() const
{
  std::vector<Rational> out;
  for (std::size_t i = 0; i < num_.size(); ++i)
    out.push_back(coord(i));
  return out;
}

TorusPoint TorusPoint::mapped(const IntMatrix& a) const
{
  if (a.dim() != num_.size())
    throw std::invalid_argument("matrix and point dimensions differ");
  std::vector<std::int64_t> out(num_.size(), 0);
  for (std::size_t i = 0; i < num_.size(); ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < num_.size(); ++j)
      acc = mod_floor(checked_add(acc, checked_mul(mod_floor(a(i, j), den_), num_[j])), den_);
    out[i] = acc;
  }
  return TorusPoint(std::move(out), den_);
}

TorusPoint parse_torus_point(std::string_view text)
{
  std::vector<Rational> coords;
  std::size_t start = 0;
  for (;;) {
    auto pos = text.find(',', start);
    coords.push_back(parse_rational(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return TorusPoint::from_rationals(coords);
}

std::vector<std::string> coordinate_strings(const TorusPoint& p)
{
  std::vector<std::string> out;
  for (std::size_t i = 0; i < p.dim(); ++i)
    out.push_back(to_string(p.coord(i)));
  return out;
}

std::string to_string(const TorusPoint& p)
{
  std::string out = "(";
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i)
      out += ", ";
    out += to_string(p.coord(i));
  }
  return out + ")";
}

}  // namespace expansia
