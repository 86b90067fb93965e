#include "expansia/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace expansia {

namespace {

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole)
{
  if (!s.empty() && s.front() == '+')
    s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
  auto t = trim(text);
  auto slash = t.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_int(t, text));
  auto num = parse_int(trim(t.substr(0, slash)), text);
  auto den = parse_int(trim(t.substr(slash + 1)), text);
  if (den == 0)
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& r)
{
  if (r.denominator() == 1)
    return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational frac(const Rational& r)
{
  return Rational(mod_floor(r.numerator(), r.denominator()), r.denominator());
}

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m)
{
  std::int64_t r = a % m;
  if (r < 0)
    r += (m < 0 ? -m : m);
  return r;
}

std::int64_t lcm_checked(std::int64_t a, std::int64_t b)
{
  if (a == 0 || b == 0)
    return 0;
  std::int64_t g = std::gcd(a, b);
  return checked_mul(a / g, b < 0 ? -b : b);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out))
    throw std::overflow_error("int64 overflow in addition");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out))
    throw std::overflow_error("int64 overflow in multiplication");
  return out;
}

}  // namespace expansia
