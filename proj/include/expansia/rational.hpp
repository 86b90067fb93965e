#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// With C++20 rewritten comparisons, boost (before 1.75) answers rational == int by
// calling int == rational, which rewrites back to the first form and never returns.
// Exact-match overloads found by ADL take precedence over both templates.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, int b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(const rational<std::int64_t>& a, long b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(const rational<std::int64_t>& a, long long b)
{
  return a.denominator() == 1 && a.numerator() == b;
}
}  // namespace boost

namespace expansia {

using Rational = boost::rational<std::int64_t>;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

/// Formats as "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

/// Fractional part in [0, 1).
Rational frac(const Rational& r);

std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t mod_floor(std::int64_t a, std::int64_t m);
std::int64_t lcm_checked(std::int64_t a, std::int64_t b);

// Checked int64 arithmetic; throws std::overflow_error.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace expansia
