#pragma once

// Exact arithmetic used throughout the library. Every computation path runs
// on arbitrary-precision integers and rationals; there is no floating point.

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mmi/error.hpp"

namespace mmi {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

/// Largest integer <= q.
inline Integer floor_of(const Rational& q) {
  const Integer n = numerator_of(q);
  const Integer d = denominator_of(q);
  Integer t = n / d;  // truncates toward zero
  if (n < 0 && t * d != n) t -= 1;
  return t;
}

/// Smallest integer >= q.
inline Integer ceil_of(const Rational& q) { return -floor_of(-q); }

/// Fractional part q - floor(q), always in [0, 1).
inline Rational frac_of(const Rational& q) { return q - Rational(floor_of(q)); }

/// Integer ceiling of a / b for integers, b != 0.
inline Integer ceil_div(const Integer& a, const Integer& b) {
  return ceil_of(Rational(a, b));
}

/// Canonical lowest-terms text: "17/42", "-3", "0".
inline std::string to_string(const Rational& q) { return q.str(); }
inline std::string to_string(const Integer& z) { return z.str(); }

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline Integer parse_unsigned(std::string_view s) { return Integer(std::string(s)); }

}  // namespace detail

/// Parses "p", "p/q" or a finite decimal "a.b" exactly. Anything else
/// (exponents, spaces, zero denominators) is rejected.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Error {
    return Error(ErrorCode::InvalidArgument, "not an exact rational: '" + std::string(text) + "'");
  };
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) throw fail();
    Integer d = detail::parse_unsigned(den);
    if (d == 0) throw fail();
    value = Rational(detail::parse_unsigned(num), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto part = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!detail::all_digits(whole) || !detail::all_digits(part)) throw fail();
    Integer scale = 1;
    for (std::size_t i = 0; i < part.size(); ++i) scale *= 10;
    value = Rational(detail::parse_unsigned(whole)) +
            Rational(detail::parse_unsigned(part), scale);
  } else {
    if (!detail::all_digits(s)) throw fail();
    value = Rational(detail::parse_unsigned(s));
  }
  return negative ? Rational(-value) : value;
}

/// Comma separated list of exact rationals, e.g. "1/6,1".
inline std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                     : comma - start);
    out.push_back(parse_rational(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace mmi
