// Copyright 2026 The nashqubo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "nashqubo/error.hpp"

namespace nashqubo {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "7", "-3/4", "2.5", "-0.125" or "1e-2" into an exact rational.
/// Decimal forms are read digit by digit so "0.1" is exactly 1/10.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw ParseError("not a rational number: '" + std::string(text) + "'");
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (denominator(num) != 1 || denominator(den) != 1) return fail();
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';

  BigInt mantissa = 0;
  BigInt scale = 1;
  bool digits = false;
  bool fraction = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c >= '0' && c <= '9') {
      mantissa = mantissa * 10 + (c - '0');
      if (fraction) scale *= 10;
      digits = true;
    } else if (c == '.' && !fraction) {
      fraction = true;
    } else {
      break;
    }
  }
  if (!digits) return fail();

  long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') return fail();
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-'))
      exp_negative = text[pos++] == '-';
    if (pos == text.size()) return fail();
    for (; pos < text.size(); ++pos) {
      char c = text[pos];
      if (c < '0' || c > '9' || exponent > 4000) return fail();
      exponent = exponent * 10 + (c - '0');
    }
    if (exp_negative) exponent = -exponent;
  }

  Rational value(mantissa, scale);
  if (exponent > 0) value *= Rational(boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exponent)));
  if (exponent < 0) value /= Rational(boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-exponent)));
  return negative ? Rational(-value) : value;
}

/// Canonical wire form "num/den" (denominator always present).
inline std::string to_fraction_string(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

/// Short human form: "3", "-1/2".
inline std::string to_display_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

/// Least common multiple of the denominators of a range of rationals (1 for an
/// empty range).
template <class Range>
BigInt denominator_lcm(const Range& values) {
  BigInt result = 1;
  for (const Rational& v : values) result = lcm(result, denominator(v));
  return result;
}

inline bool is_integer(const Rational& value) { return denominator(value) == 1; }

inline std::int64_t to_int64(const BigInt& value, std::string_view what) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min())
    throw CapacityError(std::string(what) + " does not fit in 64 bits");
  return value.convert_to<std::int64_t>();
}

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

inline Rational floor(const Rational& value) {
  BigInt q = numerator(value) / denominator(value);
  if (value < 0 && q * denominator(value) != numerator(value)) q -= 1;
  return Rational(q);
}

inline Rational ceil(const Rational& value) { return -floor(-value); }

}  // namespace nashqubo
