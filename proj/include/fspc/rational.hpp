/*
 * Copyright 2026 the fspc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fspc {

// Exact fractions everywhere a ratio of counts appears. Supports, recall
// values, and threshold floors are compared without ever rounding through
// a double; at small collection sizes a float comparison at the boundary
// changes results.
using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Parses "3/5" or "1" into a Rational.
inline Rational parse_fraction(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(std::stoll(std::string(text)), 1);
    }
    const std::int64_t num = std::stoll(std::string(text.substr(0, slash)));
    const std::int64_t den = std::stoll(std::string(text.substr(slash + 1)));
    return Rational(num, den);
  } catch (const boost::bad_rational&) {
    throw std::invalid_argument("zero denominator in fraction: " + std::string(text));
  } catch (const std::exception&) {
    throw std::invalid_argument("not a fraction: " + std::string(text));
  }
}

/// Parses a decimal string exactly: "0.6" -> 3/5, "1" -> 1, ".25" -> 1/4.
inline Rational parse_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty decimal");
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    i = 1;
  }
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool saw_digit = false;
  bool saw_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.') {
      if (saw_point) throw std::invalid_argument("not a decimal: " + std::string(text));
      saw_point = true;
      continue;
    }
    if (c < '0' || c > '9') throw std::invalid_argument("not a decimal: " + std::string(text));
    num = num * 10 + (c - '0');
    if (saw_point) den *= 10;
    saw_digit = true;
  }
  if (!saw_digit) throw std::invalid_argument("not a decimal: " + std::string(text));
  return Rational(negative ? -num : num, den);
}

}  // namespace fspc
