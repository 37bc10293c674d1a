// Copyright 2026 The rwq Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "rwq/errors.hpp"

namespace rwq {

/// Exact rational arithmetic used for node parameters, workloads and metric
/// recomputation. The LP solver works in double precision.
using Rational = boost::multiprecision::cpp_rational;

inline double ToDouble(const Rational& value) {
  return value.convert_to<double>();
}

/// Exact value of a finite double.
inline Rational FromDouble(double value) { return Rational(value); }

/// Parses "12", "-0.25", "1.5e3" or "10/470" into an exact rational.
inline Rational ParseRational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw DomainError("malformed number '" + std::string(text) + "'");
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) return fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = ParseRational(text.substr(0, slash));
    Rational den = ParseRational(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }

  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  boost::multiprecision::cpp_int digits = 0;
  int scale = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits = digits * 10 + (ch - '0');
      if (seen_point) ++scale;
      any_digit = true;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) return fail();
  int exponent = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') return fail();
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_negative = text[i] == '-';
      ++i;
    }
    if (i == text.size()) return fail();
    for (; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) return fail();
      exponent = exponent * 10 + (text[i] - '0');
      if (exponent > 400) return fail();
    }
    if (exp_negative) exponent = -exponent;
  }
  exponent -= scale;
  Rational value(digits);
  boost::multiprecision::cpp_int ten = 10;
  if (exponent > 0) value *= boost::multiprecision::pow(ten, exponent);
  if (exponent < 0) value /= boost::multiprecision::pow(ten, -exponent);
  return negative ? Rational(-value) : value;
}

}  // namespace rwq
