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

#include <string>

#include "rwq/rational.hpp"

namespace rwq {

/// `value` rounded half away from zero to `places` decimals, without
/// trailing zeros: 2/3 -> "0.666666667", 300 -> "300".
inline std::string FormatDecimal(const Rational& value, int places = 9) {
  using boost::multiprecision::cpp_int;
  cpp_int scale = boost::multiprecision::pow(cpp_int(10), places);
  Rational scaled = value * scale;
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  cpp_int num = boost::multiprecision::numerator(scaled);
  cpp_int den = boost::multiprecision::denominator(scaled);
  cpp_int rounded = (2 * num + den) / (2 * den);
  std::string digits = rounded.str();
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, places + 1 - digits.size(), '0');
  }
  std::string out = digits.substr(0, digits.size() - places);
  std::string frac = digits.substr(digits.size() - places);
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (!frac.empty()) out += "." + frac;
  if (negative && rounded != 0) out.insert(0, "-");
  return out;
}

}  // namespace rwq
