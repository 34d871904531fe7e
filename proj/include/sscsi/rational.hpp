// Copyright 2026 the sscsi authors
//
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

#include <cstdint>
#include <string>
#include <string_view>

namespace sscsi {

/// Exact rational number used for every pitch/position computation that ends
/// in a floor or ceiling.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "3", "-0.09375", "24/256", "1.5e-3" exactly. Throws
/// std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Exact rational value of a finite double (dyadic expansion).
Rational rational_from_double(double value);

std::int64_t floor_to_int(const Rational& value);
std::int64_t ceil_to_int(const Rational& value);
double to_double(const Rational& value);
bool is_integer(const Rational& value);

/// Canonical "num/den" (or "num" when den == 1).
std::string to_string(const Rational& value);

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace sscsi
