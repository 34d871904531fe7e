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

#include "sscsi/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace sscsi {

namespace mp = boost::multiprecision;

namespace {

Rational parse_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  mp::cpp_int digits = 0;
  std::int64_t scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      if (seen_point) ++scale;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed number: " + std::string(text));
  std::int64_t exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E')
      throw std::invalid_argument("malformed number: " + std::string(text));
    ++pos;
    const std::string rest(text.substr(pos));
    std::size_t used = 0;
    try {
      exponent = std::stoll(rest, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent: " + std::string(text));
    }
    if (used != rest.size() || rest.empty())
      throw std::invalid_argument("malformed exponent: " + std::string(text));
  }
  const std::int64_t shift = exponent - scale;
  Rational value(digits);
  if (shift > 0) {
    value *= Rational(mp::pow(mp::cpp_int(10), static_cast<unsigned>(shift)));
  } else if (shift < 0) {
    value /= Rational(mp::pow(mp::cpp_int(10), static_cast<unsigned>(-shift)));
  }
  return negative ? Rational(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(trim(text.substr(0, slash)));
  const Rational den = parse_decimal(trim(text.substr(slash + 1)));
  if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  return num / den;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value");
  int exp = 0;
  const double mant = std::frexp(value, &exp);
  // 53 significant bits fit exactly in an int64 after scaling.
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  Rational r(scaled);
  const int shift = exp - 53;
  if (shift > 0) r *= Rational(mp::cpp_int(1) << shift);
  if (shift < 0) r /= Rational(mp::cpp_int(1) << -shift);
  return r;
}

std::int64_t floor_to_int(const Rational& value) {
  const mp::cpp_int num = mp::numerator(value);
  const mp::cpp_int den = mp::denominator(value);  // always > 0
  mp::cpp_int q = num / den;                        // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q.convert_to<std::int64_t>();
}

std::int64_t ceil_to_int(const Rational& value) {
  return -floor_to_int(-value);
}

double to_double(const Rational& value) {
  return value.convert_to<double>();
}

bool is_integer(const Rational& value) {
  return mp::denominator(value) == 1;
}

std::string to_string(const Rational& value) {
  const mp::cpp_int den = mp::denominator(value);
  if (den == 1) return mp::numerator(value).str();
  return mp::numerator(value).str() + "/" + den.str();
}

}  // namespace sscsi
