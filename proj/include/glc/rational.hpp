// Copyright 2026 The glc Authors
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

#ifndef GLC_RATIONAL_HPP_
#define GLC_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace glc {

// Exact rational number. All interval endpoints in the lattice layer are
// rationals, never floats, so meets stay bit-exact and associative.
//
// Values enter the system only as decimal literals, so denominators are
// always of the form 2^a * 5^b and every value has an exact decimal
// rendering.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}

  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  // Parses an optionally signed decimal literal ("12", "-0.5", "12.50").
  static std::optional<Rational> from_decimal(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+') {
      negative = text[0] == '-';
      i = 1;
    }
    std::int64_t mantissa = 0;
    std::int64_t scale = 1;
    bool seen_digit = false;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
      char c = text[i];
      if (c == '.') {
        if (seen_point) return std::nullopt;
        seen_point = true;
        continue;
      }
      if (c < '0' || c > '9') return std::nullopt;
      if (mantissa > (INT64_MAX - 9) / 10) return std::nullopt;  // overflow
      mantissa = mantissa * 10 + (c - '0');
      if (seen_point) {
        if (scale > INT64_MAX / 10) return std::nullopt;
        scale *= 10;
      }
      seen_digit = true;
    }
    if (!seen_digit) return std::nullopt;
    return Rational(negative ? -mantissa : mantissa, scale);
  }

  // Canonical decimal rendering; exact, with trailing zeros trimmed
  // ("12", "12.5", "0.25"). Requires a denominator of the form 2^a * 5^b,
  // which holds for every value built from a decimal literal.
  std::string to_decimal() const {
    std::int64_t d = den_;
    int twos = 0, fives = 0;
    while (d % 2 == 0) {
      d /= 2;
      ++twos;
    }
    while (d % 5 == 0) {
      d /= 5;
      ++fives;
    }
    if (d != 1)
      throw std::domain_error("Rational: no finite decimal expansion");
    int digits = twos > fives ? twos : fives;
    __int128 scaled = num_;
    for (int k = twos; k < digits; ++k) scaled *= 2;
    for (int k = fives; k < digits; ++k) scaled *= 5;
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string raw;
    if (scaled == 0) raw = "0";
    while (scaled > 0) {
      raw.insert(raw.begin(), static_cast<char>('0' + int(scaled % 10)));
      scaled /= 10;
    }
    while (static_cast<int>(raw.size()) <= digits) raw.insert(raw.begin(), '0');
    std::string out = raw.substr(0, raw.size() - digits);
    if (digits > 0) {
      std::string frac = raw.substr(raw.size() - digits);
      while (!frac.empty() && frac.back() == '0') frac.pop_back();
      if (!frac.empty()) out += "." + frac;
    }
    return negative ? "-" + out : out;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  std::int64_t num_;
  std::int64_t den_;  // > 0, coprime with num_
};

// One endpoint of an interval: a rational or an infinity.
class Bound {
 public:
  static Bound neg_inf() { return Bound(Kind::kNegInf, Rational()); }
  static Bound pos_inf() { return Bound(Kind::kPosInf, Rational()); }
  static Bound finite(Rational r) { return Bound(Kind::kFinite, r); }

  bool is_neg_inf() const { return kind_ == Kind::kNegInf; }
  bool is_pos_inf() const { return kind_ == Kind::kPosInf; }
  bool is_finite() const { return kind_ == Kind::kFinite; }

  // Only meaningful for finite bounds.
  const Rational& value() const { return value_; }

  std::string to_string() const {
    switch (kind_) {
      case Kind::kNegInf:
        return "-inf";
      case Kind::kPosInf:
        return "inf";
      default:
        return value_.to_decimal();
    }
  }

  friend bool operator==(const Bound& a, const Bound& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != Kind::kFinite || a.value_ == b.value_;
  }

  friend std::strong_ordering operator<=>(const Bound& a, const Bound& b) {
    if (a.kind_ == Kind::kFinite && b.kind_ == Kind::kFinite)
      return a.value_ <=> b.value_;
    int ra = a.rank(), rb = b.rank();
    if (ra < rb) return std::strong_ordering::less;
    if (ra > rb) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  enum class Kind { kNegInf, kFinite, kPosInf };

  Bound(Kind kind, Rational value) : kind_(kind), value_(value) {}

  int rank() const {
    if (kind_ == Kind::kNegInf) return -1;
    if (kind_ == Kind::kPosInf) return 1;
    return 0;
  }

  Kind kind_;
  Rational value_;
};

}  // namespace glc

#endif  // GLC_RATIONAL_HPP_
