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

#ifndef GLC_LATTICE_HPP_
#define GLC_LATTICE_HPP_

#include <algorithm>
#include <compare>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "glc/rational.hpp"

namespace glc {

// A recommendation parameter dimension. Values of a sort form a meet
// semilattice with a unique minimal element (Bottom); the meet of two
// values is the strongest requirement satisfying both, and Bottom means
// the two requirements cannot be satisfied together.

enum class SortRole { kCondition, kAction };

struct IntervalKind {
  std::string unit;
  friend bool operator==(const IntervalKind&, const IntervalKind&) = default;
};

struct EnumKind {
  std::vector<std::string> alphabet;  // flat antichain of symbols
  friend bool operator==(const EnumKind&, const EnumKind&) = default;
};

struct SetKind {
  std::vector<std::string> alphabet;  // subsets ordered by inclusion
  friend bool operator==(const SetKind&, const SetKind&) = default;
};

using SortKind = std::variant<IntervalKind, EnumKind, SetKind>;

struct Sort {
  std::string name;
  SortKind kind;
  SortRole role = SortRole::kAction;

  bool is_condition() const { return role == SortRole::kCondition; }
};

// ---------------------------------------------------------------------------
// Parameter values
// ---------------------------------------------------------------------------

struct Bottom {
  friend bool operator==(const Bottom&, const Bottom&) { return true; }
  friend std::strong_ordering operator<=>(const Bottom&, const Bottom&) {
    return std::strong_ordering::equal;
  }
};

// Closed interval [lo, hi] over extended rationals; never empty.
struct Interval {
  Bound lo;
  Bound hi;
  friend bool operator==(const Interval&, const Interval&) = default;
  friend std::strong_ordering operator<=>(const Interval&,
                                          const Interval&) = default;
};

struct EnumVal {
  std::string symbol;
  friend bool operator==(const EnumVal&, const EnumVal&) = default;
  friend std::strong_ordering operator<=>(const EnumVal&,
                                          const EnumVal&) = default;
};

struct SetVal {
  std::set<std::string> members;  // non-empty
  friend bool operator==(const SetVal&, const SetVal&) = default;
  friend std::strong_ordering operator<=>(const SetVal&,
                                          const SetVal&) = default;
};

using ParamValue = std::variant<Bottom, Interval, EnumVal, SetVal>;

class SortMismatchError : public std::runtime_error {
 public:
  explicit SortMismatchError(const std::string& what)
      : std::runtime_error(what) {}
};

inline bool is_bottom(const ParamValue& v) {
  return std::holds_alternative<Bottom>(v);
}

// Builds a validated interval value. Lower bound must be finite or -inf,
// upper bound finite or +inf, and lo <= hi.
inline ParamValue make_interval(Bound lo, Bound hi) {
  if (lo.is_pos_inf())
    throw std::invalid_argument("interval lower bound may not be inf");
  if (hi.is_neg_inf())
    throw std::invalid_argument("interval upper bound may not be -inf");
  if (hi < lo)
    throw std::invalid_argument("interval lower bound exceeds upper bound");
  return Interval{lo, hi};
}

inline ParamValue make_interval(Rational lo, Rational hi) {
  return make_interval(Bound::finite(lo), Bound::finite(hi));
}

// Checks that a value has the shape its sort requires and that symbols
// belong to the sort's alphabet. Returns an error message, or nullopt if
// the value is well formed.
inline std::optional<std::string> validate_value(const Sort& sort,
                                                 const ParamValue& value) {
  if (is_bottom(value)) return std::nullopt;
  if (const auto* iv = std::get_if<Interval>(&value)) {
    if (!std::holds_alternative<IntervalKind>(sort.kind))
      return "interval value for non-interval sort '" + sort.name + "'";
    if (iv->hi < iv->lo) return "empty interval for sort '" + sort.name + "'";
    return std::nullopt;
  }
  if (const auto* ev = std::get_if<EnumVal>(&value)) {
    const auto* kind = std::get_if<EnumKind>(&sort.kind);
    if (!kind) return "enum value for non-enum sort '" + sort.name + "'";
    if (std::find(kind->alphabet.begin(), kind->alphabet.end(), ev->symbol) ==
        kind->alphabet.end())
      return "symbol '" + ev->symbol + "' is not in the alphabet of sort '" +
             sort.name + "'";
    return std::nullopt;
  }
  const auto& sv = std::get<SetVal>(value);
  const auto* kind = std::get_if<SetKind>(&sort.kind);
  if (!kind) return "set value for non-set sort '" + sort.name + "'";
  if (sv.members.empty()) return "empty set for sort '" + sort.name + "'";
  for (const auto& m : sv.members) {
    if (std::find(kind->alphabet.begin(), kind->alphabet.end(), m) ==
        kind->alphabet.end())
      return "symbol '" + m + "' is not in the alphabet of sort '" +
             sort.name + "'";
  }
  return std::nullopt;
}

// Greatest lower bound of two values of one sort. Bottom is absorbing.
//   Interval: intersection (Bottom if empty)
//   Enum:     x if x == y, else Bottom
//   Set:      set intersection (Bottom if empty)
inline ParamValue meet(const Sort& sort, const ParamValue& x,
                       const ParamValue& y) {
  if (auto err = validate_value(sort, x))
    throw SortMismatchError("meet: " + *err);
  if (auto err = validate_value(sort, y))
    throw SortMismatchError("meet: " + *err);
  if (is_bottom(x) || is_bottom(y)) return Bottom{};

  if (const auto* ix = std::get_if<Interval>(&x)) {
    const auto& iy = std::get<Interval>(y);
    Bound lo = std::max(ix->lo, iy.lo);
    Bound hi = std::min(ix->hi, iy.hi);
    if (hi < lo) return Bottom{};
    return Interval{lo, hi};
  }
  if (const auto* ex = std::get_if<EnumVal>(&x)) {
    const auto& ey = std::get<EnumVal>(y);
    if (ex->symbol == ey.symbol) return *ex;
    return Bottom{};
  }
  const auto& sx = std::get<SetVal>(x);
  const auto& sy = std::get<SetVal>(y);
  SetVal out;
  std::set_intersection(sx.members.begin(), sx.members.end(),
                        sy.members.begin(), sy.members.end(),
                        std::inserter(out.members, out.members.begin()));
  if (out.members.empty()) return Bottom{};
  return out;
}

// The partial order induced by meet: x is at or below y iff x ∧ y = x.
inline bool leq(const Sort& sort, const ParamValue& x, const ParamValue& y) {
  return meet(sort, x, y) == x;
}

// Rendering used by diagnostics and the DSL formatter.
inline std::string to_string(const ParamValue& value) {
  if (is_bottom(value)) return "bottom";
  if (const auto* iv = std::get_if<Interval>(&value))
    return "[" + iv->lo.to_string() + ", " + iv->hi.to_string() + "]";
  if (const auto* ev = std::get_if<EnumVal>(&value)) return ev->symbol;
  const auto& sv = std::get<SetVal>(value);
  std::string out = "{";
  bool first = true;
  for (const auto& m : sv.members) {
    if (!first) out += ", ";
    out += m;
    first = false;
  }
  return out + "}";
}

}  // namespace glc

#endif  // GLC_LATTICE_HPP_
