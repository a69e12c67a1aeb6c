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

#ifndef GLC_KB_HPP_
#define GLC_KB_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "glc/lattice.hpp"

namespace glc {

// Identifier of a guideline document (typically an organization acronym).
using SourceId = std::string;

// A parameterized proposition: one recommendation. A sort that is absent
// from params is unconstrained (plays the role of top). The provenance set
// names the documents the proposition traces to; base atoms carry exactly
// one source, derived atoms the union of their parents'.
struct Atom {
  std::string predicate;
  std::map<std::string, ParamValue> params;
  std::set<SourceId> provenance;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    if (auto c = a.predicate <=> b.predicate; c != 0) return c;
    if (auto c = a.provenance <=> b.provenance; c != 0) return c;
    return a.params <=> b.params;
  }
};

struct KnowledgeBase {
  std::vector<Sort> sorts;
  std::vector<SourceId> sources;
  std::vector<Atom> atoms;

  const Sort* find_sort(const std::string& name) const {
    for (const auto& s : sorts)
      if (s.name == name) return &s;
    return nullptr;
  }

  bool has_source(const SourceId& id) const {
    return std::find(sources.begin(), sources.end(), id) != sources.end();
  }
};

class MalformedAtomError : public std::runtime_error {
 public:
  explicit MalformedAtomError(const std::string& what)
      : std::runtime_error(what) {}
};

class RuleNotApplicableError : public std::runtime_error {
 public:
  explicit RuleNotApplicableError(const std::string& what)
      : std::runtime_error(what) {}
};

class UnknownSourceError : public std::runtime_error {
 public:
  explicit UnknownSourceError(const std::string& what)
      : std::runtime_error(what) {}
};

// Thrown when inference is requested on a knowledge base that fails the
// per-source consistency check.
class InconsistentSourceError : public std::runtime_error {
 public:
  InconsistentSourceError(const std::string& what, SourceId source,
                          std::vector<Atom> violations)
      : std::runtime_error(what),
        source(std::move(source)),
        violations(std::move(violations)) {}

  SourceId source;
  std::vector<Atom> violations;
};

inline void validate_atom(const KnowledgeBase& kb, const Atom& atom) {
  if (atom.predicate.empty())
    throw MalformedAtomError("atom with empty predicate");
  if (atom.provenance.empty())
    throw MalformedAtomError("atom '" + atom.predicate +
                             "' has empty provenance");
  for (const auto& src : atom.provenance) {
    if (!kb.has_source(src))
      throw MalformedAtomError("atom '" + atom.predicate +
                               "' references undeclared source '" + src + "'");
  }
  for (const auto& [name, value] : atom.params) {
    const Sort* sort = kb.find_sort(name);
    if (!sort)
      throw MalformedAtomError("atom '" + atom.predicate +
                               "' references undeclared sort '" + name + "'");
    if (auto err = validate_value(*sort, value))
      throw MalformedAtomError("atom '" + atom.predicate + "': " + *err);
  }
}

// ---------------------------------------------------------------------------
// The lattice-∧ inference rule
// ---------------------------------------------------------------------------

// Combines two same-predicate atoms: the meet is taken per sort, a sort
// present in only one atom keeps that atom's value, and provenances are
// unioned. The result may contain Bottom params; such atoms are retained
// as derived contradictory propositions, not rejected.
inline Atom lattice_and(const KnowledgeBase& kb, const Atom& x,
                        const Atom& y) {
  if (x.predicate != y.predicate)
    throw RuleNotApplicableError("lattice-and requires equal predicates ('" +
                                 x.predicate + "' vs '" + y.predicate + "')");
  validate_atom(kb, x);
  validate_atom(kb, y);
  Atom out;
  out.predicate = x.predicate;
  out.params = x.params;
  for (const auto& [name, value] : y.params) {
    auto it = out.params.find(name);
    if (it == out.params.end()) {
      out.params.emplace(name, value);
    } else {
      it->second = meet(*kb.find_sort(name), it->second, value);
    }
  }
  out.provenance = x.provenance;
  out.provenance.insert(y.provenance.begin(), y.provenance.end());
  return out;
}

// ---------------------------------------------------------------------------
// Pairwise classification
// ---------------------------------------------------------------------------

// Verdict for a pair of atoms. Condition-role sorts scope the population a
// recommendation applies to: a Bottom meet there means the pair addresses
// disjoint populations and is not comparable. Only action-role Bottoms
// count as contradictions.
struct Classification {
  enum class Kind {
    kAgreement,
    kDisagreement,
    kContradiction,
    kNotComparable,
  };
  enum class Reason { kNone, kPredicateMismatch, kDisjointConditions };

  Kind kind = Kind::kAgreement;
  Reason reason = Reason::kNone;
  std::vector<std::string> sorts;  // the sorts responsible for the verdict

  friend bool operator==(const Classification&,
                         const Classification&) = default;
};

inline const char* to_string(Classification::Kind kind) {
  switch (kind) {
    case Classification::Kind::kAgreement:
      return "Agreement";
    case Classification::Kind::kDisagreement:
      return "Disagreement";
    case Classification::Kind::kContradiction:
      return "Contradiction";
    default:
      return "NotComparable";
  }
}

inline Classification classify_pair(const KnowledgeBase& kb, const Atom& x,
                                    const Atom& y) {
  if (x.predicate != y.predicate)
    return {Classification::Kind::kNotComparable,
            Classification::Reason::kPredicateMismatch,
            {}};
  validate_atom(kb, x);
  validate_atom(kb, y);

  std::vector<std::string> disjoint_conditions;
  std::vector<std::string> bottom_actions;
  std::vector<std::string> differing;

  std::set<std::string> names;
  for (const auto& [name, _] : x.params) names.insert(name);
  for (const auto& [name, _] : y.params) names.insert(name);

  for (const auto& name : names) {
    const Sort& sort = *kb.find_sort(name);
    auto xi = x.params.find(name);
    auto yi = y.params.find(name);
    if (xi == x.params.end() || yi == y.params.end()) {
      // Present on one side only: the meet is the present value, which
      // strictly refines the absent (unconstrained) side.
      differing.push_back(name);
      continue;
    }
    ParamValue m = meet(sort, xi->second, yi->second);
    if (is_bottom(m)) {
      if (sort.is_condition())
        disjoint_conditions.push_back(name);
      else
        bottom_actions.push_back(name);
    } else if (m != xi->second || m != yi->second) {
      differing.push_back(name);
    }
  }

  if (!disjoint_conditions.empty())
    return {Classification::Kind::kNotComparable,
            Classification::Reason::kDisjointConditions, disjoint_conditions};
  if (!bottom_actions.empty())
    return {Classification::Kind::kContradiction,
            Classification::Reason::kNone, bottom_actions};
  if (!differing.empty())
    return {Classification::Kind::kDisagreement, Classification::Reason::kNone,
            differing};
  return {Classification::Kind::kAgreement, Classification::Reason::kNone, {}};
}

// ---------------------------------------------------------------------------
// Derivation closure
// ---------------------------------------------------------------------------

// A closure element together with the base atoms it was derived from
// (indices into the closure's input atom list). Base atoms contribute
// themselves.
struct DerivedAtom {
  Atom atom;
  std::set<std::size_t> contributors;
};

namespace detail {

// Pairs whose condition-role meets are all non-Bottom talk about
// overlapping populations and may be combined.
inline bool conditions_overlap(const KnowledgeBase& kb, const Atom& x,
                               const Atom& y) {
  for (const auto& [name, xv] : x.params) {
    const Sort& sort = *kb.find_sort(name);
    if (!sort.is_condition()) continue;
    auto yi = y.params.find(name);
    if (yi == y.params.end()) continue;
    if (is_bottom(meet(sort, xv, yi->second))) return false;
  }
  return true;
}

}  // namespace detail

// Least fixpoint of lattice_and over all same-predicate atom pairs with
// overlapping conditions, including the base atoms. Terminates because
// param values are closed under meets of finitely many base values and
// provenance sets are subsets of a finite source set.
inline std::vector<DerivedAtom> closure_with_contributors(
    const KnowledgeBase& kb) {
  std::vector<DerivedAtom> entries;
  std::map<Atom, std::size_t> index;
  for (std::size_t i = 0; i < kb.atoms.size(); ++i) {
    validate_atom(kb, kb.atoms[i]);
    const Atom& atom = kb.atoms[i];
    auto it = index.find(atom);
    if (it == index.end()) {
      index.emplace(atom, entries.size());
      entries.push_back({atom, {i}});
    } else {
      entries[it->second].contributors.insert(i);
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    // entries grows while iterating; index-based loops stay valid
    for (std::size_t i = 0; i < entries.size(); ++i) {
      for (std::size_t j = i + 1; j < entries.size(); ++j) {
        const Atom& a = entries[i].atom;
        const Atom& b = entries[j].atom;
        if (a.predicate != b.predicate) continue;
        if (!detail::conditions_overlap(kb, a, b)) continue;
        Atom combined = lattice_and(kb, a, b);
        std::set<std::size_t> contrib = entries[i].contributors;
        contrib.insert(entries[j].contributors.begin(),
                       entries[j].contributors.end());
        auto it = index.find(combined);
        if (it == index.end()) {
          index.emplace(combined, entries.size());
          entries.push_back({std::move(combined), std::move(contrib)});
          changed = true;
        } else {
          auto& existing = entries[it->second].contributors;
          std::size_t before = existing.size();
          existing.insert(contrib.begin(), contrib.end());
          if (existing.size() != before) changed = true;
        }
      }
    }
  }

  std::sort(entries.begin(), entries.end(),
            [](const DerivedAtom& a, const DerivedAtom& b) {
              return a.atom < b.atom;
            });
  return entries;
}

inline std::vector<Atom> closure(const KnowledgeBase& kb) {
  std::vector<Atom> out;
  for (auto& entry : closure_with_contributors(kb))
    out.push_back(std::move(entry.atom));
  return out;
}

// ---------------------------------------------------------------------------
// Internal consistency
// ---------------------------------------------------------------------------

// A guideline document must not contradict itself: restricted to the atoms
// of one source, the closure may not derive a Bottom action param. Returns
// the violating atoms; empty means consistent.
inline std::vector<Atom> check_internal_consistency(const KnowledgeBase& kb,
                                                    const SourceId& source) {
  if (!kb.has_source(source))
    throw UnknownSourceError("unknown source '" + source + "'");
  KnowledgeBase restricted;
  restricted.sorts = kb.sorts;
  restricted.sources = kb.sources;
  for (const auto& atom : kb.atoms) {
    if (atom.provenance == std::set<SourceId>{source})
      restricted.atoms.push_back(atom);
  }
  std::vector<Atom> violations;
  for (const auto& atom : closure(restricted)) {
    for (const auto& [name, value] : atom.params) {
      if (is_bottom(value) && !kb.find_sort(name)->is_condition()) {
        violations.push_back(atom);
        break;
      }
    }
  }
  return violations;
}

inline void require_internal_consistency(const KnowledgeBase& kb) {
  for (const auto& source : kb.sources) {
    auto violations = check_internal_consistency(kb, source);
    if (!violations.empty())
      throw InconsistentSourceError(
          "source '" + source + "' is internally contradictory", source,
          std::move(violations));
  }
}

// ---------------------------------------------------------------------------
// Findings
// ---------------------------------------------------------------------------

// A reported conflict between guidelines. For a Contradiction the conflict
// sorts are the action sorts whose meet is Bottom; disagree_sorts lists
// the additional sorts on which the derivation strictly refined some
// contributor (the disagreement component of the same derived atom).
struct Finding {
  enum class Kind { kContradiction, kDisagreement };

  Kind kind = Kind::kDisagreement;
  std::string predicate;
  std::vector<std::string> conflict_sorts;
  std::vector<std::string> disagree_sorts;
  std::map<std::string, ParamValue> condition_overlap;
  std::map<std::string, ParamValue> derived_params;
  std::set<SourceId> provenances;
  std::vector<Atom> source_atoms;
};

inline const char* to_string(Finding::Kind kind) {
  return kind == Finding::Kind::kContradiction ? "Contradiction"
                                               : "Disagreement";
}

// Reports every multi-provenance derived atom that contradicts (Bottom
// action param) or strictly refines a contributor (disagreement). Findings
// whose predicate and derived params are identical to another finding with
// a strictly larger provenance set are subsumed and dropped.
inline std::vector<Finding> find_findings(const KnowledgeBase& kb) {
  require_internal_consistency(kb);

  std::vector<Finding> findings;
  auto entries = closure_with_contributors(kb);
  for (const auto& entry : entries) {
    const Atom& atom = entry.atom;
    if (atom.provenance.size() < 2) continue;

    std::vector<std::string> bottom_actions;
    std::vector<std::string> disagree_sorts;
    bool bottom_condition = false;
    for (const auto& [name, value] : atom.params) {
      const Sort& sort = *kb.find_sort(name);
      if (is_bottom(value)) {
        if (sort.is_condition())
          bottom_condition = true;
        else
          bottom_actions.push_back(name);
        continue;
      }
      for (std::size_t ci : entry.contributors) {
        const Atom& contrib = kb.atoms[ci];
        auto it = contrib.params.find(name);
        if (it == contrib.params.end() || it->second != value) {
          disagree_sorts.push_back(name);
          break;
        }
      }
    }
    if (bottom_condition) continue;  // disjoint populations, not a conflict
    if (bottom_actions.empty() && disagree_sorts.empty()) continue;

    Finding f;
    f.kind = bottom_actions.empty() ? Finding::Kind::kDisagreement
                                    : Finding::Kind::kContradiction;
    f.predicate = atom.predicate;
    f.conflict_sorts =
        bottom_actions.empty() ? disagree_sorts : bottom_actions;
    f.disagree_sorts = disagree_sorts;
    f.derived_params = atom.params;
    f.provenances = atom.provenance;
    for (const auto& [name, value] : atom.params) {
      if (kb.find_sort(name)->is_condition())
        f.condition_overlap.emplace(name, value);
    }
    for (std::size_t ci : entry.contributors)
      f.source_atoms.push_back(kb.atoms[ci]);
    std::sort(f.source_atoms.begin(), f.source_atoms.end());
    findings.push_back(std::move(f));
  }

  // Subsumption: identical derived params under a larger provenance set
  // describe the same conflict once, with fuller provenance.
  std::vector<Finding> kept;
  for (const auto& f : findings) {
    bool subsumed = false;
    for (const auto& g : findings) {
      if (&f == &g) continue;
      if (f.predicate == g.predicate && f.derived_params == g.derived_params &&
          f.provenances != g.provenances &&
          std::includes(g.provenances.begin(), g.provenances.end(),
                        f.provenances.begin(), f.provenances.end())) {
        subsumed = true;
        break;
      }
    }
    if (!subsumed) kept.push_back(f);
  }

  std::stable_sort(kept.begin(), kept.end(),
                   [](const Finding& a, const Finding& b) {
                     if (a.kind != b.kind)
                       return a.kind == Finding::Kind::kContradiction;
                     return std::tie(a.predicate, a.provenances,
                                     a.derived_params) <
                            std::tie(b.predicate, b.provenances,
                                     b.derived_params);
                   });
  return kept;
}

}  // namespace glc

#endif  // GLC_KB_HPP_
