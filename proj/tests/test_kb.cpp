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

#include "glc/kb.hpp"

#include <random>
#include <set>
#include <vector>

#include "catch2/catch_amalgamated.hpp"

using namespace glc;

namespace {

ParamValue iv(std::int64_t lo, std::int64_t hi) {
  return make_interval(Rational(lo), Rational(hi));
}

ParamValue at_least(std::int64_t lo) {
  return make_interval(Bound::finite(Rational(lo)), Bound::pos_inf());
}

ParamValue sv(std::set<std::string> members) {
  return SetVal{std::move(members)};
}

Atom atom(std::string predicate, std::map<std::string, ParamValue> params,
          std::set<SourceId> provenance) {
  return Atom{std::move(predicate), std::move(params), std::move(provenance)};
}

// The breast-screening example: annual mammography+exam vs biennial
// mammography for the same 50-74 population.
KnowledgeBase example1_kb() {
  KnowledgeBase kb;
  kb.sorts = {
      {"age", IntervalKind{"years"}, SortRole::kCondition},
      {"frequency", IntervalKind{"months"}, SortRole::kAction},
      {"modality", SetKind{{"mammography", "cbe"}}, SortRole::kAction},
  };
  kb.sources = {"ACOG", "USPSTF"};
  kb.atoms = {
      atom("screening",
           {{"age", iv(50, 74)},
            {"modality", sv({"mammography", "cbe"})},
            {"frequency", iv(12, 12)}},
           {"ACOG"}),
      atom("screening",
           {{"age", iv(50, 74)},
            {"modality", sv({"mammography"})},
            {"frequency", iv(24, 24)}},
           {"USPSTF"}),
  };
  return kb;
}

// The exercise-dose example: at least 150 minutes per week vs 150-300.
KnowledgeBase example2_kb() {
  KnowledgeBase kb;
  kb.sorts = {
      {"duration", IntervalKind{"minutes_per_week"}, SortRole::kAction}};
  kb.sources = {"HHS", "WHO"};
  kb.atoms = {
      atom("aerobic_exercise", {{"duration", at_least(150)}}, {"HHS"}),
      atom("aerobic_exercise", {{"duration", iv(150, 300)}}, {"WHO"}),
  };
  return kb;
}

}  // namespace

TEST_CASE("lattice_and combines params and provenances") {
  KnowledgeBase kb;
  kb.sorts = {{"frequency", IntervalKind{"months"}, SortRole::kAction},
              {"duration", IntervalKind{"minutes_per_week"},
               SortRole::kAction},
              {"modality", SetKind{{"mammography", "cbe"}},
               SortRole::kAction}};
  kb.sources = {"ACS", "USPSTF", "O1", "O2"};

  SECTION("disjoint frequencies derive a Bottom param") {
    Atom x = atom("p", {{"frequency", iv(12, 12)}}, {"ACS"});
    Atom y = atom("p", {{"frequency", iv(24, 24)}}, {"USPSTF"});
    Atom d = lattice_and(kb, x, y);
    REQUIRE(d.predicate == "p");
    REQUIRE(is_bottom(d.params.at("frequency")));
    REQUIRE(d.provenance == std::set<SourceId>{"ACS", "USPSTF"});
  }
  SECTION("overlapping durations narrow to the intersection") {
    Atom x = atom("p", {{"duration", at_least(150)}}, {"O1"});
    Atom y = atom("p", {{"duration", iv(150, 300)}}, {"O2"});
    Atom d = lattice_and(kb, x, y);
    REQUIRE(d.params.at("duration") == iv(150, 300));
    REQUIRE(d.provenance == std::set<SourceId>{"O1", "O2"});
  }
  SECTION("idempotence") {
    Atom x = atom("p", {{"frequency", iv(12, 12)}}, {"ACS"});
    REQUIRE(lattice_and(kb, x, x) == x);
  }
  SECTION("a sort present on one side only keeps its value") {
    Atom x = atom("p", {{"frequency", iv(12, 12)}}, {"ACS"});
    Atom y = atom("p", {{"modality", sv({"mammography"})}}, {"USPSTF"});
    Atom d = lattice_and(kb, x, y);
    REQUIRE(d.params.at("frequency") == iv(12, 12));
    REQUIRE(d.params.at("modality") == sv({"mammography"}));
    REQUIRE(d.provenance == std::set<SourceId>{"ACS", "USPSTF"});
  }
  SECTION("predicate mismatch is not applicable") {
    Atom x = atom("p", {}, {"ACS"});
    Atom y = atom("q", {}, {"USPSTF"});
    REQUIRE_THROWS_AS(lattice_and(kb, x, y), RuleNotApplicableError);
  }
}

TEST_CASE("classify_pair verdicts") {
  KnowledgeBase kb = example1_kb();
  const Atom& acog = kb.atoms[0];
  const Atom& uspstf = kb.atoms[1];

  SECTION("annual vs biennial on one population is a contradiction") {
    Classification c = classify_pair(kb, acog, uspstf);
    REQUIRE(c.kind == Classification::Kind::kContradiction);
    REQUIRE(c.sorts == std::vector<std::string>{"frequency"});
  }
  SECTION("dose ranges that overlap are a disagreement") {
    KnowledgeBase ex2 = example2_kb();
    Classification c = classify_pair(ex2, ex2.atoms[0], ex2.atoms[1]);
    REQUIRE(c.kind == Classification::Kind::kDisagreement);
    REQUIRE(c.sorts == std::vector<std::string>{"duration"});
  }
  SECTION("identical atoms from distinct sources agree") {
    Atom copy = acog;
    copy.provenance = {"USPSTF"};
    Classification c = classify_pair(kb, acog, copy);
    REQUIRE(c.kind == Classification::Kind::kAgreement);
    REQUIRE(c.sorts.empty());
  }
  SECTION("disjoint populations are not comparable") {
    Atom a = atom("screening", {{"age", iv(40, 49)}, {"frequency", iv(12, 12)}},
                  {"ACOG"});
    Atom b = atom("screening", {{"age", iv(50, 74)}, {"frequency", iv(24, 24)}},
                  {"USPSTF"});
    Classification c = classify_pair(kb, a, b);
    REQUIRE(c.kind == Classification::Kind::kNotComparable);
    REQUIRE(c.reason == Classification::Reason::kDisjointConditions);
    REQUIRE(c.sorts == std::vector<std::string>{"age"});
  }
  SECTION("absent param vs present param is a specificity disagreement") {
    Atom a = atom("screening", {{"frequency", iv(12, 12)}}, {"ACOG"});
    Atom b = atom("screening",
                  {{"frequency", iv(12, 12)}, {"modality", sv({"mammography"})}},
                  {"USPSTF"});
    Classification c = classify_pair(kb, a, b);
    REQUIRE(c.kind == Classification::Kind::kDisagreement);
    REQUIRE(c.sorts == std::vector<std::string>{"modality"});
  }
  SECTION("different predicates are not comparable") {
    Atom a = atom("screening", {}, {"ACOG"});
    Atom b = atom("exercise", {}, {"USPSTF"});
    Classification c = classify_pair(kb, a, b);
    REQUIRE(c.kind == Classification::Kind::kNotComparable);
    REQUIRE(c.reason == Classification::Reason::kPredicateMismatch);
  }
  SECTION("undeclared sorts are malformed") {
    Atom a = atom("screening", {{"dose", iv(1, 2)}}, {"ACOG"});
    REQUIRE_THROWS_AS(classify_pair(kb, a, uspstf), MalformedAtomError);
  }
}

TEST_CASE("closure of the breast-screening example") {
  KnowledgeBase kb = example1_kb();
  auto atoms = closure(kb);
  REQUIRE(atoms.size() == 3);
  // the two base atoms plus the derived Bottom-frequency atom
  int derived = 0;
  for (const auto& a : atoms) {
    if (a.provenance.size() == 2) {
      ++derived;
      REQUIRE(a.provenance == std::set<SourceId>{"ACOG", "USPSTF"});
      REQUIRE(is_bottom(a.params.at("frequency")));
      REQUIRE(a.params.at("modality") == sv({"mammography"}));
      REQUIRE(a.params.at("age") == iv(50, 74));
    }
  }
  REQUIRE(derived == 1);
}

TEST_CASE("closure of a single atom is that atom") {
  KnowledgeBase kb = example2_kb();
  kb.atoms.pop_back();
  auto atoms = closure(kb);
  REQUIRE(atoms.size() == 1);
  REQUIRE(atoms[0] == kb.atoms[0]);
}

TEST_CASE("closure equals the subset-meet oracle on condition-free atoms") {
  KnowledgeBase kb;
  kb.sorts = {
      {"duration", IntervalKind{"minutes_per_week"}, SortRole::kAction}};
  kb.sources = {"A", "B", "C"};
  kb.atoms = {
      atom("exercise", {{"duration", at_least(100)}}, {"A"}),
      atom("exercise", {{"duration", iv(150, 300)}}, {"B"}),
      atom("exercise", {{"duration", iv(120, 200)}}, {"C"}),
  };

  // brute force: the meet of every non-empty subset of base atoms
  std::set<Atom> expected;
  for (unsigned mask = 1; mask < 8; ++mask) {
    Atom combined;
    bool first = true;
    for (unsigned bit = 0; bit < 3; ++bit) {
      if (!(mask & (1u << bit))) continue;
      combined = first ? kb.atoms[bit] : lattice_and(kb, combined,
                                                     kb.atoms[bit]);
      first = false;
    }
    expected.insert(combined);
  }
  auto atoms = closure(kb);
  REQUIRE(std::set<Atom>(atoms.begin(), atoms.end()) == expected);

  Atom triple = atom("exercise", {{"duration", iv(150, 200)}},
                     {"A", "B", "C"});
  REQUIRE(std::count(atoms.begin(), atoms.end(), triple) == 1);
}

TEST_CASE("closure does not combine across disjoint conditions") {
  KnowledgeBase kb = example1_kb();
  kb.atoms[1].params["age"] = iv(40, 49);
  auto atoms = closure(kb);
  REQUIRE(atoms.size() == 2);  // nothing derivable
}

TEST_CASE("internal consistency") {
  KnowledgeBase kb;
  kb.sorts = {{"age", IntervalKind{"years"}, SortRole::kCondition},
              {"frequency", IntervalKind{"months"}, SortRole::kAction}};
  kb.sources = {"ORG"};

  SECTION("conflicting frequencies within one source violate") {
    kb.atoms = {
        atom("screening", {{"age", iv(40, 74)}, {"frequency", iv(12, 12)}},
             {"ORG"}),
        atom("screening", {{"age", iv(50, 74)}, {"frequency", iv(24, 24)}},
             {"ORG"}),
    };
    auto violations = check_internal_consistency(kb, "ORG");
    REQUIRE(violations.size() == 1);
    REQUIRE(is_bottom(violations[0].params.at("frequency")));
    REQUIRE_THROWS_AS(find_findings(kb), InconsistentSourceError);
  }
  SECTION("disjoint populations within one source are fine") {
    kb.atoms = {
        atom("screening", {{"age", iv(40, 49)}, {"frequency", iv(12, 12)}},
             {"ORG"}),
        atom("screening", {{"age", iv(50, 74)}, {"frequency", iv(24, 24)}},
             {"ORG"}),
    };
    REQUIRE(check_internal_consistency(kb, "ORG").empty());
  }
  SECTION("no atoms, no violations") {
    REQUIRE(check_internal_consistency(kb, "ORG").empty());
  }
  SECTION("unknown source") {
    REQUIRE_THROWS_AS(check_internal_consistency(kb, "NOPE"),
                      UnknownSourceError);
  }
}

TEST_CASE("findings for the worked examples") {
  SECTION("breast screening: one contradiction with a modality component") {
    KnowledgeBase kb = example1_kb();
    auto findings = find_findings(kb);
    REQUIRE(findings.size() == 1);
    const Finding& f = findings[0];
    REQUIRE(f.kind == Finding::Kind::kContradiction);
    REQUIRE(f.predicate == "screening");
    REQUIRE(f.conflict_sorts == std::vector<std::string>{"frequency"});
    REQUIRE(f.disagree_sorts == std::vector<std::string>{"modality"});
    REQUIRE(f.provenances == std::set<SourceId>{"ACOG", "USPSTF"});
    REQUIRE(f.condition_overlap ==
            std::map<std::string, ParamValue>{{"age", iv(50, 74)}});
    REQUIRE(f.source_atoms.size() == 2);
  }
  SECTION("exercise dose: one disagreement, no contradictions") {
    KnowledgeBase kb = example2_kb();
    auto findings = find_findings(kb);
    REQUIRE(findings.size() == 1);
    const Finding& f = findings[0];
    REQUIRE(f.kind == Finding::Kind::kDisagreement);
    REQUIRE(f.derived_params.at("duration") == iv(150, 300));
    REQUIRE(f.conflict_sorts == std::vector<std::string>{"duration"});
  }
  SECTION("identical recommendations from two sources produce no findings") {
    KnowledgeBase kb = example2_kb();
    kb.atoms[1].params["duration"] = at_least(150);
    REQUIRE(find_findings(kb).empty());
  }
  SECTION("subset provenances with identical params are subsumed") {
    KnowledgeBase kb;
    kb.sorts = {
        {"duration", IntervalKind{"minutes_per_week"}, SortRole::kAction}};
    kb.sources = {"A", "B", "C"};
    kb.atoms = {
        atom("exercise", {{"duration", at_least(100)}}, {"A"}),
        atom("exercise", {{"duration", iv(150, 300)}}, {"B"}),
        atom("exercise", {{"duration", iv(120, 200)}}, {"C"}),
    };
    auto findings = find_findings(kb);
    // {B,C} derives [150,200] but is subsumed by {A,B,C} with equal params
    REQUIRE(findings.size() == 3);
    for (const auto& f : findings) {
      REQUIRE(f.kind == Finding::Kind::kDisagreement);
      REQUIRE(f.provenances != std::set<SourceId>{"B", "C"});
    }
    REQUIRE(findings[2].provenances == std::set<SourceId>{"A", "B", "C"});
    REQUIRE(findings[2].derived_params.at("duration") == iv(150, 200));
  }
}

// ---------------------------------------------------------------------------
// randomized knowledge bases
// ---------------------------------------------------------------------------

namespace {

struct RandomKb {
  KnowledgeBase kb;
};

RandomKb random_kb(std::mt19937& rng) {
  RandomKb out;
  KnowledgeBase& kb = out.kb;
  std::uniform_int_distribution<int> endpoint(0, 10);
  std::uniform_int_distribution<int> kind_dist(0, 2);
  std::uniform_int_distribution<int> coin(0, 3);
  const std::vector<std::string> alphabet = {"a", "b", "c"};

  int n_sorts = 1 + static_cast<int>(rng() % 3);
  for (int s = 0; s < n_sorts; ++s) {
    Sort sort;
    sort.name = "s" + std::to_string(s);
    switch (kind_dist(rng)) {
      case 0:
        sort.kind = IntervalKind{"u"};
        break;
      case 1:
        sort.kind = EnumKind{alphabet};
        break;
      default:
        sort.kind = SetKind{alphabet};
        break;
    }
    sort.role = coin(rng) == 0 ? SortRole::kCondition : SortRole::kAction;
    kb.sorts.push_back(std::move(sort));
  }

  auto random_value = [&](const Sort& sort) -> ParamValue {
    if (std::holds_alternative<IntervalKind>(sort.kind)) {
      int a = endpoint(rng), b = endpoint(rng);
      if (coin(rng) == 0)
        return make_interval(Bound::finite(Rational(std::min(a, b))),
                             Bound::pos_inf());
      return make_interval(Rational(std::min(a, b)), Rational(std::max(a, b)));
    }
    if (std::holds_alternative<EnumKind>(sort.kind))
      return EnumVal{alphabet[rng() % alphabet.size()]};
    SetVal sv;
    while (sv.members.empty())
      for (const auto& s : alphabet)
        if (rng() % 2) sv.members.insert(s);
    return sv;
  };

  int n_atoms = 1 + static_cast<int>(rng() % 6);
  for (int i = 0; i < n_atoms; ++i) {
    SourceId src = "S" + std::to_string(i);
    kb.sources.push_back(src);
    Atom a;
    a.predicate = rng() % 4 == 0 ? "q" : "p";
    a.provenance = {src};
    for (const auto& sort : kb.sorts)
      if (coin(rng) != 0) a.params.emplace(sort.name, random_value(sort));
    kb.atoms.push_back(std::move(a));
  }
  return out;
}

bool has_bottom_action(const KnowledgeBase& kb, const Atom& a) {
  for (const auto& [name, value] : a.params)
    if (is_bottom(value) && !kb.find_sort(name)->is_condition()) return true;
  return false;
}

bool refines_some_side(const Atom& derived, const Atom& x, const Atom& y) {
  for (const auto& [name, value] : derived.params) {
    for (const Atom* side : {&x, &y}) {
      auto it = side->params.find(name);
      if (it == side->params.end() || it->second != value) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("classification and closure routes agree on random KBs") {
  std::mt19937 rng(2026);
  for (int trial = 0; trial < 300; ++trial) {
    KnowledgeBase kb = random_kb(rng).kb;
    auto entries = closure_with_contributors(kb);
    std::set<Atom> atoms;
    for (const auto& e : entries) atoms.insert(e.atom);

    for (std::size_t i = 0; i < kb.atoms.size(); ++i) {
      for (std::size_t j = i + 1; j < kb.atoms.size(); ++j) {
        const Atom& x = kb.atoms[i];
        const Atom& y = kb.atoms[j];
        if (x.predicate != y.predicate) continue;
        Classification c = classify_pair(kb, x, y);
        Classification c_rev = classify_pair(kb, y, x);
        REQUIRE(c == c_rev);  // symmetry

        if (c.kind == Classification::Kind::kNotComparable) {
          continue;  // never combined, nothing derivable from this pair
        }
        Atom derived = lattice_and(kb, x, y);
        REQUIRE(atoms.count(derived) == 1);
        bool bottom_action = has_bottom_action(kb, derived);
        bool refined = refines_some_side(derived, x, y);
        if (c.kind == Classification::Kind::kContradiction) {
          REQUIRE(bottom_action);
        } else if (c.kind == Classification::Kind::kDisagreement) {
          REQUIRE_FALSE(bottom_action);
          REQUIRE(derived.provenance.size() >= 2);
          REQUIRE(refined);
        } else {
          REQUIRE_FALSE(bottom_action);
          REQUIRE_FALSE(refined);
        }
      }
    }
  }
}

TEST_CASE("closure terminates within its bound and provenances are sound") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 300; ++trial) {
    KnowledgeBase kb = random_kb(rng).kb;
    auto entries = closure_with_contributors(kb);

    // size bound: predicates x provenance subsets x meet-closed values
    std::set<std::string> predicates;
    for (const auto& a : kb.atoms) predicates.insert(a.predicate);
    double bound = static_cast<double>(predicates.size()) *
                   ((1 << kb.sources.size()) - 1);
    for (const auto& sort : kb.sorts) {
      std::set<ParamValue> values;
      for (const auto& a : kb.atoms) {
        auto it = a.params.find(sort.name);
        if (it != a.params.end()) values.insert(it->second);
      }
      // meet-closure of the base values
      bool grew = true;
      while (grew) {
        grew = false;
        std::vector<ParamValue> now(values.begin(), values.end());
        for (const auto& x : now)
          for (const auto& y : now)
            if (values.insert(meet(sort, x, y)).second) grew = true;
      }
      bound *= static_cast<double>(values.size() + 1);  // +1: absent
    }
    REQUIRE(static_cast<double>(entries.size()) <= bound);

    for (const auto& entry : entries) {
      // provenance is exactly the union of the contributors' sources
      std::set<SourceId> expected;
      for (std::size_t ci : entry.contributors) {
        const auto& prov = kb.atoms[ci].provenance;
        expected.insert(prov.begin(), prov.end());
      }
      REQUIRE(entry.atom.provenance == expected);

      // params are reproduced exactly by direct meets over contributors
      Atom recomputed;
      bool first = true;
      for (std::size_t ci : entry.contributors) {
        recomputed = first ? kb.atoms[ci]
                           : lattice_and(kb, recomputed, kb.atoms[ci]);
        first = false;
      }
      REQUIRE(recomputed.params == entry.atom.params);
    }
  }
}
