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

#include "glc/dsl.hpp"

#include <random>

#include "catch2/catch_amalgamated.hpp"

using namespace glc;

TEST_CASE("minimal well-formed input") {
  auto r = parse_kb(
      "sort frequency: interval(months) role action; source ACS; "
      "recommend breast_screening { frequency: [12,12] } @ ACS;");
  REQUIRE(r.ok());
  REQUIRE(r.kb->sorts.size() == 1);
  REQUIRE(r.kb->sources.size() == 1);
  REQUIRE(r.kb->atoms.size() == 1);
  const Atom& a = r.kb->atoms[0];
  REQUIRE(a.predicate == "breast_screening");
  REQUIRE(a.params.at("frequency") ==
          make_interval(Rational(12), Rational(12)));
  REQUIRE(a.provenance == std::set<SourceId>{"ACS"});
}

TEST_CASE("comments, whitespace and unbounded intervals") {
  auto r = parse_kb(
      "# a guideline knowledge base\n"
      "sort age: interval(years) role condition;\n"
      "sort stance: enum { recommend, not_recommend } role action;\n"
      "sort modality: set { mammography, cbe } role action;\n"
      "source ACOG;  # provenance\n"
      "recommend screening {\n"
      "  age: [40, inf],  # over forty\n"
      "  stance: recommend,\n"
      "  modality: { mammography, cbe }\n"
      "} @ ACOG;\n");
  REQUIRE(r.ok());
  const Atom& a = r.kb->atoms[0];
  REQUIRE(a.params.at("age") ==
          make_interval(Bound::finite(Rational(40)), Bound::pos_inf()));
  REQUIRE(a.params.at("stance") == ParamValue{EnumVal{"recommend"}});
  REQUIRE(a.params.at("modality") ==
          ParamValue{SetVal{{"mammography", "cbe"}}});
}

TEST_CASE("parse errors") {
  SECTION("reversed interval") {
    auto r = parse_kb(
        "sort f: interval(u) role action; source A; "
        "recommend x { f: [24,12] } @ A;");
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.errors.size() == 1);
    REQUIRE(r.errors[0].message ==
            "interval lower bound exceeds upper bound");
  }
  SECTION("undeclared sort and source") {
    auto r = parse_kb("recommend x { f: [1,2] } @ A;");
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.errors[0].message == "undeclared sort 'f'");
  }
  SECTION("enum member outside the alphabet") {
    auto r = parse_kb(
        "sort s: enum { a, b } role action; source A; "
        "recommend x { s: c } @ A;");
    REQUIRE_FALSE(r.ok());
  }
  SECTION("value shape must match the sort kind") {
    auto r = parse_kb(
        "sort f: interval(u) role action; source A; "
        "recommend x { f: { a } } @ A;");
    REQUIRE_FALSE(r.ok());
  }
  SECTION("duplicate param") {
    auto r = parse_kb(
        "sort f: interval(u) role action; source A; "
        "recommend x { f: [1,2], f: [3,4] } @ A;");
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.errors[0].message == "duplicate param for sort 'f'");
  }
  SECTION("duplicate declarations") {
    REQUIRE_FALSE(parse_kb("source A; source A;").ok());
    REQUIRE_FALSE(parse_kb("sort f: interval(u) role action; "
                           "sort f: interval(u) role action;")
                      .ok());
    REQUIRE_FALSE(
        parse_kb("sort s: enum { a, a } role action;").ok());
  }
  SECTION("error positions point at the offending token") {
    auto r = parse_kb("source A;\nrecommend x { } @ B;");
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.errors[0].line == 2);
    REQUIRE(r.errors[0].excerpt == "B");
  }
}

TEST_CASE("the parser recovers at statement boundaries") {
  // three independently malformed statements, one good one
  auto r = parse_kb(
      "sort f: interval() role action;\n"
      "source A;\n"
      "recommend x { f: [2,1] } @ A;\n"
      "recommend { } @ A;\n"
      "recommend y { } @ A;\n");
  REQUIRE_FALSE(r.ok());
  REQUIRE(r.errors.size() >= 3);
}

TEST_CASE("identical input yields identical results") {
  const std::string text =
      "sort f: interval(u) role action; source A; source B;\n"
      "recommend x { f: [1, 2.5] } @ A;\n"
      "recommend x { f: [2, inf] } @ B;\n";
  auto r1 = parse_kb(text);
  auto r2 = parse_kb(text);
  REQUIRE(r1.ok());
  REQUIRE(r2.ok());
  REQUIRE(r1.kb->atoms == r2.kb->atoms);
  REQUIRE(format_kb(*r1.kb) == format_kb(*r2.kb));
}

TEST_CASE("canonical atom formatting") {
  auto r = parse_kb(
      "sort frequency: interval(months) role action; source ACS; "
      "recommend breast_screening { frequency: [12,12] } @ ACS;");
  REQUIRE(r.ok());
  REQUIRE(format_atom(*r.kb, r.kb->atoms[0]) ==
          "recommend breast_screening { frequency: [12, 12] } @ ACS;");

  Atom derived = r.kb->atoms[0];
  KnowledgeBase kb = *r.kb;
  kb.sources.push_back("USPSTF");
  derived.provenance = {"ACS", "USPSTF"};
  REQUIRE(format_atom(kb, derived) ==
          "recommend breast_screening { frequency: [12, 12] } @ ACS,USPSTF;");

  Atom bad = r.kb->atoms[0];
  bad.params.emplace("nope", ParamValue{EnumVal{"x"}});
  REQUIRE_THROWS_AS(format_atom(*r.kb, bad), MalformedAtomError);
}

TEST_CASE("randomized atoms round-trip through format and parse") {
  const std::string header =
      "sort age: interval(years) role condition;\n"
      "sort frequency: interval(months) role action;\n"
      "sort stance: enum { recommend, not_recommend, individualize } "
      "role action;\n"
      "sort modality: set { mammography, cbe, bse, mri } role action;\n"
      "source A; source B; source C;\n";
  auto base = parse_kb(header);
  REQUIRE(base.ok());
  const KnowledgeBase& kb = *base.kb;

  std::mt19937 rng(99);
  std::uniform_int_distribution<int> num(0, 400);
  std::uniform_int_distribution<int> den_pick(0, 3);
  const std::int64_t dens[] = {1, 2, 4, 10};
  auto random_rational = [&] {
    return Rational(num(rng), dens[den_pick(rng)]);
  };
  const std::vector<std::string> modalities = {"mammography", "cbe", "bse",
                                               "mri"};
  const std::vector<std::string> stances = {"recommend", "not_recommend",
                                            "individualize"};
  const std::vector<SourceId> sources = {"A", "B", "C"};

  std::string doc = header;
  std::vector<Atom> expected;
  for (int i = 0; i < 1000; ++i) {
    Atom a;
    a.predicate = i % 2 ? "screening" : "exercise";
    if (rng() % 2) {
      Rational lo = random_rational();
      Rational hi = random_rational();
      if (hi < lo) std::swap(lo, hi);
      Bound blo = rng() % 5 ? Bound::finite(lo) : Bound::neg_inf();
      Bound bhi = rng() % 5 ? Bound::finite(hi) : Bound::pos_inf();
      a.params.emplace("age", make_interval(blo, bhi));
    }
    if (rng() % 2) {
      Rational lo = random_rational();
      a.params.emplace("frequency",
                       make_interval(Bound::finite(lo), Bound::pos_inf()));
    }
    if (rng() % 2)
      a.params.emplace("stance", EnumVal{stances[rng() % stances.size()]});
    if (rng() % 2) {
      SetVal sv;
      while (sv.members.empty())
        for (const auto& m : modalities)
          if (rng() % 2) sv.members.insert(m);
      a.params.emplace("modality", std::move(sv));
    }
    // one to three provenances; multi-provenance atoms mimic derived ones
    a.provenance.insert(sources[rng() % 3]);
    while (rng() % 3 == 0) a.provenance.insert(sources[rng() % 3]);
    doc += format_atom(kb, a) + "\n";
    expected.push_back(std::move(a));
  }

  auto reparsed = parse_kb(doc);
  REQUIRE(reparsed.ok());
  REQUIRE(reparsed.kb->atoms == expected);
}
