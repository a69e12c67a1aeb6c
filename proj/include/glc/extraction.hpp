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

#ifndef GLC_EXTRACTION_HPP_
#define GLC_EXTRACTION_HPP_

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "glc/dsl.hpp"
#include "glc/kb.hpp"

// Rule/lexicon extraction of recommendation atoms from single sentences.
// Predicate triggers decide what a sentence recommends; phrase rules and
// number patterns fill in parameter values. All matching is on the
// lowercased sentence, so lexicon phrases are stored lowercase.

namespace glc {

struct PredicateRule {
  std::string id;
  std::vector<std::string> triggers;
  std::map<std::string, ParamValue> implied;  // defaults, overridden by rules
};

struct PhraseRule {
  std::string sort;
  std::string phrase;
  ParamValue value;
};

enum class IntervalConstruct { kExact, kAtLeast, kAtMost, kRange };

struct NumberPattern {
  std::string sort;
  std::string pattern;
  IntervalConstruct construct = IntervalConstruct::kExact;
  std::regex compiled;
};

struct Lexicon {
  std::vector<PredicateRule> predicates;
  std::vector<PhraseRule> phrase_rules;
  std::vector<NumberPattern> number_patterns;
  std::vector<std::string> negation_cues;

  // Negation cues compile down to stance phrase rules when the companion
  // header declares the stance sort; empty otherwise.
  std::vector<PhraseRule> cue_rules;
};

using Span = std::pair<std::size_t, std::size_t>;  // [start, end) offsets

struct Extracted {
  Atom atom;
  std::vector<Span> matched_spans;
};

struct NoRecommendation {
  std::string reason;
};

using ExtractionResult = std::variant<Extracted, NoRecommendation>;

class AmbiguousExtractionError : public std::runtime_error {
 public:
  AmbiguousExtractionError(const std::string& what, std::string sort,
                           Span first, Span second)
      : std::runtime_error(what),
        sort(std::move(sort)),
        first(first),
        second(second) {}

  std::string sort;
  Span first;
  Span second;
};

struct LexiconResult {
  std::optional<Lexicon> lexicon;
  std::vector<ParseError> errors;

  bool ok() const { return errors.empty(); }
};

inline std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

namespace extraction_detail {

inline bool is_lowercase(const std::string& phrase) {
  for (char c : phrase)
    if (std::isupper(static_cast<unsigned char>(c))) return false;
  return true;
}

// Reads a param value from lexicon JSON: {"interval": [lo, hi]} with
// numeric or string bounds ("inf" / "-inf" / "12.5"), {"enum": "sym"},
// or {"set": ["a", "b"]}.
inline std::optional<ParamValue> value_from_json(const nlohmann::json& j,
                                                 std::string& error) {
  if (!j.is_object() || j.size() != 1) {
    error = "value must be an object with one of 'interval', 'enum', 'set'";
    return std::nullopt;
  }
  auto bound_of = [&](const nlohmann::json& b,
                      bool lower) -> std::optional<Bound> {
    if (b.is_number_integer())
      return Bound::finite(Rational(b.get<std::int64_t>()));
    if (b.is_string()) {
      const std::string s = b.get<std::string>();
      if (s == "inf") return Bound::pos_inf();
      if (s == "-inf") return Bound::neg_inf();
      if (auto r = Rational::from_decimal(s)) return Bound::finite(*r);
    }
    error = std::string(lower ? "lower" : "upper") +
            " bound must be an integer or a decimal/'inf'/'-inf' string";
    return std::nullopt;
  };
  if (j.contains("interval")) {
    const auto& arr = j["interval"];
    if (!arr.is_array() || arr.size() != 2) {
      error = "'interval' must be a two-element array";
      return std::nullopt;
    }
    auto lo = bound_of(arr[0], true);
    if (!lo) return std::nullopt;
    auto hi = bound_of(arr[1], false);
    if (!hi) return std::nullopt;
    try {
      return make_interval(*lo, *hi);
    } catch (const std::invalid_argument& e) {
      error = e.what();
      return std::nullopt;
    }
  }
  if (j.contains("enum")) {
    if (!j["enum"].is_string()) {
      error = "'enum' must be a string";
      return std::nullopt;
    }
    return ParamValue{EnumVal{j["enum"].get<std::string>()}};
  }
  if (j.contains("set")) {
    const auto& arr = j["set"];
    if (!arr.is_array() || arr.empty()) {
      error = "'set' must be a non-empty array";
      return std::nullopt;
    }
    SetVal sv;
    for (const auto& m : arr) {
      if (!m.is_string()) {
        error = "'set' members must be strings";
        return std::nullopt;
      }
      sv.members.insert(m.get<std::string>());
    }
    return ParamValue{sv};
  }
  error = "value must contain 'interval', 'enum' or 'set'";
  return std::nullopt;
}

struct Match {
  std::string sort;
  Span span;
  ParamValue value;
  std::size_t rule_order;
};

}  // namespace extraction_detail

// Loads and validates a lexicon (one JSON document) against the sorts of
// the companion knowledge-base header.
inline LexiconResult load_lexicon(const std::string& text,
                                  const KnowledgeBase& kb) {
  using nlohmann::json;
  LexiconResult result;
  auto fail = [&result](const std::string& message) {
    result.errors.push_back({1, 1, message, ""});
  };

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("lexicon is not valid JSON: ") + e.what());
    return result;
  }
  if (!doc.is_object()) {
    fail("lexicon must be a JSON object");
    return result;
  }

  Lexicon lex;

  for (const auto& p : doc.value("predicates", json::array())) {
    PredicateRule rule;
    if (!p.is_object() || !p.contains("id") || !p["id"].is_string()) {
      fail("predicate entry must be an object with a string 'id'");
      continue;
    }
    rule.id = p["id"].get<std::string>();
    for (const auto& t : p.value("triggers", json::array())) {
      if (!t.is_string() || t.get<std::string>().empty()) {
        fail("predicate '" + rule.id + "': triggers must be non-empty strings");
        continue;
      }
      std::string phrase = t.get<std::string>();
      if (!extraction_detail::is_lowercase(phrase)) {
        fail("predicate '" + rule.id + "': trigger '" + phrase +
             "' must be lowercase");
        continue;
      }
      rule.triggers.push_back(std::move(phrase));
    }
    if (rule.triggers.empty())
      fail("predicate '" + rule.id + "' has no triggers");
    for (const auto& [sort_name, value_json] :
         p.value("implied", json::object()).items()) {
      const Sort* sort = kb.find_sort(sort_name);
      if (!sort) {
        fail("predicate '" + rule.id + "': undeclared sort '" + sort_name +
             "'");
        continue;
      }
      std::string err;
      auto value = extraction_detail::value_from_json(value_json, err);
      if (!value) {
        fail("predicate '" + rule.id + "', sort '" + sort_name + "': " + err);
        continue;
      }
      if (auto verr = validate_value(*sort, *value)) {
        fail("predicate '" + rule.id + "': " + *verr);
        continue;
      }
      rule.implied.emplace(sort_name, std::move(*value));
    }
    lex.predicates.push_back(std::move(rule));
  }

  for (const auto& r : doc.value("phrase_rules", json::array())) {
    if (!r.is_object() || !r.contains("sort") || !r.contains("phrase") ||
        !r.contains("value")) {
      fail("phrase rule must have 'sort', 'phrase' and 'value'");
      continue;
    }
    PhraseRule rule;
    rule.sort = r["sort"].get<std::string>();
    rule.phrase = r["phrase"].get<std::string>();
    const Sort* sort = kb.find_sort(rule.sort);
    if (!sort) {
      fail("phrase rule references undeclared sort '" + rule.sort + "'");
      continue;
    }
    if (rule.phrase.empty() ||
        !extraction_detail::is_lowercase(rule.phrase)) {
      fail("phrase rule for sort '" + rule.sort +
           "': phrase must be non-empty lowercase");
      continue;
    }
    std::string err;
    auto value = extraction_detail::value_from_json(r["value"], err);
    if (!value) {
      fail("phrase rule '" + rule.phrase + "': " + err);
      continue;
    }
    if (auto verr = validate_value(*sort, *value)) {
      fail("phrase rule '" + rule.phrase + "': " + *verr);
      continue;
    }
    rule.value = std::move(*value);
    lex.phrase_rules.push_back(std::move(rule));
  }

  for (const auto& r : doc.value("number_patterns", json::array())) {
    if (!r.is_object() || !r.contains("sort") || !r.contains("pattern") ||
        !r.contains("construct")) {
      fail("number pattern must have 'sort', 'pattern' and 'construct'");
      continue;
    }
    NumberPattern pat;
    pat.sort = r["sort"].get<std::string>();
    pat.pattern = r["pattern"].get<std::string>();
    const Sort* sort = kb.find_sort(pat.sort);
    if (!sort) {
      fail("number pattern references undeclared sort '" + pat.sort + "'");
      continue;
    }
    if (!std::holds_alternative<IntervalKind>(sort->kind)) {
      fail("number pattern for non-interval sort '" + pat.sort + "'");
      continue;
    }
    const std::string c = r["construct"].get<std::string>();
    if (c == "exact")
      pat.construct = IntervalConstruct::kExact;
    else if (c == "at_least")
      pat.construct = IntervalConstruct::kAtLeast;
    else if (c == "at_most")
      pat.construct = IntervalConstruct::kAtMost;
    else if (c == "range")
      pat.construct = IntervalConstruct::kRange;
    else {
      fail("number pattern construct must be exact/at_least/at_most/range");
      continue;
    }
    try {
      pat.compiled = std::regex(pat.pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      fail("number pattern '" + pat.pattern + "': " + e.what());
      continue;
    }
    std::size_t needed =
        pat.construct == IntervalConstruct::kRange ? 2 : 1;
    if (pat.compiled.mark_count() < needed) {
      fail("number pattern '" + pat.pattern + "' needs " +
           std::to_string(needed) + " capture group(s)");
      continue;
    }
    lex.number_patterns.push_back(std::move(pat));
  }

  for (const auto& c : doc.value("negation_cues", json::array())) {
    if (!c.is_string() || c.get<std::string>().empty() ||
        !extraction_detail::is_lowercase(c.get<std::string>())) {
      fail("negation cues must be non-empty lowercase strings");
      continue;
    }
    lex.negation_cues.push_back(c.get<std::string>());
  }

  // A matched cue sets stance = not_recommend, provided the header
  // declares the stance sort.
  if (const Sort* stance = kb.find_sort("stance")) {
    ParamValue value{EnumVal{"not_recommend"}};
    if (!validate_value(*stance, value)) {
      for (const auto& cue : lex.negation_cues)
        lex.cue_rules.push_back({"stance", cue, value});
    }
  }

  if (result.errors.empty()) result.lexicon = std::move(lex);
  return result;
}

// Picks the predicate whose trigger matches the lowercased sentence,
// longest trigger first (ties: leftmost, then lexicon order). Returns
// nullptr if no trigger matches.
inline const PredicateRule* match_predicate(const Lexicon& lexicon,
                                            const std::string& lowered,
                                            Span* span_out = nullptr) {
  const PredicateRule* predicate = nullptr;
  Span best{0, 0};
  for (const auto& rule : lexicon.predicates) {
    for (const auto& trigger : rule.triggers) {
      std::size_t pos = lowered.find(trigger);
      if (pos == std::string::npos) continue;
      std::size_t len = trigger.size();
      bool better = false;
      if (!predicate) {
        better = true;
      } else {
        std::size_t best_len = best.second - best.first;
        better = len > best_len || (len == best_len && pos < best.first);
      }
      if (better) {
        predicate = &rule;
        best = {pos, pos + len};
      }
    }
  }
  if (span_out && predicate) *span_out = best;
  return predicate;
}

// Extracts a recommendation atom from one sentence.
//
// Pipeline: lowercase; pick the predicate by longest trigger; apply the
// predicate's implied params; collect phrase-rule and number-pattern
// matches; per sort keep maximal spans and take the first match, with
// conflicting values reported as an ambiguity error rather than guessed.
inline ExtractionResult extract_atom(const std::string& sentence,
                                     const Lexicon& lexicon,
                                     const SourceId& source) {
  using extraction_detail::Match;
  const std::string lower = to_lower(sentence);

  Span trigger_span{0, 0};
  const PredicateRule* predicate =
      match_predicate(lexicon, lower, &trigger_span);
  if (!predicate) return NoRecommendation{"no predicate trigger"};

  std::vector<Match> matches;
  std::size_t order = 0;
  auto scan_phrase = [&](const PhraseRule& rule) {
    std::size_t pos = 0;
    while ((pos = lower.find(rule.phrase, pos)) != std::string::npos) {
      matches.push_back(
          {rule.sort, {pos, pos + rule.phrase.size()}, rule.value, order});
      pos += 1;
    }
    ++order;
  };
  for (const auto& rule : lexicon.phrase_rules) scan_phrase(rule);
  for (const auto& rule : lexicon.cue_rules) scan_phrase(rule);

  for (const auto& pat : lexicon.number_patterns) {
    auto begin =
        std::sregex_iterator(lower.begin(), lower.end(), pat.compiled);
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
      const std::smatch& m = *it;
      auto capture = [&](std::size_t i) {
        return Rational::from_decimal(m[i].str());
      };
      std::optional<ParamValue> value;
      try {
        switch (pat.construct) {
          case IntervalConstruct::kExact:
            if (auto n = capture(1))
              value = make_interval(Bound::finite(*n), Bound::finite(*n));
            break;
          case IntervalConstruct::kAtLeast:
            if (auto n = capture(1))
              value = make_interval(Bound::finite(*n), Bound::pos_inf());
            break;
          case IntervalConstruct::kAtMost:
            if (auto n = capture(1))
              value = make_interval(Bound::neg_inf(), Bound::finite(*n));
            break;
          case IntervalConstruct::kRange:
            if (auto lo = capture(1))
              if (auto hi = capture(2))
                value = make_interval(Bound::finite(*lo), Bound::finite(*hi));
            break;
        }
      } catch (const std::invalid_argument&) {
        value.reset();  // e.g. a reversed range; not a match
      }
      if (!value) continue;
      std::size_t start = static_cast<std::size_t>(m.position(0));
      matches.push_back(
          {pat.sort, {start, start + m[0].str().size()}, *value, order});
    }
    ++order;
  }

  Atom atom;
  atom.predicate = predicate->id;
  atom.params = predicate->implied;
  atom.provenance = {source};
  std::vector<Span> spans{trigger_span};

  std::set<std::string> sorts;
  for (const auto& m : matches) sorts.insert(m.sort);
  for (const auto& sort : sorts) {
    std::vector<Match> mine;
    for (const auto& m : matches)
      if (m.sort == sort) mine.push_back(m);
    // keep maximal spans only: a match nested inside a longer match of the
    // same sort is part of that longer phrase
    std::vector<Match> maximal;
    for (const auto& m : mine) {
      bool nested = false;
      for (const auto& other : mine) {
        if (other.span == m.span) continue;
        if (other.span.first <= m.span.first &&
            m.span.second <= other.span.second) {
          nested = true;
          break;
        }
      }
      if (!nested) maximal.push_back(m);
    }
    std::sort(maximal.begin(), maximal.end(),
              [](const Match& a, const Match& b) {
                if (a.span.first != b.span.first)
                  return a.span.first < b.span.first;
                if (a.span.second != b.span.second)
                  return a.span.second > b.span.second;  // longer first
                return a.rule_order < b.rule_order;
              });
    const Match& winner = maximal.front();
    for (const auto& m : maximal) {
      if (m.value != winner.value)
        throw AmbiguousExtractionError(
            "conflicting matches for sort '" + sort + "' in: " + sentence,
            sort, winner.span, m.span);
    }
    atom.params[sort] = winner.value;
    spans.push_back(winner.span);
  }

  std::sort(spans.begin(), spans.end());
  return Extracted{std::move(atom), std::move(spans)};
}

}  // namespace glc

#endif  // GLC_EXTRACTION_HPP_
