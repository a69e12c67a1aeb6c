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

#ifndef GLC_REPORT_HPP_
#define GLC_REPORT_HPP_

#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "glc/dsl.hpp"
#include "glc/extraction.hpp"
#include "glc/kb.hpp"
#include "glc/retrieval.hpp"

// Report assembly for the two analysis paths: `check` (pure logic over a
// .gkb knowledge base) and `pipeline` (corpus -> retrieval -> extraction
// -> classification), plus the evaluation harness that scores the system
// against gold labels at (query, document) granularity.
//
// Every compared pair lands in exactly one category — agreement,
// not-comparable, conflict (represented by a finding) or extraction
// failure — and the stats block records the partition. All output is
// deterministic: containers are ordered, JSON keys are sorted, and no
// timestamps enter the payload.

namespace glc {

struct SentenceRef {
  SourceId doc;
  int index = -1;
  std::string text;
  std::vector<Span> spans;
};

struct FindingRecord {
  Finding finding;
  std::vector<SentenceRef> sentences;  // pipeline mode only
  double score = 0.0;                  // retrieval similarity (pipeline)
};

struct PairRecord {
  Classification classification;
  Atom atom_a;
  Atom atom_b;
  std::optional<SentenceRef> sentence_a;  // pipeline mode only
  std::optional<SentenceRef> sentence_b;
  double score = 0.0;
};

struct ExtractionFailureRecord {
  SourceId doc;
  int index = -1;
  std::string text;
  std::string reason;
};

struct ReportStats {
  int pairs_compared = 0;
  int agreements = 0;
  int not_comparable = 0;
  int contradiction_pairs = 0;
  int disagreement_pairs = 0;
  int extraction_failure_pairs = 0;
  int findings = 0;
  int contradictions = 0;
  int disagreements = 0;
};

struct ConfigEcho {
  std::string mode;  // "check" or "pipeline"
  std::string kb_file;
  std::string corpus_dir;
  std::string lexicon_file;
  std::string header_file;
  std::string stopwords = "builtin";
  double threshold = 0.0;
  bool uses_threshold = false;
};

struct Report {
  std::vector<FindingRecord> findings;
  std::vector<PairRecord> agreements;
  std::vector<PairRecord> not_comparable;
  std::vector<ExtractionFailureRecord> extraction_failures;
  ReportStats stats;
  ConfigEcho config;

  bool has_contradictions() const {
    for (const auto& fr : findings)
      if (fr.finding.kind == Finding::Kind::kContradiction) return true;
    return false;
  }
};

namespace report_detail {

inline void count_pair(ReportStats& stats, Classification::Kind kind) {
  ++stats.pairs_compared;
  switch (kind) {
    case Classification::Kind::kAgreement:
      ++stats.agreements;
      break;
    case Classification::Kind::kNotComparable:
      ++stats.not_comparable;
      break;
    case Classification::Kind::kContradiction:
      ++stats.contradiction_pairs;
      break;
    case Classification::Kind::kDisagreement:
      ++stats.disagreement_pairs;
      break;
  }
}

inline void finalize_finding_stats(Report& report) {
  report.stats.findings = static_cast<int>(report.findings.size());
  for (const auto& fr : report.findings) {
    if (fr.finding.kind == Finding::Kind::kContradiction)
      ++report.stats.contradictions;
    else
      ++report.stats.disagreements;
  }
}

// Builds a finding for one conflicting pair: the derived atom is the
// lattice_and of the two sides, the disagree sorts are the non-Bottom
// params that strictly refine a side.
inline Finding pair_finding(const KnowledgeBase& kb,
                            const Classification& classification,
                            const Atom& x, const Atom& y) {
  Finding f;
  Atom derived = lattice_and(kb, x, y);
  f.kind = classification.kind == Classification::Kind::kContradiction
               ? Finding::Kind::kContradiction
               : Finding::Kind::kDisagreement;
  f.predicate = derived.predicate;
  f.conflict_sorts = classification.sorts;
  f.derived_params = derived.params;
  f.provenances = derived.provenance;
  for (const auto& [name, value] : derived.params) {
    if (is_bottom(value)) continue;
    for (const Atom* side : {&x, &y}) {
      auto it = side->params.find(name);
      if (it == side->params.end() || it->second != value) {
        f.disagree_sorts.push_back(name);
        break;
      }
    }
    if (kb.find_sort(name)->is_condition())
      f.condition_overlap.emplace(name, value);
  }
  f.source_atoms = {x, y};
  std::sort(f.source_atoms.begin(), f.source_atoms.end());
  return f;
}

}  // namespace report_detail

// ---------------------------------------------------------------------------
// check: pure logic over a parsed knowledge base
// ---------------------------------------------------------------------------

// Classifies all same-predicate cross-source base-atom pairs and attaches
// the closure-derived findings. Throws InconsistentSourceError if any
// source is internally contradictory.
inline Report check_report(const KnowledgeBase& kb) {
  Report report;
  report.config.mode = "check";

  for (auto& finding : find_findings(kb))
    report.findings.push_back({std::move(finding), {}, 0.0});
  report_detail::finalize_finding_stats(report);

  for (std::size_t i = 0; i < kb.atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < kb.atoms.size(); ++j) {
      const Atom& x = kb.atoms[i];
      const Atom& y = kb.atoms[j];
      if (x.predicate != y.predicate) continue;
      bool cross_source = true;
      for (const auto& src : x.provenance)
        if (y.provenance.count(src)) cross_source = false;
      if (!cross_source) continue;
      Classification c = classify_pair(kb, x, y);
      report_detail::count_pair(report.stats, c.kind);
      if (c.kind == Classification::Kind::kAgreement)
        report.agreements.push_back({c, x, y, {}, {}, 0.0});
      else if (c.kind == Classification::Kind::kNotComparable)
        report.not_comparable.push_back({c, x, y, {}, {}, 0.0});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// pipeline: corpus -> retrieval -> extraction -> classification
// ---------------------------------------------------------------------------

struct PipelineInput {
  KnowledgeBase header;  // sorts and sources; atoms ignored
  Lexicon lexicon;
  std::vector<SentenceRecord> sentences;  // tokens may be empty; filled here
  double threshold = 0.25;
  Tokenizer tokenizer;
};

namespace report_detail {

// Tokens for indexing: plain tokenization plus a concept marker for the
// predicate the sentence triggers, which lets differently-worded sentences
// about one recommendation type match.
inline std::vector<std::string> index_tokens(const PipelineInput& input,
                                             const std::string& text) {
  auto tokens = input.tokenizer.tokenize(text);
  if (const PredicateRule* rule =
          match_predicate(input.lexicon, to_lower(text)))
    tokens.push_back("concept:" + rule->id);
  return tokens;
}

struct SentenceAnalysis {
  std::optional<Extracted> extracted;
  std::string failure;  // set when extraction failed
};

inline SentenceAnalysis analyze(const PipelineInput& input,
                                const SentenceRecord& record) {
  SentenceAnalysis out;
  try {
    ExtractionResult result =
        extract_atom(record.text, input.lexicon, record.doc);
    if (auto* ex = std::get_if<Extracted>(&result))
      out.extracted = std::move(*ex);
    else
      out.failure = std::get<NoRecommendation>(result).reason;
  } catch (const AmbiguousExtractionError& e) {
    out.failure = e.what();
  }
  return out;
}

inline SentenceRef make_ref(const SentenceRecord& record,
                            const SentenceAnalysis& analysis) {
  SentenceRef ref{record.doc, record.index, record.text, {}};
  if (analysis.extracted) ref.spans = analysis.extracted->matched_spans;
  return ref;
}

}  // namespace report_detail

// Per-source consistency warnings over the extracted atoms; returned so
// the caller can surface them without aborting the run.
struct PipelineOutput {
  Report report;
  std::vector<std::pair<SourceId, Atom>> internal_violations;
};

inline PipelineOutput pipeline_report(PipelineInput input) {
  PipelineOutput output;
  Report& report = output.report;
  report.config.mode = "pipeline";
  report.config.threshold = input.threshold;
  report.config.uses_threshold = true;

  KnowledgeBase kb;
  kb.sorts = input.header.sorts;
  kb.sources = input.header.sources;

  std::vector<report_detail::SentenceAnalysis> analyses;
  analyses.reserve(input.sentences.size());
  for (auto& record : input.sentences) {
    record.tokens = report_detail::index_tokens(input, record.text);
    analyses.push_back(report_detail::analyze(input, record));
    const auto& analysis = analyses.back();
    if (!analysis.extracted)
      report.extraction_failures.push_back(
          {record.doc, record.index, record.text, analysis.failure});
    else
      kb.atoms.push_back(analysis.extracted->atom);
  }

  for (const auto& source : kb.sources) {
    for (auto& atom : check_internal_consistency(kb, source))
      output.internal_violations.emplace_back(source, std::move(atom));
  }

  Index index = build_index(input.sentences);
  auto pairs = candidate_pairs(index, input.sentences, input.threshold);

  for (const auto& pair : pairs) {
    const SentenceRecord& ra = input.sentences[pair.a];
    const SentenceRecord& rb = input.sentences[pair.b];
    const auto& aa = analyses[pair.a];
    const auto& ab = analyses[pair.b];
    if (!aa.extracted || !ab.extracted) {
      ++report.stats.pairs_compared;
      ++report.stats.extraction_failure_pairs;
      continue;
    }
    const Atom& x = aa.extracted->atom;
    const Atom& y = ab.extracted->atom;
    Classification c = classify_pair(kb, x, y);
    report_detail::count_pair(report.stats, c.kind);
    PairRecord record{c,
                      x,
                      y,
                      report_detail::make_ref(ra, aa),
                      report_detail::make_ref(rb, ab),
                      pair.score};
    if (c.kind == Classification::Kind::kAgreement) {
      report.agreements.push_back(std::move(record));
    } else if (c.kind == Classification::Kind::kNotComparable) {
      report.not_comparable.push_back(std::move(record));
    } else {
      FindingRecord fr;
      fr.finding = report_detail::pair_finding(kb, c, x, y);
      fr.sentences = {*record.sentence_a, *record.sentence_b};
      fr.score = pair.score;
      report.findings.push_back(std::move(fr));
    }
  }
  report_detail::finalize_finding_stats(report);
  return output;
}

// ---------------------------------------------------------------------------
// eval: the (query x document) harness
// ---------------------------------------------------------------------------

struct Query {
  std::string id;
  std::string text;
};

struct GoldLabel {
  std::string query_id;
  SourceId doc;
  std::string label;
};

inline const std::vector<std::string>& eval_labels() {
  static const std::vector<std::string> kLabels = {
      "Agreement", "Disagreement", "Contradiction", "NotComparable",
      "NoRecommendation"};
  return kLabels;
}

struct EvalCell {
  std::string query_id;
  SourceId doc;
  std::string gold;
  std::string system;
  int sentence_index = -1;  // retrieved sentence; -1 when none qualified
  std::string sentence_text;
  double score = 0.0;
  bool correct = false;
};

struct EvalResult {
  int total = 0;
  int correct = 0;
  double accuracy = 0.0;
  // gold label -> system label -> count
  std::map<std::string, std::map<std::string, int>> confusion;
  struct ClassMetrics {
    int support = 0;
    int predicted = 0;
    int true_positive = 0;
    double precision = 0.0;
    double recall = 0.0;
  };
  std::map<std::string, ClassMetrics> per_class;
  // binary reading: conflict = {Contradiction, Disagreement}
  struct Binary {
    int true_positive = 0;
    int false_positive = 0;
    int false_negative = 0;
    int true_negative = 0;
  } binary;
  std::vector<EvalCell> cells;
  std::vector<std::string> warnings;
};

inline EvalResult eval_report(PipelineInput input,
                              const std::vector<Query>& queries,
                              const std::vector<GoldLabel>& gold) {
  EvalResult result;

  KnowledgeBase kb;
  kb.sorts = input.header.sorts;
  kb.sources = input.header.sources;

  for (auto& record : input.sentences)
    record.tokens = report_detail::index_tokens(input, record.text);
  Index index = build_index(input.sentences);

  std::set<SourceId> docs;
  for (const auto& record : input.sentences) docs.insert(record.doc);

  std::map<std::pair<std::string, SourceId>, std::string> gold_map;
  for (const auto& g : gold) gold_map[{g.query_id, g.doc}] = g.label;

  for (const auto& query : queries) {
    std::optional<Atom> query_atom;
    try {
      ExtractionResult qr = extract_atom(query.text, input.lexicon, "query");
      if (auto* ex = std::get_if<Extracted>(&qr))
        query_atom = ex->atom;
      else
        result.warnings.push_back(
            "query " + query.id + ": " +
            std::get<NoRecommendation>(qr).reason);
    } catch (const AmbiguousExtractionError& e) {
      result.warnings.push_back("query " + query.id + ": " +
                                std::string(e.what()));
    }
    auto query_tokens = report_detail::index_tokens(input, query.text);
    auto query_counts = term_counts(query_tokens);

    for (const auto& doc : docs) {
      EvalCell cell;
      cell.query_id = query.id;
      cell.doc = doc;
      cell.gold = gold_map.at({query.id, doc});
      cell.system = "NoRecommendation";

      // best-matching sentence of this document
      const SentenceRecord* best = nullptr;
      double best_score = 0.0;
      for (const auto& record : input.sentences) {
        if (record.doc != doc) continue;
        double score = cosine_similarity(index, query_counts,
                                         index.vectors.at({record.doc,
                                                           record.index}));
        if (!best || score > best_score) {
          best = &record;
          best_score = score;
        }
      }
      if (best && best_score >= input.threshold && query_atom) {
        cell.sentence_index = best->index;
        cell.sentence_text = best->text;
        cell.score = best_score;
        try {
          ExtractionResult sr =
              extract_atom(best->text, input.lexicon, best->doc);
          if (auto* ex = std::get_if<Extracted>(&sr)) {
            // provenance of the query atom is a placeholder source
            KnowledgeBase view = kb;
            view.sources.push_back("query");
            Classification c = classify_pair(view, *query_atom, ex->atom);
            cell.system = to_string(c.kind);
          }
        } catch (const AmbiguousExtractionError& e) {
          result.warnings.push_back(std::string("sentence ") + best->doc +
                                    ":" + std::to_string(best->index) + ": " +
                                    e.what());
        }
      }
      cell.correct = cell.system == cell.gold;
      result.cells.push_back(std::move(cell));
    }
  }

  result.total = static_cast<int>(result.cells.size());
  auto is_conflict = [](const std::string& label) {
    return label == "Contradiction" || label == "Disagreement";
  };
  for (const auto& label : eval_labels()) {
    result.per_class[label];
    result.confusion[label];
  }
  for (const auto& cell : result.cells) {
    if (cell.correct) ++result.correct;
    ++result.confusion[cell.gold][cell.system];
    ++result.per_class[cell.gold].support;
    ++result.per_class[cell.system].predicted;
    if (cell.correct) ++result.per_class[cell.gold].true_positive;
    bool gold_conflict = is_conflict(cell.gold);
    bool system_conflict = is_conflict(cell.system);
    if (gold_conflict && system_conflict) ++result.binary.true_positive;
    if (!gold_conflict && system_conflict) ++result.binary.false_positive;
    if (gold_conflict && !system_conflict) ++result.binary.false_negative;
    if (!gold_conflict && !system_conflict) ++result.binary.true_negative;
  }
  for (auto& [label, metrics] : result.per_class) {
    if (metrics.predicted > 0)
      metrics.precision =
          static_cast<double>(metrics.true_positive) / metrics.predicted;
    if (metrics.support > 0)
      metrics.recall =
          static_cast<double>(metrics.true_positive) / metrics.support;
  }
  if (result.total > 0)
    result.accuracy = static_cast<double>(result.correct) / result.total;
  return result;
}

// ---------------------------------------------------------------------------
// JSON rendering
// ---------------------------------------------------------------------------

namespace report_detail {

inline nlohmann::json params_to_json(
    const std::map<std::string, ParamValue>& params) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, value] : params) j[name] = to_string(value);
  return j;
}

inline nlohmann::json atom_to_json(const KnowledgeBase& kb, const Atom& atom) {
  return format_atom(kb, atom);
}

inline nlohmann::json sentence_to_json(const SentenceRef& ref) {
  nlohmann::json j;
  j["doc"] = ref.doc;
  j["index"] = ref.index;
  j["text"] = ref.text;
  auto spans = nlohmann::json::array();
  for (const auto& [start, end] : ref.spans)
    spans.push_back({start, end});
  j["spans"] = spans;
  return j;
}

inline nlohmann::json pair_to_json(const KnowledgeBase& kb,
                                   const PairRecord& pair) {
  nlohmann::json j;
  j["classification"] = to_string(pair.classification.kind);
  if (pair.classification.reason != Classification::Reason::kNone)
    j["reason"] = pair.classification.reason ==
                          Classification::Reason::kPredicateMismatch
                      ? "PredicateMismatch"
                      : "DisjointConditions";
  j["sorts"] = pair.classification.sorts;
  j["atom_a"] = atom_to_json(kb, pair.atom_a);
  j["atom_b"] = atom_to_json(kb, pair.atom_b);
  if (pair.sentence_a) j["sentence_a"] = sentence_to_json(*pair.sentence_a);
  if (pair.sentence_b) j["sentence_b"] = sentence_to_json(*pair.sentence_b);
  if (pair.sentence_a) j["score"] = pair.score;
  return j;
}

}  // namespace report_detail

inline nlohmann::json report_to_json(const KnowledgeBase& kb,
                                     const Report& report) {
  using report_detail::params_to_json;
  nlohmann::json j;

  nlohmann::json config;
  config["mode"] = report.config.mode;
  if (!report.config.kb_file.empty()) config["kb"] = report.config.kb_file;
  if (!report.config.corpus_dir.empty())
    config["corpus"] = report.config.corpus_dir;
  if (!report.config.lexicon_file.empty())
    config["lexicon"] = report.config.lexicon_file;
  if (!report.config.header_file.empty())
    config["header"] = report.config.header_file;
  if (report.config.uses_threshold) {
    config["threshold"] = report.config.threshold;
    config["stopwords"] = report.config.stopwords;
  }
  j["config"] = config;

  auto findings = nlohmann::json::array();
  for (const auto& fr : report.findings) {
    nlohmann::json f;
    f["kind"] = to_string(fr.finding.kind);
    f["predicate"] = fr.finding.predicate;
    f["conflict_sorts"] = fr.finding.conflict_sorts;
    f["disagree_sorts"] = fr.finding.disagree_sorts;
    f["condition_overlap"] = params_to_json(fr.finding.condition_overlap);
    f["derived_params"] = params_to_json(fr.finding.derived_params);
    f["provenances"] = fr.finding.provenances;
    auto sources = nlohmann::json::array();
    for (const auto& atom : fr.finding.source_atoms)
      sources.push_back(report_detail::atom_to_json(kb, atom));
    f["source_atoms"] = sources;
    if (!fr.sentences.empty()) {
      auto sentences = nlohmann::json::array();
      for (const auto& ref : fr.sentences)
        sentences.push_back(report_detail::sentence_to_json(ref));
      f["sentences"] = sentences;
      f["score"] = fr.score;
    }
    findings.push_back(f);
  }
  j["findings"] = findings;

  auto agreements = nlohmann::json::array();
  for (const auto& pair : report.agreements)
    agreements.push_back(report_detail::pair_to_json(kb, pair));
  j["agreements"] = agreements;

  auto not_comparable = nlohmann::json::array();
  for (const auto& pair : report.not_comparable)
    not_comparable.push_back(report_detail::pair_to_json(kb, pair));
  j["not_comparable"] = not_comparable;

  auto failures = nlohmann::json::array();
  for (const auto& failure : report.extraction_failures) {
    nlohmann::json f;
    f["doc"] = failure.doc;
    f["index"] = failure.index;
    f["text"] = failure.text;
    f["reason"] = failure.reason;
    failures.push_back(f);
  }
  j["extraction_failures"] = failures;

  nlohmann::json stats;
  stats["pairs_compared"] = report.stats.pairs_compared;
  stats["agreements"] = report.stats.agreements;
  stats["not_comparable"] = report.stats.not_comparable;
  stats["contradiction_pairs"] = report.stats.contradiction_pairs;
  stats["disagreement_pairs"] = report.stats.disagreement_pairs;
  stats["extraction_failure_pairs"] = report.stats.extraction_failure_pairs;
  stats["findings"] = report.stats.findings;
  stats["contradictions"] = report.stats.contradictions;
  stats["disagreements"] = report.stats.disagreements;
  j["stats"] = stats;

  return j;
}

// Structural self-check run before any JSON report is emitted. Returns the
// list of problems; an emitted report must produce none.
inline std::vector<std::string> validate_report_json(const nlohmann::json& j) {
  std::vector<std::string> issues;
  for (const char* key : {"config", "findings", "agreements", "not_comparable",
                          "extraction_failures", "stats"}) {
    if (!j.contains(key)) issues.push_back(std::string("missing key ") + key);
  }
  if (!issues.empty()) return issues;
  const auto& stats = j["stats"];
  int pairs = stats.value("pairs_compared", -1);
  int sum = stats.value("agreements", 0) + stats.value("not_comparable", 0) +
            stats.value("contradiction_pairs", 0) +
            stats.value("disagreement_pairs", 0) +
            stats.value("extraction_failure_pairs", 0);
  if (pairs != sum)
    issues.push_back("stats do not partition the compared pairs");
  if (static_cast<int>(j["agreements"].size()) != stats.value("agreements", -1))
    issues.push_back("agreement list does not match stats");
  if (static_cast<int>(j["not_comparable"].size()) !=
      stats.value("not_comparable", -1))
    issues.push_back("not_comparable list does not match stats");
  if (static_cast<int>(j["findings"].size()) != stats.value("findings", -1))
    issues.push_back("finding list does not match stats");
  for (const auto& f : j["findings"]) {
    if (!f.contains("kind") || !f.contains("predicate") ||
        !f.contains("provenances") || !f.contains("derived_params")) {
      issues.push_back("finding missing required keys");
      continue;
    }
    if (f["provenances"].size() < 2)
      issues.push_back("finding with fewer than two provenances");
    std::string kind = f["kind"].get<std::string>();
    if (kind != "Contradiction" && kind != "Disagreement") {
      issues.push_back("finding with unknown kind");
      continue;
    }
    bool has_bottom = false;
    for (const auto& [name, value] : f["derived_params"].items())
      if (value.get<std::string>() == "bottom") has_bottom = true;
    if (kind == "Contradiction" && !has_bottom)
      issues.push_back("contradiction finding without a bottom param");
    if (kind == "Disagreement" && has_bottom)
      issues.push_back("disagreement finding with a bottom param");
    for (const auto& [name, value] : f["condition_overlap"].items())
      if (value.get<std::string>() == "bottom")
        issues.push_back("bottom value in condition overlap");
  }
  return issues;
}

inline std::string emit_report_json(const KnowledgeBase& kb,
                                    const Report& report) {
  nlohmann::json j = report_to_json(kb, report);
  auto issues = validate_report_json(j);
  if (!issues.empty())
    throw std::logic_error("report failed self-validation: " + issues.front());
  return j.dump(2) + "\n";
}

inline nlohmann::json eval_to_json(const EvalResult& result) {
  nlohmann::json j;
  j["total"] = result.total;
  j["correct"] = result.correct;
  j["errors"] = result.total - result.correct;
  j["accuracy"] = result.accuracy;
  nlohmann::json confusion = nlohmann::json::object();
  for (const auto& [gold, row] : result.confusion) {
    nlohmann::json r = nlohmann::json::object();
    for (const auto& [system, count] : row) r[system] = count;
    confusion[gold] = r;
  }
  j["confusion"] = confusion;
  nlohmann::json per_class = nlohmann::json::object();
  for (const auto& [label, metrics] : result.per_class) {
    nlohmann::json m;
    m["support"] = metrics.support;
    m["predicted"] = metrics.predicted;
    m["precision"] = metrics.precision;
    m["recall"] = metrics.recall;
    per_class[label] = m;
  }
  j["per_class"] = per_class;
  nlohmann::json binary;
  binary["true_positives"] = result.binary.true_positive;
  binary["false_positives"] = result.binary.false_positive;
  binary["false_negatives"] = result.binary.false_negative;
  binary["true_negatives"] = result.binary.true_negative;
  j["binary_conflict"] = binary;
  auto cells = nlohmann::json::array();
  for (const auto& cell : result.cells) {
    nlohmann::json c;
    c["query_id"] = cell.query_id;
    c["doc"] = cell.doc;
    c["gold"] = cell.gold;
    c["system"] = cell.system;
    c["correct"] = cell.correct;
    c["sentence_index"] = cell.sentence_index;
    c["score"] = cell.score;
    cells.push_back(c);
  }
  j["cells"] = cells;
  j["warnings"] = result.warnings;
  return j;
}

// ---------------------------------------------------------------------------
// Text rendering
// ---------------------------------------------------------------------------

inline void render_report_text(const KnowledgeBase& kb, const Report& report,
                               std::ostream& out) {
  out << "findings: " << report.stats.findings << " ("
      << report.stats.contradictions << " contradictions, "
      << report.stats.disagreements << " disagreements)\n";
  int n = 0;
  for (const auto& fr : report.findings) {
    const Finding& f = fr.finding;
    out << "\n[" << ++n << "] " << to_string(f.kind) << " on ";
    for (std::size_t i = 0; i < f.conflict_sorts.size(); ++i)
      out << (i ? ", " : "") << f.conflict_sorts[i];
    out << " — predicate " << f.predicate << "\n";
    out << "    provenances:";
    for (const auto& src : f.provenances) out << " " << src;
    out << "\n";
    if (!f.condition_overlap.empty()) {
      out << "    condition overlap:";
      for (const auto& [name, value] : f.condition_overlap)
        out << " " << name << ": " << to_string(value);
      out << "\n";
    }
    out << "    derived:";
    for (const auto& [name, value] : f.derived_params)
      out << " " << name << ": " << to_string(value);
    out << "\n";
    if (f.kind == Finding::Kind::kContradiction && !f.disagree_sorts.empty()) {
      out << "    also narrows:";
      for (const auto& s : f.disagree_sorts) out << " " << s;
      out << "\n";
    }
    for (const auto& atom : f.source_atoms)
      out << "    from: " << format_atom(kb, atom) << "\n";
    for (const auto& ref : fr.sentences)
      out << "    sentence " << ref.doc << ":" << ref.index << ": "
          << ref.text << "\n";
  }
  out << "\nagreements: " << report.stats.agreements << "\n";
  for (const auto& pair : report.agreements) {
    out << "  " << format_atom(kb, pair.atom_a) << "  ~  "
        << format_atom(kb, pair.atom_b) << "\n";
  }
  out << "not comparable: " << report.stats.not_comparable << "\n";
  for (const auto& pair : report.not_comparable) {
    out << "  " << format_atom(kb, pair.atom_a) << "  vs  "
        << format_atom(kb, pair.atom_b) << "  (";
    if (pair.classification.reason ==
        Classification::Reason::kPredicateMismatch) {
      out << "different predicates";
    } else {
      out << "disjoint conditions:";
      for (const auto& s : pair.classification.sorts) out << " " << s;
    }
    out << ")\n";
  }
  if (!report.extraction_failures.empty()) {
    out << "extraction failures: " << report.extraction_failures.size()
        << "\n";
    for (const auto& failure : report.extraction_failures)
      out << "  " << failure.doc << ":" << failure.index << ": "
          << failure.reason << "\n";
  }
  out << "pairs compared: " << report.stats.pairs_compared << " (agreement "
      << report.stats.agreements << ", disagreement "
      << report.stats.disagreement_pairs << ", contradiction "
      << report.stats.contradiction_pairs << ", not comparable "
      << report.stats.not_comparable << ", extraction failures "
      << report.stats.extraction_failure_pairs << ")\n";
}

inline void render_eval_text(const EvalResult& result, std::ostream& out) {
  out << "cells: " << result.total << "  correct: " << result.correct
      << "  errors: " << result.total - result.correct
      << "  accuracy: " << result.accuracy << "\n";
  out << "binary conflict reading: FP " << result.binary.false_positive
      << ", FN " << result.binary.false_negative << ", TP "
      << result.binary.true_positive << ", TN "
      << result.binary.true_negative << "\n\n";
  out << "confusion (rows = gold, cols = system):\n";
  out << "                  ";
  for (const auto& label : eval_labels()) out << label.substr(0, 6) << "  ";
  out << "\n";
  for (const auto& gold : eval_labels()) {
    out << "  " << gold;
    for (std::size_t i = gold.size(); i < 16; ++i) out << ' ';
    for (const auto& system : eval_labels()) {
      int count = 0;
      auto it = result.confusion.find(gold);
      if (it != result.confusion.end()) {
        auto jt = it->second.find(system);
        if (jt != it->second.end()) count = jt->second;
      }
      std::string s = std::to_string(count);
      for (std::size_t i = s.size(); i < 6; ++i) out << ' ';
      out << s << "  ";
    }
    out << "\n";
  }
  out << "\nper-class precision/recall:\n";
  for (const auto& [label, metrics] : result.per_class) {
    out << "  " << label;
    for (std::size_t i = label.size(); i < 16; ++i) out << ' ';
    out << " precision " << metrics.precision << "  recall " << metrics.recall
        << "  support " << metrics.support << "\n";
  }
  for (const auto& warning : result.warnings)
    out << "warning: " << warning << "\n";
}

}  // namespace glc

#endif  // GLC_REPORT_HPP_
