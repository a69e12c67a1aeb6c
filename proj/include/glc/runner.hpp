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

#ifndef GLC_RUNNER_HPP_
#define GLC_RUNNER_HPP_

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "glc/report.hpp"

// File-level entry points behind the CLI subcommands. Exit codes encode
// the logical outcome so the tool composes in scripts:
//   0  clean (no contradictions)
//   1  input error (I/O, parse, malformed lexicon/gold)
//   2  contradictions found
//   3  a source is internally contradictory

namespace glc {

inline std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Corpus layout: a directory of .txt files, one guideline document per
// file, one sentence per line, filename stem = source id.
inline std::optional<std::vector<SentenceRecord>> load_corpus(
    const std::string& dir, std::ostream& err) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    err << "error: corpus directory not found: " << dir << "\n";
    return std::nullopt;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<SentenceRecord> sentences;
  for (const auto& path : files) {
    auto text = read_file(path.string());
    if (!text) {
      err << "error: cannot read " << path.string() << "\n";
      return std::nullopt;
    }
    SourceId doc = path.stem().string();
    std::istringstream lines(*text);
    std::string line;
    int index = 0;
    while (std::getline(lines, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
        line.pop_back();
      if (line.empty()) continue;
      sentences.push_back({doc, index++, line, {}});
    }
  }
  return sentences;
}

// Stopword resolution: explicit path, then GLC_STOPWORDS, then builtin.
inline std::optional<Tokenizer> make_tokenizer(std::string stopwords_path,
                                               std::string& echo,
                                               std::ostream& err) {
  if (stopwords_path.empty()) {
    if (const char* env = std::getenv("GLC_STOPWORDS")) stopwords_path = env;
  }
  if (stopwords_path.empty()) {
    echo = "builtin";
    return Tokenizer();
  }
  auto text = read_file(stopwords_path);
  if (!text) {
    err << "error: cannot read stopword file: " << stopwords_path << "\n";
    return std::nullopt;
  }
  std::set<std::string> words;
  std::istringstream lines(*text);
  std::string line;
  while (std::getline(lines, line)) {
    while (!line.empty() &&
           (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    words.insert(to_lower(line));
  }
  echo = stopwords_path;
  return Tokenizer(std::move(words));
}

inline std::optional<KnowledgeBase> load_kb_file(const std::string& path,
                                                 std::ostream& err) {
  auto text = read_file(path);
  if (!text) {
    err << "error: cannot read " << path << "\n";
    return std::nullopt;
  }
  ParseResult result = parse_kb(*text);
  if (!result.ok()) {
    for (const auto& e : result.errors)
      err << path << ":" << e.to_string() << "\n";
    return std::nullopt;
  }
  return std::move(result.kb);
}

inline std::optional<Lexicon> load_lexicon_file(const std::string& path,
                                                const KnowledgeBase& kb,
                                                std::ostream& err) {
  auto text = read_file(path);
  if (!text) {
    err << "error: cannot read " << path << "\n";
    return std::nullopt;
  }
  LexiconResult result = load_lexicon(*text, kb);
  if (!result.ok()) {
    for (const auto& e : result.errors)
      err << path << ": " << e.message << "\n";
    return std::nullopt;
  }
  return std::move(result.lexicon);
}

// ---------------------------------------------------------------------------
// glc check
// ---------------------------------------------------------------------------

inline int run_check(const std::string& kb_path, bool json, std::ostream& out,
                     std::ostream& err) {
  auto kb = load_kb_file(kb_path, err);
  if (!kb) return 1;
  try {
    Report report = check_report(*kb);
    report.config.kb_file = kb_path;
    if (json)
      out << emit_report_json(*kb, report);
    else
      render_report_text(*kb, report, out);
    return report.has_contradictions() ? 2 : 0;
  } catch (const InconsistentSourceError& e) {
    err << "error: " << e.what() << "\n";
    for (const auto& atom : e.violations)
      err << "  derived: " << format_atom(*kb, atom) << "\n";
    return 3;
  }
}

// ---------------------------------------------------------------------------
// glc pipeline
// ---------------------------------------------------------------------------

inline int run_pipeline(const std::string& corpus_dir,
                        const std::string& lexicon_path,
                        const std::string& header_path, double threshold,
                        bool json, const std::string& stopwords_path,
                        std::ostream& out, std::ostream& err) {
  auto header = load_kb_file(header_path, err);
  if (!header) return 1;
  auto lexicon = load_lexicon_file(lexicon_path, *header, err);
  if (!lexicon) return 1;
  auto sentences = load_corpus(corpus_dir, err);
  if (!sentences) return 1;
  for (const auto& record : *sentences) {
    if (!header->has_source(record.doc)) {
      err << "error: corpus file '" << record.doc
          << ".txt' has no matching source declaration in " << header_path
          << "\n";
      return 1;
    }
  }
  if (threshold < 0.0 || threshold > 1.0) {
    err << "error: threshold must be in [0, 1]\n";
    return 1;
  }

  PipelineInput input;
  input.header = *header;
  input.lexicon = *lexicon;
  input.sentences = std::move(*sentences);
  input.threshold = threshold;
  std::string stopwords_echo;
  auto tokenizer = make_tokenizer(stopwords_path, stopwords_echo, err);
  if (!tokenizer) return 1;
  input.tokenizer = *tokenizer;

  PipelineOutput output = pipeline_report(std::move(input));
  output.report.config.corpus_dir = corpus_dir;
  output.report.config.lexicon_file = lexicon_path;
  output.report.config.header_file = header_path;
  output.report.config.stopwords = stopwords_echo;
  for (const auto& [source, atom] : output.internal_violations)
    err << "warning: source '" << source
        << "' is internally contradictory: " << format_atom(*header, atom)
        << "\n";
  if (json)
    out << emit_report_json(*header, output.report);
  else
    render_report_text(*header, output.report, out);
  return output.report.has_contradictions() ? 2 : 0;
}

// ---------------------------------------------------------------------------
// glc eval
// ---------------------------------------------------------------------------

// Queries file: one "<id>\t<sentence>" per line; '#' starts a comment.
inline std::optional<std::vector<Query>> load_queries(const std::string& path,
                                                      std::ostream& err) {
  auto text = read_file(path);
  if (!text) {
    err << "error: cannot read " << path << "\n";
    return std::nullopt;
  }
  std::vector<Query> queries;
  std::istringstream lines(*text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    while (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
      err << "error: " << path << ":" << lineno
          << ": expected '<id>\\t<sentence>'\n";
      return std::nullopt;
    }
    queries.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  for (std::size_t i = 0; i < queries.size(); ++i)
    for (std::size_t j = i + 1; j < queries.size(); ++j)
      if (queries[i].id == queries[j].id) {
        err << "error: duplicate query id '" << queries[i].id << "'\n";
        return std::nullopt;
      }
  if (queries.empty()) {
    err << "error: no queries in " << path << "\n";
    return std::nullopt;
  }
  return queries;
}

inline std::optional<std::vector<GoldLabel>> load_gold(const std::string& path,
                                                       std::ostream& err) {
  auto text = read_file(path);
  if (!text) {
    err << "error: cannot read " << path << "\n";
    return std::nullopt;
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(*text);
  } catch (const nlohmann::json::parse_error& e) {
    err << "error: " << path << " is not valid JSON: " << e.what() << "\n";
    return std::nullopt;
  }
  if (!doc.is_array()) {
    err << "error: gold file must be a JSON array\n";
    return std::nullopt;
  }
  std::vector<GoldLabel> gold;
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("query_id") ||
        !entry.contains("doc") || !entry.contains("label")) {
      err << "error: gold entries need 'query_id', 'doc' and 'label'\n";
      return std::nullopt;
    }
    GoldLabel g{entry["query_id"].get<std::string>(),
                entry["doc"].get<std::string>(),
                entry["label"].get<std::string>()};
    if (std::find(eval_labels().begin(), eval_labels().end(), g.label) ==
        eval_labels().end()) {
      err << "error: unknown gold label '" << g.label << "'\n";
      return std::nullopt;
    }
    gold.push_back(std::move(g));
  }
  return gold;
}

inline int run_eval(const std::string& corpus_dir,
                    const std::string& queries_path,
                    const std::string& gold_path,
                    const std::string& lexicon_path,
                    const std::string& header_path, double threshold,
                    bool json, const std::string& stopwords_path,
                    std::ostream& out, std::ostream& err) {
  auto header = load_kb_file(header_path, err);
  if (!header) return 1;
  auto lexicon = load_lexicon_file(lexicon_path, *header, err);
  if (!lexicon) return 1;
  auto sentences = load_corpus(corpus_dir, err);
  if (!sentences) return 1;
  auto queries = load_queries(queries_path, err);
  if (!queries) return 1;
  auto gold = load_gold(gold_path, err);
  if (!gold) return 1;

  std::set<SourceId> docs;
  for (const auto& record : *sentences) docs.insert(record.doc);
  std::set<std::string> query_ids;
  for (const auto& q : *queries) query_ids.insert(q.id);
  std::set<std::pair<std::string, SourceId>> cells;
  for (const auto& g : *gold) {
    if (!query_ids.count(g.query_id)) {
      err << "error: gold references unknown query id '" << g.query_id
          << "'\n";
      return 1;
    }
    if (!docs.count(g.doc)) {
      err << "error: gold references unknown document '" << g.doc << "'\n";
      return 1;
    }
    if (!cells.insert({g.query_id, g.doc}).second) {
      err << "error: duplicate gold cell (" << g.query_id << ", " << g.doc
          << ")\n";
      return 1;
    }
  }
  if (cells.size() != query_ids.size() * docs.size()) {
    err << "error: gold file must cover every (query, document) cell: have "
        << cells.size() << ", need " << query_ids.size() * docs.size()
        << "\n";
    return 1;
  }

  PipelineInput input;
  input.header = *header;
  input.lexicon = *lexicon;
  input.sentences = std::move(*sentences);
  input.threshold = threshold;
  std::string stopwords_echo;
  auto tokenizer = make_tokenizer(stopwords_path, stopwords_echo, err);
  if (!tokenizer) return 1;
  input.tokenizer = *tokenizer;

  EvalResult result = eval_report(std::move(input), *queries, *gold);
  if (json)
    out << eval_to_json(result).dump(2) << "\n";
  else
    render_eval_text(result, out);
  return 0;
}

// ---------------------------------------------------------------------------
// glc extract
// ---------------------------------------------------------------------------

inline int run_extract(const std::string& header_path,
                       const std::string& lexicon_path, std::string source,
                       const std::string& sentence, std::ostream& out,
                       std::ostream& err) {
  auto header = load_kb_file(header_path, err);
  if (!header) return 1;
  auto lexicon = load_lexicon_file(lexicon_path, *header, err);
  if (!lexicon) return 1;
  KnowledgeBase kb = *header;
  if (source.empty()) {
    source = "input";
    if (!kb.has_source(source)) kb.sources.push_back(source);
  } else if (!kb.has_source(source)) {
    err << "error: source '" << source << "' is not declared in "
        << header_path << "\n";
    return 1;
  }
  try {
    ExtractionResult result = extract_atom(sentence, *lexicon, source);
    if (const auto* ex = std::get_if<Extracted>(&result)) {
      out << format_atom(kb, ex->atom) << "\n";
      out << "spans:";
      for (const auto& [start, end] : ex->matched_spans)
        out << " [" << start << "," << end << ")";
      out << "\n";
      return 0;
    }
    out << "no recommendation: " << std::get<NoRecommendation>(result).reason
        << "\n";
    return 0;
  } catch (const AmbiguousExtractionError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace glc

#endif  // GLC_RUNNER_HPP_
