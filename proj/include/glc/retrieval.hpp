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

#ifndef GLC_RETRIEVAL_HPP_
#define GLC_RETRIEVAL_HPP_

#include <cctype>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glc/kb.hpp"
#include "glc/stopwords.hpp"

// Sentence-level TF-IDF retrieval over guideline documents. The index is
// the stand-in for an external search engine: small, exact and
// deterministic. tf is the raw in-sentence count; idf(t) = ln(1 + N/df(t))
// with N the total sentence count and df the number of distinct sentences
// containing t. Dot products and norms are accumulated in lexicographic
// token order, so similarity is exactly symmetric.

namespace glc {

class Tokenizer {
 public:
  Tokenizer() : stopwords_(&default_stopwords()) {}
  explicit Tokenizer(std::set<std::string> stopwords)
      : owned_(std::move(stopwords)), stopwords_(&owned_) {}

  // Lowercase, split on non-alphanumerics, drop stopwords, keep numbers,
  // and strip a plural 's' from tokens of length >= 4 not ending in "ss".
  std::vector<std::string> tokenize(std::string_view text) const {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
      if (current.empty()) return;
      if (!stopwords_->count(current)) {
        if (current.size() >= 4 && current.back() == 's' &&
            current[current.size() - 2] != 's')
          current.pop_back();
        tokens.push_back(current);
      }
      current.clear();
    };
    for (char c : text) {
      if (std::isalnum(static_cast<unsigned char>(c)))
        current += static_cast<char>(
            std::tolower(static_cast<unsigned char>(c)));
      else
        flush();
    }
    flush();
    return tokens;
  }

 private:
  std::set<std::string> owned_;
  const std::set<std::string>* stopwords_;
};

inline std::vector<std::string> tokenize(std::string_view text) {
  return Tokenizer().tokenize(text);
}

// One indexed sentence. `tokens` is tokenize(text), possibly extended with
// concept markers (prefix "concept:") injected by the pipeline when a
// lexicon predicate triggers on the sentence.
struct SentenceRecord {
  SourceId doc;
  int index = 0;  // 0-based position within doc
  std::string text;
  std::vector<std::string> tokens;
};

struct Posting {
  SourceId doc;
  int index = 0;
  int tf = 0;
};

class DuplicateSentenceError : public std::runtime_error {
 public:
  explicit DuplicateSentenceError(const std::string& what)
      : std::runtime_error(what) {}
};

struct Index {
  std::map<std::string, std::vector<Posting>> postings;
  std::map<std::string, int> doc_freq;  // distinct sentences containing t
  int total_sentences = 0;

  // cached per-sentence vectors and norms keyed by (doc, index)
  std::map<std::pair<SourceId, int>, std::map<std::string, int>> vectors;
  std::map<std::pair<SourceId, int>, double> norms;

  double idf(const std::string& token) const {
    auto it = doc_freq.find(token);
    if (it == doc_freq.end()) return 0.0;
    return std::log(1.0 + static_cast<double>(total_sentences) /
                              static_cast<double>(it->second));
  }
};

inline std::map<std::string, int> term_counts(
    const std::vector<std::string>& tokens) {
  std::map<std::string, int> counts;
  for (const auto& t : tokens) ++counts[t];
  return counts;
}

inline Index build_index(const std::vector<SentenceRecord>& sentences) {
  Index index;
  index.total_sentences = static_cast<int>(sentences.size());
  for (const auto& record : sentences) {
    auto key = std::make_pair(record.doc, record.index);
    if (index.vectors.count(key))
      throw DuplicateSentenceError("duplicate sentence " + record.doc + ":" +
                                   std::to_string(record.index));
    index.vectors.emplace(key, term_counts(record.tokens));
  }
  for (const auto& [key, counts] : index.vectors) {
    for (const auto& [token, tf] : counts) {
      index.postings[token].push_back({key.first, key.second, tf});
      index.doc_freq[token] += 1;
    }
  }
  // postings inherit (doc, index) order from the vectors map; norms need
  // doc_freq complete first
  for (const auto& [key, counts] : index.vectors) {
    double sum = 0.0;
    for (const auto& [token, tf] : counts) {
      double w = tf * index.idf(token);
      sum += w * w;
    }
    index.norms[key] = std::sqrt(sum);
  }
  return index;
}

// Cosine similarity of two token-count vectors under the index's idf
// weights. Accumulation is in lexicographic token order for both
// arguments, so sim(a, b) == sim(b, a) bit-exactly.
inline double cosine_similarity(const Index& index,
                                const std::map<std::string, int>& a,
                                const std::map<std::string, int>& b) {
  if (a == b) return a.empty() ? 0.0 : 1.0;
  double dot = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      double idf = index.idf(ia->first);
      dot += (ia->second * idf) * (ib->second * idf);
      ++ia;
      ++ib;
    }
  }
  if (dot == 0.0) return 0.0;
  auto norm = [&index](const std::map<std::string, int>& v) {
    double sum = 0.0;
    for (const auto& [token, tf] : v) {
      double w = tf * index.idf(token);
      sum += w * w;
    }
    return std::sqrt(sum);
  };
  double na = norm(a), nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (na * nb);
}

struct ScoredSentence {
  SourceId doc;
  int index = 0;
  double score = 0.0;
};

// Ranks indexed sentences against a query token vector: at most k results,
// scores strictly positive and descending, ties broken by (doc, index).
inline std::vector<ScoredSentence> top_k(
    const Index& index, const std::vector<std::string>& query_tokens, int k) {
  if (k < 1) throw std::invalid_argument("top_k: k must be >= 1");
  auto query = term_counts(query_tokens);
  std::map<std::pair<SourceId, int>, double> dots;
  for (const auto& [token, qtf] : query) {
    double idf = index.idf(token);
    if (idf == 0.0) continue;
    auto it = index.postings.find(token);
    if (it == index.postings.end()) continue;
    for (const auto& posting : it->second)
      dots[{posting.doc, posting.index}] += (qtf * idf) * (posting.tf * idf);
  }
  double qnorm = 0.0;
  for (const auto& [token, qtf] : query) {
    double w = qtf * index.idf(token);
    qnorm += w * w;
  }
  qnorm = std::sqrt(qnorm);

  std::vector<ScoredSentence> scored;
  if (qnorm == 0.0) return scored;
  for (const auto& [key, dot] : dots) {
    double denom = qnorm * index.norms.at(key);
    if (denom == 0.0) continue;
    double score = dot / denom;
    if (score > 0.0) scored.push_back({key.first, key.second, score});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const ScoredSentence& a, const ScoredSentence& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return std::tie(a.doc, a.index) < std::tie(b.doc, b.index);
                   });
  if (static_cast<int>(scored.size()) > k) scored.resize(k);
  return scored;
}

inline std::vector<ScoredSentence> top_k(const Index& index,
                                         const std::string& query, int k) {
  return top_k(index, tokenize(query), k);
}

struct CandidatePair {
  std::size_t a = 0;  // indices into the sentence list, (doc, index) of a
  std::size_t b = 0;  // precedes that of b
  double score = 0.0;
};

// All cross-document sentence pairs with similarity >= threshold, each
// pair once, sorted by descending score then by the pairs' (doc, index).
inline std::vector<CandidatePair> candidate_pairs(
    const Index& index, const std::vector<SentenceRecord>& sentences,
    double threshold) {
  if (threshold < 0.0 || threshold > 1.0)
    throw std::invalid_argument("candidate_pairs: threshold must be in [0,1]");
  std::vector<std::map<std::string, int>> counts;
  counts.reserve(sentences.size());
  for (const auto& s : sentences) counts.push_back(term_counts(s.tokens));

  std::vector<CandidatePair> pairs;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    for (std::size_t j = i + 1; j < sentences.size(); ++j) {
      if (sentences[i].doc == sentences[j].doc) continue;
      double score = cosine_similarity(index, counts[i], counts[j]);
      if (score < threshold) continue;
      std::size_t a = i, b = j;
      if (std::tie(sentences[j].doc, sentences[j].index) <
          std::tie(sentences[i].doc, sentences[i].index))
        std::swap(a, b);
      pairs.push_back({a, b, score});
    }
  }
  std::stable_sort(
      pairs.begin(), pairs.end(),
      [&sentences](const CandidatePair& x, const CandidatePair& y) {
        if (x.score != y.score) return x.score > y.score;
        return std::tie(sentences[x.a].doc, sentences[x.a].index,
                        sentences[x.b].doc, sentences[x.b].index) <
               std::tie(sentences[y.a].doc, sentences[y.a].index,
                        sentences[y.b].doc, sentences[y.b].index);
      });
  return pairs;
}

}  // namespace glc

#endif  // GLC_RETRIEVAL_HPP_
