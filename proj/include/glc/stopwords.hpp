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

#ifndef GLC_STOPWORDS_HPP_
#define GLC_STOPWORDS_HPP_

#include <set>
#include <string>

namespace glc {

// Built-in English function-word list, mirrored in data/stopwords.txt.
// Keep the two in sync; the unit tests compare them.
inline const std::set<std::string>& default_stopwords() {
  static const std::set<std::string> kWords = {
      "a",       "about",   "above",   "after",     "again",      "against",
      "all",     "am",      "an",      "and",       "any",        "are",
      "as",      "at",      "be",      "because",   "been",       "before",
      "being",   "below",   "between", "both",      "but",        "by",
      "can",     "cannot",  "could",   "did",       "do",         "does",
      "doing",   "down",    "during",  "each",      "few",        "for",
      "from",    "further", "had",     "has",       "have",       "having",
      "he",      "her",     "here",    "hers",      "herself",    "him",
      "himself", "his",     "how",     "i",         "if",         "in",
      "into",    "is",      "it",      "its",       "itself",     "just",
      "me",      "more",    "most",    "my",        "myself",     "no",
      "nor",     "not",     "now",     "of",        "off",        "on",
      "once",    "only",    "or",      "other",     "our",        "ours",
      "ourselves", "out",   "over",    "own",       "same",       "she",
      "should",  "so",      "some",    "such",      "than",       "that",
      "the",     "their",   "theirs",  "them",      "themselves", "then",
      "there",   "these",   "they",    "this",      "those",      "through",
      "to",      "too",     "under",   "until",     "up",         "very",
      "was",     "we",      "were",    "what",      "when",       "where",
      "which",   "while",   "who",     "whom",      "why",        "will",
      "with",    "would",   "you",     "your",      "yours",      "yourself",
      "yourselves",
  };
  return kWords;
}

}  // namespace glc

#endif  // GLC_STOPWORDS_HPP_
