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

// glc — guideline logic checker.
//
//   glc check <kb.gkb> [--json]
//   glc pipeline --corpus <dir> --lexicon <file> --header <kb.gkb>
//                [--threshold <0..1>] [--json] [--stopwords <file>]
//   glc eval --corpus <dir> --queries <file> --gold <file>
//            --lexicon <file> --header <kb.gkb>
//            [--threshold <0..1>] [--json] [--stopwords <file>]
//   glc extract --lexicon <file> --header <kb.gkb> [--source <id>] [text|-]

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "glc/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"glc — finds contradictions and disagreements between "
               "guideline recommendations"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand(
      "check", "classify the recommendations of a .gkb knowledge base");
  std::string check_kb;
  bool check_json = false;
  check->add_option("kb", check_kb, "knowledge base file (.gkb)")->required();
  check->add_flag("--json", check_json, "emit the report as JSON");

  auto* pipeline = app.add_subcommand(
      "pipeline", "retrieve, extract and classify across a sentence corpus");
  std::string pipe_corpus, pipe_lexicon, pipe_header, pipe_stopwords;
  double pipe_threshold = 0.25;
  bool pipe_json = false;
  pipeline->add_option("--corpus", pipe_corpus, "directory of .txt documents")
      ->required();
  pipeline->add_option("--lexicon", pipe_lexicon, "lexicon JSON file")
      ->required();
  pipeline->add_option("--header", pipe_header, "sorts/sources header (.gkb)")
      ->required();
  pipeline->add_option("--threshold", pipe_threshold,
                       "candidate-pair similarity threshold (default 0.25)");
  pipeline->add_option("--stopwords", pipe_stopwords,
                       "stopword file (default: builtin or $GLC_STOPWORDS)");
  pipeline->add_flag("--json", pipe_json, "emit the report as JSON");

  auto* eval = app.add_subcommand(
      "eval", "score retrieval+extraction against gold labels");
  std::string eval_corpus, eval_queries, eval_gold, eval_lexicon, eval_header,
      eval_stopwords;
  double eval_threshold = 0.25;
  bool eval_json = false;
  eval->add_option("--corpus", eval_corpus, "directory of .txt documents")
      ->required();
  eval->add_option("--queries", eval_queries,
                   "query file (<id>\\t<sentence> per line)")
      ->required();
  eval->add_option("--gold", eval_gold, "gold label JSON file")->required();
  eval->add_option("--lexicon", eval_lexicon, "lexicon JSON file")->required();
  eval->add_option("--header", eval_header, "sorts/sources header (.gkb)")
      ->required();
  eval->add_option("--threshold", eval_threshold,
                   "retrieval fallback threshold (default 0.25)");
  eval->add_option("--stopwords", eval_stopwords, "stopword file");
  eval->add_flag("--json", eval_json, "emit metrics as JSON");

  auto* extract = app.add_subcommand(
      "extract", "extract a recommendation atom from one sentence");
  std::string ex_lexicon, ex_header, ex_source, ex_text;
  extract->add_option("--lexicon", ex_lexicon, "lexicon JSON file")
      ->required();
  extract->add_option("--header", ex_header, "sorts/sources header (.gkb)")
      ->required();
  extract->add_option("--source", ex_source,
                      "provenance source id (default: input)");
  extract->add_option("text", ex_text, "sentence ('-' or empty: read stdin)");

  CLI11_PARSE(app, argc, argv);

  if (check->parsed())
    return glc::run_check(check_kb, check_json, std::cout, std::cerr);

  if (pipeline->parsed())
    return glc::run_pipeline(pipe_corpus, pipe_lexicon, pipe_header,
                             pipe_threshold, pipe_json, pipe_stopwords,
                             std::cout, std::cerr);

  if (eval->parsed())
    return glc::run_eval(eval_corpus, eval_queries, eval_gold, eval_lexicon,
                         eval_header, eval_threshold, eval_json,
                         eval_stopwords, std::cout, std::cerr);

  if (extract->parsed()) {
    int status = 0;
    if (ex_text.empty() || ex_text == "-") {
      std::string line;
      while (std::getline(std::cin, line)) {
        if (line.empty()) continue;
        status |= glc::run_extract(ex_header, ex_lexicon, ex_source, line,
                                   std::cout, std::cerr);
      }
      return status;
    }
    return glc::run_extract(ex_header, ex_lexicon, ex_source, ex_text,
                            std::cout, std::cerr);
  }
  return 0;
}
