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

#ifndef GLC_DSL_HPP_
#define GLC_DSL_HPP_

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glc/kb.hpp"

// The .gkb knowledge-base format. Line comments start with '#';
// whitespace is insignificant.
//
//   kb        := { stmt }
//   stmt      := sortdecl | sourcedecl | atomdecl
//   sortdecl  := "sort" IDENT ":" kind "role" ("condition" | "action") ";"
//   kind      := "interval" "(" IDENT ")" | "enum" "{" idlist "}"
//              | "set" "{" idlist "}"
//   sourcedecl:= "source" IDENT ";"
//   atomdecl  := "recommend" IDENT "{" [ param { "," param } ] "}"
//                "@" idlist ";"
//   param     := IDENT ":" value
//   value     := "[" bound "," bound "]" | IDENT | "{" idlist "}" | "bottom"
//   bound     := NUMBER | "inf" | "-inf"
//   idlist    := IDENT { "," IDENT }
//
// NUMBER is a decimal literal, parsed as an exact rational. The provenance
// suffix accepts a comma-separated id list so that derived atoms (which
// carry multiple provenances) round-trip through format_atom. The reserved
// value word "bottom" denotes the minimal lattice element for the same
// reason. Base atoms in hand-authored files use a single source id.

namespace glc {

struct ParseError {
  int line = 1;    // 1-based
  int column = 1;  // 1-based
  std::string message;
  std::string excerpt;  // offending token text

  std::string to_string() const {
    std::string out = std::to_string(line) + ":" + std::to_string(column) +
                      ": " + message;
    if (!excerpt.empty()) out += " near '" + excerpt + "'";
    return out;
  }
};

struct ParseResult {
  std::optional<KnowledgeBase> kb;  // set iff errors is empty
  std::vector<ParseError> errors;

  bool ok() const { return errors.empty(); }
};

namespace dsl_detail {

struct Token {
  enum class Type { kIdent, kNumber, kPunct, kEnd };
  Type type = Type::kEnd;
  std::string text;
  int line = 1;
  int column = 1;
};

inline bool is_reserved(const std::string& word) {
  static const char* kReserved[] = {"sort",   "source",    "recommend",
                                    "role",   "condition", "action",
                                    "interval", "enum",    "set",
                                    "inf",    "bottom"};
  for (const char* r : kReserved)
    if (word == r) return true;
  return false;
}

class Lexer {
 public:
  Lexer(std::string_view text, std::vector<ParseError>& errors)
      : text_(text), errors_(errors) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      int line = line_, col = col_;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_')) {
          word += text_[pos_];
          advance();
        }
        tokens.push_back({Token::Type::kIdent, word, line, col});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num;
        bool seen_point = false;
        while (pos_ < text_.size()) {
          char d = text_[pos_];
          if (std::isdigit(static_cast<unsigned char>(d))) {
            num += d;
          } else if (d == '.' && !seen_point && pos_ + 1 < text_.size() &&
                     std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            seen_point = true;
            num += d;
          } else {
            break;
          }
          advance();
        }
        tokens.push_back({Token::Type::kNumber, num, line, col});
        continue;
      }
      if (std::string_view(":;,{}[]()@-").find(c) != std::string_view::npos) {
        tokens.push_back({Token::Type::kPunct, std::string(1, c), line, col});
        advance();
        continue;
      }
      errors_.push_back({line, col, "unexpected character", {c}});
      advance();
    }
    tokens.push_back({Token::Type::kEnd, "", line_, col_});
    return tokens;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::vector<ParseError>& errors_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<ParseError>& errors)
      : tokens_(std::move(tokens)), errors_(errors) {}

  KnowledgeBase run() {
    while (!at_end()) {
      bool ok = false;
      const Token& t = peek();
      if (t.type == Token::Type::kIdent && t.text == "sort")
        ok = parse_sortdecl();
      else if (t.type == Token::Type::kIdent && t.text == "source")
        ok = parse_sourcedecl();
      else if (t.type == Token::Type::kIdent && t.text == "recommend")
        ok = parse_atomdecl();
      else
        error(t, "expected 'sort', 'source' or 'recommend'");
      if (!ok) resync();
    }
    return std::move(kb_);
  }

 private:
  bool at_end() const { return tokens_[pos_].type == Token::Type::kEnd; }
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[at_end() ? pos_ : pos_++]; }

  bool error(const Token& at, const std::string& message) {
    errors_.push_back({at.line, at.column, message, at.text});
    return false;
  }

  // Error recovery: skip to just past the next ';' so that independent
  // malformed statements each produce their own diagnostic.
  void resync() {
    while (!at_end()) {
      const Token& t = next();
      if (t.type == Token::Type::kPunct && t.text == ";") return;
    }
  }

  bool expect_punct(const char* p) {
    const Token& t = peek();
    if (t.type == Token::Type::kPunct && t.text == p) {
      next();
      return true;
    }
    return error(t, std::string("expected '") + p + "'");
  }

  bool expect_keyword(const char* word) {
    const Token& t = peek();
    if (t.type == Token::Type::kIdent && t.text == word) {
      next();
      return true;
    }
    return error(t, std::string("expected '") + word + "'");
  }

  std::optional<std::string> expect_ident(const char* what) {
    const Token& t = peek();
    if (t.type != Token::Type::kIdent) {
      error(t, std::string("expected ") + what);
      return std::nullopt;
    }
    if (is_reserved(t.text)) {
      error(t, "reserved word used as " + std::string(what));
      return std::nullopt;
    }
    next();
    return t.text;
  }

  std::optional<std::vector<std::string>> parse_idlist(const char* what) {
    std::vector<std::string> ids;
    auto first = expect_ident(what);
    if (!first) return std::nullopt;
    ids.push_back(*first);
    while (peek().type == Token::Type::kPunct && peek().text == ",") {
      next();
      auto id = expect_ident(what);
      if (!id) return std::nullopt;
      ids.push_back(*id);
    }
    return ids;
  }

  bool parse_sortdecl() {
    next();  // 'sort'
    const Token& name_tok = peek();
    auto name = expect_ident("sort name");
    if (!name) return false;
    if (kb_.find_sort(*name))
      return error(name_tok, "duplicate sort '" + *name + "'");
    if (!expect_punct(":")) return false;

    Sort sort;
    sort.name = *name;
    const Token& kind_tok = peek();
    if (kind_tok.type != Token::Type::kIdent)
      return error(kind_tok, "expected sort kind");
    if (kind_tok.text == "interval") {
      next();
      if (!expect_punct("(")) return false;
      auto unit = expect_ident("unit name");
      if (!unit) return false;
      if (!expect_punct(")")) return false;
      sort.kind = IntervalKind{*unit};
    } else if (kind_tok.text == "enum" || kind_tok.text == "set") {
      next();
      if (!expect_punct("{")) return false;
      const Token& alpha_tok = peek();
      auto alphabet = parse_idlist("alphabet symbol");
      if (!alphabet) return false;
      for (std::size_t i = 0; i < alphabet->size(); ++i)
        for (std::size_t j = i + 1; j < alphabet->size(); ++j)
          if ((*alphabet)[i] == (*alphabet)[j])
            return error(alpha_tok,
                         "duplicate alphabet symbol '" + (*alphabet)[i] + "'");
      if (!expect_punct("}")) return false;
      if (kind_tok.text == "enum")
        sort.kind = EnumKind{*alphabet};
      else
        sort.kind = SetKind{*alphabet};
    } else {
      return error(kind_tok, "expected 'interval', 'enum' or 'set'");
    }

    if (!expect_keyword("role")) return false;
    const Token& role_tok = peek();
    if (role_tok.type == Token::Type::kIdent && role_tok.text == "condition")
      sort.role = SortRole::kCondition;
    else if (role_tok.type == Token::Type::kIdent && role_tok.text == "action")
      sort.role = SortRole::kAction;
    else
      return error(role_tok, "expected 'condition' or 'action'");
    next();
    if (!expect_punct(";")) return false;
    kb_.sorts.push_back(std::move(sort));
    return true;
  }

  bool parse_sourcedecl() {
    next();  // 'source'
    const Token& name_tok = peek();
    auto name = expect_ident("source name");
    if (!name) return false;
    if (kb_.has_source(*name))
      return error(name_tok, "duplicate source '" + *name + "'");
    if (!expect_punct(";")) return false;
    kb_.sources.push_back(*name);
    return true;
  }

  std::optional<Bound> parse_bound() {
    bool negative = false;
    if (peek().type == Token::Type::kPunct && peek().text == "-") {
      negative = true;
      next();
    }
    const Token& t = peek();
    if (t.type == Token::Type::kIdent && t.text == "inf") {
      next();
      return negative ? Bound::neg_inf() : Bound::pos_inf();
    }
    if (t.type == Token::Type::kNumber) {
      auto r = Rational::from_decimal(t.text);
      if (!r) {
        error(t, "number out of range");
        return std::nullopt;
      }
      next();
      return Bound::finite(negative ? Rational(-r->num(), r->den()) : *r);
    }
    error(t, "expected number, 'inf' or '-inf'");
    return std::nullopt;
  }

  std::optional<ParamValue> parse_value(const Sort& sort) {
    const Token& t = peek();
    if (t.type == Token::Type::kPunct && t.text == "[") {
      next();
      const Token& lo_tok = peek();
      auto lo = parse_bound();
      if (!lo) return std::nullopt;
      if (!expect_punct(",")) return std::nullopt;
      auto hi = parse_bound();
      if (!hi) return std::nullopt;
      if (!expect_punct("]")) return std::nullopt;
      try {
        return make_interval(*lo, *hi);
      } catch (const std::invalid_argument& e) {
        error(lo_tok, e.what());
        return std::nullopt;
      }
    }
    if (t.type == Token::Type::kPunct && t.text == "{") {
      next();
      auto ids = parse_idlist("set member");
      if (!ids) return std::nullopt;
      if (!expect_punct("}")) return std::nullopt;
      SetVal sv;
      sv.members.insert(ids->begin(), ids->end());
      return ParamValue{sv};
    }
    if (t.type == Token::Type::kIdent && t.text == "bottom") {
      next();
      return ParamValue{Bottom{}};
    }
    if (t.type == Token::Type::kIdent && !is_reserved(t.text)) {
      next();
      return ParamValue{EnumVal{t.text}};
    }
    error(t, "expected a value for sort '" + sort.name + "'");
    return std::nullopt;
  }

  bool parse_atomdecl() {
    next();  // 'recommend'
    auto predicate = expect_ident("predicate name");
    if (!predicate) return false;
    if (!expect_punct("{")) return false;

    Atom atom;
    atom.predicate = *predicate;
    if (!(peek().type == Token::Type::kPunct && peek().text == "}")) {
      while (true) {
        const Token& sort_tok = peek();
        auto sort_name = expect_ident("sort name");
        if (!sort_name) return false;
        const Sort* sort = kb_.find_sort(*sort_name);
        if (!sort)
          return error(sort_tok, "undeclared sort '" + *sort_name + "'");
        if (atom.params.count(*sort_name))
          return error(sort_tok,
                       "duplicate param for sort '" + *sort_name + "'");
        if (!expect_punct(":")) return false;
        const Token& value_tok = peek();
        auto value = parse_value(*sort);
        if (!value) return false;
        if (auto err = validate_value(*sort, *value))
          return error(value_tok, *err);
        atom.params.emplace(*sort_name, std::move(*value));
        if (peek().type == Token::Type::kPunct && peek().text == ",") {
          next();
          continue;
        }
        break;
      }
    }
    if (!expect_punct("}")) return false;
    if (!expect_punct("@")) return false;
    const Token& prov_tok = peek();
    auto sources = parse_idlist("source name");
    if (!sources) return false;
    for (const auto& src : *sources) {
      if (!kb_.has_source(src))
        return error(prov_tok, "undeclared source '" + src + "'");
      atom.provenance.insert(src);
    }
    if (!expect_punct(";")) return false;
    kb_.atoms.push_back(std::move(atom));
    return true;
  }

  std::vector<Token> tokens_;
  std::vector<ParseError>& errors_;
  KnowledgeBase kb_;
  std::size_t pos_ = 0;
};

}  // namespace dsl_detail

// Parses a .gkb document. All detected errors are reported in one pass;
// the parser resynchronizes at statement boundaries.
inline ParseResult parse_kb(std::string_view text) {
  ParseResult result;
  dsl_detail::Lexer lexer(text, result.errors);
  dsl_detail::Parser parser(lexer.run(), result.errors);
  KnowledgeBase kb = parser.run();
  if (result.errors.empty()) result.kb = std::move(kb);
  return result;
}

// Canonical DSL text for an atom: params in sort-name order, exact decimal
// endpoints, provenance ids after '@'. parse_kb of the output (against the
// same declarations) yields an equal atom.
inline std::string format_atom(const KnowledgeBase& kb, const Atom& atom) {
  validate_atom(kb, atom);
  std::string out = "recommend " + atom.predicate + " {";
  bool first = true;
  for (const auto& [name, value] : atom.params) {
    out += first ? " " : ", ";
    out += name + ": " + to_string(value);
    first = false;
  }
  out += first ? "} @ " : " } @ ";
  first = true;
  for (const auto& src : atom.provenance) {
    if (!first) out += ",";
    out += src;
    first = false;
  }
  return out + ";";
}

inline std::string format_sort(const Sort& sort) {
  std::string out = "sort " + sort.name + ": ";
  if (const auto* ik = std::get_if<IntervalKind>(&sort.kind)) {
    out += "interval(" + ik->unit + ")";
  } else {
    const std::vector<std::string>* alphabet;
    if (const auto* ek = std::get_if<EnumKind>(&sort.kind)) {
      out += "enum {";
      alphabet = &ek->alphabet;
    } else {
      out += "set {";
      alphabet = &std::get<SetKind>(sort.kind).alphabet;
    }
    for (std::size_t i = 0; i < alphabet->size(); ++i)
      out += (i ? ", " : "") + (*alphabet)[i];
    out += "}";
  }
  out += sort.is_condition() ? " role condition;" : " role action;";
  return out;
}

inline std::string format_kb(const KnowledgeBase& kb) {
  std::string out;
  for (const auto& sort : kb.sorts) out += format_sort(sort) + "\n";
  for (const auto& src : kb.sources) out += "source " + src + ";\n";
  for (const auto& atom : kb.atoms) out += format_atom(kb, atom) + "\n";
  return out;
}

}  // namespace glc

#endif  // GLC_DSL_HPP_
