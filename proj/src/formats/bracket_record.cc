// Copyright 2026 The Treegraph Authors.
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

// Bracketed trees whose labels are records: "(CAT feature... children)".
// A constituent holding a quoted "<form>" is a preterminal; the quoted
// token after it is the lemma. ID-n / REF-n mark coreference.

#include <regex>

#include "internal.h"
#include "treegraph/formats.h"

namespace treegraph::formats {

namespace {

using internal::Token;

class RecordParser {
 public:
  explicit RecordParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Corpus parse() {
    Corpus out;
    while (pos_ < tokens_.size()) {
      const Token& t = tokens_[pos_];
      if (t.kind != Token::kOpen) throw ParseError("expected '('", t.line, t.column);
      out.push_back(internal::sentence_from_tree(node()));
    }
    return out;
  }

 private:
  Tree node() {
    static const std::regex kCoref(R"((ID|REF)-(\d+))");
    const Token& open = tokens_[pos_++];
    if (pos_ >= tokens_.size() || tokens_[pos_].kind != Token::kAtom) {
      throw ParseError("constituent must start with a category", open.line, open.column);
    }
    Tree t = Tree::phrase(tokens_[pos_++].text, {});
    std::optional<std::string> form, lemma;
    Fields word_fields;
    int features = 0;
    for (;;) {
      if (pos_ >= tokens_.size()) throw ParseError("missing ')'", open.line, open.column);
      const Token& tok = tokens_[pos_];
      if (tok.kind == Token::kClose) {
        ++pos_;
        break;
      }
      if (tok.kind == Token::kOpen) {
        if (form) throw ParseError("a word record cannot have children", tok.line, tok.column);
        t.children.push_back(node());
        continue;
      }
      ++pos_;
      std::smatch m;
      if (tok.kind == Token::kQuoted) {
        if (tok.text.size() >= 2 && tok.text.front() == '<' && tok.text.back() == '>') {
          if (form || !t.children.empty()) {
            throw ParseError("unexpected word form", tok.line, tok.column);
          }
          form = tok.text.substr(1, tok.text.size() - 2);
        } else if (form && !lemma) {
          lemma = tok.text;
        } else {
          throw ParseError("quoted token outside a word record", tok.line, tok.column);
        }
      } else if (tok.text.starts_with("*")) {
        t.children.push_back(Tree::trace(tok.text));
      } else if (std::regex_match(tok.text, m, kCoref)) {
        t.fields.set(kCoindex, m[2].str());
        t.fields.set("coref", m[1].str());
      } else {
        (form ? word_fields : t.fields).set("feat" + std::to_string(++features), tok.text);
      }
    }
    if (form) {
      Tree w = Tree::word(*form);
      if (lemma) w.fields.set("lemma", *lemma);
      for (const auto& [k, v] : word_fields) w.fields.set(k, v);
      t.children.push_back(std::move(w));
    }
    if (t.children.empty()) {
      throw ParseError("constituent " + t.label() + " has no children", open.line,
                       open.column);
    }
    return t;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Corpus read_bracket_record(std::string_view text) {
  return RecordParser(internal::tokenize_brackets(text, true)).parse();
}

}  // namespace treegraph::formats
