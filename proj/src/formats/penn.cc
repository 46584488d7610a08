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

#include <functional>

#include "internal.h"
#include "treegraph/constituency.h"
#include "treegraph/formats.h"

namespace treegraph::formats {

namespace {

using internal::Token;

class PennParser {
 public:
  explicit PennParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Corpus parse() {
    Corpus out;
    while (pos_ < tokens_.size()) {
      const Token& t = tokens_[pos_];
      if (t.kind != Token::kOpen) {
        throw ParseError(t.kind == Token::kClose ? "unbalanced ')'"
                                                 : "text outside brackets: " + t.text,
                         t.line, t.column);
      }
      out.push_back(internal::sentence_from_tree(node()));
    }
    return out;
  }

 private:
  Tree node() {
    const Token& open = tokens_[pos_++];
    if (pos_ >= tokens_.size()) throw ParseError("missing ')'", open.line, open.column);
    Tree t;
    t.type = ArcType::kPhrasal;
    const Token& first = tokens_[pos_];
    if (first.kind == Token::kClose) {
      throw ParseError("empty constituent", open.line, open.column);
    }
    if (first.kind == Token::kAtom) {
      ++pos_;
      if (first.text != constituency::kUnlabeled) {
        auto [label, coindex] = internal::split_coindex(first.text);
        t.fields.set(kLabel, label);
        if (!coindex.empty()) t.fields.set(kCoindex, coindex);
      }
    }
    for (;;) {
      if (pos_ >= tokens_.size()) throw ParseError("missing ')'", open.line, open.column);
      const Token& tok = tokens_[pos_];
      if (tok.kind == Token::kClose) {
        ++pos_;
        break;
      }
      if (tok.kind == Token::kOpen) {
        t.children.push_back(node());
        continue;
      }
      ++pos_;
      if (tok.text.starts_with("*")) {
        auto [form, coindex] = internal::split_coindex(tok.text);
        t.children.push_back(Tree::trace(
            form, coindex.empty() ? std::nullopt : std::optional<std::string>(coindex)));
      } else {
        t.children.push_back(Tree::word(tok.text));
      }
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

std::string render(const Tree& t, bool outermost) {
  auto with_coindex = [&](std::string s) {
    if (auto c = t.fields.get(kCoindex)) s += "-" + std::string(*c);
    return s;
  };
  if (t.type == ArcType::kTrace) return with_coindex(t.label());
  if (t.type == ArcType::kWord) return t.label();
  std::string head;
  if (t.fields.contains(kLabel)) {
    head = with_coindex(t.label());
  } else if (!outermost || t.children.empty() || t.children.front().is_terminal()) {
    head = with_coindex(std::string(constituency::kUnlabeled));
  }
  std::string s = "(" + head;
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i > 0 || !head.empty()) s += ' ';
    s += render(t.children[i], false);
  }
  return s + ")";
}

}  // namespace

Corpus read_penn(std::string_view text) {
  return PennParser(internal::tokenize_brackets(text, false)).parse();
}

std::string write_penn(const Sentence& s) {
  const AnnotationGraph& g = s.graph;
  for (const auto& [id, a] : g.arcs()) {
    if (is_propbank(a.type)) {
      throw Error(ErrorCode::kConversionLoss,
                  "penn cannot carry predicate-argument arcs (" + to_string(id) + ")");
    }
    if (a.type == ArcType::kRoot) {
      throw Error(ErrorCode::kConversionLoss,
                  "dependency graph must be converted to phrase structure first");
    }
  }
  if (auto broken = constituency::discontinuities(g); !broken.empty()) {
    std::string ids;
    for (ArcId id : broken) ids += (ids.empty() ? "" : ", ") + std::to_string(id.value);
    throw Error(ErrorCode::kConversionLoss,
                "discontinuous constituents cannot be bracketed (arcs " + ids + ")");
  }
  std::vector<ArcId> tops = top_level(g);
  if (tops.size() != 1) {
    throw Error(ErrorCode::kConversionLoss,
                "sentence has " + std::to_string(tops.size()) + " top-level nodes");
  }
  Tree tree = constituency::read_tree(g, s.root);
  if (tree.is_terminal()) tree = Tree::phrase("", {tree});
  return render(tree, true);
}

std::string canonical_penn(std::string_view text) {
  std::string out;
  int depth = 0;
  bool after_open = false;
  for (const Token& t : internal::tokenize_brackets(text, false)) {
    switch (t.kind) {
      case Token::kOpen:
        if (depth > 0 && !after_open) out += ' ';
        out += '(';
        ++depth;
        after_open = true;
        break;
      case Token::kClose:
        if (depth == 0) throw ParseError("unbalanced ')'", t.line, t.column);
        out += ')';
        if (--depth == 0) out += '\n';
        after_open = false;
        break;
      default:
        if (depth > 0 && !after_open) out += ' ';
        out += t.text;
        if (depth == 0) out += '\n';
        after_open = false;
        break;
    }
  }
  if (depth != 0) throw ParseError("missing ')' at end of input");
  return out;
}

}  // namespace treegraph::formats
