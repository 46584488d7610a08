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

#include "treegraph/formats.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

#include "internal.h"
#include "treegraph/constituency.h"
#include "treegraph/dependency.h"

namespace treegraph::formats {

namespace internal {

std::vector<Token> tokenize_brackets(std::string_view text, bool quotes) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&] {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    int l = line, k = col;
    if (c == '(' || c == ')') {
      out.push_back({c == '(' ? Token::kOpen : Token::kClose, std::string(1, c), l, k});
      advance();
      continue;
    }
    if (quotes && c == '"') {
      advance();
      std::string s;
      while (i < text.size() && text[i] != '"') {
        s += text[i];
        advance();
      }
      if (i >= text.size()) throw ParseError("unterminated string", l, k);
      advance();
      out.push_back({Token::kQuoted, std::move(s), l, k});
      continue;
    }
    std::string s;
    while (i < text.size()) {
      char d = text[i];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')') break;
      if (quotes && d == '"') break;
      s += d;
      advance();
    }
    out.push_back({Token::kAtom, std::move(s), l, k});
  }
  return out;
}

Sentence sentence_from_tree(const Tree& tree) {
  constituency::Chart c = constituency::build_chart(tree);
  return {std::move(c.graph), c.root};
}

std::pair<std::string, std::string> split_coindex(std::string_view label) {
  std::size_t dash = label.rfind('-');
  if (dash == std::string_view::npos || dash == 0 || dash + 1 == label.size()) {
    return {std::string(label), ""};
  }
  std::string_view tail = label.substr(dash + 1);
  if (!std::all_of(tail.begin(), tail.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return {std::string(label), ""};
  }
  return {std::string(label.substr(0, dash)), std::string(tail)};
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace internal

namespace {

constexpr std::pair<FormatId, std::string_view> kNames[] = {
    {FormatId::kPenn, "penn"},           {FormatId::kBracketRecord, "bracket-record"},
    {FormatId::kFloresta, "floresta"},   {FormatId::kTurin, "turin"},
    {FormatId::kTigerXml, "tiger-xml"},  {FormatId::kNestedXml, "nested-xml"},
    {FormatId::kNative, "native"},
};

bool has_dependency_root(const AnnotationGraph& g) {
  return dependency::find_root(g).has_value();
}

Error in_sentence(std::size_t i, const Error& e) {
  return Error(e.code(), "sentence " + std::to_string(i + 1) + ": " + e.what());
}

}  // namespace

std::string_view to_string(FormatId id) {
  for (const auto& [k, name] : kNames) {
    if (k == id) return name;
  }
  return "?";
}

std::optional<FormatId> parse_format(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool has_writer(FormatId id) {
  return id == FormatId::kPenn || id == FormatId::kTigerXml || id == FormatId::kNative;
}

std::optional<ArcId> find_sentence_root(const AnnotationGraph& g) {
  if (auto r = dependency::find_root(g)) return r;
  std::vector<ArcId> tops = top_level(g);
  if (tops.empty()) return std::nullopt;
  return tops.front();
}

Sentence to_phrase_structure(const Sentence& s) {
  const AnnotationGraph& g = s.graph;
  std::optional<ArcId> root = dependency::find_root(g);
  if (!root) return s;

  std::map<ArcId, Arc> arcs(g.arcs().begin(), g.arcs().end());
  std::uint32_t next = arcs.empty() ? 0 : arcs.rbegin()->first.value + 1;
  std::map<ArcId, std::vector<ArcId>> kids;
  for (const auto& [id, a] : g.arcs()) {
    if (a.parent && is_syntactic(a.type)) kids[*a.parent].push_back(id);
  }

  std::map<ArcId, ArcId> projection;
  for (const auto& [id, a] : g.arcs()) {
    if (a.type != ArcType::kWord || kids[id].empty()) continue;
    Arc p;
    p.id = ArcId{next++};
    p.type = ArcType::kPhrasal;
    p.start = a.start;
    p.end = a.end;
    p.fields.set(kLabel, a.fields.value_or("pos", "X"));
    if (auto rel = a.fields.get(kRel)) p.fields.set(kRel, *rel);
    arcs[id].fields.set(kRel, "HD");
    projection[id] = p.id;
    arcs[p.id] = std::move(p);
  }
  Arc& r = arcs[*root];
  r.type = ArcType::kPhrasal;
  if (!r.fields.contains(kLabel)) r.fields.set(kLabel, "ROOT");

  auto lift = [&](ArcId p) {
    auto it = projection.find(p);
    return it == projection.end() ? p : it->second;
  };
  for (const auto& [id, a] : g.arcs()) {
    if (!a.parent || !is_syntactic(a.type)) continue;
    ArcId up = lift(*a.parent);
    if (auto it = projection.find(id); it != projection.end()) {
      arcs[it->second].parent = up;
      arcs[id].parent = it->second;
    } else {
      arcs[id].parent = up;
    }
  }

  std::map<ArcId, std::vector<ArcId>> new_kids;
  for (const auto& [id, a] : arcs) {
    if (a.parent) new_kids[*a.parent].push_back(id);
  }
  std::function<std::pair<std::size_t, std::size_t>(ArcId)> hull = [&](ArcId id) {
    Arc& a = arcs[id];
    std::pair<std::size_t, std::size_t> span{g.rank(a.start), g.rank(a.end)};
    if (a.type == ArcType::kPhrasal && !new_kids[id].empty()) {
      span = {SIZE_MAX, 0};
      for (ArcId k : new_kids[id]) {
        auto [lo, hi] = hull(k);
        span.first = std::min(span.first, lo);
        span.second = std::max(span.second, hi);
      }
      a.start = g.anchors()[span.first].id;
      a.end = g.anchors()[span.second].id;
    }
    return span;
  };
  for (const auto& [id, a] : arcs) {
    if (!a.parent && a.type == ArcType::kPhrasal) hull(id);
  }

  Sentence out;
  std::vector<Arc> list;
  for (auto& [id, a] : arcs) list.push_back(std::move(a));
  out.graph.restore(g.anchors(), std::move(list));
  out.root = *root;
  return out;
}

Corpus read(FormatId id, std::string_view text) {
  switch (id) {
    case FormatId::kPenn: return read_penn(text);
    case FormatId::kBracketRecord: return read_bracket_record(text);
    case FormatId::kFloresta: return read_floresta(text);
    case FormatId::kTurin: return read_turin(text);
    case FormatId::kTigerXml: return read_tiger_xml(text);
    case FormatId::kNestedXml: return read_nested_xml(text);
    case FormatId::kNative: return read_native(text);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown format");
}

namespace {

// Export-time rule: every node below the outermost one carries a label.
void require_labels(const Sentence& s, std::size_t i) {
  std::vector<ArcId> bare = constituency::unlabeled_nodes(s.graph);
  if (bare.empty()) return;
  std::string ids;
  for (ArcId id : bare) ids += (ids.empty() ? "" : ", ") + std::to_string(id.value);
  throw Error(ErrorCode::kUnlabeledNode,
              "sentence " + std::to_string(i + 1) + ": unlabeled nodes (arcs " + ids + ")");
}

}  // namespace

std::string write(FormatId id, const Corpus& corpus, bool allow_unlabeled) {
  std::string out;
  switch (id) {
    case FormatId::kPenn:
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        try {
          const Sentence& s = corpus[i];
          Sentence ps = has_dependency_root(s.graph) ? to_phrase_structure(s) : s;
          out += write_penn(ps);
          out += '\n';
          if (!allow_unlabeled) require_labels(ps, i);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::kUnlabeledNode) throw;
          throw in_sentence(i, e);
        }
      }
      return out;
    case FormatId::kTigerXml: {
      Corpus converted;
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Sentence& s = corpus[i];
        converted.push_back(has_dependency_root(s.graph) ? to_phrase_structure(s) : s);
        if (!allow_unlabeled) require_labels(converted.back(), i);
      }
      return write_tiger_xml(converted);
    }
    case FormatId::kNative:
      for (const Sentence& s : corpus) out += write_native(s.graph) + "\n";
      return out;
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  "no writer for format " + std::string(to_string(id)));
  }
}

}  // namespace treegraph::formats
