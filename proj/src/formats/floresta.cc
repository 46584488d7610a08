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

// Line-per-node trees: the number of leading '=' is the depth, then
// FUNC:CAT(features), then a tab and the word form on terminal lines.
// Header lines before the first node line are skipped. The first node is
// the root; later depth-0 lines are its children.

#include <regex>
#include <sstream>

#include "internal.h"
#include "treegraph/formats.h"

namespace treegraph::formats {

namespace {

struct Node {
  Tree tree;
  bool terminal = false;
  int line = 0;
  std::vector<std::size_t> children;
};

Tree assemble(std::vector<Node>& nodes, std::size_t i) {
  Node& n = nodes[i];
  if (!n.terminal && n.children.empty()) {
    throw ParseError("node " + n.tree.label() + " has no constituents", n.line, 1);
  }
  Tree t = std::move(n.tree);
  for (std::size_t c : n.children) t.children.push_back(assemble(nodes, c));
  return t;
}

Sentence read_block(const std::vector<std::pair<int, std::string>>& lines) {
  static const std::regex kNode(R"(([^\s:=][^\s:]*):([^\s(:]+)(\(([^)]*)\))?(\s+(.*))?)");
  std::vector<Node> nodes;
  std::vector<std::size_t> last;  // last node seen at each depth
  for (const auto& [number, raw] : lines) {
    std::string_view text = raw;
    std::size_t depth = 0;
    while (depth < text.size() && text[depth] == '=') ++depth;
    std::string rest(internal::trim(text.substr(depth)));
    std::smatch m;
    bool is_node = std::regex_match(rest, m, kNode);
    if (nodes.empty() && !is_node) continue;
    if (rest.empty()) continue;

    Node n;
    n.line = number;
    if (is_node) {
      std::string form = m[6].str();
      n.terminal = !form.empty();
      n.tree = n.terminal ? Tree::word(form) : Tree::phrase(m[2].str(), {});
      if (n.terminal) n.tree.fields.set(kLabel, m[2].str());
      n.tree.fields.set("function", m[1].str());
      int k = 0;
      for (const std::string& f : internal::split_ws(m[4].str())) {
        n.tree.fields.set("feat" + std::to_string(++k), f);
      }
    } else {
      n.terminal = true;
      n.tree = Tree::word(rest);
    }
    std::size_t index = nodes.size();
    if (!nodes.empty()) {
      std::size_t parent;
      if (depth == 0) {
        parent = 0;
      } else if (depth - 1 < last.size()) {
        parent = last[depth - 1];
      } else {
        throw ParseError("depth jumps to " + std::to_string(depth), number, 1);
      }
      if (nodes[parent].terminal) {
        throw ParseError("word on line " + std::to_string(nodes[parent].line) +
                             " cannot have constituents",
                         number, 1);
      }
      nodes[parent].children.push_back(index);
    }
    last.resize(depth + 1);
    last[depth] = index;
    nodes.push_back(std::move(n));
  }
  if (nodes.empty()) throw ParseError("sentence without node lines");
  return internal::sentence_from_tree(assemble(nodes, 0));
}

}  // namespace

Corpus read_floresta(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  bool tagged = text.find("<s") != std::string_view::npos;
  bool inside = !tagged;
  std::vector<std::pair<int, std::string>> block;
  Corpus out;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view t = internal::trim(line);
    if (tagged && t.starts_with("<s")) {
      inside = true;
      block.clear();
      continue;
    }
    if (tagged && t == "</s>") {
      if (inside) out.push_back(read_block(block));
      inside = false;
      block.clear();
      continue;
    }
    if (inside) block.emplace_back(number, line);
  }
  if (inside && !tagged) out.push_back(read_block(block));
  if (inside && tagged) throw ParseError("missing </s>", number, 1);
  return out;
}

}  // namespace treegraph::formats
