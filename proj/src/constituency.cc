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

#include "treegraph/constituency.h"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace treegraph {

Tree Tree::word(std::string_view form) {
  Tree t;
  t.type = ArcType::kWord;
  t.fields.set(kForm, form);
  return t;
}

Tree Tree::trace(std::string_view form, std::optional<std::string> coindex) {
  Tree t;
  t.type = ArcType::kTrace;
  t.fields.set(kForm, form);
  if (coindex) t.fields.set(kCoindex, *coindex);
  return t;
}

Tree Tree::phrase(std::string_view label, std::vector<Tree> children) {
  Tree t;
  t.type = ArcType::kPhrasal;
  if (!label.empty()) t.fields.set(kLabel, label);
  t.children = std::move(children);
  return t;
}

std::string Tree::label() const {
  return fields.value_or(is_terminal() ? kForm : kLabel, "");
}

std::string to_bracket_string(const Tree& tree) {
  if (tree.is_terminal()) {
    std::string s = tree.label();
    if (auto c = tree.fields.get(kCoindex)) s += "-" + std::string(*c);
    return s;
  }
  std::string label = tree.label();
  std::string s = "(" + (label.empty() ? std::string(constituency::kUnlabeled) : label);
  if (auto c = tree.fields.get(kCoindex)) s += "-" + std::string(*c);
  for (const Tree& child : tree.children) s += " " + to_bracket_string(child);
  return s + ")";
}

std::vector<std::string> leaves(const Tree& tree) {
  std::vector<std::string> out;
  std::function<void(const Tree&)> walk = [&](const Tree& t) {
    if (t.is_terminal()) {
      out.push_back(t.label());
      return;
    }
    for (const Tree& c : t.children) walk(c);
  };
  walk(tree);
  return out;
}

namespace constituency {

namespace {

Error precondition(const std::string& message) {
  return Error(ErrorCode::kPrecondition, message);
}

bool is_phrase(const Arc& a) {
  return a.type == ArcType::kPhrasal || a.type == ArcType::kRoot;
}

// Re-derives spans of phrasal arcs from their children, walking upwards.
void refresh_hulls(AnnotationGraph& g, std::optional<ArcId> from) {
  while (from) {
    const Arc& a = g.arc(*from);
    std::optional<ArcId> up = a.parent;
    if (is_phrase(a)) {
      std::vector<ArcId> kids = g.children(*from);
      if (!kids.empty()) {
        AnchorId lo = g.arc(kids.front()).start;
        AnchorId hi = g.arc(kids.front()).end;
        for (ArcId k : kids) {
          const Arc& c = g.arc(k);
          if (g.rank(c.start) < g.rank(lo)) lo = c.start;
          if (g.rank(c.end) > g.rank(hi)) hi = c.end;
        }
        g.set_span(*from, lo, hi);
      }
    }
    from = up;
  }
}

void require_not_referenced(const AnnotationGraph& g, ArcId id) {
  for (const auto& [other, a] : g.arcs()) {
    if (std::find(a.refs.begin(), a.refs.end(), id) != a.refs.end()) {
      throw Error(ErrorCode::kReferenced,
                  to_string(id) + " is referenced by " + to_string(other));
    }
  }
}

std::size_t index_of(const std::vector<ArcId>& v, ArcId id) {
  return static_cast<std::size_t>(std::find(v.begin(), v.end(), id) - v.begin());
}

ArcId chart_node(AnnotationGraph& g, const Tree& node,
                 const std::vector<std::pair<AnchorId, AnchorId>>& spans,
                 std::size_t& next_terminal) {
  if (node.is_terminal()) {
    auto [start, end] = spans[next_terminal++];
    return g.add_arc(start, end, node.type, node.fields);
  }
  if (node.children.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "constituent '" + node.label() + "' has no children");
  }
  std::vector<ArcId> kids;
  for (const Tree& c : node.children) kids.push_back(chart_node(g, c, spans, next_terminal));
  AnchorId lo = g.arc(kids.front()).start;
  AnchorId hi = g.arc(kids.back()).end;
  for (ArcId k : kids) {
    if (g.rank(g.arc(k).start) < g.rank(lo)) lo = g.arc(k).start;
    if (g.rank(g.arc(k).end) > g.rank(hi)) hi = g.arc(k).end;
  }
  ArcId id = g.add_arc(lo, hi, node.type == ArcType::kRoot ? ArcType::kRoot : ArcType::kPhrasal,
                       node.fields, SpanPolicy::kAllowZeroWidth);
  for (ArcId k : kids) g.set_parent(k, id);
  return id;
}

}  // namespace

Chart build_chart(const Tree& tree) {
  std::vector<const Tree*> terms;
  std::function<void(const Tree&)> collect = [&](const Tree& t) {
    if (t.is_terminal()) {
      terms.push_back(&t);
      return;
    }
    for (const Tree& c : t.children) collect(c);
  };
  collect(tree);
  if (terms.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot build a chart for an empty tree");
  }

  // Word k spans [b_k, b_k+1]; traces following word k get private anchors
  // between b_k and b_k+1, so sorting terminals by start anchor reproduces
  // the tree's leaf order.
  Chart chart;
  AnnotationGraph& g = chart.graph;
  std::vector<std::pair<AnchorId, AnchorId>> spans(terms.size());
  std::optional<std::size_t> open_word;
  double pos = 0;
  double word_end = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Tree& t = *terms[i];
    if (t.type == ArcType::kTrace) {
      AnchorId x = g.add_anchor(open_word ? word_end : pos);
      spans[i] = {x, x};
      continue;
    }
    double start_offset = open_word ? word_end + 1 : pos;
    AnchorId b = g.add_anchor(start_offset);
    if (open_word) spans[*open_word].second = b;
    spans[i].first = b;
    open_word = i;
    word_end = start_offset + static_cast<double>(t.label().size());
  }
  if (open_word) spans[*open_word].second = g.add_anchor(word_end);

  std::size_t next = 0;
  chart.root = chart_node(g, tree, spans, next);
  return chart;
}

Tree read_tree(const AnnotationGraph& g, ArcId root) {
  const Arc& r = g.arc(root);
  std::size_t lo = g.rank(r.start), hi = g.rank(r.end);
  for (const auto& [id, a] : g.arcs()) {
    if (!is_syntactic(a.type) || id == root) continue;
    if (g.rank(a.start) < lo || g.rank(a.end) > hi) continue;
    if (g.is_ancestor(root, id) || g.is_ancestor(id, root)) continue;
    if (!a.parent) {
      throw Error(ErrorCode::kPrecondition,
                  to_string(id) + " lies under " + to_string(root) +
                      " but is not linked into its tree");
    }
  }
  std::function<Tree(ArcId)> build = [&](ArcId id) {
    const Arc& a = g.arc(id);
    Tree t;
    t.type = a.type;
    t.fields = a.fields;
    for (ArcId c : children_in_order(g, id)) t.children.push_back(build(c));
    return t;
  };
  return build(root);
}

std::vector<ArcId> terminals(const AnnotationGraph& g) {
  std::vector<ArcId> out;
  for (const auto& [id, a] : g.arcs()) {
    if (a.type == ArcType::kWord || a.type == ArcType::kTrace) out.push_back(id);
  }
  sort_by_position(g, out);
  return out;
}

std::vector<std::string> surface(const AnnotationGraph& g) {
  std::vector<std::string> out;
  for (ArcId id : terminals(g)) {
    const Arc& a = g.arc(id);
    if (a.type == ArcType::kWord) out.push_back(a.fields.value_or(kForm, ""));
  }
  return out;
}

std::vector<ArcId> siblings(const AnnotationGraph& g, ArcId x) {
  std::optional<ArcId> p = g.parent(x);
  return p ? children_in_order(g, *p) : top_level(g);
}

std::vector<ArcId> discontinuities(const AnnotationGraph& g) {
  std::vector<ArcId> terms = terminals(g);
  std::unordered_map<ArcId, std::size_t> index;
  for (std::size_t i = 0; i < terms.size(); ++i) index[terms[i]] = i;
  std::unordered_map<ArcId, std::vector<ArcId>> kids;
  for (const auto& [id, a] : g.arcs()) {
    if (a.parent && is_syntactic(a.type)) kids[*a.parent].push_back(id);
  }
  std::vector<ArcId> out;
  for (const auto& [id, a] : g.arcs()) {
    if (!is_phrase(a)) continue;
    std::vector<std::size_t> yield;
    std::vector<ArcId> stack{id};
    while (!stack.empty()) {
      ArcId cur = stack.back();
      stack.pop_back();
      if (auto it = index.find(cur); it != index.end()) yield.push_back(it->second);
      for (ArcId k : kids[cur]) stack.push_back(k);
    }
    if (yield.empty()) continue;
    auto [mn, mx] = std::minmax_element(yield.begin(), yield.end());
    if (*mx - *mn + 1 != yield.size()) out.push_back(id);
  }
  return out;
}

std::vector<ArcId> unlabeled_nodes(const AnnotationGraph& g) {
  std::vector<ArcId> out;
  for (const auto& [id, a] : g.arcs()) {
    if (a.type != ArcType::kPhrasal || !a.parent) continue;
    if (a.fields.value_or(kLabel, "").empty()) out.push_back(id);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Operations

OrientedTree::OrientedTree(AnnotationGraph& graph, ArcId selected)
    : graph_(&graph), selected_(selected) {
  select(selected);
}

void OrientedTree::select(ArcId id) {
  if (!is_syntactic(graph_->arc(id).type)) {
    throw Error(ErrorCode::kInvalidArgument,
                to_string(id) + " is not part of the syntactic layer");
  }
  selected_ = id;
}

void move_down(OrientedTree& t) {
  AnnotationGraph& g = t.graph();
  const Arc n = g.arc(t.selected());
  if (n.type == ArcType::kRoot) {
    throw precondition("move_down does not apply to a dependency root");
  }
  ArcId fresh = g.add_arc(n.start, n.end, ArcType::kPhrasal, {},
                          SpanPolicy::kAllowZeroWidth);
  g.set_parent(fresh, n.parent);
  g.set_parent(n.id, fresh);
}

void move_up(OrientedTree& t) {
  AnnotationGraph& g = t.graph();
  ArcId n = t.selected();
  std::optional<ArcId> p = g.parent(n);
  if (!p) throw precondition("move_up: selected node has no parent");
  if (g.arc(*p).type != ArcType::kPhrasal) {
    throw precondition("move_up: parent " + to_string(*p) + " is not a phrasal node");
  }
  if (g.children(*p).size() != 1) {
    throw precondition("move_up: selected node has siblings");
  }
  require_not_referenced(g, *p);
  g.set_parent(n, g.parent(*p));
  g.remove_arc(*p);
}

namespace {

void promote(OrientedTree& t, bool rightward) {
  AnnotationGraph& g = t.graph();
  ArcId n = t.selected();
  const char* name = rightward ? "promote_right" : "promote_left";
  std::optional<ArcId> p = g.parent(n);
  if (!p) throw precondition(std::string(name) + ": selected node has no parent");
  if (g.arc(*p).type != ArcType::kPhrasal) {
    throw precondition(std::string(name) + ": parent is not a phrasal node");
  }
  std::optional<ArcId> gp = g.parent(*p);
  if (!gp) throw precondition(std::string(name) + ": parent is the outermost node");
  std::vector<ArcId> sibs = children_in_order(g, *p);
  if (sibs.size() < 2) {
    throw precondition(std::string(name) + ": selected node is an only child (use move_up)");
  }
  if ((rightward ? sibs.back() : sibs.front()) != n) {
    throw precondition(std::string(name) + ": selected node has siblings to its " +
                       (rightward ? "right" : "left"));
  }
  g.set_parent(n, gp);
  refresh_hulls(g, p);
}

void demote(OrientedTree& t, bool rightward) {
  AnnotationGraph& g = t.graph();
  ArcId n = t.selected();
  const char* name = rightward ? "demote_right" : "demote_left";
  std::vector<ArcId> sibs = siblings(g, n);
  std::size_t i = index_of(sibs, n);
  if (rightward ? i + 1 >= sibs.size() : i == 0) {
    throw precondition(std::string(name) + ": no sibling to the " +
                       (rightward ? "right" : "left"));
  }
  ArcId y = rightward ? sibs[i + 1] : sibs[i - 1];
  if (g.arc(y).type != ArcType::kPhrasal) {
    throw precondition(std::string(name) + ": sibling " + to_string(y) +
                       " must be a phrasal node");
  }
  g.set_parent(n, y);
  refresh_hulls(g, y);
}

}  // namespace

void promote_right(OrientedTree& t) { promote(t, true); }
void promote_left(OrientedTree& t) { promote(t, false); }
void demote_right(OrientedTree& t) { demote(t, true); }
void demote_left(OrientedTree& t) { demote(t, false); }

ArcId group(OrientedTree& t, std::span<const ArcId> nodes) {
  AnnotationGraph& g = t.graph();
  if (nodes.empty()) throw precondition("group: no nodes given");
  std::optional<ArcId> parent = g.parent(nodes.front());
  for (ArcId n : nodes) {
    if (g.parent(n) != parent) throw precondition("group: nodes are not siblings");
  }
  std::vector<ArcId> sibs = siblings(g, nodes.front());
  std::vector<std::size_t> positions;
  for (ArcId n : nodes) positions.push_back(index_of(sibs, n));
  std::sort(positions.begin(), positions.end());
  for (std::size_t i = 1; i < positions.size(); ++i) {
    if (positions[i] != positions[i - 1] + 1) {
      throw precondition("group: nodes are not contiguous");
    }
  }
  ArcId first = sibs[positions.front()];
  OrientedTree head(g, first);
  move_down(head);
  ArcId fresh = *g.parent(first);
  for (std::size_t i = 1; i < positions.size(); ++i) {
    OrientedTree next(g, sibs[positions[i]]);
    demote_left(next);
  }
  return fresh;
}

void ungroup(OrientedTree& t) {
  AnnotationGraph& g = t.graph();
  ArcId x = t.selected();
  const Arc& a = g.arc(x);
  if (a.type != ArcType::kPhrasal) {
    throw precondition("ungroup: selected node is not a phrasal node");
  }
  if (!a.parent) throw precondition("ungroup: selected node is the root");
  std::optional<ArcId> p = a.parent;
  require_not_referenced(g, x);
  std::vector<ArcId> kids = children_in_order(g, x);
  for (ArcId k : kids) g.set_parent(k, p);
  g.remove_arc(x);
  if (!kids.empty()) t.select(kids.front());
  else t.select(*p);
}

ArcId insert_trace(OrientedTree& t, ArcId terminal, Side side, const TraceSpec& spec) {
  AnnotationGraph& g = t.graph();
  std::vector<ArcId> terms = terminals(g);
  std::size_t idx = index_of(terms, terminal);
  if (idx == terms.size()) {
    throw Error(ErrorCode::kInvalidArgument, to_string(terminal) + " is not a terminal");
  }
  std::size_t boundary = side == Side::kBefore ? idx : idx + 1;

  std::optional<ArcId> parent = spec.parent;
  if (parent) {
    if (!is_phrase(g.arc(*parent))) {
      throw precondition("insert_trace: designated parent is not a phrasal node");
    }
  } else if (boundary == 0 || boundary == terms.size()) {
    ArcId edge = terms[boundary == 0 ? 0 : terms.size() - 1];
    for (auto p = g.parent(edge); p; p = g.parent(*p)) parent = p;
  } else {
    std::unordered_set<ArcId> left;
    for (auto p = g.parent(terms[boundary - 1]); p; p = g.parent(*p)) left.insert(*p);
    for (auto p = g.parent(terms[boundary]); p; p = g.parent(*p)) {
      if (left.contains(*p)) {
        parent = p;
        break;
      }
    }
  }

  AnchorId x = boundary == 0 ? g.add_anchor_before(g.arc(terms[0]).start)
                             : g.add_anchor_after(g.arc(terms[boundary - 1]).start);
  Fields fields{{std::string(kForm), spec.form}};
  if (spec.coindex) fields.set(kCoindex, *spec.coindex);
  ArcId trace = g.add_arc(x, x, ArcType::kTrace, std::move(fields));
  g.set_parent(trace, parent);
  refresh_hulls(g, parent);
  return trace;
}

void delete_trace(OrientedTree& t) {
  AnnotationGraph& g = t.graph();
  ArcId x = t.selected();
  const Arc a = g.arc(x);
  if (a.type != ArcType::kTrace) throw precondition("delete_trace: selected node is not a trace");
  if (!g.children(x).empty()) throw precondition("delete_trace: trace dominates structure");
  if (a.parent && g.children(*a.parent).size() == 1) {
    throw precondition("delete_trace: trace is the only child of " + to_string(*a.parent));
  }
  require_not_referenced(g, x);
  std::vector<ArcId> terms = terminals(g);
  if (!a.parent && terms.size() == 1) {
    throw precondition("delete_trace: trace is the only terminal");
  }
  g.remove_arc(x);
  if (!g.anchor_in_use(a.start)) g.remove_anchor(a.start);
  refresh_hulls(g, a.parent);
  if (a.parent) {
    t.select(*a.parent);
  } else {
    t.select(terminals(g).front());
  }
}

void relabel(OrientedTree& t, const Fields& fields) {
  Fields& target = t.graph().mutable_fields(t.selected());
  for (const auto& [k, v] : fields) {
    if (v.empty()) target.erase(k);
    else target.set(k, v);
  }
}

void coindex(OrientedTree& t, ArcId other, std::string_view tag) {
  AnnotationGraph& g = t.graph();
  g.arc(other);
  g.mutable_fields(t.selected()).set(kCoindex, tag);
  g.mutable_fields(other).set(kCoindex, tag);
}

}  // namespace constituency
}  // namespace treegraph
