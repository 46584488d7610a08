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

#include "treegraph/dependency.h"

#include <algorithm>

namespace treegraph::dependency {

namespace {

Error precondition(const std::string& message) {
  return Error(ErrorCode::kPrecondition, message);
}

}  // namespace

DependencyView::DependencyView(AnnotationGraph& graph, ArcId root)
    : graph_(&graph), root_(root) {
  if (graph.arc(root).type != ArcType::kRoot) {
    throw Error(ErrorCode::kInvalidArgument, to_string(root) + " is not a root arc");
  }
}

DependencyChart init_flat(std::span<const std::string> words) {
  if (words.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "init_flat needs at least one word");
  }
  DependencyChart chart;
  AnnotationGraph& g = chart.graph;
  std::vector<AnchorId> bounds;
  double pos = 0;
  for (const std::string& w : words) {
    bounds.push_back(g.add_anchor(pos));
    pos += static_cast<double>(w.size()) + 1;
  }
  bounds.push_back(g.add_anchor(pos - 1));
  chart.root = g.add_arc(bounds.front(), bounds.back(), ArcType::kRoot);
  for (std::size_t i = 0; i < words.size(); ++i) {
    ArcId w = g.add_arc(bounds[i], bounds[i + 1], ArcType::kWord,
                        Fields{{std::string(kForm), words[i]}});
    g.set_parent(w, chart.root);
  }
  return chart;
}

std::optional<ArcId> find_root(const AnnotationGraph& g) {
  for (const auto& [id, a] : g.arcs()) {
    if (a.type == ArcType::kRoot) return id;
  }
  return std::nullopt;
}

void move_subtree(DependencyView v, ArcId source, ArcId target) {
  AnnotationGraph& g = v.graph();
  if (source == v.root()) throw precondition("move_subtree: the root cannot be moved");
  ArcType st = g.arc(source).type;
  if (st != ArcType::kWord && st != ArcType::kPhrasal) {
    throw precondition("move_subtree: source must be a word or constituent");
  }
  ArcType tt = g.arc(target).type;
  if (tt != ArcType::kWord && tt != ArcType::kPhrasal && tt != ArcType::kRoot) {
    throw precondition("move_subtree: target must be a word, constituent or the root");
  }
  if (source == target || g.is_ancestor(source, target)) {
    throw Error(ErrorCode::kCycle, "move_subtree: " + to_string(target) +
                                       " lies inside the subtree of " + to_string(source));
  }
  g.set_parent(source, target);
  if (tt == ArcType::kPhrasal) grow_constituent_span(v, target);
}

ArcId insert_constituent(DependencyView v, ArcId node) {
  AnnotationGraph& g = v.graph();
  if (node == v.root()) throw precondition("insert_constituent: node is the root");
  const Arc n = g.arc(node);
  if (n.type != ArcType::kWord && n.type != ArcType::kPhrasal) {
    throw precondition("insert_constituent: node must be a word or constituent");
  }
  ArcId c = g.add_arc(n.start, n.end, ArcType::kPhrasal);
  g.set_parent(c, n.parent);
  g.set_parent(node, c);
  return c;
}

void delete_constituent(DependencyView v, ArcId node) {
  AnnotationGraph& g = v.graph();
  const Arc n = g.arc(node);
  if (node == v.root() || n.type == ArcType::kRoot) {
    throw precondition("delete_constituent: the root cannot be deleted");
  }
  if (n.type != ArcType::kPhrasal) {
    throw precondition("delete_constituent: " + to_string(node) + " is not a constituent");
  }
  for (const auto& [other, a] : g.arcs()) {
    if (std::find(a.refs.begin(), a.refs.end(), node) != a.refs.end()) {
      throw Error(ErrorCode::kReferenced, to_string(node) + " is referenced by " + to_string(other));
    }
  }
  for (ArcId k : g.children(node)) g.set_parent(k, n.parent);
  g.remove_arc(node);
  if (n.parent && g.arc(*n.parent).type == ArcType::kPhrasal) {
    grow_constituent_span(v, *n.parent);
  }
}

void grow_constituent_span(DependencyView v, ArcId c) {
  AnnotationGraph& g = v.graph();
  const Arc& a = g.arc(c);
  if (a.type != ArcType::kPhrasal) {
    throw Error(ErrorCode::kInvalidArgument, to_string(c) + " is not a constituent");
  }
  AnchorId lo = a.start, hi = a.end;
  for (ArcId k : g.children(c)) {
    const Arc& ka = g.arc(k);
    if (g.rank(ka.start) < g.rank(lo)) lo = ka.start;
    if (g.rank(ka.end) > g.rank(hi)) hi = ka.end;
  }
  g.set_span(c, lo, hi);
}

void normalize(DependencyView v) {
  AnnotationGraph& g = v.graph();
  std::vector<std::pair<std::size_t, ArcId>> order;
  for (const auto& [id, a] : g.arcs()) {
    if (a.type == ArcType::kPhrasal) order.emplace_back(g.depth(id), id);
  }
  std::sort(order.rbegin(), order.rend());
  for (const auto& [depth, id] : order) {
    std::vector<ArcId> kids = g.children(id);
    if (kids.empty()) continue;
    AnchorId lo = g.arc(kids.front()).start, hi = g.arc(kids.front()).end;
    for (ArcId k : kids) {
      const Arc& ka = g.arc(k);
      if (g.rank(ka.start) < g.rank(lo)) lo = ka.start;
      if (g.rank(ka.end) > g.rank(hi)) hi = ka.end;
    }
    g.set_span(id, lo, hi);
  }
}

std::vector<Crossing> projectivity_report(DependencyView v) {
  const AnnotationGraph& g = v.graph();
  // Node positions on a doubled axis: an arc sits at the midpoint of its
  // span, the root before the first word.
  auto point = [&](ArcId id) -> long {
    if (id == v.root()) return -1;
    const Arc& a = g.arc(id);
    return static_cast<long>(g.rank(a.start) + g.rank(a.end));
  };
  struct Edge {
    ArcId dependent;
    long lo, hi;
  };
  std::vector<ArcId> nodes;
  for (const auto& [id, a] : g.arcs()) {
    if (is_syntactic(a.type) && id != v.root() && a.parent) nodes.push_back(id);
  }
  sort_by_position(g, nodes);
  std::vector<Edge> edges;
  for (ArcId id : nodes) {
    long p = point(id), q = point(*g.arc(id).parent);
    edges.push_back({id, std::min(p, q), std::max(p, q)});
  }
  std::vector<Crossing> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const Edge& e = edges[i];
      const Edge& f = edges[j];
      bool cross = (e.lo < f.lo && f.lo < e.hi && e.hi < f.hi) ||
                   (f.lo < e.lo && e.lo < f.hi && f.hi < e.hi);
      if (cross) out.push_back({e.dependent, f.dependent});
    }
  }
  return out;
}

std::vector<Violation> check(DependencyView v) {
  const AnnotationGraph& g = v.graph();
  std::vector<Violation> out;
  const Arc& r = g.arc(v.root());
  if (r.parent) out.push_back({to_string(v.root()), "root has a parent"});
  if (!g.anchors().empty() &&
      (g.rank(r.start) != 0 || g.rank(r.end) + 1 != g.anchors().size())) {
    out.push_back({to_string(v.root()), "root does not span the sentence"});
  }
  for (const auto& [id, a] : g.arcs()) {
    if (!is_syntactic(a.type) || id == v.root()) continue;
    if (a.type == ArcType::kRoot) {
      out.push_back({to_string(id), "second root arc"});
      continue;
    }
    std::optional<ArcId> p = a.parent;
    std::size_t steps = 0;
    while (p && *p != v.root() && steps++ <= g.arc_count()) p = g.arc(*p).parent;
    if (!p || *p != v.root()) out.push_back({to_string(id), "does not reach the root"});
  }
  return out;
}

}  // namespace treegraph::dependency
