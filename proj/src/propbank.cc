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

#include "treegraph/propbank.h"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "treegraph/constituency.h"

namespace treegraph::propbank {

namespace {

std::vector<ArcId> descendant_terminals(const AnnotationGraph& g, ArcId node) {
  std::unordered_map<ArcId, std::vector<ArcId>> kids;
  for (const auto& [id, a] : g.arcs()) {
    if (a.parent && is_syntactic(a.type)) kids[*a.parent].push_back(id);
  }
  std::vector<ArcId> out;
  std::vector<ArcId> stack{node};
  while (!stack.empty()) {
    ArcId cur = stack.back();
    stack.pop_back();
    ArcType t = g.arc(cur).type;
    if (t == ArcType::kWord || t == ArcType::kTrace) out.push_back(cur);
    for (ArcId k : kids[cur]) stack.push_back(k);
  }
  sort_by_position(g, out);
  return out;
}

std::size_t leftmost_terminal(const AnnotationGraph& g,
                              const std::vector<ArcId>& terms, ArcId node) {
  std::vector<ArcId> yield = descendant_terminals(g, node);
  if (yield.empty()) {
    throw Error(ErrorCode::kInvalidArgument, to_string(node) + " dominates no terminal");
  }
  auto it = std::find(terms.begin(), terms.end(), yield.front());
  return static_cast<std::size_t>(it - terms.begin());
}

std::vector<ArcId> resolve_all(const AnnotationGraph& g, const std::vector<NodeRef>& refs,
                               const char* what) {
  if (refs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " needs at least one node");
  }
  std::vector<ArcId> out;
  for (const NodeRef& r : refs) {
    ArcId id = resolve(g, r);
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  }
  return out;
}

std::pair<AnchorId, AnchorId> hull(const AnnotationGraph& g, const std::vector<ArcId>& nodes) {
  AnchorId lo = g.arc(nodes.front()).start, hi = g.arc(nodes.front()).end;
  for (ArcId n : nodes) {
    const Arc& a = g.arc(n);
    if (g.rank(a.start) < g.rank(lo)) lo = a.start;
    if (g.rank(a.end) > g.rank(hi)) hi = a.end;
  }
  return {lo, hi};
}

constexpr std::string_view kEquivPrefix = "equiv";

}  // namespace

ArcId resolve_coordinate(const AnnotationGraph& g, NodeCoordinate c) {
  std::vector<ArcId> terms = constituency::terminals(g);
  if (c.leftmost_terminal >= terms.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no terminal " + std::to_string(c.leftmost_terminal));
  }
  ArcId cur = terms[c.leftmost_terminal];
  for (std::size_t step = 0; step <= c.height; ++step) {
    std::optional<ArcId> p = g.parent(cur);
    if (!p || leftmost_terminal(g, terms, *p) != c.leftmost_terminal) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no node at (" + std::to_string(c.leftmost_terminal) + "," +
                      std::to_string(c.height) + ")");
    }
    cur = *p;
  }
  return cur;
}

NodeCoordinate coordinate_of(const AnnotationGraph& g, ArcId node) {
  ArcType t = g.arc(node).type;
  if (t != ArcType::kPhrasal && t != ArcType::kRoot) {
    throw Error(ErrorCode::kInvalidArgument,
                to_string(node) + " is not a non-terminal; address it by arc id");
  }
  std::vector<ArcId> terms = constituency::terminals(g);
  std::size_t i = leftmost_terminal(g, terms, node);
  ArcId cur = terms[i];
  std::size_t steps = 0;
  while (cur != node) {
    std::optional<ArcId> p = g.parent(cur);
    if (!p) break;
    cur = *p;
    ++steps;
  }
  if (cur != node || steps == 0) {
    throw Error(ErrorCode::kInvalidArgument, "cannot locate " + to_string(node));
  }
  return {i, steps - 1};
}

ArcId resolve(const AnnotationGraph& g, const NodeRef& ref) {
  if (const auto* c = std::get_if<NodeCoordinate>(&ref)) return resolve_coordinate(g, *c);
  ArcId id = std::get<ArcId>(ref);
  if (!is_syntactic(g.arc(id).type)) {
    throw Error(ErrorCode::kInvalidArgument, to_string(id) + " is not a tree node");
  }
  return id;
}

void tag_predicate(const AnnotationGraph& g, Proposition& p,
                   const std::vector<NodeRef>& nodes) {
  p.predicate = resolve_all(g, nodes, "predicate");
}

void tag_argument(const AnnotationGraph& g, Proposition& p, std::string_view label,
                  const std::vector<NodeRef>& nodes) {
  for (const Role& r : p.arguments) {
    if (r.label == label) {
      throw Error(ErrorCode::kInvalidArgument,
                  "argument label " + std::string(label) + " is already used");
    }
  }
  p.arguments.push_back({std::string(label), resolve_all(g, nodes, "argument")});
}

void tag_modifier(const AnnotationGraph& g, Proposition& p, std::string_view label,
                  const std::vector<NodeRef>& nodes) {
  p.modifiers.push_back({std::string(label), resolve_all(g, nodes, "modifier")});
}

void add_equivalence(const AnnotationGraph& g, Proposition& p, const NodeRef& a,
                     const NodeRef& b) {
  ArcId x = resolve(g, a);
  ArcId y = resolve(g, b);
  if (x == y) return;
  auto find = [&](ArcId id) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < p.equivalences.size(); ++i) {
      const auto& cls = p.equivalences[i];
      if (std::find(cls.begin(), cls.end(), id) != cls.end()) return i;
    }
    return std::nullopt;
  };
  auto cx = find(x);
  auto cy = find(y);
  if (cx && cy && *cx == *cy) return;
  if (!cx && !cy) {
    p.equivalences.push_back({x, y});
  } else if (cx && !cy) {
    p.equivalences[*cx].push_back(y);
  } else if (!cx && cy) {
    p.equivalences[*cy].push_back(x);
  } else {
    auto& into = p.equivalences[*cx];
    into.insert(into.end(), p.equivalences[*cy].begin(), p.equivalences[*cy].end());
    p.equivalences.erase(p.equivalences.begin() + static_cast<std::ptrdiff_t>(*cy));
  }
  for (auto& cls : p.equivalences) std::sort(cls.begin(), cls.end());
  std::sort(p.equivalences.begin(), p.equivalences.end());
}

std::vector<ArcId> materialize(AnnotationGraph& g, const Proposition& p) {
  auto check = [&](const std::vector<ArcId>& nodes) {
    for (ArcId n : nodes) {
      if (!g.has_arc(n) || !is_syntactic(g.arc(n).type)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "proposition references " + to_string(n) + " outside the tree");
      }
    }
  };
  if (p.predicate.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "proposition has no predicate");
  }
  check(p.predicate);
  for (const Role& r : p.arguments) check(r.nodes);
  for (const Role& r : p.modifiers) check(r.nodes);
  for (const auto& cls : p.equivalences) check(cls);

  auto [plo, phi] = hull(g, p.predicate);
  Fields pred_fields{{std::string(kLabel), "pred"}};
  for (std::size_t i = 0; i < p.equivalences.size(); ++i) {
    std::string ids;
    for (ArcId n : p.equivalences[i]) {
      if (!ids.empty()) ids += ' ';
      ids += std::to_string(n.value);
    }
    pred_fields.set(std::string(kEquivPrefix) + std::to_string(i + 1), ids);
  }
  ArcId pred = g.add_arc(plo, phi, ArcType::kPred, std::move(pred_fields),
                         SpanPolicy::kAllowZeroWidth);
  std::vector<ArcId> created{pred};
  std::vector<ArcId> pred_refs = p.predicate;
  auto add_role = [&](const Role& r, ArcType type) {
    auto [lo, hi] = hull(g, r.nodes);
    ArcId id = g.add_arc(lo, hi, type, Fields{{std::string(kLabel), r.label}},
                         SpanPolicy::kAllowZeroWidth);
    g.set_refs(id, r.nodes);
    created.push_back(id);
    pred_refs.push_back(id);
  };
  for (const Role& r : p.arguments) add_role(r, ArcType::kArg);
  for (const Role& r : p.modifiers) add_role(r, ArcType::kMod);
  g.set_refs(pred, pred_refs);
  return created;
}

std::vector<Proposition> extract(const AnnotationGraph& g) {
  std::vector<ArcId> preds;
  for (const auto& [id, a] : g.arcs()) {
    if (a.type == ArcType::kPred) preds.push_back(id);
  }
  std::sort(preds.begin(), preds.end());
  std::vector<Proposition> out;
  for (ArcId pid : preds) {
    const Arc& pred = g.arc(pid);
    Proposition p;
    for (ArcId r : pred.refs) {
      const Arc& ra = g.arc(r);
      if (is_syntactic(ra.type)) {
        p.predicate.push_back(r);
      } else if (ra.type == ArcType::kArg || ra.type == ArcType::kMod) {
        Role role{ra.fields.value_or(kLabel, ""), ra.refs};
        (ra.type == ArcType::kArg ? p.arguments : p.modifiers).push_back(std::move(role));
      }
    }
    for (const auto& [key, value] : pred.fields) {
      if (!key.starts_with(kEquivPrefix)) continue;
      std::vector<ArcId> cls;
      std::istringstream in(value);
      std::uint32_t v;
      while (in >> v) cls.push_back(ArcId{v});
      std::sort(cls.begin(), cls.end());
      if (cls.size() > 1) p.equivalences.push_back(std::move(cls));
    }
    std::sort(p.equivalences.begin(), p.equivalences.end());
    out.push_back(std::move(p));
  }
  return out;
}

std::string export_text(const AnnotationGraph& g, const std::vector<Proposition>& props) {
  auto words_of = [&](ArcId node) {
    std::string s;
    for (ArcId t : descendant_terminals(g, node)) {
      const Arc& a = g.arc(t);
      if (a.type != ArcType::kWord) continue;
      if (!s.empty()) s += ' ';
      s += a.fields.value_or(kForm, "");
    }
    return s;
  };
  auto render_node = [&](const Proposition& p, ArcId node) {
    std::string s = words_of(node);
    if (!s.empty()) return s;
    s = "*trace*";
    for (const auto& cls : p.equivalences) {
      if (std::find(cls.begin(), cls.end(), node) == cls.end()) continue;
      for (ArcId other : cls) {
        std::string w = other == node ? "" : words_of(other);
        if (!w.empty()) return s + " -> " + w;
      }
    }
    return s;
  };
  auto render_set = [&](const Proposition& p, const std::vector<ArcId>& nodes) {
    if (nodes.size() == 1) return render_node(p, nodes.front());
    std::string s;
    for (ArcId n : nodes) {
      if (!s.empty()) s += ' ';
      s += "[" + render_node(p, n) + "]";
    }
    return s;
  };
  auto line = [](std::string_view label, const std::string& text) {
    std::string head = std::string(label) + ":";
    if (head.size() < 12) head.resize(12, ' ');
    else head += ' ';
    return head + text + "\n";
  };
  std::string out;
  for (std::size_t i = 0; i < props.size(); ++i) {
    const Proposition& p = props[i];
    if (i) out += "\n";
    out += line("rel", render_set(p, p.predicate));
    for (const Role& r : p.arguments) out += line(r.label, render_set(p, r.nodes));
    for (const Role& r : p.modifiers) out += line(r.label, render_set(p, r.nodes));
  }
  return out;
}

}  // namespace treegraph::propbank
