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

#include "treegraph/graph.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace treegraph {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownAnchor: return "unknown_anchor";
    case ErrorCode::kUnknownArc: return "unknown_arc";
    case ErrorCode::kInvalidSpan: return "invalid_span";
    case ErrorCode::kCycle: return "cycle";
    case ErrorCode::kAmbiguousSibling: return "ambiguous_sibling";
    case ErrorCode::kPrecondition: return "precondition_failed";
    case ErrorCode::kReferenced: return "referenced";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kConversionLoss: return "conversion_loss";
    case ErrorCode::kUnlabeledNode: return "unlabeled_node";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
  }
  return "unknown";
}

namespace {

std::string position_suffix(int line, int column) {
  if (line <= 0) return "";
  std::string s = " (line " + std::to_string(line);
  if (column > 0) s += ", column " + std::to_string(column);
  return s + ")";
}

}  // namespace

ParseError::ParseError(const std::string& message, int line, int column)
    : Error(ErrorCode::kParse, message + position_suffix(line, column)),
      line_(line),
      column_(column) {}

std::string to_string(AnchorId id) { return "anchor " + std::to_string(id.value); }
std::string to_string(ArcId id) { return "arc " + std::to_string(id.value); }

std::string_view to_string(ArcType type) {
  switch (type) {
    case ArcType::kWord: return "word";
    case ArcType::kPhrasal: return "phrasal";
    case ArcType::kRoot: return "root";
    case ArcType::kTrace: return "trace";
    case ArcType::kPred: return "pred";
    case ArcType::kArg: return "arg";
    case ArcType::kMod: return "mod";
  }
  return "word";
}

std::optional<ArcType> parse_arc_type(std::string_view name) {
  for (ArcType t : {ArcType::kWord, ArcType::kPhrasal, ArcType::kRoot,
                    ArcType::kTrace, ArcType::kPred, ArcType::kArg,
                    ArcType::kMod}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

bool is_syntactic(ArcType type) {
  return type == ArcType::kWord || type == ArcType::kPhrasal ||
         type == ArcType::kRoot || type == ArcType::kTrace;
}

bool is_propbank(ArcType type) { return !is_syntactic(type); }

bool same_family(ArcType a, ArcType b) {
  return is_syntactic(a) == is_syntactic(b);
}

// ---------------------------------------------------------------------------
// Fields

Fields::Fields(std::initializer_list<Entry> entries) {
  for (const auto& [k, v] : entries) set(k, v);
}

std::optional<std::string_view> Fields::get(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return std::string_view(v);
  }
  return std::nullopt;
}

std::string Fields::value_or(std::string_view key,
                             std::string_view fallback) const {
  auto v = get(key);
  return std::string(v ? *v : fallback);
}

void Fields::set(std::string_view key, std::string_view value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(std::string(key), std::string(value));
}

bool Fields::erase(std::string_view key) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const Entry& e) { return e.first == key; });
  if (it == entries_.end()) return false;
  entries_.erase(it);
  return true;
}

// ---------------------------------------------------------------------------
// AnnotationGraph

void AnnotationGraph::reindex() {
  rank_.clear();
  for (std::size_t i = 0; i < anchors_.size(); ++i) rank_[anchors_[i].id] = i;
}

const Anchor& AnnotationGraph::anchor(AnchorId a) const {
  return anchors_[rank(a)];
}

std::size_t AnnotationGraph::rank(AnchorId a) const {
  auto it = rank_.find(a);
  if (it == rank_.end()) {
    throw Error(ErrorCode::kUnknownAnchor, "unknown " + to_string(a));
  }
  return it->second;
}

AnchorId AnnotationGraph::add_anchor(std::optional<double> offset) {
  Anchor a{AnchorId{next_anchor_++}, OrderKey(0), offset};
  if (!anchors_.empty()) a.order = anchors_.back().order + 1;
  anchors_.push_back(a);
  rank_[a.id] = anchors_.size() - 1;
  return a.id;
}

AnchorId AnnotationGraph::add_anchor_after(AnchorId a) {
  std::size_t r = rank(a);
  Anchor fresh{AnchorId{next_anchor_++}, OrderKey(0), std::nullopt};
  if (r + 1 < anchors_.size()) {
    fresh.order = (anchors_[r].order + anchors_[r + 1].order) / 2;
  } else {
    fresh.order = anchors_[r].order + 1;
  }
  anchors_.insert(anchors_.begin() + static_cast<std::ptrdiff_t>(r + 1), fresh);
  reindex();
  return fresh.id;
}

AnchorId AnnotationGraph::add_anchor_before(AnchorId a) {
  std::size_t r = rank(a);
  Anchor fresh{AnchorId{next_anchor_++}, OrderKey(0), std::nullopt};
  if (r > 0) {
    fresh.order = (anchors_[r - 1].order + anchors_[r].order) / 2;
  } else {
    fresh.order = anchors_[r].order - 1;
  }
  anchors_.insert(anchors_.begin() + static_cast<std::ptrdiff_t>(r), fresh);
  reindex();
  return fresh.id;
}

bool AnnotationGraph::anchor_in_use(AnchorId a) const {
  return std::any_of(arcs_.begin(), arcs_.end(), [&](const auto& kv) {
    return kv.second.start == a || kv.second.end == a;
  });
}

void AnnotationGraph::remove_anchor(AnchorId a) {
  std::size_t r = rank(a);
  if (anchor_in_use(a)) {
    throw Error(ErrorCode::kReferenced, to_string(a) + " is still in use");
  }
  anchors_.erase(anchors_.begin() + static_cast<std::ptrdiff_t>(r));
  reindex();
}

const Arc& AnnotationGraph::arc(ArcId id) const {
  auto it = arcs_.find(id);
  if (it == arcs_.end()) {
    throw Error(ErrorCode::kUnknownArc, "unknown " + to_string(id));
  }
  return it->second;
}

Arc& AnnotationGraph::mutable_arc(ArcId id) {
  auto it = arcs_.find(id);
  if (it == arcs_.end()) {
    throw Error(ErrorCode::kUnknownArc, "unknown " + to_string(id));
  }
  return it->second;
}

ArcId AnnotationGraph::add_arc(AnchorId start, AnchorId end, ArcType type,
                               Fields fields, SpanPolicy policy) {
  std::size_t rs = rank(start);
  std::size_t re = rank(end);
  if (rs > re) {
    throw Error(ErrorCode::kInvalidSpan,
                "reversed span: " + to_string(start) + " follows " +
                    to_string(end));
  }
  if (rs == re && type != ArcType::kTrace &&
      policy == SpanPolicy::kStrict) {
    throw Error(ErrorCode::kInvalidSpan,
                "zero-width span is only allowed for traces, got " +
                    std::string(treegraph::to_string(type)));
  }
  Arc arc;
  arc.id = ArcId{next_arc_++};
  arc.start = start;
  arc.end = end;
  arc.type = type;
  arc.fields = std::move(fields);
  ArcId id = arc.id;
  arcs_.emplace(id, std::move(arc));
  return id;
}

bool AnnotationGraph::is_referenced(ArcId id) const {
  for (const auto& [other, a] : arcs_) {
    if (a.parent == id) return true;
    if (std::find(a.refs.begin(), a.refs.end(), id) != a.refs.end()) {
      return true;
    }
  }
  return false;
}

void AnnotationGraph::remove_arc(ArcId id) {
  arc(id);
  for (const auto& [other, a] : arcs_) {
    if (a.parent == id) {
      throw Error(ErrorCode::kReferenced,
                  to_string(id) + " is the parent of " + to_string(other));
    }
    if (std::find(a.refs.begin(), a.refs.end(), id) != a.refs.end()) {
      throw Error(ErrorCode::kReferenced,
                  to_string(id) + " is referenced by " + to_string(other));
    }
  }
  arcs_.erase(id);
}

void AnnotationGraph::set_parent(ArcId child, std::optional<ArcId> parent) {
  Arc& c = mutable_arc(child);
  if (parent) {
    arc(*parent);
    if (*parent == child) {
      throw Error(ErrorCode::kCycle, to_string(child) + " cannot be its own parent");
    }
    if (is_ancestor(child, *parent)) {
      throw Error(ErrorCode::kCycle, "making " + to_string(*parent) +
                                         " the parent of " + to_string(child) +
                                         " would create a cycle");
    }
  }
  c.parent = parent;
}

void AnnotationGraph::set_span(ArcId id, AnchorId start, AnchorId end) {
  Arc& a = mutable_arc(id);
  if (rank(start) > rank(end)) {
    throw Error(ErrorCode::kInvalidSpan, "reversed span for " + to_string(id));
  }
  a.start = start;
  a.end = end;
}

void AnnotationGraph::set_refs(ArcId id, std::vector<ArcId> refs) {
  Arc& a = mutable_arc(id);
  for (ArcId r : refs) arc(r);
  a.refs = std::move(refs);
}

Fields& AnnotationGraph::mutable_fields(ArcId id) { return mutable_arc(id).fields; }

std::size_t AnnotationGraph::depth(ArcId id) const {
  std::size_t d = 0;
  std::optional<ArcId> p = arc(id).parent;
  while (p) {
    if (++d > arcs_.size()) {
      throw Error(ErrorCode::kCycle, "parent chain of " + to_string(id) + " is cyclic");
    }
    auto it = arcs_.find(*p);
    if (it == arcs_.end()) break;
    p = it->second.parent;
  }
  return d;
}

bool AnnotationGraph::is_zero_width(ArcId id) const {
  const Arc& a = arc(id);
  return a.start == a.end;
}

bool AnnotationGraph::is_ancestor(ArcId ancestor, ArcId id) const {
  std::size_t steps = 0;
  std::optional<ArcId> p = arc(id).parent;
  while (p && steps++ <= arcs_.size()) {
    if (*p == ancestor) return true;
    auto it = arcs_.find(*p);
    if (it == arcs_.end()) return false;
    p = it->second.parent;
  }
  return false;
}

std::vector<ArcId> AnnotationGraph::children(ArcId id) const {
  std::vector<ArcId> out;
  for (const auto& [cid, a] : arcs_) {
    if (a.parent == id) out.push_back(cid);
  }
  return out;
}

void AnnotationGraph::restore(std::vector<Anchor> anchors, std::vector<Arc> arcs) {
  std::stable_sort(anchors.begin(), anchors.end(),
                   [](const Anchor& a, const Anchor& b) { return a.order < b.order; });
  anchors_ = std::move(anchors);
  reindex();
  arcs_.clear();
  next_anchor_ = 0;
  next_arc_ = 0;
  for (const Anchor& a : anchors_) next_anchor_ = std::max(next_anchor_, a.id.value + 1);
  for (Arc& a : arcs) {
    next_arc_ = std::max(next_arc_, a.id.value + 1);
    ArcId id = a.id;
    arcs_.insert_or_assign(id, std::move(a));
  }
}

bool AnnotationGraph::operator==(const AnnotationGraph& other) const {
  if (anchors_.size() != other.anchors_.size()) return false;
  for (std::size_t i = 0; i < anchors_.size(); ++i) {
    const Anchor& a = anchors_[i];
    const Anchor& b = other.anchors_[i];
    if (a.id != b.id || a.order != b.order || a.offset != b.offset) return false;
  }
  if (arcs_.size() != other.arcs_.size()) return false;
  for (const auto& [id, a] : arcs_) {
    auto it = other.arcs_.find(id);
    if (it == other.arcs_.end()) return false;
    const Arc& b = it->second;
    if (a.start != b.start || a.end != b.end || a.type != b.type ||
        a.fields != b.fields || a.parent != b.parent || a.refs != b.refs) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Queries

namespace {

std::optional<ArcId> adjacent_sibling(const AnnotationGraph& g, ArcId x,
                                      bool skip_zero_width, bool rightward) {
  const Arc& ax = g.arc(x);
  AnchorId shared = rightward ? ax.end : ax.start;
  std::vector<ArcId> zero_width;
  std::vector<ArcId> regular;
  for (const auto& [id, a] : g.arcs()) {
    if (id == x || a.parent != ax.parent || !same_family(a.type, ax.type)) continue;
    if ((rightward ? a.start : a.end) != shared) continue;
    (a.start == a.end ? zero_width : regular).push_back(id);
  }
  if (!skip_zero_width && !zero_width.empty()) {
    if (zero_width.size() > 1) {
      throw Error(ErrorCode::kAmbiguousSibling,
                  "several zero-width arcs sit next to " + to_string(x));
    }
    return zero_width.front();
  }
  if (regular.empty()) return std::nullopt;
  if (regular.size() > 1) {
    throw Error(ErrorCode::kAmbiguousSibling,
                "several arcs qualify as sibling of " + to_string(x));
  }
  return regular.front();
}

}  // namespace

std::optional<ArcId> right_sibling(const AnnotationGraph& g, ArcId x,
                                   bool skip_zero_width) {
  return adjacent_sibling(g, x, skip_zero_width, true);
}

std::optional<ArcId> left_sibling(const AnnotationGraph& g, ArcId x,
                                  bool skip_zero_width) {
  return adjacent_sibling(g, x, skip_zero_width, false);
}

std::vector<ArcId> coterminous(const AnnotationGraph& g, ArcId x) {
  const Arc& ax = g.arc(x);
  std::vector<std::pair<std::size_t, ArcId>> found;
  for (const auto& [id, a] : g.arcs()) {
    if (a.start == ax.start && a.end == ax.end && same_family(a.type, ax.type)) {
      found.emplace_back(g.depth(id), id);
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<ArcId> out;
  out.reserve(found.size());
  for (const auto& f : found) out.push_back(f.second);
  return out;
}

void sort_by_position(const AnnotationGraph& g, std::vector<ArcId>& arcs) {
  struct Key {
    std::size_t start, end, depth;
    ArcId id;
  };
  std::vector<Key> keys;
  keys.reserve(arcs.size());
  for (ArcId id : arcs) {
    const Arc& a = g.arc(id);
    keys.push_back({g.rank(a.start), g.rank(a.end), g.depth(id), id});
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.end != b.end) return a.end < b.end;
    if (a.depth != b.depth) return a.depth > b.depth;
    return a.id < b.id;
  });
  for (std::size_t i = 0; i < keys.size(); ++i) arcs[i] = keys[i].id;
}

std::vector<ArcId> children_in_order(const AnnotationGraph& g, ArcId x) {
  std::vector<ArcId> out = g.children(x);
  sort_by_position(g, out);
  return out;
}

std::vector<ArcId> top_level(const AnnotationGraph& g) {
  std::vector<ArcId> out;
  for (const auto& [id, a] : g.arcs()) {
    if (!a.parent && is_syntactic(a.type)) out.push_back(id);
  }
  sort_by_position(g, out);
  return out;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<Violation> validate(const AnnotationGraph& g) {
  std::vector<Violation> out;
  const auto& anchors = g.anchors();

  std::set<std::uint32_t> anchor_ids;
  std::optional<double> max_offset;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const Anchor& a = anchors[i];
    if (!anchor_ids.insert(a.id.value).second) {
      out.push_back({to_string(a.id), "duplicate anchor id"});
    }
    if (i > 0 && anchors[i - 1].order == a.order) {
      out.push_back({to_string(a.id), "order key duplicates " + to_string(anchors[i - 1].id)});
    }
    if (a.offset) {
      if (*a.offset < 0) out.push_back({to_string(a.id), "negative offset"});
      if (max_offset && *a.offset < *max_offset) {
        out.push_back({to_string(a.id), "offset is inconsistent with anchor order"});
      }
      max_offset = std::max(max_offset.value_or(*a.offset), *a.offset);
    }
  }

  const auto& arcs = g.arcs();
  auto known = [&](AnchorId a) { return g.has_anchor(a); };
  auto zero_width_ok = [&](const Arc& a) {
    if (a.type == ArcType::kTrace) return true;
    if (a.type == ArcType::kPhrasal || a.type == ArcType::kRoot) {
      bool any = false;
      for (const auto& [cid, c] : arcs) {
        if (c.parent != a.id) continue;
        any = true;
        if (c.start != c.end) return false;
      }
      return any;
    }
    if (is_propbank(a.type)) {
      if (a.refs.empty()) return false;
      for (ArcId r : a.refs) {
        auto it = arcs.find(r);
        if (it != arcs.end() && it->second.start != it->second.end) return false;
      }
      return true;
    }
    return false;
  };

  for (const auto& [id, a] : arcs) {
    std::string subject = to_string(id);
    bool spans_ok = true;
    if (!known(a.start)) {
      out.push_back({subject, "start refers to unknown " + to_string(a.start)});
      spans_ok = false;
    }
    if (!known(a.end)) {
      out.push_back({subject, "end refers to unknown " + to_string(a.end)});
      spans_ok = false;
    }
    if (spans_ok) {
      std::size_t rs = g.rank(a.start), re = g.rank(a.end);
      if (rs > re) {
        out.push_back({subject, "reversed span"});
      } else if (rs == re && !zero_width_ok(a)) {
        out.push_back({subject, "zero-width arc must be a trace or cover only traces"});
      }
    }
    if (a.parent) {
      auto it = arcs.find(*a.parent);
      if (it == arcs.end()) {
        out.push_back({subject, "parent refers to unknown " + to_string(*a.parent)});
      } else if (is_propbank(a.type)) {
        out.push_back({subject, "predicate-argument arcs take no parent"});
      } else {
        ArcType pt = it->second.type;
        if (pt != ArcType::kPhrasal && pt != ArcType::kRoot && pt != ArcType::kWord) {
          out.push_back({subject, "parent " + to_string(*a.parent) + " has type " +
                                      std::string(to_string(pt))});
        }
      }
    }
    if ((a.type == ArcType::kWord || a.type == ArcType::kTrace) && !a.refs.empty()) {
      out.push_back({subject, "word and trace arcs carry no refs"});
    }
    for (ArcId r : a.refs) {
      if (!arcs.contains(r)) {
        out.push_back({subject, "ref to unknown " + to_string(r)});
      }
    }
  }

  // Cycles: report each cycle once, naming every member.
  std::set<std::uint32_t> reported;
  for (const auto& [id, a] : arcs) {
    std::vector<ArcId> path;
    std::unordered_set<ArcId> on_path;
    std::optional<ArcId> cur = id;
    while (cur && arcs.contains(*cur) && !on_path.contains(*cur)) {
      on_path.insert(*cur);
      path.push_back(*cur);
      cur = arcs.at(*cur).parent;
    }
    if (!cur || !on_path.contains(*cur)) continue;
    auto first = std::find(path.begin(), path.end(), *cur);
    std::vector<std::uint32_t> members;
    for (auto it = first; it != path.end(); ++it) members.push_back(it->value);
    std::sort(members.begin(), members.end());
    if (!reported.insert(members.front()).second) continue;
    std::ostringstream subject;
    subject << (members.size() == 1 ? "arc " : "arcs ");
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i) subject << ", ";
      subject << members[i];
    }
    out.push_back({subject.str(), "parent chain forms a cycle"});
  }
  return out;
}

}  // namespace treegraph
