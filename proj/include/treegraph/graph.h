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

// Annotation graph store: ordered anchors, typed arcs carrying fielded
// records, and parent cross-references between arcs. Every layer (phrase
// structure, dependency, predicate-argument) lives in one of these.

#ifndef TREEGRAPH_GRAPH_H_
#define TREEGRAPH_GRAPH_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "treegraph/error.h"

namespace treegraph {

struct AnchorId {
  std::uint32_t value = 0;
  auto operator<=>(const AnchorId&) const = default;
};

struct ArcId {
  std::uint32_t value = 0;
  auto operator<=>(const ArcId&) const = default;
};

std::string to_string(AnchorId id);
std::string to_string(ArcId id);

}  // namespace treegraph

template <>
struct std::hash<treegraph::AnchorId> {
  std::size_t operator()(treegraph::AnchorId id) const noexcept {
    return std::hash<std::uint32_t>()(id.value);
  }
};

template <>
struct std::hash<treegraph::ArcId> {
  std::size_t operator()(treegraph::ArcId id) const noexcept {
    return std::hash<std::uint32_t>()(id.value);
  }
};

namespace treegraph {

// Dense order: a fresh key always exists strictly between two others, so
// inserting an anchor never renumbers its neighbours.
using OrderKey = boost::multiprecision::cpp_rational;

struct Anchor {
  AnchorId id;
  OrderKey order;
  std::optional<double> offset;
};

enum class ArcType { kWord, kPhrasal, kRoot, kTrace, kPred, kArg, kMod };

std::string_view to_string(ArcType type);
std::optional<ArcType> parse_arc_type(std::string_view name);

// Syntactic layer: word, phrasal, root, trace. Predicate-argument layer:
// pred, arg, mod.
bool is_syntactic(ArcType type);
bool is_propbank(ArcType type);
bool same_family(ArcType a, ArcType b);

// Ordered map of field name to value. Insertion order is kept so that
// record-structured labels serialize the way they were read.
class Fields {
 public:
  using Entry = std::pair<std::string, std::string>;

  Fields() = default;
  Fields(std::initializer_list<Entry> entries);

  std::optional<std::string_view> get(std::string_view key) const;
  std::string value_or(std::string_view key, std::string_view fallback) const;
  bool contains(std::string_view key) const { return get(key).has_value(); }

  // Overwrites in place when the key exists, appends otherwise.
  void set(std::string_view key, std::string_view value);
  bool erase(std::string_view key);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool operator==(const Fields&) const = default;

 private:
  std::vector<Entry> entries_;
};

// Field names shared across modules.
inline constexpr std::string_view kLabel = "label";
inline constexpr std::string_view kForm = "form";
inline constexpr std::string_view kCoindex = "coindex";
inline constexpr std::string_view kRel = "rel";

struct Arc {
  ArcId id;
  AnchorId start;
  AnchorId end;
  ArcType type = ArcType::kWord;
  Fields fields;
  std::optional<ArcId> parent;
  std::vector<ArcId> refs;
};

struct Violation {
  std::string subject;  // e.g. "arc 7", "arcs 3, 5", "anchor 2"
  std::string rule;

  std::string to_string() const { return subject + ": " + rule; }
};

enum class SpanPolicy {
  kStrict,          // zero width only for traces
  kAllowZeroWidth,  // nodes dominating only traces, hulls over traces
};

class AnnotationGraph {
 public:
  AnnotationGraph() = default;

  // Anchors.
  AnchorId add_anchor(std::optional<double> offset = std::nullopt);
  AnchorId add_anchor_after(AnchorId a);
  AnchorId add_anchor_before(AnchorId a);
  void remove_anchor(AnchorId a);

  bool has_anchor(AnchorId a) const { return rank_.contains(a); }
  const Anchor& anchor(AnchorId a) const;
  const std::vector<Anchor>& anchors() const { return anchors_; }
  std::size_t rank(AnchorId a) const;
  bool anchor_in_use(AnchorId a) const;

  // Arcs.
  ArcId add_arc(AnchorId start, AnchorId end, ArcType type,
                Fields fields = {}, SpanPolicy policy = SpanPolicy::kStrict);
  void remove_arc(ArcId id);
  void set_parent(ArcId child, std::optional<ArcId> parent);
  void set_span(ArcId id, AnchorId start, AnchorId end);
  void set_refs(ArcId id, std::vector<ArcId> refs);
  Fields& mutable_fields(ArcId id);

  bool has_arc(ArcId id) const { return arcs_.contains(id); }
  const Arc& arc(ArcId id) const;
  const std::map<ArcId, Arc>& arcs() const { return arcs_; }
  std::size_t arc_count() const { return arcs_.size(); }

  // Structural queries.
  std::optional<ArcId> parent(ArcId id) const { return arc(id).parent; }
  std::size_t depth(ArcId id) const;
  bool is_zero_width(ArcId id) const;
  bool is_ancestor(ArcId ancestor, ArcId id) const;
  std::vector<ArcId> children(ArcId id) const;
  bool is_referenced(ArcId id) const;

  // Unvalidated construction for deserialization; validate() reports
  // whatever the source got wrong.
  void restore(std::vector<Anchor> anchors, std::vector<Arc> arcs);

  bool operator==(const AnnotationGraph& other) const;

 private:
  void reindex();
  Arc& mutable_arc(ArcId id);

  std::vector<Anchor> anchors_;  // sorted by order
  std::unordered_map<AnchorId, std::size_t> rank_;
  std::map<ArcId, Arc> arcs_;
  std::uint32_t next_anchor_ = 0;
  std::uint32_t next_arc_ = 0;
};

// Arc y with y.start == x.end and the same parent as x, within x's layer.
// A zero-width arc sitting on the shared anchor comes first unless
// skip_zero_width is set. More than one remaining candidate is an error.
std::optional<ArcId> right_sibling(const AnnotationGraph& g, ArcId x,
                                   bool skip_zero_width = false);
std::optional<ArcId> left_sibling(const AnnotationGraph& g, ArcId x,
                                  bool skip_zero_width = false);

// Arcs of x's layer spanning exactly x's anchors, outermost first.
std::vector<ArcId> coterminous(const AnnotationGraph& g, ArcId x);

// Children ordered by start anchor, then end anchor, innermost first on ties.
std::vector<ArcId> children_in_order(const AnnotationGraph& g, ArcId x);

// Parentless arcs of the syntactic layer in the same order.
std::vector<ArcId> top_level(const AnnotationGraph& g);

// Sort helper shared by the two functions above.
void sort_by_position(const AnnotationGraph& g, std::vector<ArcId>& arcs);

std::vector<Violation> validate(const AnnotationGraph& g);

}  // namespace treegraph

#endif  // TREEGRAPH_GRAPH_H_
