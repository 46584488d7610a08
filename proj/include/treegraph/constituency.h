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

// Phrase-structure trees over a fixed terminal string.
//
// A tree is stored with the chart construction: every node is an arc over
// the terminals it dominates, and nesting is carried by parent pointers
// (which is what disambiguates unary chains). The structural edits below
// never touch word arcs, so the terminal string is invariant under all of
// them, and each leaves the selected node selected.

#ifndef TREEGRAPH_CONSTITUENCY_H_
#define TREEGRAPH_CONSTITUENCY_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treegraph/graph.h"

namespace treegraph {

// Plain nested tree, the interchange form for readers and tests.
struct Tree {
  ArcType type = ArcType::kPhrasal;
  Fields fields;
  std::vector<Tree> children;

  static Tree word(std::string_view form);
  static Tree trace(std::string_view form,
                    std::optional<std::string> coindex = std::nullopt);
  static Tree phrase(std::string_view label, std::vector<Tree> children);

  // Category for phrasal nodes, form for terminals.
  std::string label() const;
  bool is_terminal() const {
    return type == ArcType::kWord || type == ArcType::kTrace;
  }

  bool operator==(const Tree&) const = default;
};

// Compact "(A B (C D))" rendering; unlabeled nodes print as "•".
std::string to_bracket_string(const Tree& tree);

// Terminal forms of the tree in order, traces included.
std::vector<std::string> leaves(const Tree& tree);

namespace constituency {

inline constexpr std::string_view kUnlabeled = "\xE2\x80\xA2";  // •

struct Chart {
  AnnotationGraph graph;
  ArcId root;
};

// One anchor per terminal boundary plus one private anchor per trace; one
// arc per node. Anchors carry cumulative character offsets.
Chart build_chart(const Tree& tree);

// Inverse of build_chart, following parent pointers from root.
Tree read_tree(const AnnotationGraph& g, ArcId root);

// Word and trace arcs in terminal order.
std::vector<ArcId> terminals(const AnnotationGraph& g);

// Word forms in terminal order (traces contribute nothing).
std::vector<std::string> surface(const AnnotationGraph& g);

// Children of x's parent (or the parentless syntactic arcs) in order.
std::vector<ArcId> siblings(const AnnotationGraph& g, ArcId x);

// Nodes whose terminal yield is not contiguous.
std::vector<ArcId> discontinuities(const AnnotationGraph& g);

// Phrasal arcs with no label below the outermost node of their tree.
std::vector<ArcId> unlabeled_nodes(const AnnotationGraph& g);

class OrientedTree {
 public:
  OrientedTree(AnnotationGraph& graph, ArcId selected);

  AnnotationGraph& graph() const { return *graph_; }
  ArcId selected() const { return selected_; }
  void select(ArcId id);

 private:
  AnnotationGraph* graph_;
  ArcId selected_;
};

void move_down(OrientedTree& t);
void move_up(OrientedTree& t);
void promote_right(OrientedTree& t);
void promote_left(OrientedTree& t);
void demote_right(OrientedTree& t);
void demote_left(OrientedTree& t);

// Generalized move down: wraps contiguous siblings in a new unlabeled node
// via move_down on the first and demote_left on each of the rest.
ArcId group(OrientedTree& t, std::span<const ArcId> nodes);

// Generalized move up: removes the selected phrasal node, its children
// taking its place. The first child becomes the selection.
void ungroup(OrientedTree& t);

enum class Side { kBefore, kAfter };

struct TraceSpec {
  std::string form = "*";
  std::optional<std::string> coindex;
  std::optional<ArcId> parent;  // default: smallest node covering the boundary
};

// Adds a zero-width trace on a fresh anchor next to `terminal`. Selection
// is unchanged; the new trace is returned.
ArcId insert_trace(OrientedTree& t, ArcId terminal, Side side,
                   const TraceSpec& spec = {});

// Removes the selected trace (and its anchor). Selection moves to the
// trace's former parent, or to the first terminal for a top-level trace.
void delete_trace(OrientedTree& t);

// Sets each field; an empty value removes the field.
void relabel(OrientedTree& t, const Fields& fields);

void coindex(OrientedTree& t, ArcId other, std::string_view tag);

}  // namespace constituency
}  // namespace treegraph

#endif  // TREEGRAPH_CONSTITUENCY_H_
