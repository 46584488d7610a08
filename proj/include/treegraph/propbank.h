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

// Predicate-argument annotation layered over a phrase-structure graph.
//
// A proposition is a predicate constituent set, labeled argument and
// modifier constituent sets, and an equivalence relation over tree nodes.
// materialize() turns one into pred/arg/mod arcs whose spans are the hull
// of their constituents and whose refs point at them; the syntactic layer
// is never modified.

#ifndef TREEGRAPH_PROPBANK_H_
#define TREEGRAPH_PROPBANK_H_

#include <string>
#include <variant>
#include <vector>

#include "treegraph/graph.h"

namespace treegraph::propbank {

// A tree node named by its leftmost terminal (traces count) and its height
// above that terminal: height 0 is the lowest non-terminal whose leftmost
// terminal it is, height 1 the next one up, and so on.
struct NodeCoordinate {
  std::size_t leftmost_terminal = 0;
  std::size_t height = 0;

  bool operator==(const NodeCoordinate&) const = default;
};

using NodeRef = std::variant<ArcId, NodeCoordinate>;

ArcId resolve_coordinate(const AnnotationGraph& g, NodeCoordinate c);
NodeCoordinate coordinate_of(const AnnotationGraph& g, ArcId node);
ArcId resolve(const AnnotationGraph& g, const NodeRef& ref);

struct Role {
  std::string label;
  std::vector<ArcId> nodes;

  bool operator==(const Role&) const = default;
};

struct Proposition {
  std::vector<ArcId> predicate;
  std::vector<Role> arguments;
  std::vector<Role> modifiers;
  std::vector<std::vector<ArcId>> equivalences;  // non-singleton, sorted

  bool operator==(const Proposition&) const = default;
};

void tag_predicate(const AnnotationGraph& g, Proposition& p,
                   const std::vector<NodeRef>& nodes);
void tag_argument(const AnnotationGraph& g, Proposition& p,
                  std::string_view label, const std::vector<NodeRef>& nodes);
void tag_modifier(const AnnotationGraph& g, Proposition& p,
                  std::string_view label, const std::vector<NodeRef>& nodes);

// Merges the classes of a and b.
void add_equivalence(const AnnotationGraph& g, Proposition& p,
                     const NodeRef& a, const NodeRef& b);

// Returns the pred arc followed by one arc per argument, then modifier.
std::vector<ArcId> materialize(AnnotationGraph& g, const Proposition& p);

// Every proposition stored in g, in pred-arc order.
std::vector<Proposition> extract(const AnnotationGraph& g);

// Block format:
//   rel:        controlled
//   ARG1:       *trace* -> forces
std::string export_text(const AnnotationGraph& g,
                        const std::vector<Proposition>& props);

}  // namespace treegraph::propbank

#endif  // TREEGRAPH_PROPBANK_H_
