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

// Pure and hybrid dependency trees. The root is an arc spanning the whole
// sentence; every word (and every constituent, in hybrid trees) points at
// its head through the parent cross-reference.

#ifndef TREEGRAPH_DEPENDENCY_H_
#define TREEGRAPH_DEPENDENCY_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treegraph/graph.h"

namespace treegraph::dependency {

class DependencyView {
 public:
  DependencyView(AnnotationGraph& graph, ArcId root);

  AnnotationGraph& graph() const { return *graph_; }
  ArcId root() const { return root_; }

 private:
  AnnotationGraph* graph_;
  ArcId root_;
};

struct DependencyChart {
  AnnotationGraph graph;
  ArcId root;

  DependencyView view() { return DependencyView(graph, root); }
};

// Words in order, all attached to a fresh root.
DependencyChart init_flat(std::span<const std::string> words);

// The root arc of a dependency graph, if there is one.
std::optional<ArcId> find_root(const AnnotationGraph& g);

// Makes source a dependent of target. Word order is untouched, so the
// result may be non-projective. A constituent target grows to cover source.
void move_subtree(DependencyView v, ArcId source, ArcId target);

// Puts a new constituent between node and its head. The constituent spans
// node's own arc, not node's dependents.
ArcId insert_constituent(DependencyView v, ArcId node);

// Removes a constituent, handing its children to its parent.
void delete_constituent(DependencyView v, ArcId node);

// Grows c to the smallest interval covering c and its direct children.
void grow_constituent_span(DependencyView v, ArcId c);

// Recomputes every constituent span from scratch (may shrink).
void normalize(DependencyView v);

struct Crossing {
  ArcId first;   // dependent whose head edge crosses ...
  ArcId second;  // ... this dependent's head edge
};

std::vector<Crossing> projectivity_report(DependencyView v);

// Violations of the dependency-tree invariants (all nodes reach the root,
// root spans the sentence).
std::vector<Violation> check(DependencyView v);

}  // namespace treegraph::dependency

#endif  // TREEGRAPH_DEPENDENCY_H_
