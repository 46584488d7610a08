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


// Line-oriented edit scripts: one command per line, '#' starts a comment
// line. Every command names a constituency, dependency or propbank
// operation; see docs/edit-scripts.md for the grammar.

#ifndef TREEGRAPH_EDIT_SCRIPT_H_
#define TREEGRAPH_EDIT_SCRIPT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treegraph/formats.h"
#include "treegraph/propbank.h"

namespace treegraph::edit {

struct Command {
  int line = 0;
  std::string name;
  std::vector<std::string> args;
};

std::vector<Command> parse_script(std::string_view text);

// Selectors: "#12" (arc id), "(3)" (terminal 3, counting from 0),
// "(3,0)" (node coordinate), "/S/VP[2]" (path of labels or word forms,
// 1-based index among equally named children; the first step may name the
// root or one of its children), "/" (the sentence root).
ArcId resolve_selector(const AnnotationGraph& g, ArcId root, std::string_view selector);

bool is_selector(std::string_view token);

// Per-sentence editing state: the selected node and the proposition being
// built by the tag_* commands until materialize.
struct EditorState {
  std::optional<ArcId> selected;
  std::optional<propbank::Proposition> proposition;
};

// Applies one command (other than "sentence") to s. Keeps s.root on the
// outermost node when an operation adds or removes it.
void apply(formats::Sentence& s, EditorState& state, const Command& c);

// Applies a whole script. Errors keep their code and are prefixed with the
// command number and source line.
void run_script(formats::Corpus& corpus, const std::vector<Command>& script);

// Names accepted by apply().
const std::vector<std::string>& operation_names();

}  // namespace treegraph::edit

#endif  // TREEGRAPH_EDIT_SCRIPT_H_
