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


// Treebank file formats. Every reader returns one Sentence per tree in the
// input; writers exist for penn, tiger-xml and native.

#ifndef TREEGRAPH_FORMATS_H_
#define TREEGRAPH_FORMATS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treegraph/graph.h"

namespace treegraph::formats {

enum class FormatId {
  kPenn,
  kBracketRecord,  // UAM-style labels with record structure
  kFloresta,       // depth-by-'=' lines
  kTurin,          // indexed dependency lines
  kTigerXml,
  kNestedXml,      // element nesting, "form:pos" text tokens
  kNative,
};

std::string_view to_string(FormatId id);
std::optional<FormatId> parse_format(std::string_view name);
bool has_writer(FormatId id);

struct Sentence {
  AnnotationGraph graph;
  ArcId root;
};

using Corpus = std::vector<Sentence>;

// The dependency root if there is one, else the first parentless tree node.
std::optional<ArcId> find_sentence_root(const AnnotationGraph& g);

Corpus read_penn(std::string_view text);
std::string write_penn(const Sentence& s);

// Re-spaces bracketed text: one tree per line, no space inside parentheses,
// single spaces between tokens.
std::string canonical_penn(std::string_view text);

Corpus read_bracket_record(std::string_view text);
Corpus read_floresta(std::string_view text);
Corpus read_turin(std::string_view text);

Corpus read_tiger_xml(std::string_view text);
std::string write_tiger_xml(const Corpus& corpus);

Corpus read_nested_xml(std::string_view text);

// One JSON object per line per sentence.
Corpus read_native(std::string_view text);
std::string write_native(const AnnotationGraph& g);

// Head-projection phrase structure for a dependency graph: each head word
// gets a phrasal node labeled with its pos (or "X") over itself (rel "HD")
// and its dependents' projections; the root becomes "ROOT". Graphs without
// a dependency root are returned unchanged.
Sentence to_phrase_structure(const Sentence& s);

Corpus read(FormatId id, std::string_view text);

// Throws kConversionLoss when a sentence has structure the target cannot
// express (crossing or discontinuous constituents into penn, propbank arcs
// into penn or tiger-xml). Penn and tiger-xml output also throws
// kUnlabeledNode for phrasal nodes without a label below the outermost one,
// unless allow_unlabeled is set; native output keeps work in progress.
std::string write(FormatId id, const Corpus& corpus, bool allow_unlabeled = false);

}  // namespace treegraph::formats

#endif  // TREEGRAPH_FORMATS_H_
