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


// Helpers shared by the format readers. Not installed.

#ifndef TREEGRAPH_SRC_FORMATS_INTERNAL_H_
#define TREEGRAPH_SRC_FORMATS_INTERNAL_H_

#include <string>
#include <string_view>
#include <vector>

#include "treegraph/constituency.h"
#include "treegraph/formats.h"

namespace treegraph::formats::internal {

struct Token {
  enum Kind { kOpen, kClose, kAtom, kQuoted } kind;
  std::string text;  // quotes stripped for kQuoted
  int line;
  int column;
};

// Splits parenthesized text into tokens. Double-quoted strings are single
// tokens when `quotes` is set.
std::vector<Token> tokenize_brackets(std::string_view text, bool quotes);

Sentence sentence_from_tree(const Tree& tree);

// "NP-SBJ-1" -> ("NP-SBJ", "1"); no trailing "-digits" leaves coindex empty.
std::pair<std::string, std::string> split_coindex(std::string_view label);

std::vector<std::string> split_ws(std::string_view s);
std::string_view trim(std::string_view s);

}  // namespace treegraph::formats::internal

#endif  // TREEGRAPH_SRC_FORMATS_INTERNAL_H_
