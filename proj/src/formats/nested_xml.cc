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

// Trees as nested XML elements. Element names are categories; text content
// is a run of whitespace-separated "form:pos" tokens (split on the last
// colon; a token without one is a bare form).

#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "internal.h"
#include "treegraph/formats.h"

namespace treegraph::formats {

namespace {

namespace pt = boost::property_tree;

Tree element(const std::string& name, const pt::ptree& node) {
  Tree t = Tree::phrase(name, {});
  for (const auto& [key, child] : node) {
    if (key == "<xmlattr>") {
      for (const auto& [k, v] : child) t.fields.set(k, v.data());
    } else if (key == "<xmltext>") {
      for (const std::string& token : internal::split_ws(child.data())) {
        std::size_t colon = token.rfind(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == token.size()) {
          t.children.push_back(Tree::word(token));
          continue;
        }
        Tree w = Tree::word(token.substr(0, colon));
        w.fields.set("pos", token.substr(colon + 1));
        t.children.push_back(std::move(w));
      }
    } else if (key != "<xmlcomment>") {
      t.children.push_back(element(key, child));
    }
  }
  if (t.children.empty()) throw ParseError("element <" + name + "> is empty");
  return t;
}

}  // namespace

Corpus read_nested_xml(std::string_view text) {
  std::string body(text);
  if (auto p = body.find("<?xml"); p != std::string::npos) {
    auto q = body.find("?>", p);
    if (q == std::string::npos) throw ParseError("unterminated XML declaration");
    body.erase(p, q + 2 - p);
  }
  std::istringstream in("<nested-document>" + body + "</nested-document>");
  pt::ptree doc;
  try {
    pt::read_xml(in, doc, pt::xml_parser::no_concat_text);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(e.message(), static_cast<int>(e.line()), 0);
  }
  Corpus out;
  for (const auto& [name, child] : doc.get_child("nested-document")) {
    if (name == "<xmltext>") {
      if (!internal::trim(child.data()).empty()) {
        throw ParseError("text outside any element");
      }
      continue;
    }
    if (name == "<xmlcomment>" || name == "<xmlattr>") continue;
    out.push_back(internal::sentence_from_tree(element(name, child)));
  }
  return out;
}

}  // namespace treegraph::formats
