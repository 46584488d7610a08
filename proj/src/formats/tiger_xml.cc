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

// TIGER-style XML: <n> nonterminals and <w> words joined by <edge> children
// of the <n> elements. Tree edges give parents (their label is the child's
// grammatical role); edges typed "semantic" are coreference links and are
// stored as a shared coindex. Word order is the file order of <w>.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "internal.h"
#include "treegraph/constituency.h"
#include "treegraph/formats.h"

namespace treegraph::formats {

namespace {

namespace pt = boost::property_tree;

struct EdgeSpec {
  std::string target, label;
  bool semantic = false;
};

struct Element {
  bool is_word = false;
  std::string id;
  Fields fields;
  bool empty = false;
  std::vector<EdgeSpec> edges;
};

std::string edge_target(const pt::ptree& attrs) {
  if (auto idref = attrs.get_optional<std::string>("idref")) return *idref;
  std::string href = attrs.get<std::string>("href", "");
  if (href.starts_with("#id(") && href.ends_with(")")) return href.substr(4, href.size() - 5);
  if (href.starts_with("#")) return href.substr(1);
  if (href.empty()) throw ParseError("edge without href");
  return href;
}

void collect(const pt::ptree& tree, std::vector<Element>& out) {
  for (const auto& [name, child] : tree) {
    if (name == "w" || name == "n") {
      Element e;
      e.is_word = name == "w";
      const pt::ptree empty_attrs;
      const pt::ptree& attrs = child.get_child("<xmlattr>", empty_attrs);
      for (const auto& [key, value] : attrs) {
        std::string v = value.data();
        if (key == "id") {
          e.id = v;
          e.fields.set("id", v);
        } else if (e.is_word && key == "word") {
          e.fields.set(kForm, v);
        } else if (!e.is_word && key == "cat") {
          e.fields.set(kLabel, v);
        } else if (e.is_word && key == "empty") {
          e.empty = v == "true";
        } else {
          e.fields.set(key, v);
        }
      }
      if (e.id.empty()) throw ParseError("<" + name + "> without id");
      for (const auto& [ename, edge] : child) {
        if (ename != "edge") continue;
        const pt::ptree& ea = edge.get_child("<xmlattr>", empty_attrs);
        e.edges.push_back({edge_target(ea), ea.get<std::string>("label", ""),
                           ea.get<std::string>("type", "") == "semantic"});
      }
      out.push_back(std::move(e));
      continue;
    }
    if (name != "<xmlattr>" && name != "<xmlcomment>") collect(child, out);
  }
}

Sentence build(std::vector<Element> elements) {
  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!by_id.emplace(elements[i].id, i).second) {
      throw ParseError("duplicate id " + elements[i].id);
    }
  }
  std::vector<Tree> terms;
  std::vector<std::size_t> word_elems;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const Element& e = elements[i];
    if (!e.is_word) continue;
    Tree t = e.empty ? Tree::trace(e.fields.value_or(kForm, "*")) : Tree::word("");
    t.fields = e.fields;
    if (!t.fields.contains(kForm)) t.fields.set(kForm, e.empty ? "*" : "");
    terms.push_back(std::move(t));
    word_elems.push_back(i);
  }
  if (terms.empty()) throw ParseError("sentence without <w> elements");

  constituency::Chart chart = constituency::build_chart(Tree::phrase("", std::move(terms)));
  AnnotationGraph& g = chart.graph;
  std::vector<ArcId> term_arcs = constituency::terminals(g);
  for (ArcId t : term_arcs) g.set_parent(t, std::nullopt);
  g.remove_arc(chart.root);

  std::vector<std::optional<ArcId>> arc_of(elements.size());
  for (std::size_t k = 0; k < word_elems.size(); ++k) arc_of[word_elems[k]] = term_arcs[k];

  auto resolve = [&](const std::string& id) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw ParseError("edge points at unknown id " + id);
    return it->second;
  };

  // Phrasal arcs, created bottom-up so each span is the hull of its yield.
  std::vector<int> state(elements.size(), 0);
  std::function<std::pair<std::size_t, std::size_t>(std::size_t)> make =
      [&](std::size_t i) -> std::pair<std::size_t, std::size_t> {
    if (arc_of[i]) {
      const Arc& a = g.arc(*arc_of[i]);
      return {g.rank(a.start), g.rank(a.end)};
    }
    if (state[i] == 1) throw ParseError("edges form a cycle through " + elements[i].id);
    state[i] = 1;
    std::pair<std::size_t, std::size_t> span{SIZE_MAX, 0};
    for (const EdgeSpec& e : elements[i].edges) {
      if (e.semantic) continue;
      auto [lo, hi] = make(resolve(e.target));
      span.first = std::min(span.first, lo);
      span.second = std::max(span.second, hi);
    }
    if (span.first == SIZE_MAX) throw ParseError("node " + elements[i].id + " has no children");
    arc_of[i] = g.add_arc(g.anchors()[span.first].id, g.anchors()[span.second].id,
                          ArcType::kPhrasal, elements[i].fields, SpanPolicy::kAllowZeroWidth);
    state[i] = 2;
    return span;
  };
  for (std::size_t i = 0; i < elements.size(); ++i) make(i);

  int next_tag = 1;
  for (const Element& e : elements) {
    if (auto c = e.fields.get(kCoindex)) next_tag = std::max(next_tag, std::atoi(c->data()) + 1);
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const EdgeSpec& e : elements[i].edges) {
      std::size_t j = resolve(e.target);
      ArcId child = *arc_of[j];
      if (e.semantic) {
        auto tag = g.arc(*arc_of[i]).fields.get(kCoindex);
        if (!tag) tag = g.arc(child).fields.get(kCoindex);
        std::string value = tag ? std::string(*tag) : std::to_string(next_tag++);
        g.mutable_fields(*arc_of[i]).set(kCoindex, value);
        g.mutable_fields(child).set(kCoindex, value);
        continue;
      }
      if (g.parent(child)) {
        throw ParseError(elements[j].id + " has two parents in the tree");
      }
      g.set_parent(child, *arc_of[i]);
      if (!e.label.empty()) g.mutable_fields(child).set(kRel, e.label);
    }
  }

  Sentence s{std::move(chart.graph), ArcId{}};
  std::optional<ArcId> root;
  for (std::size_t i = 0; i < elements.size() && !root; ++i) {
    if (!elements[i].is_word && !s.graph.parent(*arc_of[i])) root = arc_of[i];
  }
  s.root = root ? *root : *find_sentence_root(s.graph);
  return s;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

Corpus read_tiger_xml(std::string_view text) {
  std::string body(text);
  if (auto p = body.find("<?xml"); p != std::string::npos) {
    auto q = body.find("?>", p);
    if (q == std::string::npos) throw ParseError("unterminated XML declaration");
    body.erase(p, q + 2 - p);
  }
  std::istringstream in("<tiger-document>" + body + "</tiger-document>");
  pt::ptree doc;
  try {
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(e.message(), static_cast<int>(e.line()), 0);
  }
  std::vector<const pt::ptree*> sentences;
  std::function<void(const pt::ptree&)> find = [&](const pt::ptree& t) {
    for (const auto& [name, child] : t) {
      if (name == "s") {
        sentences.push_back(&child);
      } else if (name != "<xmlattr>") {
        find(child);
      }
    }
  };
  const pt::ptree& top = doc.get_child("tiger-document");
  find(top);
  if (sentences.empty()) sentences.push_back(&top);
  Corpus out;
  for (const pt::ptree* s : sentences) {
    std::vector<Element> elements;
    collect(*s, elements);
    out.push_back(build(std::move(elements)));
  }
  return out;
}

std::string write_tiger_xml(const Corpus& corpus) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<corpus>\n";
  for (std::size_t si = 0; si < corpus.size(); ++si) {
    Sentence s = to_phrase_structure(corpus[si]);
    const AnnotationGraph& g = s.graph;
    std::vector<ArcId> syntactic;
    for (const auto& [id, a] : g.arcs()) {
      if (is_propbank(a.type)) {
        throw Error(ErrorCode::kConversionLoss,
                    "sentence " + std::to_string(si + 1) +
                        ": tiger-xml cannot carry predicate-argument arcs");
      }
      syntactic.push_back(id);
    }

    std::map<ArcId, std::string> ids;
    std::set<std::string> seen;
    bool reuse = true;
    for (ArcId id : syntactic) {
      auto v = g.arc(id).fields.get("id");
      if (!v || v->empty() || !seen.insert(std::string(*v)).second) reuse = false;
    }
    std::vector<ArcId> terms = constituency::terminals(g);
    std::vector<ArcId> phrases;
    std::function<void(ArcId)> preorder = [&](ArcId id) {
      const Arc& a = g.arc(id);
      if (a.type == ArcType::kWord || a.type == ArcType::kTrace) return;
      phrases.push_back(id);
      for (ArcId c : children_in_order(g, id)) preorder(c);
    };
    for (ArcId t : top_level(g)) preorder(t);
    int wn = 0, nn = 0;
    for (ArcId t : terms) ids[t] = reuse ? g.arc(t).fields.value_or("id", "") : "w" + std::to_string(++wn);
    for (ArcId p : phrases) ids[p] = reuse ? g.arc(p).fields.value_or("id", "") : "n" + std::to_string(++nn);

    auto attributes = [&](const Arc& a, std::string_view main_key, std::string_view main_name) {
      std::string s = " id=\"" + escape(ids[a.id]) + "\"";
      if (auto v = a.fields.get(main_key)) s += " " + std::string(main_name) + "=\"" + escape(*v) + "\"";
      if (a.type == ArcType::kTrace) s += " empty=\"true\"";
      for (const auto& [k, v] : a.fields) {
        if (k == "id" || k == main_key || (k == kRel && a.parent)) continue;
        s += " " + k + "=\"" + escape(v) + "\"";
      }
      return s;
    };

    out += "  <s id=\"s" + std::to_string(si + 1) + "\">\n";
    for (ArcId p : phrases) {
      out += "    <n" + attributes(g.arc(p), kLabel, "cat") + ">\n";
      for (ArcId c : children_in_order(g, p)) {
        out += "      <edge href=\"#id(" + escape(ids[c]) + ")\"";
        if (auto rel = g.arc(c).fields.get(kRel)) out += " label=\"" + escape(*rel) + "\"";
        out += "/>\n";
      }
      out += "    </n>\n";
    }
    for (ArcId t : terms) out += "    <w" + attributes(g.arc(t), kForm, "word") + "/>\n";
    out += "  </s>\n";
  }
  return out + "</corpus>\n";
}

}  // namespace treegraph::formats
