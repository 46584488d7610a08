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

// Native persistence: {"anchors": [...], "arcs": [...]} per sentence, one
// JSON object per line. Arcs are written outermost-first so that nesting
// never depends on storage order.

#include <algorithm>
#include <limits>
#include <tuple>
#include <sstream>

#include "json.hpp"

#include "internal.h"
#include "treegraph/formats.h"

namespace treegraph::formats {

namespace {

using json = nlohmann::ordered_json;

std::vector<ArcId> canonical_order(const AnnotationGraph& g) {
  std::vector<ArcId> ids;
  for (const auto& [id, a] : g.arcs()) ids.push_back(id);
  auto key = [&](ArcId id) {
    const Arc& a = g.arc(id);
    bool layer = is_propbank(a.type);
    std::size_t depth = layer ? 0 : g.depth(id);
    return std::make_tuple(layer, depth, g.rank(a.start),
                           std::numeric_limits<std::size_t>::max() - g.rank(a.end), id);
  };
  std::sort(ids.begin(), ids.end(), [&](ArcId x, ArcId y) { return key(x) < key(y); });
  return ids;
}

Sentence parse_object(const json& j, int line) {
  try {
    std::vector<Anchor> anchors;
    for (const json& a : j.at("anchors")) {
      Anchor anchor;
      anchor.id = AnchorId{a.at("id").get<std::uint32_t>()};
      anchor.order = OrderKey(a.at("order").get<std::string>());
      if (a.contains("offset")) anchor.offset = a.at("offset").get<double>();
      anchors.push_back(std::move(anchor));
    }
    std::vector<Arc> arcs;
    for (const json& a : j.at("arcs")) {
      Arc arc;
      arc.id = ArcId{a.at("id").get<std::uint32_t>()};
      arc.start = AnchorId{a.at("start").get<std::uint32_t>()};
      arc.end = AnchorId{a.at("end").get<std::uint32_t>()};
      std::string type = a.at("type").get<std::string>();
      auto t = parse_arc_type(type);
      if (!t) throw ParseError("unknown arc type " + type, line, 0);
      arc.type = *t;
      if (a.contains("fields")) {
        for (const auto& [k, v] : a.at("fields").items()) arc.fields.set(k, v.get<std::string>());
      }
      if (a.contains("parent") && !a.at("parent").is_null()) {
        arc.parent = ArcId{a.at("parent").get<std::uint32_t>()};
      }
      if (a.contains("refs")) {
        for (const json& r : a.at("refs")) arc.refs.push_back(ArcId{r.get<std::uint32_t>()});
      }
      arcs.push_back(std::move(arc));
    }
    Sentence s;
    s.graph.restore(std::move(anchors), std::move(arcs));
    try {
      s.root = find_sentence_root(s.graph).value_or(ArcId{});
    } catch (const Error&) {
      s.root = ArcId{};  // broken parent structure; validate() reports it
    }
    return s;
  } catch (const json::exception& e) {
    throw ParseError(e.what(), line, 0);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    throw ParseError(e.what(), line, 0);
  }
}

}  // namespace

std::string write_native(const AnnotationGraph& g) {
  json doc;
  json anchors = json::array();
  for (const Anchor& a : g.anchors()) {
    json j;
    j["id"] = a.id.value;
    j["order"] = a.order.str();
    if (a.offset) j["offset"] = *a.offset;
    anchors.push_back(std::move(j));
  }
  json arcs = json::array();
  for (ArcId id : canonical_order(g)) {
    const Arc& a = g.arc(id);
    json j;
    j["id"] = a.id.value;
    j["start"] = a.start.value;
    j["end"] = a.end.value;
    j["type"] = std::string(to_string(a.type));
    json fields = json::object();
    for (const auto& [k, v] : a.fields) fields[k] = v;
    j["fields"] = std::move(fields);
    if (a.parent) j["parent"] = a.parent->value;
    json refs = json::array();
    for (ArcId r : a.refs) refs.push_back(r.value);
    j["refs"] = std::move(refs);
    arcs.push_back(std::move(j));
  }
  doc["anchors"] = std::move(anchors);
  doc["arcs"] = std::move(arcs);
  return doc.dump();
}

Corpus read_native(std::string_view text) {
  Corpus out;
  std::string body(internal::trim(text));
  if (body.empty()) return out;
  // A single (possibly pretty-printed) document, or one object per line.
  json whole = json::parse(body, nullptr, false);
  if (!whole.is_discarded()) {
    out.push_back(parse_object(whole, 1));
    return out;
  }
  std::istringstream in(body);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (internal::trim(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON", number, 0);
    out.push_back(parse_object(j, number));
  }
  return out;
}

}  // namespace treegraph::formats
