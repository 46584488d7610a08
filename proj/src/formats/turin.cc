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

// Indexed dependency lines: "index form (lemma pos features...) [head;REL]".
// An entry may wrap onto following lines. Head 0 is the sentence root.
// Decimal indices ("13.1") are extra tokens fused into the preceding word;
// they are ordered by their position in the file.

#include <map>
#include <regex>
#include <sstream>

#include "internal.h"
#include "treegraph/dependency.h"
#include "treegraph/formats.h"

namespace treegraph::formats {

namespace {

struct Entry {
  int line = 0;
  std::string text;
};

struct Word {
  std::string index, form, lemma, pos, features, head, rel;
  int line = 0;
};

Word parse_entry(const Entry& e) {
  static const std::regex kEntry(
      R"(\s*(\d+(?:\.\d+)*)\s+(\S+)\s+\(([^)]*)\)\s*\[\s*([^;\]]+)\s*;\s*([^\]]*)\]\s*)");
  std::smatch m;
  if (!std::regex_match(e.text, m, kEntry)) {
    throw ParseError("malformed entry: " + std::string(internal::trim(e.text)), e.line, 1);
  }
  Word w;
  w.line = e.line;
  w.index = m[1].str();
  w.form = m[2].str();
  std::vector<std::string> feats = internal::split_ws(m[3].str());
  if (!feats.empty()) w.lemma = feats[0];
  if (feats.size() > 1) w.pos = feats[1];
  for (std::size_t i = 2; i < feats.size(); ++i) {
    w.features += (i > 2 ? " " : "") + feats[i];
  }
  w.head = std::string(internal::trim(m[4].str()));
  w.rel = std::string(internal::trim(m[5].str()));
  return w;
}

Sentence build(const std::vector<Word>& words) {
  std::vector<std::string> forms;
  for (const Word& w : words) forms.push_back(w.form);
  dependency::DependencyChart chart = dependency::init_flat(forms);
  AnnotationGraph& g = chart.graph;
  std::vector<ArcId> ids;
  for (const auto& [id, a] : g.arcs()) {
    if (a.type == ArcType::kWord) ids.push_back(id);
  }
  sort_by_position(g, ids);

  std::map<std::string, ArcId> by_index;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!by_index.emplace(words[i].index, ids[i]).second) {
      throw ParseError("duplicate index " + words[i].index, words[i].line, 1);
    }
    Fields& f = g.mutable_fields(ids[i]);
    f.set("index", words[i].index);
    if (!words[i].lemma.empty()) f.set("lemma", words[i].lemma);
    if (!words[i].pos.empty()) f.set("pos", words[i].pos);
    if (!words[i].features.empty()) f.set("features", words[i].features);
    if (!words[i].rel.empty()) f.set(kRel, words[i].rel);
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Word& w = words[i];
    if (w.head == "0") continue;
    auto it = by_index.find(w.head);
    if (it == by_index.end()) {
      throw ParseError("head " + w.head + " of word " + w.index + " does not exist", w.line, 1);
    }
    try {
      g.set_parent(ids[i], it->second);
    } catch (const Error& e) {
      throw ParseError(std::string("word ") + w.index + ": " + e.what(), w.line, 1);
    }
  }
  return {std::move(chart.graph), chart.root};
}

}  // namespace

Corpus read_turin(std::string_view text) {
  static const std::regex kStart(R"(\s*\d+(\.\d+)*\s+\S.*)");
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  std::vector<Entry> entries;
  std::vector<std::vector<Entry>> sentences;
  auto flush = [&] {
    if (!entries.empty()) sentences.push_back(std::move(entries));
    entries.clear();
  };
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (internal::trim(line).empty()) {
      flush();
      continue;
    }
    bool open_entry =
        !entries.empty() && entries.back().text.find(']') == std::string::npos;
    if (!open_entry && std::regex_match(line, kStart)) {
      std::string first = internal::split_ws(line)[0];
      if (first == "1" && !entries.empty()) flush();
      entries.push_back({number, line});
    } else if (!entries.empty()) {
      entries.back().text += " " + std::string(internal::trim(line));
    } else {
      throw ParseError("text before the first entry", number, 1);
    }
  }
  flush();

  Corpus out;
  for (const auto& s : sentences) {
    std::vector<Word> words;
    for (const Entry& e : s) words.push_back(parse_entry(e));
    out.push_back(build(words));
  }
  return out;
}

}  // namespace treegraph::formats
