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

#include "treegraph/edit_script.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <map>

#include "treegraph/constituency.h"
#include "treegraph/dependency.h"

namespace treegraph::edit {

namespace {

Error bad_command(const std::string& message) {
  return Error(ErrorCode::kInvalidArgument, message);
}

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool in_token = false, quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
      in_token = true;
    } else if (!quoted && std::isspace(static_cast<unsigned char>(c))) {
      if (in_token) out.push_back(std::move(cur));
      cur.clear();
      in_token = false;
    } else {
      cur += c;
      in_token = true;
    }
  }
  if (quoted) throw bad_command("unterminated quote");
  if (in_token) out.push_back(std::move(cur));
  return out;
}

std::size_t parse_index(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw bad_command("bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

bool matches(const Arc& a, std::string_view name) {
  if (auto l = a.fields.get(kLabel)) {
    if (*l == name) return true;
    if (auto c = a.fields.get(kCoindex)) {
      if (std::string(*l) + "-" + std::string(*c) == name) return true;
    }
  }
  if (auto f = a.fields.get(kForm); f && *f == name) return true;
  return false;
}

ArcId resolve_path(const AnnotationGraph& g, ArcId root, std::string_view path) {
  std::vector<std::string> steps;
  std::size_t i = 0;
  while (i < path.size()) {
    std::size_t j = path.find('/', i);
    if (j == std::string_view::npos) j = path.size();
    if (j > i) steps.emplace_back(path.substr(i, j - i));
    i = j + 1;
  }
  if (steps.empty()) return root;

  auto fail = [&](const std::string& why) {
    return bad_command("selector " + std::string(path) + ": " + why);
  };
  // The first step may name the root itself; otherwise it names a child.
  const Arc& r = g.arc(root);
  std::optional<ArcId> cur;
  for (std::size_t s = 0; s < steps.size(); ++s) {
    std::string name = steps[s];
    std::size_t nth = 1;
    if (auto b = name.find('['); b != std::string::npos && name.back() == ']') {
      nth = parse_index(std::string_view(name).substr(b + 1, name.size() - b - 2), "index");
      name.resize(b);
    }
    if (nth == 0) throw fail("indices start at 1");
    if (!cur && matches(r, name) && nth == 1) {
      cur = root;
      continue;
    }
    std::vector<ArcId> kids = children_in_order(g, cur ? *cur : root);
    std::size_t seen = 0;
    std::optional<ArcId> hit;
    for (ArcId k : kids) {
      if (matches(g.arc(k), name) && ++seen == nth) {
        hit = k;
        break;
      }
    }
    if (!hit) throw fail("no child " + steps[s]);
    cur = hit;
  }
  return *cur;
}

void refresh_root(formats::Sentence& s) {
  const AnnotationGraph& g = s.graph;
  if (!g.has_arc(s.root)) {
    s.root = formats::find_sentence_root(g).value_or(ArcId{});
    return;
  }
  while (auto p = g.parent(s.root)) s.root = *p;
}

dependency::DependencyView dependency_view(formats::Sentence& s) {
  std::optional<ArcId> root = dependency::find_root(s.graph);
  if (!root) throw Error(ErrorCode::kPrecondition, "sentence has no dependency root");
  return dependency::DependencyView(s.graph, *root);
}

}  // namespace

std::vector<Command> parse_script(std::string_view text) {
  std::vector<Command> out;
  int number = 0;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t j = text.find('\n', i);
    if (j == std::string_view::npos) j = text.size();
    std::string_view line = text.substr(i, j - i);
    ++number;
    i = j + 1;
    std::size_t k = 0;
    while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    if (k == line.size() || line[k] == '#') continue;
    std::vector<std::string> tokens;
    try {
      tokens = tokenize(line);
    } catch (const Error& e) {
      throw ParseError(e.what(), number, 1);
    }
    Command c;
    c.line = number;
    c.name = tokens.front();
    c.args.assign(tokens.begin() + 1, tokens.end());
    out.push_back(std::move(c));
  }
  return out;
}

bool is_selector(std::string_view t) {
  return !t.empty() && (t[0] == '#' || t[0] == '(' || t[0] == '/');
}

ArcId resolve_selector(const AnnotationGraph& g, ArcId root, std::string_view sel) {
  if (sel.starts_with("#")) {
    ArcId id{static_cast<std::uint32_t>(parse_index(sel.substr(1), "arc id"))};
    if (!g.has_arc(id)) throw Error(ErrorCode::kUnknownArc, "no arc " + std::string(sel));
    return id;
  }
  if (sel.starts_with("(") && sel.ends_with(")")) {
    std::string_view inner = sel.substr(1, sel.size() - 2);
    std::size_t comma = inner.find(',');
    if (comma == std::string_view::npos) {
      std::vector<ArcId> terms = constituency::terminals(g);
      std::size_t i = parse_index(inner, "terminal index");
      if (i >= terms.size()) throw bad_command("no terminal " + std::to_string(i));
      return terms[i];
    }
    propbank::NodeCoordinate c{parse_index(inner.substr(0, comma), "terminal index"),
                               parse_index(inner.substr(comma + 1), "height")};
    return propbank::resolve_coordinate(g, c);
  }
  if (sel.starts_with("/")) {
    if (!g.has_arc(root)) throw bad_command("sentence has no root");
    return resolve_path(g, root, sel);
  }
  throw bad_command("not a selector: " + std::string(sel));
}

const std::vector<std::string>& operation_names() {
  static const std::vector<std::string> names = {
      "select", "move_down", "move_up", "promote_right", "promote_left",
      "demote_right", "demote_left", "group", "ungroup", "insert_trace",
      "delete_trace", "relabel", "coindex", "move_subtree", "insert_constituent",
      "delete_constituent", "grow_constituent_span", "normalize", "tag_predicate",
      "tag_argument", "tag_modifier", "add_equivalence", "materialize"};
  return names;
}

void apply(formats::Sentence& s, EditorState& state, const Command& c) {
  AnnotationGraph& g = s.graph;
  const auto& args = c.args;
  auto sel = [&](const std::string& t) { return resolve_selector(g, s.root, t); };
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      throw bad_command(c.name + ": wrong number of arguments");
    }
  };
  // The optional leading selector, falling back to the current selection.
  auto target = [&]() -> ArcId {
    if (!args.empty() && is_selector(args[0])) state.selected = sel(args[0]);
    if (!state.selected || !g.has_arc(*state.selected)) {
      throw Error(ErrorCode::kPrecondition, c.name + ": nothing selected");
    }
    return *state.selected;
  };
  auto oriented = [&](void (*op)(constituency::OrientedTree&)) {
    need(0, 1);
    constituency::OrientedTree t(g, target());
    op(t);
    state.selected = t.selected();
  };
  auto selectors = [&](std::size_t from) {
    if (args.size() <= from) throw bad_command(c.name + ": expects at least one node");
    std::vector<propbank::NodeRef> refs;
    for (std::size_t i = from; i < args.size(); ++i) refs.push_back(sel(args[i]));
    return refs;
  };
  auto proposition = [&]() -> propbank::Proposition& {
    if (!state.proposition) state.proposition.emplace();
    return *state.proposition;
  };

  const std::string& op = c.name;
  if (op == "select") {
    need(1, 1);
    state.selected = sel(args[0]);
  } else if (op == "move_down") {
    oriented(constituency::move_down);
  } else if (op == "move_up") {
    oriented(constituency::move_up);
  } else if (op == "promote_right") {
    oriented(constituency::promote_right);
  } else if (op == "promote_left") {
    oriented(constituency::promote_left);
  } else if (op == "demote_right") {
    oriented(constituency::demote_right);
  } else if (op == "demote_left") {
    oriented(constituency::demote_left);
  } else if (op == "ungroup") {
    oriented(constituency::ungroup);
  } else if (op == "delete_trace") {
    oriented(constituency::delete_trace);
  } else if (op == "group") {
    if (args.empty()) throw bad_command("group: expects at least one node");
    std::vector<ArcId> nodes;
    for (const std::string& a : args) nodes.push_back(sel(a));
    constituency::OrientedTree t(g, nodes.front());
    state.selected = constituency::group(t, nodes);
  } else if (op == "insert_trace") {
    if (args.size() < 2 || (args[0] != "before" && args[0] != "after")) {
      throw bad_command("insert_trace: expects before|after and a terminal");
    }
    ArcId terminal = sel(args[1]);
    constituency::TraceSpec spec;
    for (std::size_t i = 2; i < args.size(); ++i) {
      if (args[i].starts_with("coindex=")) {
        spec.coindex = args[i].substr(8);
      } else if (args[i].starts_with("parent=")) {
        spec.parent = sel(args[i].substr(7));
      } else {
        spec.form = args[i];
      }
    }
    constituency::OrientedTree t(g, state.selected && g.has_arc(*state.selected)
                                        ? *state.selected
                                        : terminal);
    state.selected = constituency::insert_trace(
        t, terminal, args[0] == "before" ? constituency::Side::kBefore
                                         : constituency::Side::kAfter,
        spec);
  } else if (op == "relabel") {
    std::size_t first = !args.empty() && is_selector(args[0]) ? 1 : 0;
    ArcId n = target();
    Fields fields;
    for (std::size_t i = first; i < args.size(); ++i) {
      std::size_t eq = args[i].find('=');
      if (eq == std::string::npos || eq == 0) {
        throw bad_command("relabel: expected key=value, got " + args[i]);
      }
      fields.set(args[i].substr(0, eq), args[i].substr(eq + 1));
    }
    if (fields.empty()) throw bad_command("relabel: no fields given");
    constituency::OrientedTree t(g, n);
    constituency::relabel(t, fields);
  } else if (op == "coindex") {
    need(2, 3);
    std::size_t off = args.size() == 3 ? 1 : 0;
    if (off == 0) {
      if (!state.selected) throw Error(ErrorCode::kPrecondition, "coindex: nothing selected");
    } else {
      target();
    }
    constituency::OrientedTree t(g, *state.selected);
    constituency::coindex(t, sel(args[off]), args[off + 1]);
  } else if (op == "move_subtree") {
    need(2, 2);
    ArcId source = sel(args[0]);
    dependency::move_subtree(dependency_view(s), source, sel(args[1]));
    state.selected = source;
  } else if (op == "insert_constituent") {
    need(0, 1);
    ArcId n = target();
    state.selected = dependency::insert_constituent(dependency_view(s), n);
  } else if (op == "delete_constituent") {
    need(0, 1);
    ArcId n = target();
    dependency::delete_constituent(dependency_view(s), n);
    state.selected.reset();
  } else if (op == "grow_constituent_span") {
    need(0, 1);
    dependency::grow_constituent_span(dependency_view(s), target());
  } else if (op == "normalize") {
    need(0, 0);
    dependency::normalize(dependency_view(s));
  } else if (op == "tag_predicate") {
    propbank::tag_predicate(g, proposition(), selectors(0));
  } else if (op == "tag_argument" || op == "tag_modifier") {
    if (args.empty() || is_selector(args[0])) throw bad_command(op + ": expects a label");
    if (op == "tag_argument") {
      propbank::tag_argument(g, proposition(), args[0], selectors(1));
    } else {
      propbank::tag_modifier(g, proposition(), args[0], selectors(1));
    }
  } else if (op == "add_equivalence") {
    need(2, 2);
    propbank::add_equivalence(g, proposition(), sel(args[0]), sel(args[1]));
  } else if (op == "materialize") {
    need(0, 0);
    if (!state.proposition) throw Error(ErrorCode::kPrecondition, "materialize: no proposition");
    std::vector<ArcId> made = propbank::materialize(g, *state.proposition);
    state.proposition.reset();
    state.selected = made.front();
  } else {
    throw bad_command("unknown command " + op);
  }
  refresh_root(s);
}

void run_script(formats::Corpus& corpus, const std::vector<Command>& script) {
  std::size_t current = 0;
  std::vector<EditorState> states(corpus.size());
  for (std::size_t i = 0; i < script.size(); ++i) {
    const Command& c = script[i];
    try {
      if (c.name == "sentence") {
        if (c.args.size() != 1) throw bad_command("sentence: expects a number");
        std::size_t n = parse_index(c.args[0], "sentence number");
        if (n == 0 || n > corpus.size()) {
          throw bad_command("no sentence " + c.args[0] + " (corpus has " +
                            std::to_string(corpus.size()) + ")");
        }
        current = n - 1;
        continue;
      }
      if (corpus.empty()) throw bad_command("corpus is empty");
      apply(corpus[current], states[current], c);
    } catch (const Error& e) {
      throw Error(e.code(), "command " + std::to_string(i + 1) + " (line " +
                                std::to_string(c.line) + ", " + c.name + "): " + e.what());
    }
  }
}

}  // namespace treegraph::edit
