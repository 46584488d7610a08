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

#include "treegraph/service.h"

#include <mutex>
#include <regex>

#include "httplib.h"
#include "json.hpp"
#include "treegraph/constituency.h"
#include "treegraph/dependency.h"
#include "treegraph/edit_script.h"
#include "treegraph/propbank.h"

namespace treegraph::service {

namespace {

using json = nlohmann::ordered_json;

Response reply(int status, const json& body) { return {status, body.dump()}; }

Response error(int status, std::string_view code, const std::string& message) {
  return reply(status, {{"error", {{"code", code}, {"message", message}}}});
}

json span_of(const AnnotationGraph& g, const Arc& a) {
  return json::array({g.rank(a.start), g.rank(a.end)});
}

json fields_of(const Arc& a) {
  json f = json::object();
  for (const auto& [k, v] : a.fields) f[k] = v;
  return f;
}

json node_view(const AnnotationGraph& g, ArcId id) {
  const Arc& a = g.arc(id);
  json n;
  n["id"] = id.value;
  n["type"] = std::string(to_string(a.type));
  n["label"] = a.fields.value_or(
      a.type == ArcType::kWord || a.type == ArcType::kTrace ? kForm : kLabel, "");
  n["fields"] = fields_of(a);
  n["span"] = span_of(g, a);
  n["parent"] = a.parent ? json(a.parent->value) : json(nullptr);
  json kids = json::array();
  for (ArcId c : children_in_order(g, id)) kids.push_back(node_view(g, c));
  n["children"] = std::move(kids);
  return n;
}

json ids_json(const std::vector<ArcId>& ids) {
  json out = json::array();
  for (ArcId id : ids) out.push_back(id.value);
  return out;
}

json view(const formats::Sentence& s, const std::string& layer) {
  const AnnotationGraph& g = s.graph;
  json v;
  json terms = json::array();
  for (const std::string& w : constituency::surface(g)) terms.push_back(w);
  v["terminals"] = std::move(terms);
  if (layer == "constituency") {
    v["root"] = s.root.value;
    json trees = json::array();
    for (ArcId t : top_level(g)) trees.push_back(node_view(g, t));
    v["trees"] = std::move(trees);
  } else if (layer == "dependency") {
    std::optional<ArcId> root = dependency::find_root(g);
    if (!root) throw Error(ErrorCode::kInvalidArgument, "document has no dependency layer");
    v["root"] = root->value;
    std::vector<ArcId> ids;
    for (const auto& [id, a] : g.arcs()) {
      if (is_syntactic(a.type)) ids.push_back(id);
    }
    sort_by_position(g, ids);
    json nodes = json::array();
    for (ArcId id : ids) {
      const Arc& a = g.arc(id);
      nodes.push_back({{"id", id.value},
                       {"type", std::string(to_string(a.type))},
                       {"label", a.fields.value_or(a.type == ArcType::kWord ? kForm : kLabel, "")},
                       {"rel", a.fields.value_or(kRel, "")},
                       {"parent", a.parent ? json(a.parent->value) : json(nullptr)},
                       {"span", span_of(g, a)}});
    }
    v["nodes"] = std::move(nodes);
    AnnotationGraph copy = g;
    json crossings = json::array();
    for (const auto& c : dependency::projectivity_report(dependency::DependencyView(copy, *root))) {
      crossings.push_back(json::array({c.first.value, c.second.value}));
    }
    v["crossings"] = std::move(crossings);
  } else if (layer == "propbank") {
    std::vector<propbank::Proposition> props = propbank::extract(g);
    json list = json::array();
    for (const auto& p : props) {
      json roles = json::array(), mods = json::array(), eq = json::array();
      for (const auto& r : p.arguments) roles.push_back({{"label", r.label}, {"nodes", ids_json(r.nodes)}});
      for (const auto& r : p.modifiers) mods.push_back({{"label", r.label}, {"nodes", ids_json(r.nodes)}});
      for (const auto& c : p.equivalences) eq.push_back(ids_json(c));
      list.push_back({{"predicate", ids_json(p.predicate)},
                      {"arguments", std::move(roles)},
                      {"modifiers", std::move(mods)},
                      {"equivalences", std::move(eq)}});
    }
    v["propositions"] = std::move(list);
    v["text"] = propbank::export_text(g, props);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown layer " + layer);
  }
  return v;
}

std::string default_layer(const formats::Sentence& s) {
  return dependency::find_root(s.graph) ? "dependency" : "constituency";
}

json document_json(const std::string& id, std::uint64_t revision, const formats::Sentence& s,
                   const std::string& layer) {
  return {{"id", id},
          {"revision", revision},
          {"layer", layer},
          {"graph", json::parse(formats::write_native(s.graph))},
          {"view", view(s, layer)}};
}

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be a list");
  std::vector<std::string> out;
  for (const json& e : j) out.push_back(e.is_string() ? e.get<std::string>() : e.dump());
  return out;
}

}  // namespace

Document::Document(formats::Sentence initial) : initial_(initial), current_(std::move(initial)) {}

std::pair<std::string, std::uint64_t> Document::snapshot() const {
  std::shared_lock lock(mutex_);
  return {formats::write_native(current_.graph), revision_};
}

formats::Sentence Document::replay() const {
  std::shared_lock lock(mutex_);
  formats::Sentence s = initial_;
  std::vector<formats::Sentence> stack;
  for (const std::string& entry : log_) {
    if (entry == "undo") {
      s = std::move(stack.back());
      stack.pop_back();
    } else {
      stack.push_back(s);
      apply_op(s, entry);
    }
  }
  return s;
}

std::optional<ArcId> apply_op(formats::Sentence& s, const std::string& body) {
  json j = json::parse(body);
  if (!j.contains("op") || !j["op"].is_string()) {
    throw Error(ErrorCode::kInvalidArgument, "request needs an \"op\" string");
  }
  edit::Command c;
  c.name = j["op"].get<std::string>();
  edit::EditorState state;
  if (j.contains("selector") && !j["selector"].is_null()) {
    state.selected = edit::resolve_selector(s.graph, s.root, j["selector"].get<std::string>());
  }
  const json params = j.value("params", json::array());
  if (c.name == "materialize" && params.is_object()) {
    propbank::Proposition p;
    auto refs = [&](const json& list) {
      std::vector<propbank::NodeRef> out;
      for (const std::string& sel : string_list(list, "node list")) {
        out.push_back(edit::resolve_selector(s.graph, s.root, sel));
      }
      return out;
    };
    propbank::tag_predicate(s.graph, p, refs(params.value("predicate", json::array())));
    const json arguments = params.value("arguments", json::object());
    const json modifiers = params.value("modifiers", json::object());
    const json equivalences = params.value("equivalences", json::array());
    for (const auto& [label, nodes] : arguments.items()) {
      propbank::tag_argument(s.graph, p, label, refs(nodes));
    }
    for (const auto& [label, nodes] : modifiers.items()) {
      propbank::tag_modifier(s.graph, p, label, refs(nodes));
    }
    for (const json& pair : equivalences) {
      auto nodes = refs(pair);
      if (nodes.size() != 2) throw Error(ErrorCode::kInvalidArgument, "equivalences are pairs");
      propbank::add_equivalence(s.graph, p, nodes[0], nodes[1]);
    }
    state.proposition = std::move(p);
  } else if (params.is_object()) {
    for (const auto& [k, v] : params.items()) {
      c.args.push_back(k + "=" + (v.is_string() ? v.get<std::string>() : v.dump()));
    }
  } else {
    c.args = string_list(params, "params");
  }
  edit::apply(s, state, c);
  return state.selected;
}

std::string render_layer(const formats::Sentence& s, const std::string& layer) {
  return view(s, layer).dump();
}

Store::Store(formats::Corpus corpus) {
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::string id = std::to_string(i + 1);
    documents_[id] = std::make_unique<Document>(std::move(corpus[i]));
    order_.push_back(id);
  }
}

Document* Store::find(const std::string& id) {
  auto it = documents_.find(id);
  return it == documents_.end() ? nullptr : it->second.get();
}

Response Store::handle(const Request& r) {
  static const std::regex kDoc(R"(/documents/([^/]+)/(tree|op|undo))");
  try {
    if (r.path == "/documents" || r.path == "/documents/") {
      if (r.method != "GET") return error(405, "method_not_allowed", "use GET");
      return list();
    }
    std::smatch m;
    if (!std::regex_match(r.path, m, kDoc)) return error(404, "not_found", "no route " + r.path);
    Document* d = find(m[1].str());
    if (!d) return error(404, "not_found", "no document " + m[1].str());
    std::string action = m[2].str();
    if (action == "tree") {
      if (r.method != "GET") return error(405, "method_not_allowed", "use GET");
      auto it = r.query.find("layer");
      return tree(*d, m[1].str(), it == r.query.end() ? "" : it->second);
    }
    if (r.method != "POST") return error(405, "method_not_allowed", "use POST");
    return action == "op" ? op(*d, m[1].str(), r.body) : undo(*d, m[1].str(), r.body);
  } catch (const json::exception& e) {
    return error(400, "bad_request", e.what());
  } catch (const Error& e) {
    return error(400, error_code_name(e.code()), e.what());
  }
}

Response Store::list() {
  json docs = json::array();
  for (const std::string& id : order_) {
    Document& d = *documents_[id];
    std::shared_lock lock(d.mutex_);
    std::string text;
    for (const std::string& w : constituency::surface(d.current_.graph)) {
      text += (text.empty() ? "" : " ") + w;
    }
    docs.push_back({{"id", id}, {"revision", d.revision_}, {"text", text},
                    {"layer", default_layer(d.current_)}});
  }
  return reply(200, {{"documents", std::move(docs)}});
}

Response Store::tree(Document& d, const std::string& id, const std::string& layer) {
  std::shared_lock lock(d.mutex_);
  std::string l = layer.empty() ? default_layer(d.current_) : layer;
  return reply(200, document_json(id, d.revision_, d.current_, l));
}

Response Store::op(Document& d, const std::string& id, const std::string& body) {
  json j = json::parse(body);
  std::unique_lock lock(d.mutex_);
  if (!j.contains("revision") || !j["revision"].is_number_unsigned()) {
    return error(400, "bad_request", "request needs a \"revision\" number");
  }
  if (j["revision"].get<std::uint64_t>() != d.revision_) {
    return reply(409, {{"error", {{"code", "stale_revision"},
                                  {"message", "document is at revision " +
                                                  std::to_string(d.revision_)}}},
                       {"revision", d.revision_}});
  }
  formats::Sentence next = d.current_;
  std::optional<ArcId> selected;
  try {
    selected = apply_op(next, body);
  } catch (const Error& e) {
    int status = e.code() == ErrorCode::kInvalidArgument ? 400 : 422;
    return error(status, error_code_name(e.code()), e.what());
  }
  if (constituency::surface(next.graph) != constituency::surface(d.current_.graph)) {
    return error(422, "terminal_string_changed", "operation would change the terminal string");
  }
  d.undo_.push_back(std::move(d.current_));
  d.current_ = std::move(next);
  d.log_.push_back(body);
  ++d.revision_;
  json out = document_json(id, d.revision_, d.current_, default_layer(d.current_));
  out["selected"] = selected ? json(selected->value) : json(nullptr);
  return reply(200, out);
}

Response Store::undo(Document& d, const std::string& id, const std::string& body) {
  json j = body.empty() ? json::object() : json::parse(body);
  std::unique_lock lock(d.mutex_);
  if (j.contains("revision") && j["revision"].get<std::uint64_t>() != d.revision_) {
    return reply(409, {{"error", {{"code", "stale_revision"},
                                  {"message", "document is at revision " +
                                                  std::to_string(d.revision_)}}},
                       {"revision", d.revision_}});
  }
  if (d.undo_.empty()) return error(422, "nothing_to_undo", "no operation to undo");
  d.current_ = std::move(d.undo_.back());
  d.undo_.pop_back();
  d.log_.push_back("undo");
  ++d.revision_;
  return reply(200, document_json(id, d.revision_, d.current_, default_layer(d.current_)));
}

Server::Server(Store& store) : http_(std::make_unique<httplib::Server>()) {
  auto forward = [&store](const httplib::Request& req, httplib::Response& res) {
    Request r{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) r.query[k] = v;
    Response out = store.handle(r);
    res.status = out.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(out.body, "application/json");
  };
  http_->Get(".*", forward);
  http_->Post(".*", forward);
  http_->Put(".*", forward);
  http_->Delete(".*", forward);
  http_->Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.status = 204;
  });
}

Server::~Server() = default;

int Server::bind(const std::string& host, int port) {
  int bound = port == 0 ? http_->bind_to_any_port(host) : (http_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw Error(ErrorCode::kInvalidArgument, "cannot listen on " + host + ":" + std::to_string(port));
  }
  return bound;
}

void Server::run() { http_->listen_after_bind(); }

void Server::stop() { http_->stop(); }

void serve(Store& store, const std::string& host, int port) {
  Server server(store);
  server.bind(host, port);
  server.run();
}

}  // namespace treegraph::service
