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

// treegraph command-line tool.
//
// Exit status: 0 success, 1 validation or operation failure, 2 conversion
// loss, 3 I/O or parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "treegraph/constituency.h"
#include "treegraph/dependency.h"
#include "treegraph/edit_script.h"
#include "treegraph/formats.h"
#include "treegraph/service.h"

namespace tg = treegraph;
namespace fmt_ = treegraph::formats;

namespace {

constexpr int kOk = 0, kInvalid = 1, kLoss = 2, kIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

fmt_::FormatId pick_format(const std::string& flag, const std::string& path) {
  std::string name = flag;
  if (name.empty()) {
    if (const char* env = std::getenv("TREEGRAPH_FORMAT")) name = env;
  }
  if (name.empty()) {
    static const std::map<std::string, std::string> by_extension = {
        {".mrg", "penn"}, {".penn", "penn"}, {".jsonl", "native"}, {".json", "native"}};
    auto dot = path.rfind('.');
    if (dot != std::string::npos) {
      if (auto it = by_extension.find(path.substr(dot)); it != by_extension.end()) {
        name = it->second;
      }
    }
  }
  if (name.empty()) throw CLI::ValidationError("format", "cannot infer the format of " + path);
  auto id = fmt_::parse_format(name);
  if (!id) throw CLI::ValidationError("format", "unknown format " + name);
  return *id;
}

int exit_code(const tg::Error& e) {
  switch (e.code()) {
    case tg::ErrorCode::kParse: return kIo;
    case tg::ErrorCode::kConversionLoss: return kLoss;
    default: return kInvalid;
  }
}

int convert(const std::string& from, const std::string& to, const std::string& in,
            const std::string& out, bool allow_unlabeled) {
  fmt_::FormatId src = pick_format(from, in);
  fmt_::FormatId dst = pick_format(to, out);
  if (!fmt_::has_writer(dst)) {
    std::cerr << "no writer for " << fmt_::to_string(dst) << "\n";
    return kInvalid;
  }
  fmt_::Corpus corpus = fmt_::read(src, read_input(in));
  bool lossy = false;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    try {
      fmt_::write(dst, fmt_::Corpus{corpus[i]}, true);
    } catch (const tg::Error& e) {
      if (e.code() != tg::ErrorCode::kConversionLoss) throw;
      std::cerr << "sentence " << i + 1 << ": " << e.what() << "\n";
      lossy = true;
    }
  }
  if (lossy) return kLoss;
  write_output(out, fmt_::write(dst, corpus, allow_unlabeled));
  return kOk;
}

int validate(const std::string& format, const std::string& in, bool allow_unlabeled) {
  fmt_::Corpus corpus = fmt_::read(pick_format(format, in), read_input(in));
  int errors = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::string where = "sentence " + std::to_string(i + 1) + ": ";
    std::vector<tg::Violation> found = tg::validate(corpus[i].graph);
    if (found.empty()) {
      if (auto root = tg::dependency::find_root(corpus[i].graph)) {
        tg::AnnotationGraph& g = corpus[i].graph;
        for (auto& v : tg::dependency::check(tg::dependency::DependencyView(g, *root))) {
          found.push_back(v);
        }
      }
    }
    for (const tg::Violation& v : found) {
      std::cout << where << v.to_string() << "\n";
      ++errors;
    }
    if (!allow_unlabeled && found.empty()) {
      for (tg::ArcId id : tg::constituency::unlabeled_nodes(corpus[i].graph)) {
        std::cout << "warning: " << where << tg::to_string(id) << ": unlabeled node\n";
      }
    }
  }
  return errors ? kInvalid : kOk;
}

int edit(const std::string& format, const std::string& to, const std::string& in,
         const std::string& script_path, const std::string& out, bool allow_unlabeled) {
  fmt_::FormatId src = pick_format(format, in);
  fmt_::FormatId dst = to.empty() ? (fmt_::has_writer(src) ? src : fmt_::FormatId::kNative)
                                  : pick_format(to, out);
  fmt_::Corpus corpus = fmt_::read(src, read_input(in));
  std::vector<tg::edit::Command> script = tg::edit::parse_script(read_input(script_path));
  tg::edit::run_script(corpus, script);
  write_output(out, fmt_::write(dst, corpus, allow_unlabeled));
  return kOk;
}

int stats(const std::string& format, const std::string& in) {
  fmt_::Corpus corpus = fmt_::read(pick_format(format, in), read_input(in));
  std::map<std::string, std::size_t> types;
  std::size_t anchors = 0, crossings = 0, unlabeled = 0;
  for (fmt_::Sentence& s : corpus) {
    anchors += s.graph.anchors().size();
    for (const auto& [id, a] : s.graph.arcs()) ++types[std::string(tg::to_string(a.type))];
    unlabeled += tg::constituency::unlabeled_nodes(s.graph).size();
    if (auto root = tg::dependency::find_root(s.graph)) {
      crossings += tg::dependency::projectivity_report(
                       tg::dependency::DependencyView(s.graph, *root)).size();
    }
  }
  std::size_t arcs = 0;
  for (const auto& [k, v] : types) arcs += v;
  std::cout << "sentences: " << corpus.size() << "\n"
            << "anchors: " << anchors << "\n"
            << "arcs: " << arcs << "\n";
  for (const char* t : {"word", "phrasal", "root", "trace", "pred", "arg", "mod"}) {
    std::cout << t << ": " << types[t] << "\n";
  }
  std::cout << "unlabeled: " << unlabeled << "\n"
            << "crossings: " << crossings << "\n";
  return kOk;
}

int serve(const std::string& format, const std::string& corpus_path, const std::string& host,
          int port) {
  fmt_::Corpus corpus = fmt_::read(pick_format(format, corpus_path), read_input(corpus_path));
  tg::service::Store store(std::move(corpus));
  std::cerr << "serving " << store.ids().size() << " documents on http://" << host << ":"
            << port << "\n";
  tg::service::serve(store, host, port);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Treebank conversion, validation and editing"};
  app.require_subcommand(1);

  std::string from, to, format, in, out, script, corpus_path, host = "127.0.0.1";
  bool allow_unlabeled = false;
  int port = 8080;

  auto* c = app.add_subcommand("convert", "Convert between formats");
  c->add_option("--from", from, "Input format");
  c->add_option("--to", to, "Output format");
  c->add_option("input", in, "Input file or -")->required();
  c->add_option("output", out, "Output file or -")->required();
  c->add_flag("--allow-unlabeled", allow_unlabeled, "Write nodes that have no label");

  auto* v = app.add_subcommand("validate", "Check graph invariants");
  v->add_option("input", in, "Input file or -")->required();
  v->add_option("--format", format, "Input format");
  v->add_flag("--allow-unlabeled", allow_unlabeled, "Do not warn about unlabeled nodes");

  auto* e = app.add_subcommand("edit", "Apply an edit script");
  e->add_option("input", in, "Input file or -")->required();
  e->add_option("--script", script, "Edit script")->required();
  e->add_option("output", out, "Output file or -")->required();
  e->add_option("--format", format, "Input format");
  e->add_option("--to", to, "Output format (default: input format, or native)");
  e->add_flag("--allow-unlabeled", allow_unlabeled, "Write nodes that have no label");

  auto* s = app.add_subcommand("stats", "Count sentences, arcs and crossings");
  s->add_option("input", in, "Input file or -")->required();
  s->add_option("--format", format, "Input format");

  auto* srv = app.add_subcommand("serve", "Run the edit service");
  srv->add_option("--corpus", corpus_path, "Corpus to serve")->required();
  srv->add_option("--format", format, "Corpus format");
  srv->add_option("--port", port, "Port");
  srv->add_option("--host", host, "Address to bind");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  }

  try {
    if (*c) return convert(from, to, in, out, allow_unlabeled);
    if (*v) return validate(format, in, allow_unlabeled);
    if (*e) return edit(format, to, in, script, out, allow_unlabeled);
    if (*s) return stats(format, in);
    if (*srv) return serve(format, corpus_path, host, port);
  } catch (const IoError& err) {
    std::cerr << err.what() << "\n";
    return kIo;
  } catch (const CLI::ValidationError& err) {
    std::cerr << err.what() << "\n";
    return kIo;
  } catch (const tg::Error& err) {
    std::cerr << err.what() << "\n";
    return exit_code(err);
  }
  return kInvalid;
}
