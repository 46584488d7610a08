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

// Runs the treegraph binary and checks outputs and exit codes.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "support.h"
#include "treegraph/formats.h"

namespace treegraph {
namespace {

namespace fs = std::filesystem;
using testing::fixture;

struct Outcome {
  int status;
  std::string out, err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("treegraph-cli-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string put(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
    return path(name);
  }

  std::string get(const std::string& name) const { return slurp(path(name)); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  }

  Outcome invoke(const std::string& args, const std::string& env = "") const {
    std::string cmd = env + " " + TREEGRAPH_CLI + " " + args + " >" + path("stdout") + " 2>" +
                      path("stderr");
    int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, get("stdout"), get("stderr")};
  }

  static std::string fx(const std::string& name) {
    return std::string(TREEGRAPH_FIXTURES) + "/" + name;
  }

  fs::path dir_;
};

TEST_F(Cli, NativeToNativeIsByteIdentical) {
  ASSERT_EQ(invoke("convert --from penn --to native " + fx("yields.mrg") + " " + path("a.jsonl")).status, 0);
  ASSERT_EQ(invoke("convert " + path("a.jsonl") + " " + path("b.jsonl")).status, 0);
  EXPECT_EQ(get("a.jsonl"), get("b.jsonl"));
  EXPECT_FALSE(get("a.jsonl").empty());
}

TEST_F(Cli, PennToTiger) {
  Outcome r = invoke("convert --from penn --to tiger-xml " + fx("yields.mrg") + " " + path("y.xml"));
  ASSERT_EQ(r.status, 0) << r.err;
  formats::Corpus back = formats::read_tiger_xml(get("y.xml"));
  ASSERT_EQ(back.size(), 1u);
  formats::Corpus orig = formats::read_penn(fixture("yields.mrg"));
  EXPECT_EQ(formats::write_penn(back[0]), formats::write_penn(orig[0]));
}

TEST_F(Cli, CrossingTreeIntoPennIsConversionLoss) {
  // Tree 2: w1 depends on w4 across w2, which hangs from the root.
  std::string in = put("tree2.turin",
                       "1 w1 (w1 X) [4;]\n2 w2 (w2 X) [0;]\n3 w3 (w3 X) [4;]\n4 w4 (w4 X) [0;]\n"
                       "\n1 v1 (v1 X) [0;]\n");
  Outcome r = invoke("convert --from turin --to penn " + in + " " + path("out.mrg"));
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("sentence 1:"), std::string::npos) << r.err;
  EXPECT_EQ(r.err.find("sentence 2:"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(path("out.mrg")));
}

TEST_F(Cli, FormatFromEnvironment) {
  std::string in = put("input.txt", fixture("yields.mrg"));
  EXPECT_EQ(invoke("stats " + in).status, 3);
  EXPECT_EQ(invoke("stats " + in, "TREEGRAPH_FORMAT=penn").status, 0);
  EXPECT_EQ(invoke("stats --format penn " + in, "TREEGRAPH_FORMAT=native").status, 0);
}

TEST_F(Cli, ValidateCleanFile) {
  Outcome r = invoke("validate " + fx("yields.mrg"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "");
  for (auto [file, format] : {std::pair{"uam.txt", "bracket-record"}, {"floresta.txt", "floresta"},
                              {"turin.txt", "turin"}, {"tiger.xml", "tiger-xml"},
                              {"french.xml", "nested-xml"}}) {
    Outcome v = invoke(std::string("validate --format ") + format + " " + fx(file));
    EXPECT_EQ(v.status, 0) << file << ": " << v.out << v.err;
  }
}

TEST_F(Cli, ValidateReportsInjectedCycle) {
  std::string in = put("cycle.jsonl",
                       R"x({"anchors":[{"id":0,"order":"0"},{"id":1,"order":"1"}],"arcs":[)x"
                       R"x({"id":0,"start":0,"end":1,"type":"word","fields":{"form":"a"},"parent":1},)x"
                       R"x({"id":1,"start":0,"end":1,"type":"phrasal","fields":{"label":"X"},"parent":2},)x"
                       R"x({"id":2,"start":0,"end":1,"type":"phrasal","fields":{"label":"Y"},"parent":1}]})x"
                       "\n");
  Outcome r = invoke("validate " + in);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("arcs 1, 2"), std::string::npos) << r.out;
}

TEST_F(Cli, ValidateWarnsAboutUnlabeledNodes) {
  std::string in = put("u.mrg", "(S a (\xE2\x80\xA2 b))\n");
  Outcome r = invoke("validate " + in);
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("warning: sentence 1:"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("unlabeled"), std::string::npos);
  EXPECT_EQ(invoke("validate --allow-unlabeled " + in).out, "");
}

TEST_F(Cli, EditMoveDown) {
  std::string in = put("abcd.mrg", "(A B C D)\n");
  std::string script = put("s.txt", "select /C\nmove_down\n");
  Outcome refused = invoke("edit " + in + " --script " + script + " " + path("out.mrg"));
  EXPECT_EQ(refused.status, 1);
  EXPECT_FALSE(fs::exists(path("out.mrg")));
  Outcome r = invoke("edit " + in + " --script " + script + " --allow-unlabeled " + path("out.mrg"));
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(get("out.mrg"), "(A B (\xE2\x80\xA2 C) D)\n");
  std::string named = put("n.txt", "group /C\nrelabel label=X\n");
  ASSERT_EQ(invoke("edit " + in + " --script " + named + " " + path("x.mrg")).status, 0);
  EXPECT_EQ(get("x.mrg"), "(A B (X C) D)\n");
}

TEST_F(Cli, EmptyScriptCopies) {
  std::string script = put("empty.txt", "# nothing\n");
  ASSERT_EQ(invoke("edit " + fx("switchboard.mrg") + " --script " + script + " " + path("o.mrg")).status, 0);
  EXPECT_EQ(get("o.mrg"), formats::canonical_penn(fixture("switchboard.mrg")));
}

TEST_F(Cli, EditFailureNamesCommandAndWritesNothing) {
  std::string script = put("bad.txt", "move_down (0)\n\npromote_right (1)\n");
  Outcome r = invoke("edit " + fx("yields.mrg") + " --script " + script + " --allow-unlabeled " + path("o.mrg"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("command 2 (line 3, promote_right)"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(path("o.mrg")));
}

TEST_F(Cli, EditIsDeterministic) {
  std::string script = put("s.txt", "move_down (3)\nrelabel label=X\ninsert_trace before (0) *U*\n");
  std::string a, b;
  for (std::string* out : {&a, &b}) {
    ASSERT_EQ(invoke("edit " + fx("yields.mrg") + " --script " + script + " --to native " +
                  path("o.jsonl"))
                  .status,
              0);
    *out = get("o.jsonl");
  }
  EXPECT_EQ(a, b);
}

TEST_F(Cli, TreesOneToFiveThroughEdit) {
  Outcome r = invoke("edit --format turin " + fx("flat4.turin") + " --script " + fx("trees1to5.script") +
              " " + path("o.jsonl"));
  ASSERT_EQ(r.status, 0) << r.err;
  formats::Corpus c = formats::read_native(get("o.jsonl"));
  ASSERT_EQ(c.size(), 1u);
  const AnnotationGraph& g = c[0].graph;
  auto head = [&](std::string_view form) {
    for (const auto& [id, a] : g.arcs()) {
      if (a.fields.value_or(kForm, "") != form) continue;
      const Arc& p = g.arc(*a.parent);
      return p.type == ArcType::kRoot ? std::string("Root") : p.fields.value_or(kForm, "?");
    }
    return std::string("missing");
  };
  EXPECT_EQ(head("w1"), "w3");
  EXPECT_EQ(head("w2"), "Root");
  EXPECT_EQ(head("w3"), "Root");
  EXPECT_EQ(head("w4"), "Root");
}

TEST_F(Cli, StatsCounts) {
  Outcome r = invoke("stats " + fx("yields.mrg"));
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("sentences: 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("trace: 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("word: 21\n"), std::string::npos);
  std::string empty = put("empty.mrg", "");
  Outcome e = invoke("stats --format penn " + empty);
  ASSERT_EQ(e.status, 0);
  EXPECT_NE(e.out.find("sentences: 0\n"), std::string::npos);
  EXPECT_NE(e.out.find("arcs: 0\n"), std::string::npos);
}

TEST_F(Cli, StatsMatchRecount) {
  Outcome r = invoke("stats " + fx("switchboard.mrg"));
  formats::Corpus c = formats::read_penn(fixture("switchboard.mrg"));
  std::size_t arcs = 0, traces = 0, anchors = 0;
  for (const auto& s : c) {
    anchors += s.graph.anchors().size();
    for (const auto& [id, a] : s.graph.arcs()) {
      ++arcs;
      traces += a.type == ArcType::kTrace;
    }
  }
  EXPECT_NE(r.out.find("sentences: 2\n"), std::string::npos);
  EXPECT_NE(r.out.find("anchors: " + std::to_string(anchors) + "\n"), std::string::npos);
  EXPECT_NE(r.out.find("arcs: " + std::to_string(arcs) + "\n"), std::string::npos);
  EXPECT_NE(r.out.find("trace: " + std::to_string(traces) + "\n"), std::string::npos);
}

TEST_F(Cli, IoAndParseFailuresExitThree) {
  EXPECT_EQ(invoke("validate " + path("missing.mrg")).status, 3);
  EXPECT_EQ(invoke("validate " + put("bad.mrg", "(S (NP a)\n")).status, 3);
  EXPECT_EQ(invoke("convert --from penn --to penn " + fx("yields.mrg") + " /nonexistent/dir/o.mrg").status, 3);
  EXPECT_EQ(invoke("convert --from penn --to klingon " + fx("yields.mrg") + " " + path("o")).status, 3);
}

TEST_F(Cli, NoWriterForTarget) {
  EXPECT_EQ(invoke("convert --from penn --to turin " + fx("yields.mrg") + " " + path("o")).status, 1);
}

}  // namespace
}  // namespace treegraph
