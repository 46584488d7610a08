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

#include <thread>

#include <gtest/gtest.h>

#include "httplib.h"
#include "json.hpp"
#include "support.h"
#include "treegraph/constituency.h"

namespace treegraph::service {
namespace {

using json = nlohmann::json;

Store make_store() {
  formats::Corpus c = formats::read_penn("(S (NP a) (VP b c))\n(S x y)\n");
  formats::Corpus d = formats::read_turin(testing::fixture("flat4.turin"));
  c.push_back(d[0]);
  return Store(std::move(c));
}

Response get(Store& s, const std::string& path, std::map<std::string, std::string> q = {}) {
  return s.handle({"GET", path, std::move(q), ""});
}

Response post(Store& s, const std::string& path, const json& body) {
  return s.handle({"POST", path, {}, body.dump()});
}

json op(std::uint64_t rev, std::string name, std::string selector = "", json params = json::array()) {
  json j{{"revision", rev}, {"op", std::move(name)}, {"params", std::move(params)}};
  if (!selector.empty()) j["selector"] = selector;
  return j;
}

std::string code(const Response& r) { return json::parse(r.body)["error"]["code"]; }

TEST(Routes, ListAndTree) {
  Store s = make_store();
  json list = json::parse(get(s, "/documents").body);
  ASSERT_EQ(list["documents"].size(), 3u);
  EXPECT_EQ(list["documents"][0]["text"], "a b c");
  EXPECT_EQ(list["documents"][2]["layer"], "dependency");
  Response t = get(s, "/documents/1/tree");
  ASSERT_EQ(t.status, 200);
  json j = json::parse(t.body);
  EXPECT_EQ(j["revision"], 0);
  EXPECT_EQ(j["layer"], "constituency");
  EXPECT_EQ(j["view"]["terminals"], json({"a", "b", "c"}));
  EXPECT_EQ(j["view"]["trees"][0]["label"], "S");
  EXPECT_TRUE(j["graph"].contains("arcs"));
  json dep = json::parse(get(s, "/documents/3/tree", {{"layer", "dependency"}}).body);
  EXPECT_EQ(dep["view"]["nodes"].size(), 5u);
  EXPECT_TRUE(dep["view"]["crossings"].empty());
}

TEST(Routes, Errors) {
  Store s = make_store();
  EXPECT_EQ(get(s, "/nowhere").status, 404);
  EXPECT_EQ(get(s, "/documents/9/tree").status, 404);
  EXPECT_EQ(s.handle({"POST", "/documents", {}, ""}).status, 405);
  EXPECT_EQ(get(s, "/documents/1/op").status, 405);
  EXPECT_EQ(s.handle({"POST", "/documents/1/op", {}, "{not json"}).status, 400);
  EXPECT_EQ(post(s, "/documents/1/op", {{"op", "move_down"}}).status, 400);
  EXPECT_EQ(get(s, "/documents/1/tree", {{"layer", "dependency"}}).status, 400);
  EXPECT_EQ(get(s, "/documents/1/tree", {{"layer", "bogus"}}).status, 400);
}

TEST(Ops, CommitAdvancesRevision) {
  Store s = make_store();
  Response r = post(s, "/documents/1/op", op(0, "move_down", "(1)"));
  ASSERT_EQ(r.status, 200) << r.body;
  json j = json::parse(r.body);
  EXPECT_EQ(j["revision"], 1);
  EXPECT_EQ(j["view"]["terminals"], json({"a", "b", "c"}));
  EXPECT_FALSE(j["selected"].is_null());
  EXPECT_EQ(formats::write_penn(s.find("1")->replay()), "(S (NP a) (VP (• b) c))");
}

TEST(Ops, StaleRevisionIs409AndChangesNothing) {
  Store s = make_store();
  ASSERT_EQ(post(s, "/documents/1/op", op(0, "move_down", "(1)")).status, 200);
  auto before = s.find("1")->snapshot();
  Response r = post(s, "/documents/1/op", op(0, "move_down", "(0)"));
  EXPECT_EQ(r.status, 409);
  EXPECT_EQ(code(r), "stale_revision");
  EXPECT_EQ(json::parse(r.body)["revision"], 1);
  EXPECT_EQ(s.find("1")->snapshot(), before);
}

TEST(Ops, IneligibleOperationIs422AndChangesNothing) {
  Store s = make_store();
  auto before = s.find("1")->snapshot();
  Response r = post(s, "/documents/1/op", op(0, "promote_right", "/VP/b"));
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(code(r), "precondition_failed");
  Response c = post(s, "/documents/3/op", op(0, "move_subtree", "", {"(0)", "(0)"}));
  EXPECT_EQ(c.status, 422);
  EXPECT_EQ(code(c), "cycle");
  EXPECT_EQ(post(s, "/documents/1/op", op(0, "frobnicate")).status, 400);
  EXPECT_EQ(s.find("1")->snapshot(), before);
}

TEST(Ops, ObjectParamsBecomeKeyValues) {
  Store s = make_store();
  Response r = post(s, "/documents/1/op", op(0, "relabel", "/VP", {{"label", "PRED"}}));
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_EQ(formats::write_penn(s.find("1")->replay()), "(S (NP a) (PRED b c))");
}

TEST(Ops, MaterializeWithObjectParams) {
  Store s = make_store();
  json params{{"predicate", {"(1)"}}, {"arguments", {{"Arg0", {"/NP"}}, {"Arg1", {"(2)"}}}}};
  Response r = post(s, "/documents/1/op", op(0, "materialize", "", params));
  ASSERT_EQ(r.status, 200) << r.body;
  json v = json::parse(get(s, "/documents/1/tree", {{"layer", "propbank"}}).body)["view"];
  ASSERT_EQ(v["propositions"].size(), 1u);
  EXPECT_EQ(v["propositions"][0]["arguments"].size(), 2u);
  EXPECT_EQ(v["text"], "rel:        b\nArg0:       a\nArg1:       c\n");
}

TEST(Undo, RestoresExactBytes) {
  Store s = make_store();
  auto initial = s.find("1")->snapshot().first;
  ASSERT_EQ(post(s, "/documents/1/op", op(0, "move_down", "(1)")).status, 200);
  ASSERT_EQ(post(s, "/documents/1/op", op(1, "demote_left", "/VP/c")).status, 200);
  auto middle = s.find("1")->snapshot().first;
  Response u = post(s, "/documents/1/undo", {{"revision", 2}});
  ASSERT_EQ(u.status, 200);
  EXPECT_EQ(json::parse(u.body)["revision"], 3);
  EXPECT_NE(s.find("1")->snapshot().first, middle);
  ASSERT_EQ(post(s, "/documents/1/undo", json::object()).status, 200);
  EXPECT_EQ(s.find("1")->snapshot().first, initial);
  Response none = post(s, "/documents/1/undo", json::object());
  EXPECT_EQ(none.status, 422);
  EXPECT_EQ(post(s, "/documents/1/undo", {{"revision", 0}}).status, 409);
}

TEST(Replay, LogReproducesCurrentState) {
  Store s = make_store();
  std::uint64_t rev = 0;
  auto step = [&](const json& body) {
    Response r = post(s, "/documents/3/op", body);
    if (r.status == 200) ++rev;
    return r.status;
  };
  EXPECT_EQ(step(op(rev, "move_subtree", "", {"(2)", "(3)"})), 200);
  EXPECT_EQ(step(op(rev, "move_subtree", "", {"(0)", "(3)"})), 200);
  EXPECT_EQ(step(op(rev, "move_subtree", "", {"(3)", "(0)"})), 422);
  ASSERT_EQ(post(s, "/documents/3/undo", {{"revision", rev}}).status, 200);
  ++rev;
  EXPECT_EQ(step(op(rev, "insert_constituent", "(1)")), 200);
  Document* d = s.find("3");
  EXPECT_EQ(formats::write_native(d->replay().graph), d->snapshot().first);
  EXPECT_EQ(d->snapshot().second, rev);
}

TEST(Concurrency, ParallelWritersSerialize) {
  Store s = make_store();
  std::atomic<int> committed{0}, conflicts{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 25; ++i) {
        auto rev = s.find("2")->snapshot().second;
        Response r = post(s, "/documents/2/op", op(rev, "move_down", "(0)"));
        if (r.status == 200) ++committed;
        else if (r.status == 409) ++conflicts;
        get(s, "/documents/2/tree");
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(committed + conflicts, 200);
  Document* d = s.find("2");
  EXPECT_EQ(d->snapshot().second, static_cast<std::uint64_t>(committed.load()));
  EXPECT_EQ(formats::write_native(d->replay().graph), d->snapshot().first);
}

TEST(Http, ServesOverSockets) {
  Store s = make_store();
  Server server(s);
  int port = server.bind("127.0.0.1", 0);
  std::thread runner([&] { server.run(); });
  httplib::Client client("127.0.0.1", port);
  auto list = client.Get("/documents");
  ASSERT_TRUE(list);
  EXPECT_EQ(list->status, 200);
  EXPECT_EQ(list->get_header_value("Access-Control-Allow-Origin"), "*");
  auto r = client.Post("/documents/1/op", op(0, "promote_right", "/VP/b").dump(), "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 422);
  auto ok = client.Post("/documents/1/op", op(0, "move_down", "/VP").dump(), "application/json");
  ASSERT_TRUE(ok);
  EXPECT_EQ(ok->status, 200);
  auto tree = client.Get("/documents/1/tree?layer=constituency");
  ASSERT_TRUE(tree);
  EXPECT_EQ(json::parse(tree->body)["revision"], 1);
  auto pre = client.Options("/documents/1/op");
  ASSERT_TRUE(pre);
  EXPECT_EQ(pre->status, 204);
  server.stop();
  runner.join();
}

}  // namespace
}  // namespace treegraph::service
