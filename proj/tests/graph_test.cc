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

#include "treegraph/graph.h"

#include <random>

#include <gtest/gtest.h>

#include "support.h"
#include "treegraph/constituency.h"

namespace treegraph {
namespace {

using constituency::build_chart;

TEST(Anchors, AddAfterFallsBetweenNeighbours) {
  AnnotationGraph g;
  AnchorId a0 = g.add_anchor(0.0), a1 = g.add_anchor(4.0);
  AnchorId x = g.add_anchor_after(a0);
  ASSERT_EQ(g.anchors().size(), 3u);
  EXPECT_EQ(g.anchors()[0].id, a0);
  EXPECT_EQ(g.anchors()[1].id, x);
  EXPECT_EQ(g.anchors()[2].id, a1);
  EXPECT_LT(g.anchor(a0).order, g.anchor(x).order);
  EXPECT_LT(g.anchor(x).order, g.anchor(a1).order);
  EXPECT_FALSE(g.anchor(x).offset.has_value());
  EXPECT_EQ(*g.anchor(a1).offset, 4.0);
}

TEST(Anchors, AddAfterLastAppends) {
  AnnotationGraph g;
  AnchorId a0 = g.add_anchor(), a1 = g.add_anchor();
  AnchorId x = g.add_anchor_after(a1);
  EXPECT_EQ(g.rank(a0), 0u);
  EXPECT_EQ(g.rank(a1), 1u);
  EXPECT_EQ(g.rank(x), 2u);
}

TEST(Anchors, SuccessiveInsertionsKeepCallOrderBetweenBounds) {
  AnnotationGraph g;
  AnchorId a0 = g.add_anchor(), a1 = g.add_anchor();
  AnchorId x = g.add_anchor_after(a0);
  AnchorId y = g.add_anchor_after(x);
  // Oracle: sort the order keys directly.
  std::vector<std::pair<OrderKey, AnchorId>> keys;
  for (AnchorId id : {a0, a1, x, y}) keys.emplace_back(g.anchor(id).order, id);
  std::sort(keys.begin(), keys.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  EXPECT_EQ(keys[0].second, a0);
  EXPECT_EQ(keys[1].second, x);
  EXPECT_EQ(keys[2].second, y);
  EXPECT_EQ(keys[3].second, a1);
}

TEST(Anchors, AddBeforeFirstPrepends) {
  AnnotationGraph g;
  AnchorId a0 = g.add_anchor();
  AnchorId x = g.add_anchor_before(a0);
  EXPECT_EQ(g.rank(x), 0u);
  EXPECT_EQ(g.rank(a0), 1u);
}

TEST(Anchors, UnknownAnchorIsAnError) {
  AnnotationGraph g;
  g.add_anchor();
  try {
    g.add_anchor_after(AnchorId{7});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownAnchor);
  }
}

TEST(Anchors, ExistingOrderSurvivesManyInsertions) {
  std::mt19937 rng(7);
  AnnotationGraph g;
  std::vector<AnchorId> ids{g.add_anchor(), g.add_anchor()};
  for (int i = 0; i < 300; ++i) {
    AnchorId base = ids[rng() % ids.size()];
    AnchorId fresh = rng() % 2 ? g.add_anchor_after(base) : g.add_anchor_before(base);
    ids.push_back(fresh);
    for (std::size_t k = 1; k < g.anchors().size(); ++k) {
      ASSERT_LT(g.anchors()[k - 1].order, g.anchors()[k].order);
    }
  }
  EXPECT_TRUE(validate(g).empty());
}

TEST(Arcs, WordArcOverTwoAnchors) {
  AnnotationGraph g;
  AnchorId a0 = g.add_anchor(), a1 = g.add_anchor();
  ArcId w = g.add_arc(a0, a1, ArcType::kWord, Fields{{"form", "Yields"}});
  EXPECT_EQ(g.arc(w).type, ArcType::kWord);
  EXPECT_EQ(g.arc(w).fields.value_or(kForm, ""), "Yields");
  EXPECT_FALSE(g.arc(w).parent);
  EXPECT_TRUE(g.arc(w).refs.empty());
}

TEST(Arcs, ZeroWidthOnlyForTraces) {
  AnnotationGraph g;
  AnchorId a0 = g.add_anchor();
  try {
    g.add_arc(a0, a0, ArcType::kPhrasal);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidSpan);
  }
  EXPECT_NO_THROW(g.add_arc(a0, a0, ArcType::kTrace));
}

TEST(Arcs, ReversedSpanRejected) {
  AnnotationGraph g;
  AnchorId a0 = g.add_anchor(), a1 = g.add_anchor();
  EXPECT_THROW(g.add_arc(a1, a0, ArcType::kWord), Error);
  EXPECT_THROW(g.add_arc(a0, AnchorId{9}, ArcType::kWord), Error);
}

TEST(Parents, ChartOfABC) {
  Tree t = Tree::phrase("A", {Tree::word("B"), Tree::word("C")});
  auto chart = build_chart(t);
  const AnnotationGraph& g = chart.graph;
  EXPECT_EQ(g.anchors().size(), 3u);
  std::vector<ArcId> kids = children_in_order(g, chart.root);
  ASSERT_EQ(kids.size(), 2u);
  EXPECT_EQ(g.arc(kids[0]).fields.value_or(kForm, ""), "B");
  EXPECT_EQ(g.arc(kids[1]).fields.value_or(kForm, ""), "C");
  EXPECT_EQ(g.parent(kids[0]), chart.root);
  EXPECT_EQ(right_sibling(g, kids[0]), kids[1]);
  EXPECT_EQ(right_sibling(g, kids[1]), std::nullopt);
  EXPECT_EQ(left_sibling(g, kids[1]), kids[0]);
  EXPECT_TRUE(children_in_order(g, kids[0]).empty());
}

TEST(Parents, SelfAndIndirectCyclesRejected) {
  AnnotationGraph g;
  AnchorId a0 = g.add_anchor(), a1 = g.add_anchor();
  ArcId x = g.add_arc(a0, a1, ArcType::kPhrasal);
  ArcId y = g.add_arc(a0, a1, ArcType::kPhrasal);
  EXPECT_THROW(g.set_parent(x, x), Error);
  g.set_parent(x, y);
  try {
    g.set_parent(y, x);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCycle);
  }
  EXPECT_EQ(g.parent(y), std::nullopt);
}

TEST(Siblings, RightSiblingAfterMoveDown) {
  Tree t = Tree::phrase("A", {Tree::word("B"), Tree::word("C"), Tree::word("D")});
  auto chart = build_chart(t);
  AnnotationGraph& g = chart.graph;
  std::vector<ArcId> kids = children_in_order(g, chart.root);
  constituency::OrientedTree ot(g, kids[1]);
  constituency::move_down(ot);
  ArcId fresh = *g.parent(kids[1]);
  // Oracle: the sibling is the arc starting where the new node ends under
  // the same parent.
  std::optional<ArcId> expected;
  for (const auto& [id, a] : g.arcs()) {
    if (a.parent == g.parent(fresh) && a.start == g.arc(fresh).end) expected = id;
  }
  EXPECT_EQ(right_sibling(g, fresh), expected);
  EXPECT_EQ(expected, kids[2]);
}

TEST(Siblings, ZeroWidthArcComesFirstUnlessSkipped) {
  // (S (NP w0) * (VP w1)) with the trace on its own anchor between them.
  AnnotationGraph g;
  AnchorId b0 = g.add_anchor(), b1 = g.add_anchor(), b2 = g.add_anchor();
  ArcId s = g.add_arc(b0, b2, ArcType::kPhrasal, Fields{{"label", "S"}});
  ArcId w0 = g.add_arc(b0, b1, ArcType::kWord);
  ArcId w1 = g.add_arc(b1, b2, ArcType::kWord);
  ArcId tr = g.add_arc(b1, b1, ArcType::kTrace);
  for (ArcId k : {w0, w1, tr}) g.set_parent(k, s);
  EXPECT_EQ(right_sibling(g, w0), tr);
  EXPECT_EQ(right_sibling(g, w0, true), w1);
}

TEST(Siblings, AmbiguityIsAnError) {
  AnnotationGraph g;
  AnchorId b0 = g.add_anchor(), b1 = g.add_anchor(), b2 = g.add_anchor();
  ArcId w0 = g.add_arc(b0, b1, ArcType::kWord);
  g.add_arc(b1, b2, ArcType::kWord);
  g.add_arc(b1, b2, ArcType::kWord);
  try {
    right_sibling(g, w0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAmbiguousSibling);
  }
}

TEST(Siblings, OtherLayersDoNotCompete) {
  AnnotationGraph g;
  AnchorId b0 = g.add_anchor(), b1 = g.add_anchor(), b2 = g.add_anchor();
  ArcId w0 = g.add_arc(b0, b1, ArcType::kWord);
  ArcId w1 = g.add_arc(b1, b2, ArcType::kWord);
  g.add_arc(b1, b2, ArcType::kArg, Fields{{"label", "ARG1"}});
  EXPECT_EQ(right_sibling(g, w0), w1);
}

TEST(Coterminous, UnaryChainOutermostFirst) {
  Tree t = Tree::phrase("A", {Tree::phrase("B", {Tree::word("x")})});
  auto chart = build_chart(t);
  const AnnotationGraph& g = chart.graph;
  ArcId b = children_in_order(g, chart.root).front();
  ArcId x = children_in_order(g, b).front();
  // The word shares the span and family, so it closes the chain.
  EXPECT_EQ(coterminous(g, b), (std::vector<ArcId>{chart.root, b, x}));
  EXPECT_EQ(coterminous(g, x), coterminous(g, chart.root));
}

TEST(Coterminous, StackedMoveDowns) {
  Tree t = Tree::phrase("A", {Tree::word("x"), Tree::word("y")});
  auto chart = build_chart(t);
  AnnotationGraph& g = chart.graph;
  ArcId x = children_in_order(g, chart.root).front();
  constituency::OrientedTree ot(g, x);
  constituency::move_down(ot);
  constituency::move_down(ot);
  std::vector<ArcId> chain = coterminous(g, x);
  ASSERT_EQ(chain.size(), 3u);
  EXPECT_EQ(chain[2], x);
  EXPECT_EQ(g.parent(chain[2]), chain[1]);
  EXPECT_EQ(g.parent(chain[1]), chain[0]);
  EXPECT_EQ(g.parent(chain[0]), chart.root);
}

TEST(ChildrenInOrder, InnermostFirstOnTies) {
  AnnotationGraph g;
  AnchorId b0 = g.add_anchor(), b1 = g.add_anchor();
  ArcId r = g.add_arc(b0, b1, ArcType::kPhrasal);
  ArcId w = g.add_arc(b0, b1, ArcType::kWord);
  ArcId p = g.add_arc(b0, b1, ArcType::kPhrasal);
  g.set_parent(w, r);
  g.set_parent(p, r);
  std::vector<ArcId> kids = children_in_order(g, r);
  EXPECT_EQ(kids.size(), 2u);
  EXPECT_EQ(kids, (std::vector<ArcId>{w, p}));
}

TEST(Validate, CleanChartHasNoViolations) {
  Tree t = Tree::phrase("S", {Tree::phrase("NP", {Tree::word("the"), Tree::word("boy")}),
                              Tree::trace("*", "1")});
  EXPECT_TRUE(validate(build_chart(t).graph).empty());
}

TEST(Validate, CorruptedCycleNamesBothArcs) {
  AnnotationGraph g;
  AnchorId b0 = g.add_anchor(), b1 = g.add_anchor();
  Arc x{ArcId{3}, b0, b1, ArcType::kPhrasal, {}, ArcId{5}, {}};
  Arc y{ArcId{5}, b0, b1, ArcType::kPhrasal, {}, ArcId{3}, {}};
  g.restore(g.anchors(), {x, y});
  std::vector<Violation> v = validate(g);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].subject.find("3"), std::string::npos);
  EXPECT_NE(v[0].subject.find("5"), std::string::npos);
}

TEST(Validate, ReversedSpanFromDeserialization) {
  AnnotationGraph g;
  AnchorId b0 = g.add_anchor(), b1 = g.add_anchor();
  Arc bad{ArcId{0}, b1, b0, ArcType::kWord, {}, std::nullopt, {}};
  g.restore(g.anchors(), {bad});
  std::vector<Violation> v = validate(g);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].subject, "arc 0");
}

TEST(Validate, DanglingReferencesReported) {
  AnnotationGraph g;
  AnchorId b0 = g.add_anchor(), b1 = g.add_anchor();
  Arc w{ArcId{0}, b0, b1, ArcType::kWord, {}, ArcId{9}, {}};
  Arc p{ArcId{1}, b0, b1, ArcType::kPred, {}, std::nullopt, {ArcId{8}}};
  g.restore(g.anchors(), {w, p});
  EXPECT_EQ(validate(g).size(), 2u);
}

TEST(Validate, RemainsEmptyAfterRandomSuccessfulOperations) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto chart = build_chart(testing::random_tree(rng, 6, true));
    AnnotationGraph& g = chart.graph;
    for (int step = 0; step < 10; ++step) {
      std::vector<ArcId> ids;
      for (const auto& [id, a] : g.arcs()) ids.push_back(id);
      ArcId pick = ids[rng() % ids.size()];
      constituency::OrientedTree t(g, pick);
      try {
        switch (rng() % 6) {
          case 0: constituency::move_down(t); break;
          case 1: constituency::move_up(t); break;
          case 2: constituency::promote_right(t); break;
          case 3: constituency::promote_left(t); break;
          case 4: constituency::demote_right(t); break;
          default: constituency::demote_left(t); break;
        }
      } catch (const Error&) {
      }
      ASSERT_TRUE(validate(g).empty());
    }
  }
}

}  // namespace
}  // namespace treegraph
