#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace treksep;

namespace {

Trek dag_trek(Path left, Path right) {
  Trek t;
  t.middle = {left.front()};
  t.left = std::move(left);
  t.right = std::move(right);
  return t;
}

std::vector<std::string> monomials(const MixedGraph& g, const std::vector<Trek>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(to_string(trek_monomial(g, t)));
  return out;
}

}  // namespace

TEST(SimpleTreks, ChokeOneToFour) {
  MixedGraph g = fixtures::choke();
  auto ts = enumerate_simple_treks(g, 1, 4);
  ASSERT_EQ(ts.size(), 2u);
  EXPECT_EQ(ts[0], dag_trek({1}, {1, 2, 4}));
  EXPECT_EQ(ts[1], dag_trek({1}, {1, 3, 4}));
  EXPECT_EQ(monomials(g, ts), (std::vector<std::string>{"φ_{1,1}·λ_{1,2}·λ_{2,4}", "φ_{1,1}·λ_{1,3}·λ_{3,4}"}));
}

TEST(SimpleTreks, VertexOutOfRange) {
  EXPECT_THROW(enumerate_simple_treks(fixtures::choke(), 3, 6), InvalidArgument);
}

TEST(SimpleTreks, SpiderNoCommonAncestor) { EXPECT_TRUE(enumerate_simple_treks(fixtures::spider(), 3, 6).empty()); }

TEST(SimpleTreks, TrivialTrekFirst) {
  MixedGraph g = fixtures::choke();
  auto ts = enumerate_simple_treks(g, 4, 4);
  ASSERT_FALSE(ts.empty());
  EXPECT_EQ(ts[0], dag_trek({4}, {4}));
  EXPECT_EQ(to_string(trek_monomial(g, ts[0])), "φ_{4,4}");
  EXPECT_EQ(enumerate_simple_treks(MixedGraph(3), 2, 2).size(), 1u);
}

TEST(SimpleTreks, SimplicityExcludesSharedInteriorVertices) {
  // 1 -> 2 -> 3: the pair (1->2->3, 1->2->3) is a trek of 3 with itself but not simple
  MixedGraph g = fixtures::from("v 3\ne 1 -> 2\ne 2 -> 3");
  auto all = enumerate_treks(g, 3, 3);
  auto simple = enumerate_simple_treks(g, 3, 3);
  EXPECT_EQ(all.size(), 3u);
  EXPECT_EQ(simple.size(), 1u);
  EXPECT_FALSE(is_simple(dag_trek({1, 2, 3}, {1, 2, 3})));
  EXPECT_TRUE(is_simple(dag_trek({1, 2}, {1, 3})));
}

TEST(SimpleTreks, MixedMiddles) {
  MixedGraph g = fixtures::mixed();
  auto ts = enumerate_simple_treks(g, 3, 4);
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(ts[0].middle_kind, MiddleKind::BidirectedEdge);
  EXPECT_EQ(to_string(ts[0]), "L:1->3  M:1<->2  R:2->4");
  EXPECT_EQ(to_string(trek_monomial(g, ts[0])), "φ_{1,2}·λ_{1,3}·λ_{2,4}");

  MixedGraph u = fixtures::path4();
  auto us = enumerate_simple_treks(u, 1, 3);
  ASSERT_EQ(us.size(), 1u);
  EXPECT_EQ(us[0].middle_kind, MiddleKind::UndirectedPath);
  EXPECT_EQ(us[0].middle, (Path{1, 2, 3}));
  EXPECT_EQ(to_string(trek_monomial(u, us[0])), "ψ_{1,2}·ψ_{2,3}");
}

TEST(SimpleTreks, CapIsAnError) {
  MixedGraph g(6);
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) g.add_directed(i, j);
  EXPECT_THROW(enumerate_simple_treks(g, 5, 6, 5), CapExceeded);
  EXPECT_GT(enumerate_simple_treks(g, 5, 6).size(), 5u);
}

TEST(Monomial, Examples) {
  MixedGraph g = fixtures::from("v 2\ne 1 -> 2");
  EXPECT_EQ(to_string(trek_monomial(g, dag_trek({1}, {1, 2}))), "φ_{1,1}·λ_{1,2}");
  EXPECT_EQ(to_string(trek_monomial(g, dag_trek({1}, {1}))), "φ_{1,1}");
  EXPECT_EQ(to_string(trek_monomial(g, dag_trek({1, 2}, {1, 2}))), "φ_{1,1}·λ_{1,2}^2");
  EXPECT_THROW(trek_monomial(g, dag_trek({2}, {2, 1})), InvalidArgument);
}

TEST(SidedIntersection, SpiderPairIsClean) {
  Trek a = dag_trek({3}, {3, 7, 5});
  Trek b = dag_trek({6, 7, 1}, {6});
  TrekSystem sys({a, b});
  EXPECT_TRUE(is_trek_of(fixtures::spider(), a));
  EXPECT_TRUE(is_trek_of(fixtures::spider(), b));
  EXPECT_FALSE(has_sided_intersection(sys));
}

TEST(SidedIntersection, RepeatedTrek) {
  Trek a = dag_trek({1}, {1, 2, 4});
  EXPECT_TRUE(has_sided_intersection(TrekSystem({a, a})));
}

TEST(SidedIntersection, LeftAgainstRightIsNotACollision) {
  // a vertex on the left of one trek and the right of another is allowed
  Trek a = dag_trek({1, 2}, {1});
  Trek b = dag_trek({3}, {3, 2});
  EXPECT_FALSE(has_sided_intersection(TrekSystem({a, b})));
}

TEST(SidedIntersection, ChokeEveryPairCollides) {
  MixedGraph g = fixtures::choke();
  std::vector<Trek> from1, from3;
  for (VertexId b : {4, 5}) {
    for (auto& t : enumerate_simple_treks(g, 1, b)) from1.push_back(t);
    for (auto& t : enumerate_simple_treks(g, 3, b)) from3.push_back(t);
  }
  ASSERT_FALSE(from1.empty());
  ASSERT_FALSE(from3.empty());
  int pairs = 0;
  for (const auto& s : from1)
    for (const auto& t : from3) {
      if (s.b_end() == t.b_end()) continue;
      ++pairs;
      EXPECT_TRUE(has_sided_intersection(TrekSystem({s, t}))) << to_string(s) << " / " << to_string(t);
    }
  EXPECT_GT(pairs, 0);
}

TEST(Noncrossing, Choke) {
  MixedGraph g = fixtures::choke();
  EXPECT_FALSE(exists_noncrossing_system(g, {1, 3}, {4, 5}, 2));
  EXPECT_TRUE(exists_noncrossing_system(g, {1, 3}, {4, 5}, 1));
}

TEST(Noncrossing, Spider) {
  MixedGraph g = fixtures::spider();
  EXPECT_FALSE(exists_noncrossing_system(g, {1, 2, 3}, {4, 5, 6}, 3));
  EXPECT_TRUE(exists_noncrossing_system(g, {1, 2, 3}, {4, 5, 6}, 2));
  EXPECT_EQ(max_noncrossing_system_size(g, {1, 2, 3}, {4, 5, 6}), 2u);
}

TEST(Noncrossing, MonotoneInSize) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    MixedGraph g = random_graph(seed % 2 ? GraphClass::Dag : GraphClass::Mixed, 5, seed, 0.5);
    VertexSet A{1, 2, 3}, B{3, 4, 5};
    bool previous = true;
    for (std::size_t r = 1; r <= 3; ++r) {
      bool now = exists_noncrossing_system(g, A, B, r);
      EXPECT_TRUE(previous || !now) << serialize(g) << "r=" << r;
      previous = now;
    }
  }
}

// Every enumerated trek is a trek, is simple, and lands on the requested
// endpoints; every DAG vertex has its trivial trek.
TEST(SimpleTreks, InvariantsOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GraphClass cls = seed % 3 == 0 ? GraphClass::Dag : seed % 3 == 1 ? GraphClass::Undirected : GraphClass::Mixed;
    MixedGraph g = random_graph(cls, 5, seed, 0.5);
    for (VertexId i = 1; i <= 5; ++i)
      for (VertexId j = 1; j <= 5; ++j) {
        auto ts = enumerate_simple_treks(g, i, j);
        for (std::size_t k = 0; k < ts.size(); ++k) {
          EXPECT_TRUE(is_trek_of(g, ts[k])) << to_string(ts[k]);
          EXPECT_TRUE(is_simple(ts[k])) << to_string(ts[k]);
          EXPECT_EQ(ts[k].a_end(), i);
          EXPECT_EQ(ts[k].b_end(), j);
          if (k) {
            EXPECT_TRUE(trek_less(ts[k - 1], ts[k]));
          }
        }
        if (i == j && g.is_dag()) {
          EXPECT_GE(ts.size(), 1u);
        }
      }
  }
}
