#include <gtest/gtest.h>

#include <functional>

#include "fixtures.hpp"

using namespace treksep;

namespace {

// Does some trek from A to B avoid the triple? Brute force over every trek
// with self-avoiding segments; a trivial middle counts as its top vertex.
bool trek_oracle_separates(const MixedGraph& g, const VertexSet& A, const VertexSet& B, const SeparationTriple& c) {
  auto hits = [](const auto& seq, const VertexSet& s) {
    for (VertexId v : seq)
      if (s.count(v)) return true;
    return false;
  };
  for (VertexId a : A)
    for (VertexId b : B)
      for (const Trek& t : enumerate_treks(g, a, b))
        if (!hits(t.left, c.c_left) && !hits(t.blockable_middle(), c.c_mid) && !hits(t.right, c.c_right))
          return false;
  return true;
}

// Classic d-separation straight from the definition: every simple path in
// the skeleton between A and B has a noncollider in C or a collider with no
// descendant in C.
bool path_oracle_d_separates(const MixedGraph& g, const VertexSet& A, const VertexSet& B, const VertexSet& C) {
  const int m = g.vertex_count();
  std::vector<VertexSet> desc(m + 1);
  for (VertexId v = 1; v <= m; ++v) desc[v] = descendants(g, v);
  auto adjacent = [&](VertexId x, VertexId y) { return g.has_directed(x, y) || g.has_directed(y, x); };
  std::vector<VertexId> path;
  std::vector<char> on_path(m + 1, 0);
  std::function<bool(VertexId)> open_path_exists = [&](VertexId v) -> bool {
    if (B.count(v) && path.size() > 1) {
      bool blocked = false;
      for (std::size_t k = 1; k + 1 < path.size() && !blocked; ++k) {
        VertexId x = path[k - 1], y = path[k], z = path[k + 1];
        bool collider = g.has_directed(x, y) && g.has_directed(z, y);
        if (collider) {
          bool active = false;
          for (VertexId d : desc[y]) active = active || C.count(d);
          blocked = !active;
        } else {
          blocked = C.count(y) > 0;
        }
      }
      if (!blocked) return true;
    }
    for (VertexId w = 1; w <= m; ++w) {
      if (on_path[w] || !adjacent(v, w)) continue;
      on_path[w] = 1;
      path.push_back(w);
      bool found = open_path_exists(w);
      path.pop_back();
      on_path[w] = 0;
      if (found) return true;
    }
    return false;
  };
  for (VertexId a : A) {
    path = {a};
    std::fill(on_path.begin(), on_path.end(), 0);
    on_path[a] = 1;
    if (open_path_exists(a)) return false;
  }
  return true;
}

// Number of source-to-sink paths in the auxiliary network, by DFS.
std::size_t network_path_count(const FlowNetwork& net) {
  std::vector<char> on(net.graph().node_count(), 0);
  std::function<std::size_t(int)> count = [&](int v) -> std::size_t {
    if (v == FlowNetwork::kSink) return 1;
    std::size_t total = 0;
    on[v] = 1;
    for (const auto& a : net.graph().arcs(v))
      if (!a.residual_only && !on[a.to]) total += count(a.to);
    on[v] = 0;
    return total;
  };
  return count(FlowNetwork::kSource);
}

SeparationTriple random_triple(std::mt19937_64& rng, int m) {
  SeparationTriple c;
  std::bernoulli_distribution coin(0.2);
  for (VertexId v = 1; v <= m; ++v) {
    if (coin(rng)) c.c_left.insert(v);
    if (coin(rng)) c.c_mid.insert(v);
    if (coin(rng)) c.c_right.insert(v);
  }
  return c;
}

VertexSet random_set(std::mt19937_64& rng, int m) {
  VertexSet s;
  std::bernoulli_distribution coin(0.4);
  for (VertexId v = 1; v <= m; ++v)
    if (coin(rng)) s.insert(v);
  if (s.empty()) s.insert(1 + static_cast<int>(rng() % m));
  return s;
}

GraphClass class_of(std::uint64_t seed) {
  return seed % 3 == 0 ? GraphClass::Dag : seed % 3 == 1 ? GraphClass::Undirected : GraphClass::Mixed;
}

std::vector<std::array<char, 3>> block(int m, VertexId v, Layer l) {
  std::vector<std::array<char, 3>> b(m + 1, {0, 0, 0});
  b[v][static_cast<int>(l)] = 1;
  return b;
}

}  // namespace

TEST(AuxiliaryGraph, SingleEdge) {
  MixedGraph g = fixtures::from("v 2\ne 1 -> 2");
  FlowNetwork net = build_auxiliary_graph(g, {1}, {2});
  EXPECT_EQ(net.graph().node_count(), 2 + 6 * 2);
  EXPECT_TRUE(net.connected());
  // the only path is s -> 1' -> 1'' -> 1 -> 2 -> t
  for (Layer l : {Layer::Left, Layer::Middle, Layer::Right}) EXPECT_FALSE(net.connected(block(2, 1, l)));
  EXPECT_FALSE(net.connected(block(2, 2, Layer::Right)));
  EXPECT_TRUE(net.connected(block(2, 2, Layer::Left)));
  EXPECT_TRUE(net.connected(block(2, 2, Layer::Middle)));
  EXPECT_EQ(net.node_name(net.node_in(1, Layer::Left)), "1'-");
  EXPECT_EQ(net.node_name(net.node_out(2, Layer::Middle)), "2''+");
}

TEST(AuxiliaryGraph, EdgelessHasNoPath) {
  EXPECT_FALSE(build_auxiliary_graph(MixedGraph(2), {1}, {2}).connected());
}

TEST(AuxiliaryGraph, UndirectedTravelUsesMiddleLayer) {
  MixedGraph g = fixtures::from("v 3\ne 1 -- 2\ne 2 -- 3");
  FlowNetwork net = build_auxiliary_graph(g, {1}, {3});
  EXPECT_TRUE(net.connected());
  EXPECT_FALSE(net.connected(block(3, 2, Layer::Middle)));
  EXPECT_TRUE(net.connected(block(3, 2, Layer::Left)));
  EXPECT_TRUE(net.connected(block(3, 2, Layer::Right)));
}

TEST(AuxiliaryGraph, RejectsOutOfRangeSets) {
  EXPECT_THROW(build_auxiliary_graph(fixtures::choke(), {0}, {1}), InvalidArgument);
  EXPECT_THROW(build_auxiliary_graph(fixtures::choke(), {1}, {6}), InvalidArgument);
}

// Source-to-sink paths are in bijection with the treks between the terminals.
TEST(AuxiliaryGraph, PathsMatchTreks) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    MixedGraph g = random_graph(seed % 2 ? GraphClass::Dag : GraphClass::Mixed, 5, seed, 0.5);
    for (VertexId i = 1; i <= 5; ++i)
      for (VertexId j = 1; j <= 5; ++j)
        EXPECT_EQ(network_path_count(build_auxiliary_graph(g, {i}, {j})), enumerate_treks(g, i, j).size())
            << serialize(g) << i << "," << j;
  }
}

TEST(TSeparation, ChokeExamples) {
  MixedGraph g = fixtures::choke();
  EXPECT_TRUE(is_t_separating(g, {1, 3}, {4, 5}, {{}, {}, {4}}));
  EXPECT_FALSE(is_t_separating(g, {1, 3}, {4, 5}, {{}, {}, {5}}));
}

TEST(TSeparation, SpiderExamples) {
  MixedGraph g = fixtures::spider();
  EXPECT_FALSE(is_t_separating(g, {1, 2, 3}, {4, 5, 6}, {{7}, {}, {}}));
  EXPECT_TRUE(is_t_separating(g, {1, 2, 3}, {4, 5, 6}, {{7}, {}, {7}}));
}

TEST(TSeparation, TrivialTriplesAlwaysSeparate) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    MixedGraph g = random_graph(class_of(seed), 6, seed, 0.5);
    VertexSet A = random_set(rng, 6), B = random_set(rng, 6);
    EXPECT_TRUE(is_t_separating(g, A, B, {A, {}, {}}));
    EXPECT_TRUE(is_t_separating(g, A, B, {{}, {}, B}));
  }
}

TEST(TSeparation, AgreesWithTrekOracle) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    MixedGraph g = random_graph(class_of(seed), 5, seed, 0.45);
    for (int q = 0; q < 6; ++q) {
      VertexSet A = random_set(rng, 5), B = random_set(rng, 5);
      SeparationTriple c = random_triple(rng, 5);
      EXPECT_EQ(is_t_separating(g, A, B, c), trek_oracle_separates(g, A, B, c))
          << serialize(g) << format_set(A) << " " << format_set(B) << " " << to_string(c);
    }
  }
}

TEST(MinSeparator, Choke) {
  RankResult r = min_t_separator(fixtures::choke(), {1, 3}, {4, 5});
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.flow_value, 1);
  EXPECT_EQ(r.certificate, (SeparationTriple{{}, {}, {4}}));
}

TEST(MinSeparator, Spider) {
  MixedGraph g = fixtures::spider();
  RankResult r = min_t_separator(g, {1, 2, 3}, {4, 5, 6});
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(r.certificate.size(), 2u);
  EXPECT_TRUE(is_t_separating(g, {1, 2, 3}, {4, 5, 6}, r.certificate));
}

TEST(MinSeparator, SingletonOverlap) {
  RankResult r = min_t_separator(MixedGraph(3), {1}, {1});
  EXPECT_EQ(r.rank, 1u);
  auto [ca, cb] = r.certificate.pair_view();
  VertexSet both = ca;
  both.insert(cb.begin(), cb.end());
  EXPECT_EQ(both, VertexSet{1});
}

TEST(GenericRank, Examples) {
  EXPECT_EQ(generic_rank(fixtures::path4(), {1, 2}, {3, 4}), 1u);
  EXPECT_EQ(generic_rank(fixtures::from("v 3\ne 1 -> 3\ne 2 -> 3"), {1}, {2}), 0u);
  EXPECT_EQ(generic_rank(fixtures::mixed(), {3}, {4}), 1u);
  for (VertexId v = 1; v <= 5; ++v) EXPECT_EQ(generic_rank(fixtures::choke(), {v}, {v}), 1u);
}

TEST(GenericRank, SymmetricAndBounded) {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    MixedGraph g = random_graph(class_of(seed), 6, seed, 0.4);
    VertexSet A = random_set(rng, 6), B = random_set(rng, 6);
    std::size_t r = generic_rank(g, A, B);
    EXPECT_EQ(r, generic_rank(g, B, A)) << serialize(g);
    EXPECT_LE(r, std::min(A.size(), B.size()));
  }
}

TEST(GenericRank, InvariantUnderSubdivision) {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    MixedGraph g = random_graph(GraphClass::Mixed, 6, seed, 0.5);
    VertexSet A = random_set(rng, 6), B = random_set(rng, 6);
    EXPECT_EQ(generic_rank(g, A, B), generic_rank(bidirected_subdivision(g), A, B)) << serialize(g);
  }
}

TEST(GenericRank, MatchesNoncrossingSystems) {
  std::mt19937_64 rng(21);
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    MixedGraph g = random_graph(class_of(seed), 5, seed, 0.45);
    VertexSet A = random_set(rng, 5), B = random_set(rng, 5);
    EXPECT_EQ(generic_rank(g, A, B), max_noncrossing_system_size(g, A, B))
        << serialize(g) << format_set(A) << " " << format_set(B);
  }
}

// Max flow, certificate size and the decoded system all agree; the system
// is noncrossing and the certificate is minimal.
TEST(MinSeparator, MengerDualityAndMinimality) {
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    MixedGraph g = random_graph(class_of(seed), 6, seed, 0.45);
    VertexSet A = random_set(rng, 6), B = random_set(rng, 6);
    RankResult r = min_t_separator(g, A, B);
    TrekSystem sys = disjoint_trek_system(g, A, B);
    ASSERT_EQ(static_cast<std::size_t>(r.flow_value), r.rank);
    ASSERT_EQ(sys.size(), r.rank);
    EXPECT_TRUE(sys.endpoints_distinct());
    EXPECT_FALSE(has_sided_intersection(sys));
    for (const Trek& t : sys.treks) {
      EXPECT_TRUE(is_trek_of(g, t)) << to_string(t);
      EXPECT_TRUE(A.count(t.a_end()) && B.count(t.b_end()));
    }
    EXPECT_TRUE(is_t_separating(g, A, B, r.certificate));
    for (auto layer : {&SeparationTriple::c_left, &SeparationTriple::c_mid, &SeparationTriple::c_right})
      for (VertexId v : r.certificate.*layer) {
        SeparationTriple smaller = r.certificate;
        (smaller.*layer).erase(v);
        EXPECT_FALSE(is_t_separating(g, A, B, smaller)) << serialize(g) << to_string(r.certificate);
      }
  }
}

TEST(DSeparation, Examples) {
  MixedGraph collider = fixtures::from("v 3\ne 1 -> 3\ne 2 -> 3");
  MixedGraph chain = fixtures::from("v 3\ne 1 -> 2\ne 2 -> 3");
  EXPECT_TRUE(d_separates(collider, {1}, {2}, {}));
  EXPECT_FALSE(d_separates(collider, {1}, {2}, {3}));
  EXPECT_TRUE(d_separates(chain, {1}, {3}, {2}));
  EXPECT_TRUE(d_sep_via_t_sep(chain, {1}, {3}, {2}));
  EXPECT_FALSE(d_sep_via_t_sep(collider, {1}, {2}, {3}));
  EXPECT_TRUE(d_separates(fixtures::choke(), {1}, {5}, {4}));
  EXPECT_TRUE(d_sep_via_t_sep(fixtures::choke(), {1}, {5}, {4}));
}

// The trek (1, 1->2) from 1 to 2 misses a left block at 2, so only the
// right-hand partition works.
TEST(DSeparation, ChainPartition) {
  MixedGraph chain = fixtures::from("v 3\ne 1 -> 2\ne 2 -> 3");
  EXPECT_FALSE(is_t_separating(chain, {1, 2}, {2, 3}, {{2}, {}, {}}));
  EXPECT_TRUE(is_t_separating(chain, {1, 2}, {2, 3}, {{}, {}, {2}}));
  auto p = t_sep_partition(chain, {1}, {3}, {2});
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->second, VertexSet{2});
}

TEST(DSeparation, Errors) {
  EXPECT_THROW(d_separates(fixtures::mixed(), {3}, {4}, {}), InvalidArgument);
  EXPECT_THROW(d_separates(fixtures::choke(), {1}, {1}, {}), InvalidArgument);
  EXPECT_THROW(d_sep_via_t_sep(fixtures::choke(), {1}, {2}, {2}), InvalidArgument);
  EXPECT_THROW(ci_implied(fixtures::choke(), {1, 2}, {3}, {2}), InvalidArgument);
}

TEST(DSeparation, AgreesWithPathDefinition) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    MixedGraph g = random_graph(GraphClass::Dag, 6, seed, 0.4);
    std::mt19937_64 rng(seed);
    for (int q = 0; q < 20; ++q) {
      std::vector<VertexId> perm{1, 2, 3, 4, 5, 6};
      std::shuffle(perm.begin(), perm.end(), rng);
      int na = 1 + rng() % 2, nb = 1 + rng() % 2, nc = rng() % 3;
      VertexSet A(perm.begin(), perm.begin() + na), B(perm.begin() + na, perm.begin() + na + nb),
          C(perm.begin() + na + nb, perm.begin() + na + nb + nc);
      bool expected = path_oracle_d_separates(g, A, B, C);
      EXPECT_EQ(d_separates(g, A, B, C), expected) << serialize(g) << format_set(A) << format_set(B) << format_set(C);
      EXPECT_EQ(d_sep_via_t_sep(g, A, B, C), expected);
      EXPECT_EQ(ci_implied(g, A, B, C), expected);
    }
  }
}

TEST(CiImplied, Examples) {
  EXPECT_TRUE(ci_implied(fixtures::from("v 3\ne 1 -> 2\ne 2 -> 3"), {1}, {3}, {2}));
  EXPECT_FALSE(ci_implied(fixtures::choke(), {1}, {5}, {}));
  EXPECT_TRUE(ci_implied(fixtures::from("v 3\ne 1 -- 2\ne 2 -- 3"), {1}, {3}, {2}));
  EXPECT_FALSE(ci_implied(fixtures::from("v 3\ne 1 -- 2\ne 2 -- 3"), {1}, {3}, {}));
}

TEST(Tetrad, ChokePointOnTheRight) {
  auto c = vanishing_tetrad(fixtures::choke(), {1, 3}, {4, 5});
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->vertex, 4);
  EXPECT_EQ(c->side, Layer::Right);
}

// The hub blocks every trek from {1,3} to {4,5} from the right.
TEST(Tetrad, SpiderHub) {
  auto c = vanishing_tetrad(fixtures::spider(), {1, 3}, {4, 5});
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->vertex, 7);
  EXPECT_EQ(c->side, Layer::Right);
}

// σ12σ33 − σ13σ32 = −σ13σ23 is generically nonzero for the collider.
TEST(Tetrad, ColliderHasNone) {
  EXPECT_FALSE(vanishing_tetrad(fixtures::from("v 3\ne 1 -> 3\ne 2 -> 3"), {1, 3}, {2, 3}).has_value());
}
