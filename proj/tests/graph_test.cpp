#include <gtest/gtest.h>

#include <algorithm>

#include "lpa/error.hpp"
#include "lpa/graph.hpp"
#include "support.hpp"

using namespace lpa;
using namespace lpa::test;

namespace {

ErrorKind build_error(const GraphSpec& s) {
  try {
    Graph::build(s);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "graph accepted";
  return ErrorKind::SchemaError;
}

VertexSet to_set(const std::vector<bool>& in) {
  VertexSet out;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) out.insert(static_cast<VertexId>(i));
  return out;
}

}  // namespace

TEST(Graph, Validation) {
  EXPECT_EQ(build_error({{"u", "u"}, {}, {}}), ErrorKind::DuplicateName);
  EXPECT_EQ(build_error({{"u"}, {{"e", "u", "w"}}, {}}), ErrorKind::DanglingEndpoint);
  EXPECT_EQ(build_error({{"u"}, {}, {{"b", "u", "u"}}}), ErrorKind::BundleLoop);
  EXPECT_EQ(build_error({{}, {}, {}}), ErrorKind::EmptyGraph);
  EXPECT_EQ(build_error({{"u", "v"}, {{"u", "u", "v"}}, {}}), ErrorKind::DuplicateName);

  ValidationReport bad = validate_graph({{"u"}, {{"e", "u", "x"}}, {}});
  EXPECT_FALSE(bad.ok);
  EXPECT_FALSE(bad.errors.empty());
}

TEST(Graph, VertexKinds) {
  GraphPtr g1 = fixture("g1");
  EXPECT_EQ(g1->kind(g1->vertex("u")), VertexKind::Sink);
  EXPECT_EQ(g1->kind(g1->vertex("v")), VertexKind::InfiniteEmitter);
  EXPECT_EQ(g1->kind(g1->vertex("w")), VertexKind::InfiniteEmitter);
  GraphPtr t = fixture("toeplitz");
  EXPECT_EQ(t->kind(t->vertex("u")), VertexKind::Regular);
  EXPECT_EQ(t->special_edge(t->vertex("u")), t->edge("f"));
  ValidationReport r = validate_graph(t->spec());
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.kinds.at("v"), VertexKind::Sink);
}

TEST(Graph, IdsFollowNameOrder) {
  GraphPtr g = fixture("g4");
  EXPECT_EQ(g->vertex_name(0), "u");
  EXPECT_EQ(g->vertex_name(1), "u'");
  EXPECT_EQ(g->edge_name(0), "e");
  EXPECT_EQ(g->edge_name(1), "e'");
}

TEST(Graph, MintedEdges) {
  GraphPtr g1 = fixture("g1");
  EdgeId e = g1->edge("b2#3");
  EXPECT_TRUE(g1->is_minted(e));
  EXPECT_EQ(g1->edge_name(e), "b2#3");
  EXPECT_EQ(g1->src(e), g1->vertex("w"));
  EXPECT_EQ(g1->dst(e), g1->vertex("u"));
  EXPECT_EQ(g1->mint(1, 3), e);
  EXPECT_FALSE(g1->find_edge("b2#03"));
  EXPECT_FALSE(g1->find_edge("b3#0"));
  EXPECT_THROW(g1->edge("nope"), Error);
}

TEST(Graph, Paths) {
  GraphPtr t = fixture("toeplitz");
  Path p{t->vertex("u"), {t->edge("e"), t->edge("e"), t->edge("f")}};
  EXPECT_EQ(t->range(p), t->vertex("v"));
  EXPECT_EQ(t->path_string(p), "e*e*f");
  EXPECT_EQ(t->path_string(t->trivial_path(t->vertex("v"))), "v");
  Path bad{t->vertex("u"), {t->edge("f"), t->edge("e")}};
  EXPECT_THROW(t->range(bad), Error);
}

TEST(Graph, HereditarySaturatedFixtures) {
  GraphPtr g1 = fixture("g1");
  EXPECT_TRUE(is_hereditary_saturated(*g1, g1->vertices({"u"})));
  EXPECT_EQ(breaking_vertices(*g1, g1->vertices({"u"})), g1->vertices({"v", "w"}));
  EXPECT_FALSE(is_hereditary(*g1, g1->vertices({"w"})));
  GraphPtr g2 = fixture("g2");
  EXPECT_EQ(hs_closure(*g2, g2->vertices({"v", "w"})), g2->vertices({"v", "w"}));
  EXPECT_EQ(hs_closure(*g2, g2->vertices({"v"})), g2->vertices({"v"}));
  EXPECT_THROW(breaking_vertices(*g1, g1->vertices({"w"})), Error);
}

TEST(Graph, ReachabilityMatchesClosureOracle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    GraphSpec s = random_spec(rng);
    GraphPtr g = Graph::build(s);
    auto r = reach_matrix(g->spec());
    for (VertexId v = 0; v < g->vertex_count(); ++v) {
      VertexSet m = m_set(*g, v), fwd = reachable_from(*g, v);
      for (VertexId u = 0; u < g->vertex_count(); ++u) {
        ASSERT_EQ(m.contains(u), r[u][v]);
        ASSERT_EQ(fwd.contains(u), r[v][u]);
        ASSERT_EQ(reaches(*g, v, u), r[v][u]);
      }
    }
  }
}

TEST(Graph, HereditarySaturatedMatchesBruteForce) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    GraphPtr g = Graph::build(random_spec(rng));
    GraphSpec s = g->spec();
    std::size_t n = g->vertex_count();
    std::vector<VertexSet> hs_sets;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
      std::vector<bool> in(n);
      for (std::size_t k = 0; k < n; ++k) in[k] = mask & (1U << k);
      bool oracle = hs_oracle(s, in);
      ASSERT_EQ(is_hereditary_saturated(*g, to_set(in)), oracle);
      if (oracle) hs_sets.push_back(to_set(in));
    }
    // Closure = least hereditary saturated superset.
    for (VertexId v = 0; v < n; ++v) {
      VertexSet best = g->all_vertices();
      for (const auto& h : hs_sets) {
        if (h.contains(v) && h.size() < best.size()) best = h;
      }
      ASSERT_EQ(hs_closure(*g, {v}), best);
    }
  }
}

TEST(Graph, BreakingVerticesMatchDefinition) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    GraphPtr g = Graph::build(random_spec(rng));
    VertexSet h = hs_closure(*g, {0});
    VertexSet expected;
    for (VertexId v = 0; v < g->vertex_count(); ++v) {
      if (h.contains(v) || g->out_bundles(v).empty()) continue;
      bool bundles_in_h = true;
      for (auto b : g->out_bundles(v)) bundles_in_h = bundles_in_h && h.contains(g->bundle_dst(b));
      std::size_t out_of_h = 0;
      for (EdgeId e : g->out_edges(v)) out_of_h += h.contains(g->dst(e)) ? 0 : 1;
      if (bundles_in_h && out_of_h >= 1) expected.insert(v);
    }
    ASSERT_EQ(breaking_vertices(*g, h), expected);
  }
}

// A cycle without exit is a closed walk through vertices that each emit exactly one
// explicit edge and no bundle.
TEST(Graph, ConditionLMatchesFunctionalWalkOracle) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 300; ++i) {
    GraphPtr g = Graph::build(random_spec(rng));
    bool oracle = true;
    for (VertexId v = 0; v < g->vertex_count(); ++v) {
      VertexId cur = v;
      for (std::size_t step = 0; step <= g->vertex_count(); ++step) {
        if (g->out_edges(cur).size() != 1 || !g->out_bundles(cur).empty()) break;
        cur = g->dst(g->out_edges(cur)[0]);
        if (cur == v) {
          oracle = false;
          break;
        }
      }
    }
    ASSERT_EQ(cycle_report(*g).condition_l, oracle);
  }
}

TEST(Graph, CyclesOfFixtures) {
  GraphPtr g3 = fixture("g3");
  CycleReport r = cycle_report(*g3);
  ASSERT_EQ(r.cycles.size(), 2u);
  EXPECT_TRUE(r.condition_l);
  for (const auto& c : r.cycles) EXPECT_FALSE(c.exclusive);

  GraphPtr g4 = fixture("g4");
  CycleReport r4 = cycle_report(*g4);
  ASSERT_EQ(r4.cycles.size(), 2u);
  for (const auto& c : r4.cycles) {
    EXPECT_TRUE(c.exclusive);
    EXPECT_TRUE(c.has_exit);
  }
  Path rotated{g3->vertex("v2"), {g3->edge("e2"), g3->edge("e3"), g3->edge("e4"), g3->edge("e1")}};
  EXPECT_TRUE(is_cycle(*g3, rotated));
  EXPECT_TRUE(find_cycle(*g3, rotated).has_value());
  Path twice{g4->vertex("u"), {g4->edge("e"), g4->edge("e")}};
  EXPECT_FALSE(is_cycle(*g4, twice));
}

TEST(Graph, MT3) {
  GraphPtr g2 = fixture("g2");
  EXPECT_FALSE(mt3_check(*g2, g2->all_vertices()));
  EXPECT_TRUE(mt3_check(*g2, g2->vertices({"u", "v"})));
}

TEST(Graph, QuotientPrimesBreakingVertices) {
  GraphPtr g1 = fixture("g1");
  QuotientGraph q = quotient_graph(*g1, g1->vertices({"u"}), g1->vertices({"v"}));
  const Graph& f = *q.graph;
  EXPECT_EQ(f.vertex_count(), 3u);
  VertexId wp = q.vertex_prime.at(g1->vertex("w"));
  EXPECT_EQ(f.vertex_name(wp), "w'");
  EXPECT_EQ(f.kind(wp), VertexKind::Sink);
  EXPECT_EQ(f.edge_name(q.edge_prime.at(g1->edge("f"))), "f'");
  EXPECT_EQ(f.edge_name(q.edge_prime.at(g1->edge("a"))), "a'");
  EXPECT_EQ(f.kind(q.vertex.at(g1->vertex("w"))), VertexKind::Regular);
  EXPECT_FALSE(q.vertex_prime.contains(g1->vertex("v")));
  EXPECT_THROW(quotient_graph(*g1, g1->vertices({"w"}), {}), Error);
}

TEST(Graph, QuotientNameCollisions) {
  // Primes of u in a graph that already has u'.
  GraphPtr g = make_graph({"u", "u'", "x"}, {{"e", "u", "u'"}}, {{"b", "u", "x"}});
  QuotientGraph q = quotient_graph(*g, g->vertices({"x"}), {});
  EXPECT_EQ(q.graph->vertex_name(q.vertex_prime.at(g->vertex("u"))), "u''");
  EXPECT_EQ(q.graph->vertex_count(), 3u);
}
