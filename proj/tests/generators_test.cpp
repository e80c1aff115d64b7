#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "netxmit/generators.hpp"
#include "test_graphs.hpp"

namespace netxmit {
namespace {

using namespace netxmit::testing;

void expect_simple_undirected(const Graph& g) {
  ASSERT_FALSE(g.directed());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.neighbors(u)) {
      EXPECT_NE(u, v);
      EXPECT_TRUE(g.has_edge(v, u));
    }
  }
}

TEST(ErdosRenyi, ProbabilityOneIsComplete) {
  Rng rng(1);
  Graph g = generate_er(20, 19.0, rng);
  EXPECT_EQ(g.edge_count(), 190u);
}

TEST(ErdosRenyi, ProbabilityZeroIsEmpty) {
  Rng rng(1);
  EXPECT_EQ(erdos_renyi(20, 0.0, rng).edge_count(), 0u);
}

// Mean degree of G(1000, 8/999) has standard deviation ~0.126, so single
// realizations are checked at 4 sigma and the 30-seed average at +-0.3 of
// its binomial expectation 8.
TEST(ErdosRenyi, MeanDegreeConcentrates) {
  std::vector<double> k;
  for (std::uint64_t s = 0; s < 30; ++s) {
    Rng rng(s);
    Graph g = generate_er(1000, 8.0, rng);
    expect_simple_undirected(g);
    k.push_back(g.mean_degree());
    EXPECT_NEAR(k.back(), 8.0, 0.5);
  }
  EXPECT_NEAR(mean(k), 8.0, 0.3);
}

TEST(BarabasiAlbert, ExactEdgeCount) {
  Rng rng(7);
  Graph g = generate_ba(1000, 4, rng);
  expect_simple_undirected(g);
  // Seed clique on 5 nodes (10 edges) plus 4 edges for each of 995 arrivals.
  EXPECT_EQ(g.edge_count(), 10u + 995u * 4u);
  EXPECT_GE(g.mean_degree(), 7.8);
  EXPECT_LE(g.mean_degree(), 8.0);
}

TEST(BarabasiAlbert, MinimumDegreeAtLeastM) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    Rng rng(s);
    auto k = degrees(generate_ba(500, 3, rng));
    EXPECT_GE(*std::min_element(k.begin(), k.end()), 3u);
  }
}

TEST(BarabasiAlbert, HeavyTail) {
  int heavy = 0;
  for (std::uint64_t s = 0; s < 30; ++s) {
    Rng rng(100 + s);
    Graph g = generate_ba(1000, 4, rng);
    auto k = degrees(g);
    heavy += static_cast<double>(*std::max_element(k.begin(), k.end())) > 5.0 * g.mean_degree();
  }
  EXPECT_GE(heavy, 28);
}

TEST(BarabasiAlbert, RejectsBadParameters) {
  Rng rng(0);
  EXPECT_THROW(generate_ba(4, 4, rng), std::invalid_argument);
  EXPECT_THROW(generate_ba(10, 0, rng), std::invalid_argument);
}

TEST(WattsStrogatz, LatticeDegreeEight) {
  Rng rng(0);
  Graph g = generate_ws(961, 0.0, rng);
  expect_simple_undirected(g);
  for (std::size_t k : degrees(g)) EXPECT_EQ(k, 8u);
  EXPECT_EQ(g.edge_count(), 4u * 961u);
  EXPECT_EQ(g, moore_torus(31));
}

// Rewired edges are the edges missing from the lattice: Binomial(4n, p) with
// mean 38.4 and sd ~6.2 at n = 961, p = 0.01.
TEST(WattsStrogatz, RewiredCountIsBinomial) {
  const Graph lattice = moore_torus(31);
  for (std::uint64_t s = 0; s < 30; ++s) {
    Rng rng(s);
    Graph g = generate_ws(961, 0.01, rng);
    EXPECT_EQ(g.edge_count(), lattice.edge_count());
    std::size_t rewired = 0;
    for (const Edge& e : g.edges()) rewired += !lattice.has_edge(e.from, e.to);
    EXPECT_GE(rewired, 20u) << "seed " << s;
    EXPECT_LE(rewired, 60u) << "seed " << s;
  }
}

TEST(WattsStrogatz, RequiresSquare) {
  Rng rng(0);
  EXPECT_THROW(generate_ws(1000, 0.01, rng), std::invalid_argument);
  EXPECT_EQ(largest_square_at_most(1000), 961u);
  EXPECT_EQ(largest_square_at_most(961), 961u);
}

TEST(Geometric, RadiusExtremes) {
  Rng rng(3);
  auto pts = random_points(30, rng);
  EXPECT_EQ(geometric_graph(pts, 2.0).edge_count(), 30u * 29u / 2u);
  EXPECT_EQ(geometric_graph(pts, 0.0).edge_count(), 0u);
}

TEST(Geometric, CalibratedMeanDegree) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    Rng rng(s);
    Graph g = generate_geo(1000, 8.0, rng);
    expect_simple_undirected(g);
    EXPECT_TRUE(is_connected(g));
    EXPECT_NEAR(g.mean_degree(), 8.0, 0.16);
  }
}

TEST(Waxman, ZeroBetaIsEmpty) {
  Rng rng(3);
  auto pts = random_points(40, rng);
  EXPECT_EQ(waxman_graph(pts, 0.0, 0.15, rng).edge_count(), 0u);
}

// With d0 -> infinity every pair is joined with probability beta: ER(beta).
TEST(Waxman, InfiniteScaleReducesToErdosRenyi) {
  const double q = 8.0 / 499.0;
  std::vector<double> wax, er;
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(s);
    auto pts = random_points(500, rng);
    wax.push_back(waxman_graph(pts, q, std::numeric_limits<double>::infinity(), rng).mean_degree());
    er.push_back(erdos_renyi(500, q, rng).mean_degree());
  }
  EXPECT_NEAR(mean(wax) / mean(er), 1.0, 0.05);
}

TEST(Waxman, CalibratedMeanDegree) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    Rng rng(s);
    Graph g = generate_wax(1000, 8.0, rng);
    expect_simple_undirected(g);
    EXPECT_TRUE(is_connected(g));
    EXPECT_NEAR(g.mean_degree(), 8.0, 0.16);
  }
}

TEST(Waxman, UnreachableTargetIsCalibrationError) {
  Rng rng(0);
  // With a tiny interaction scale even beta = 1 cannot reach degree 8.
  EXPECT_THROW(generate_wax(200, 8.0, rng, 0.001), CalibrationError);
}

TEST(Knitted, SingleThreadIsHamiltonianPath) {
  Rng rng(9);
  Graph g = generate_kn(50, 2.0, rng);
  ASSERT_TRUE(g.directed());
  EXPECT_EQ(g.edge_count(), 49u);
  auto d = directed_degrees(g);
  int sources = 0, sinks = 0;
  for (NodeId u = 0; u < 50; ++u) {
    if (d.in[u] == 0) {
      ++sources;
      EXPECT_EQ(d.out[u], 1u);
    } else if (d.out[u] == 0) {
      ++sinks;
      EXPECT_EQ(d.in[u], 1u);
    } else {
      EXPECT_EQ(d.in[u], 1u);
      EXPECT_EQ(d.out[u], 1u);
    }
  }
  EXPECT_EQ(sources, 1);
  EXPECT_EQ(sinks, 1);
  EXPECT_EQ(largest_connected_component(to_undirected(g)).node_count(), 50u);
}

// 4 threads over 1000 nodes lay 3996 arcs; the only losses are repeated arcs
// across threads (expected ~6), so 2E/n lies just under 7.992. Each thread is
// an open path, unbalancing its two ends, and each dropped repeat unbalances
// at most its two endpoints.
TEST(Knitted, MeanDegreeNearTarget) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(s);
    Graph g = generate_kn(1000, 8.0, rng);
    EXPECT_LE(g.mean_degree(), 7.992);
    EXPECT_GE(g.mean_degree(), 7.95);
    auto d = directed_degrees(g);
    const std::size_t lost = 3996 - g.edge_count();
    std::size_t unbalanced = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) unbalanced += d.in[u] != d.out[u];
    EXPECT_LE(unbalanced, 2 * 4 + 2 * lost);
  }
}

TEST(Knitted, RequiresEvenDegree) {
  ModelSpec s;
  s.model = ModelKind::KN;
  s.mean_degree = 7.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(BalancedConfiguration, InEqualsOutAndNoReciprocity) {
  std::vector<double> k;
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(s);
    Graph g = generate_ere(1000, 8.0, rng);
    ASSERT_TRUE(g.directed());
    auto d = directed_degrees(g);
    EXPECT_EQ(d.in, d.out);
    EXPECT_LT(reciprocity(g), 0.02);
    k.push_back(g.mean_degree());
  }
  EXPECT_NEAR(mean(k), 8.0, 0.3);
}

TEST(Generators, SameSeedSameGraph) {
  for (ModelKind kind : {ModelKind::ER, ModelKind::BA, ModelKind::WS, ModelKind::WAX,
                         ModelKind::GEO, ModelKind::KN, ModelKind::ERE}) {
    ModelSpec s;
    s.model = kind;
    s.n = kind == ModelKind::WS ? 225 : 300;
    Rng a(42), b(42);
    EXPECT_EQ(generate(s, a), generate(s, b)) << model_name(kind);
  }
}

TEST(Generators, PrepareNetworkRestrictsToComponent) {
  ModelSpec s;
  s.n = 300;
  Rng rng(4);
  Graph u = prepare_network(s, false, rng);
  EXPECT_TRUE(is_connected(u));
  Graph d = prepare_network(s, true, rng);
  EXPECT_TRUE(d.directed());
  EXPECT_TRUE(is_strongly_connected(d));
  s.model = ModelKind::KN;
  EXPECT_THROW(prepare_network(s, false, rng), std::invalid_argument);
}

TEST(ModelSpec, Validation) {
  ModelSpec s;
  s.n = 5;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.n = 100;
  s.mean_degree = 99.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.model = ModelKind::WS;
  s.rewire_p = 1.5;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.rewire_p = 0.1;
  EXPECT_NO_THROW(s.validate());
  EXPECT_EQ(parse_model_kind("WAX"), ModelKind::WAX);
  EXPECT_THROW(parse_model_kind("LFR"), std::invalid_argument);
}

}  // namespace
}  // namespace netxmit
