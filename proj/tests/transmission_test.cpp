#include <gtest/gtest.h>

#include <cmath>

#include "netxmit/generators.hpp"
#include "netxmit/transmission.hpp"
#include "oracles.hpp"
#include "test_graphs.hpp"

namespace netxmit {
namespace {

using namespace netxmit::testing;

std::vector<std::uint64_t> count_symbols(std::span<const NodeId> seq, std::size_t n) {
  std::vector<std::uint64_t> c(n, 0);
  for (NodeId s : seq) ++c[s];
  return c;
}

TEST(Reconstruct, TriangleTimeline) {
  auto g = triangle();
  std::vector<NodeId> seq{0, 1, 2, 0};
  auto timeline = reconstruct_stream(g, seq);
  ASSERT_EQ(timeline.size(), 3u);
  EXPECT_DOUBLE_EQ(timeline[0], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(timeline[1], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(timeline[2], 1.0);
  EXPECT_EQ(measure_t90(timeline), 3u);
}

TEST(Reconstruct, RepeatedEdgeCountsOnce) {
  auto timeline = reconstruct_stream(triangle(), std::vector<NodeId>{0, 1, 0, 1});
  EXPECT_EQ(timeline, (std::vector<double>{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}));
  EXPECT_FALSE(measure_t90(timeline));
}

TEST(Reconstruct, DirectedArcsAreDistinct) {
  auto g = directed(2, {{0, 1}, {1, 0}});
  auto timeline = reconstruct_stream(g, std::vector<NodeId>{0, 1, 0});
  EXPECT_EQ(timeline, (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(measure_t90(timeline), 2u);
}

TEST(Reconstruct, NinetyPercentOfACycle) {
  std::vector<NodeId> seq;
  for (NodeId i = 0; i < 10; ++i) seq.push_back(i);
  auto timeline = reconstruct_stream(cycle(10), seq);
  EXPECT_EQ(measure_t90(timeline), 9u);
  EXPECT_EQ(edges_for_target(10), 9u);
}

TEST(Reconstruct, JumpIsCorrupt) {
  EXPECT_THROW(reconstruct_stream(path(4), std::vector<NodeId>{0, 2}), CorruptStreamError);
  EXPECT_THROW(reconstruct_stream(directed_cycle(3), std::vector<NodeId>{1, 0}), CorruptStreamError);
  EXPECT_THROW(reconstruct_stream(path(4), std::vector<NodeId>{0, 9}), CorruptStreamError);
}

TEST(Reconstruct, CapCensors) {
  std::vector<double> timeline{0.1, 0.5, 0.95};
  EXPECT_EQ(measure_t90(timeline, 3), 3u);
  EXPECT_FALSE(measure_t90(timeline, 2));
}

TEST(EdgesForTarget, AgreesWithDirectComparison) {
  for (std::size_t e = 1; e < 5000; ++e) {
    std::size_t k = 0;
    while (static_cast<double>(k) / static_cast<double>(e) < 0.9) ++k;
    ASSERT_EQ(edges_for_target(e), k) << e;
  }
}

TEST(Steering, Extremes) {
  std::vector<double> k{1, 2, 3, 4};
  std::vector<double> up{2, 4, 6, 8};
  std::vector<double> down{8, 6, 4, 2};
  std::vector<double> flat{5, 5, 5, 5};
  EXPECT_NEAR(steering(up, k).value, 1.0, 1e-15);
  EXPECT_NEAR(steering(down, k).value, -1.0, 1e-15);
  auto s = steering(flat, k);
  EXPECT_EQ(s.value, 0.0);
  EXPECT_TRUE(s.degenerate);
  EXPECT_THROW(steering(std::vector<double>{1}, std::vector<double>{1}), std::invalid_argument);
  EXPECT_THROW(steering(up, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST(Steering, AffineInvariantAndMatchesOracle) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(50), y(50), z(50);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = uniform01(rng);
      y[i] = x[i] + uniform01(rng);
      z[i] = 3.5 * x[i] + 11.0;
    }
    const double s = steering(x, y).value;
    EXPECT_NEAR(s, pearson(x, y), 1e-12);
    EXPECT_NEAR(steering(z, y).value, s, 1e-12);
    EXPECT_GE(s, -1.0);
    EXPECT_LE(s, 1.0);
  }
}

TEST(CompressionCost, UniformCodeIsUnitRatio) {
  const std::size_t n = 256;
  auto book = huffman_build(ProbabilityModel(std::vector<double>(n, 1.0), ModelSource::DegreePredicted));
  Rng rng(5);
  std::vector<NodeId> seq(4096);
  for (auto& s : seq) s = static_cast<NodeId>(uniform_below(rng, n));
  EXPECT_DOUBLE_EQ(compression_cost(seq, book, n) / static_cast<double>(seq.size()), 1.0);
}

TEST(CompressionCost, OneShortCodewordIsATenth) {
  const std::size_t n = 1024;
  std::vector<double> w(n, 1.0);
  w[7] = 1e9;
  auto book = huffman_build(ProbabilityModel(w, ModelSource::DegreePredicted));
  ASSERT_EQ(book.length(7), 1u);
  std::vector<NodeId> seq(500, 7);
  EXPECT_DOUBLE_EQ(compression_cost(seq, book, n) / 500.0, 0.1);
  EXPECT_DOUBLE_EQ(compression_cost(count_symbols(seq, n), book), 50.0);
}

TEST(Transmission, SingleEdge) {
  auto g = undirected(2, {{0, 1}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto m = run_transmission(g, WalkKind::rw(), seed, 100, 100);
    EXPECT_EQ(m.t90, 1u);
    EXPECT_FALSE(m.censored);
    EXPECT_DOUBLE_EQ(m.t90c, 1.0);
  }
}

TEST(Transmission, CensoredRunHasNaNs) {
  Rng rng(1);
  Graph g = largest_connected_component(generate_er(400, 8, rng));
  auto m = run_transmission(g, WalkKind::rw(), 3, 50, 100);
  EXPECT_TRUE(m.censored);
  EXPECT_TRUE(std::isnan(m.t90c));
  EXPECT_TRUE(std::isnan(m.r90));
  EXPECT_TRUE(std::isnan(m.s90));
  EXPECT_FALSE(std::isnan(m.rl));
  EXPECT_FALSE(std::isnan(m.sl));
}

TEST(Transmission, Deterministic) {
  Rng rng(2);
  Graph g = largest_connected_component(generate_ba(300, 4, rng));
  for (WalkKind kind : {WalkKind::rw(), WalkKind::rwd(), WalkKind::rwid(), WalkKind::tsaw()}) {
    auto a = run_transmission(g, kind, 77, kDefaultT90Cap, 5000);
    auto b = run_transmission(g, kind, 77, kDefaultT90Cap, 5000);
    EXPECT_EQ(a.t90, b.t90);
    EXPECT_EQ(a.t90c, b.t90c);
    EXPECT_EQ(a.s90, b.s90);
    EXPECT_EQ(a.rl, b.rl);
  }
}

// The streamed trace must agree with the slow route: materialise the walk,
// reconstruct, and evaluate the codebook symbol by symbol.
TEST(Transmission, StreamingMatchesExplicitPipeline) {
  Rng rng(3);
  Graph ws = generate_ws(400, 0.05, rng);
  Graph dir = largest_strongly_connected_component(to_directed(generate_er(300, 8, rng), 0.6, rng));
  for (const Graph* g : {&ws, &dir}) {
    for (WalkKind kind : {WalkKind::rw(), WalkKind::rwd(), WalkKind::rwid(), WalkKind::tsaw()}) {
      const std::uint64_t seed = 1234;
      const std::uint64_t t_long = 3000;
      auto trace = trace_transmission(*g, kind, seed, kDefaultT90Cap, t_long);
      auto m = metrics_from_trace(*g, kind, trace);
      ASSERT_TRUE(trace.t90);

      auto seq = simulate(*g, kind, trace.steps, std::nullopt, seed);
      auto timeline = reconstruct_stream(*g, seq);
      const auto t90 = measure_t90(timeline);
      ASSERT_EQ(t90, trace.t90);

      auto book = huffman_build(degree_probability_model(*g, kind));
      std::span<const NodeId> all(seq);
      const double t90c = compression_cost(all.first(*t90), book, g->node_count());
      EXPECT_DOUBLE_EQ(m.t90c, t90c);
      EXPECT_DOUBLE_EQ(m.r90, t90c / static_cast<double>(*t90));
      EXPECT_EQ(trace.visits_t90, count_symbols(all.first(*t90 + 1), g->node_count()));

      std::vector<double> k(g->node_count()), f(g->node_count());
      auto visits = count_symbols(all.first(t_long + 1), g->node_count());
      for (NodeId u = 0; u < k.size(); ++u) {
        k[u] = static_cast<double>(g->total_degree(u));
        f[u] = static_cast<double>(visits[u]);
      }
      EXPECT_NEAR(m.sl, pearson(f, k), 1e-12);
      EXPECT_DOUBLE_EQ(m.rl, compression_cost(all.first(t_long), book, g->node_count()) / t_long);
    }
  }
}

TEST(Transmission, ReceiverRebuildsTheWalkedEdges) {
  Rng rng(4);
  Graph g = generate_er(200, 6, rng);
  g = largest_connected_component(g);
  auto seq = simulate(g, WalkKind::rw(), 200'000, std::nullopt, 8);
  Receiver rx(g);
  for (NodeId s : seq) rx.receive(s);
  // A long enough walk on a connected graph crosses every edge.
  EXPECT_EQ(rx.received_edge_count(), g.edge_count());
  EXPECT_EQ(rx.received_node_count(), g.node_count());
  auto rebuilt = Graph::from_edges(g.node_count(), false, rx.received_edges());
  EXPECT_TRUE(rebuilt.edges() == g.edges());
}

TEST(Transmission, NeedsAtLeastNinetyPercentOfEdges) {
  Rng rng(5);
  for (int i = 0; i < 5; ++i) {
    Graph g = largest_connected_component(generate_er(300, 8, rng));
    for (WalkKind kind : {WalkKind::rw(), WalkKind::tsaw()}) {
      auto m = run_transmission(g, kind, static_cast<std::uint64_t>(i), kDefaultT90Cap, 0);
      EXPECT_GE(static_cast<double>(m.t90), 0.9 * static_cast<double>(g.edge_count()));
      EXPECT_GT(m.t90c, 0.0);
    }
  }
}

TEST(Transmission, PlainWalkSteersTowardsDegree) {
  Rng rng(6);
  Graph g = largest_connected_component(generate_er(1000, 8, rng));
  auto m = run_transmission(g, WalkKind::rw(), 9, kDefaultT90Cap, kDefaultLongRun);
  EXPECT_GT(m.sl, 0.95);
}

TEST(SingleMessage, SelfDictionaryIsConsistent) {
  Rng rng(7);
  Graph g = largest_connected_component(generate_er(300, 8, rng));
  std::vector<std::uint64_t> seeds{42};
  auto r = single_message_ratio(g, WalkKind::rw(), 42, seeds, 1.0);
  ASSERT_EQ(r.size(), 1u);
  auto trace = trace_transmission(g, WalkKind::rw(), 42, kDefaultT90Cap, 0);
  auto book = message_dictionary(trace, 1.0);
  EXPECT_DOUBLE_EQ(r[0], prefix_ratio(trace, book));
  EXPECT_THROW(single_message_ratio(g, WalkKind::rw(), 42, std::span<const std::uint64_t>{}),
               std::invalid_argument);
}

}  // namespace
}  // namespace netxmit
