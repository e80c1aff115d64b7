#include "netxmit/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

namespace netxmit {

namespace {

constexpr std::pair<ModelKind, std::string_view> kModelNames[] = {
    {ModelKind::ER, "ER"},   {ModelKind::BA, "BA"}, {ModelKind::WS, "WS"},
    {ModelKind::WAX, "WAX"}, {ModelKind::GEO, "GEO"}, {ModelKind::KN, "KN"},
    {ModelKind::ERE, "ERE"},
};

constexpr int kBisectionSteps = 50;
constexpr double kCalibrationTolerance = 0.02;

void fisher_yates(std::vector<NodeId>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_below(rng, i)]);
  }
}

struct KeyedPair {
  double key;
  NodeId a;
  NodeId b;
};

// Graph on the pairs whose key lies below `threshold`, cut to its giant
// component. `pairs` is sorted by key.
Graph threshold_giant(std::size_t n, const std::vector<KeyedPair>& pairs, double threshold) {
  auto end = std::lower_bound(pairs.begin(), pairs.end(), threshold,
                              [](const KeyedPair& p, double t) { return p.key < t; });
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(end - pairs.begin()));
  for (auto it = pairs.begin(); it != end; ++it) edges.push_back({it->a, it->b});
  return largest_connected_component(Graph::from_edges(n, false, edges));
}

Graph calibrate_threshold(std::size_t n, std::vector<KeyedPair> pairs, double lo, double hi,
                          double target, std::string_view model) {
  std::sort(pairs.begin(), pairs.end(), [](const KeyedPair& x, const KeyedPair& y) {
    return x.key < y.key || (x.key == y.key && (x.a < y.a || (x.a == y.a && x.b < y.b)));
  });
  const double tol = kCalibrationTolerance * target;
  {
    Graph top = threshold_giant(n, pairs, hi);
    if (top.mean_degree() < target - tol) {
      throw CalibrationError(std::string(model) + ": target mean degree unreachable (max " +
                             std::to_string(top.mean_degree()) + ")");
    }
  }
  for (int step = 0; step < kBisectionSteps; ++step) {
    const double mid = 0.5 * (lo + hi);
    Graph g = threshold_giant(n, pairs, mid);
    const double k = g.mean_degree();
    if (std::abs(k - target) <= tol) return g;
    (k < target ? lo : hi) = mid;
  }
  throw CalibrationError(std::string(model) + ": bisection did not converge in " +
                         std::to_string(kBisectionSteps) + " steps");
}

double distance(const Point& p, const Point& q) {
  return std::hypot(p.x - q.x, p.y - q.y);
}

}  // namespace

std::string_view model_name(ModelKind kind) {
  for (const auto& [k, name] : kModelNames) {
    if (k == kind) return name;
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  for (const auto& [k, n] : kModelNames) {
    if (n == name) return k;
  }
  throw std::invalid_argument("unknown network model '" + std::string(name) + "'");
}

std::size_t largest_square_at_most(std::size_t n) {
  auto side = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (side * side > n) --side;
  while ((side + 1) * (side + 1) <= n) ++side;
  return side * side;
}

void ModelSpec::validate() const {
  const std::string who = display_label() + ": ";
  if (n < 10) throw std::invalid_argument(who + "n must be at least 10");
  if (!(reciprocity >= 0.0 && reciprocity <= 1.0)) {
    throw std::invalid_argument(who + "reciprocity must lie in [0, 1]");
  }
  switch (model) {
    case ModelKind::BA:
      if (attach_m < 1) throw std::invalid_argument(who + "BA requires m >= 1");
      if (n <= attach_m) throw std::invalid_argument(who + "BA requires n > m");
      return;
    case ModelKind::WS:
      if (!(rewire_p >= 0.0 && rewire_p <= 1.0)) {
        throw std::invalid_argument(who + "WS rewiring probability must lie in [0, 1]");
      }
      if (largest_square_at_most(n) != n) {
        throw std::invalid_argument(who + "WS requires a perfect-square node count");
      }
      return;
    default:
      break;
  }
  if (!(mean_degree > 0.0 && mean_degree < static_cast<double>(n) - 1.0)) {
    throw std::invalid_argument(who + "mean degree must lie in (0, n-1)");
  }
  if (model == ModelKind::KN) {
    const double threads = mean_degree / 2.0;
    if (std::abs(threads - std::round(threads)) > 1e-9) {
      throw std::invalid_argument(who + "KN requires an even mean degree");
    }
  }
  if (model == ModelKind::WAX && !(waxman_d0 > 0.0)) {
    throw std::invalid_argument(who + "WAX requires d0 > 0");
  }
}

std::vector<Point> random_points(std::size_t n, Rng& rng) {
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.x = uniform01(rng);
    p.y = uniform01(rng);
  }
  return pts;
}

Graph erdos_renyi(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (uniform01(rng) < p) edges.push_back({i, j});
    }
  }
  return Graph::from_edges(n, false, edges);
}

Graph generate_er(std::size_t n, double mean_degree, Rng& rng) {
  if (n < 2) throw std::invalid_argument("ER requires at least two nodes");
  return erdos_renyi(n, mean_degree / static_cast<double>(n - 1), rng);
}

Graph generate_ba(std::size_t n, std::size_t m, Rng& rng) {
  if (m < 1) throw std::invalid_argument("BA requires m >= 1");
  if (n <= m) throw std::invalid_argument("BA requires n > m");
  std::vector<Edge> edges;
  // Every edge contributes both endpoints, so sampling this list uniformly is
  // sampling nodes proportionally to degree.
  std::vector<NodeId> endpoints;
  for (NodeId i = 0; i <= m; ++i) {
    for (NodeId j = i + 1; j <= m; ++j) {
      edges.push_back({i, j});
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  }
  std::vector<NodeId> chosen;
  for (auto v = static_cast<NodeId>(m + 1); v < n; ++v) {
    chosen.clear();
    while (chosen.size() < m) {
      NodeId t = endpoints[uniform_below(rng, endpoints.size())];
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
    }
    for (NodeId t : chosen) {
      edges.push_back({t, v});
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph::from_edges(n, false, edges);
}

Graph moore_torus(std::size_t side) {
  if (side < 3) throw std::invalid_argument("Moore torus requires side >= 3");
  const std::size_t n = side * side;
  std::vector<Edge> edges;
  edges.reserve(4 * n);
  auto id = [side](std::size_t r, std::size_t c) {
    return static_cast<NodeId>((r % side) * side + (c % side));
  };
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) {
      const NodeId u = id(r, c);
      edges.push_back({u, id(r, c + 1)});
      edges.push_back({u, id(r + 1, c)});
      edges.push_back({u, id(r + 1, c + 1)});
      edges.push_back({u, id(r + 1, c + side - 1)});
    }
  }
  return Graph::from_edges(n, false, edges);
}

Graph generate_ws(std::size_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("WS rewiring probability must lie in [0, 1]");
  if (largest_square_at_most(n) != n) throw std::invalid_argument("WS requires a perfect-square node count");
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  const Graph lattice = moore_torus(side);

  std::vector<std::set<NodeId>> adj(n);
  const auto edges = lattice.edges();
  for (const Edge& e : edges) {
    adj[e.from].insert(e.to);
    adj[e.to].insert(e.from);
  }
  for (const Edge& e : edges) {
    if (uniform01(rng) >= p) continue;
    const NodeId u = e.from;
    if (!adj[u].contains(e.to)) continue;  // already removed by an earlier rewire
    if (adj[u].size() + 1 >= n) continue;  // u is adjacent to everything
    NodeId w;
    do {
      w = static_cast<NodeId>(uniform_below(rng, n));
    } while (w == u || adj[u].contains(w));
    adj[u].erase(e.to);
    adj[e.to].erase(u);
    adj[u].insert(w);
    adj[w].insert(u);
  }
  std::vector<Edge> out;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : adj[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return Graph::from_edges(n, false, out);
}

Graph geometric_graph(std::span<const Point> points, double radius) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < points.size(); ++i) {
    for (NodeId j = i + 1; j < points.size(); ++j) {
      if (distance(points[i], points[j]) < radius) edges.push_back({i, j});
    }
  }
  return Graph::from_edges(points.size(), false, edges);
}

Graph generate_geo(std::size_t n, double mean_degree, Rng& rng) {
  const auto points = random_points(n, rng);
  std::vector<KeyedPair> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) pairs.push_back({distance(points[i], points[j]), i, j});
  }
  // Radius beyond the diagonal joins every pair.
  return calibrate_threshold(n, std::move(pairs), 0.0, 1.5, mean_degree, "GEO");
}

Graph waxman_graph(std::span<const Point> points, double beta, double d0, Rng& rng) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < points.size(); ++i) {
    for (NodeId j = i + 1; j < points.size(); ++j) {
      const double prob = beta * std::exp(-distance(points[i], points[j]) / d0);
      if (uniform01(rng) < prob) edges.push_back({i, j});
    }
  }
  return Graph::from_edges(points.size(), false, edges);
}

Graph generate_wax(std::size_t n, double mean_degree, Rng& rng, double d0) {
  if (!(d0 > 0.0)) throw std::invalid_argument("WAX requires d0 > 0");
  const auto points = random_points(n, rng);
  // Pair (i, j) is present for every beta above u_ij * exp(d_ij / d0), so a
  // single uniform per pair fixes the whole family of graphs and the mean
  // degree is monotone in beta.
  std::vector<KeyedPair> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      const double u = uniform01(rng);
      pairs.push_back({u * std::exp(distance(points[i], points[j]) / d0), i, j});
    }
  }
  return calibrate_threshold(n, std::move(pairs), 0.0, 1.0, mean_degree, "WAX");
}

Graph generate_kn(std::size_t n, double mean_degree, Rng& rng) {
  const auto threads = static_cast<std::size_t>(std::llround(mean_degree / 2.0));
  std::vector<NodeId> order(n);
  std::vector<Edge> edges;
  edges.reserve(threads * n);
  for (std::size_t t = 0; t < threads; ++t) {
    for (NodeId i = 0; i < n; ++i) order[i] = i;
    fisher_yates(order, rng);
    for (std::size_t i = 1; i < n; ++i) edges.push_back({order[i - 1], order[i]});
  }
  return Graph::from_edges(n, true, edges);
}

Graph generate_ere(std::size_t n, double mean_degree, Rng& rng) {
  constexpr int kMaxSwapAttempts = 10'000;
  const double p = (mean_degree / 2.0) / static_cast<double>(n - 1);
  std::binomial_distribution<std::size_t> stub_count(n - 1, p);

  std::vector<NodeId> tails;
  for (NodeId i = 0; i < n; ++i) {
    const std::size_t k = stub_count(rng);
    tails.insert(tails.end(), k, i);
  }
  std::vector<NodeId> heads = tails;
  fisher_yates(heads, rng);

  auto key = [](NodeId u, NodeId v) { return (std::uint64_t{u} << 32) | v; };
  std::unordered_map<std::uint64_t, int> multiplicity;
  for (std::size_t s = 0; s < tails.size(); ++s) ++multiplicity[key(tails[s], heads[s])];
  auto count = [&](NodeId u, NodeId v) {
    auto it = multiplicity.find(key(u, v));
    return it == multiplicity.end() ? 0 : it->second;
  };
  auto bad = [&](std::size_t s) {
    const NodeId u = tails[s], v = heads[s];
    return u == v || count(u, v) > 1 || count(v, u) > 0;
  };
  // An arc may be placed if it is not a loop and neither it nor its reverse exists.
  auto placeable = [&](NodeId u, NodeId v) { return u != v && count(u, v) == 0 && count(v, u) == 0; };

  int attempts = 0;
  const std::size_t m = tails.size();
  for (;;) {
    std::vector<std::size_t> violations;
    for (std::size_t s = 0; s < m; ++s) {
      if (bad(s)) violations.push_back(s);
    }
    if (violations.empty()) break;
    for (std::size_t s : violations) {
      if (!bad(s)) continue;
      if (++attempts > kMaxSwapAttempts) {
        throw CalibrationError("ERE: constraint violations remain after " +
                               std::to_string(kMaxSwapAttempts) + " swap attempts");
      }
      const std::size_t other = uniform_below(rng, m);
      if (other == s) continue;
      const NodeId a = tails[s], b = heads[s], c = tails[other], d = heads[other];
      --multiplicity[key(a, b)];
      --multiplicity[key(c, d)];
      bool ok = placeable(a, d);
      if (ok) {
        ++multiplicity[key(a, d)];
        ok = placeable(c, b);
        if (ok) {
          ++multiplicity[key(c, b)];
          std::swap(heads[s], heads[other]);
          continue;
        }
        --multiplicity[key(a, d)];
      }
      ++multiplicity[key(a, b)];
      ++multiplicity[key(c, d)];
    }
  }

  std::vector<Edge> edges(m);
  for (std::size_t s = 0; s < m; ++s) edges[s] = {tails[s], heads[s]};
  return Graph::from_edges(n, true, edges);
}

Graph generate(const ModelSpec& spec, Rng& rng) {
  spec.validate();
  switch (spec.model) {
    case ModelKind::ER: return generate_er(spec.n, spec.mean_degree, rng);
    case ModelKind::BA: return generate_ba(spec.n, spec.attach_m, rng);
    case ModelKind::WS: return generate_ws(spec.n, spec.rewire_p, rng);
    case ModelKind::WAX: return generate_wax(spec.n, spec.mean_degree, rng, spec.waxman_d0);
    case ModelKind::GEO: return generate_geo(spec.n, spec.mean_degree, rng);
    case ModelKind::KN: return generate_kn(spec.n, spec.mean_degree, rng);
    case ModelKind::ERE: return generate_ere(spec.n, spec.mean_degree, rng);
  }
  throw std::invalid_argument("unhandled model kind");
}

Graph prepare_network(const ModelSpec& spec, bool directed, Rng& rng) {
  if (is_intrinsically_directed(spec.model)) {
    if (!directed) {
      throw std::invalid_argument(spec.display_label() + " is intrinsically directed");
    }
    return largest_strongly_connected_component(generate(spec, rng));
  }
  Graph g = generate(spec, rng);
  if (!directed) return largest_connected_component(g);
  return largest_strongly_connected_component(to_directed(g, spec.reciprocity, rng));
}

}  // namespace netxmit
