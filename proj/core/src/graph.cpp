#include "netxmit/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace netxmit {

Graph Graph::from_edges(std::size_t node_count, bool directed,
                        std::span<const Edge> edges) {
  std::vector<Edge> arcs;
  arcs.reserve(directed ? edges.size() : 2 * edges.size());
  for (const Edge& e : edges) {
    if (e.from >= node_count || e.to >= node_count) {
      throw std::invalid_argument("edge (" + std::to_string(e.from) + ", " +
                                  std::to_string(e.to) + ") out of range for " +
                                  std::to_string(node_count) + " nodes");
    }
    if (e.from == e.to) {
      throw std::invalid_argument("self-loop on node " + std::to_string(e.from));
    }
    arcs.push_back(e);
    if (!directed) arcs.push_back({e.to, e.from});
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  Graph g;
  g.directed_ = directed;
  g.offsets_.assign(node_count + 1, 0);
  for (const Edge& a : arcs) ++g.offsets_[a.from + 1];
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.targets_.resize(arcs.size());
  g.edge_ids_.resize(arcs.size());
  for (std::size_t k = 0; k < arcs.size(); ++k) g.targets_[k] = arcs[k].to;

  if (directed) {
    std::iota(g.edge_ids_.begin(), g.edge_ids_.end(), EdgeId{0});
    g.edge_count_ = arcs.size();
    g.in_degree_.assign(node_count, 0);
    for (const Edge& a : arcs) ++g.in_degree_[a.to];
  } else {
    // Arcs are sorted by (from, to), so numbering the from < to half in
    // order gives ids sorted by (min, max).
    EdgeId next = 0;
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      if (arcs[k].from < arcs[k].to) g.edge_ids_[k] = next++;
    }
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      if (arcs[k].from > arcs[k].to) {
        g.edge_ids_[k] = *g.find_edge(arcs[k].to, arcs[k].from);
      }
    }
    g.edge_count_ = next;
  }
  g.original_ids_.resize(node_count);
  std::iota(g.original_ids_.begin(), g.original_ids_.end(), NodeId{0});
  return g;
}

std::optional<EdgeId> Graph::find_edge(NodeId from, NodeId to) const {
  if (from >= node_count()) return std::nullopt;
  auto adj = neighbors(from);
  auto it = std::lower_bound(adj.begin(), adj.end(), to);
  if (it == adj.end() || *it != to) return std::nullopt;
  return edge_ids_[offsets_[from] + static_cast<std::size_t>(it - adj.begin())];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out(edge_count_);
  for (NodeId u = 0; u < node_count(); ++u) {
    auto adj = neighbors(u);
    auto ids = incident_edges(u);
    for (std::size_t k = 0; k < adj.size(); ++k) {
      if (directed_ || u < adj[k]) out[ids[k]] = {u, adj[k]};
    }
  }
  return out;
}

double Graph::mean_degree() const {
  if (empty()) return 0.0;
  return 2.0 * static_cast<double>(edge_count_) / static_cast<double>(node_count());
}

std::vector<std::size_t> degrees(const Graph& g) {
  std::vector<std::size_t> k(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) k[u] = g.total_degree(u);
  return k;
}

DirectedDegrees directed_degrees(const Graph& g) {
  DirectedDegrees d{std::vector<std::size_t>(g.node_count()),
                    std::vector<std::size_t>(g.node_count())};
  for (NodeId u = 0; u < g.node_count(); ++u) {
    d.in[u] = g.in_degree(u);
    d.out[u] = g.out_degree(u);
  }
  return d;
}

Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  constexpr NodeId kAbsent = static_cast<NodeId>(-1);
  std::vector<NodeId> relabel(g.node_count(), kAbsent);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] >= g.node_count() || (i > 0 && nodes[i] <= nodes[i - 1])) {
      throw std::invalid_argument("induced_subgraph: node set must be sorted, unique and in range");
    }
    relabel[nodes[i]] = static_cast<NodeId>(i);
  }
  std::vector<Edge> kept;
  for (const NodeId u : nodes) {
    for (const NodeId v : g.neighbors(u)) {
      if (relabel[v] == kAbsent) continue;
      if (!g.directed() && v < u) continue;
      kept.push_back({relabel[u], relabel[v]});
    }
  }
  Graph sub = Graph::from_edges(nodes.size(), g.directed(), kept);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    sub.original_ids_[i] = g.original_id(nodes[i]);
  }
  return sub;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
  if (g.directed()) throw std::invalid_argument("connected_components requires an undirected graph");
  std::vector<bool> seen(g.node_count(), false);
  std::vector<std::vector<NodeId>> comps;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (seen[s]) continue;
    std::vector<NodeId> comp;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (NodeId v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

std::vector<std::vector<NodeId>> strongly_connected_components(const Graph& g) {
  // Iterative Tarjan.
  const std::size_t n = g.node_count();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> stack;
  std::vector<std::pair<NodeId, std::size_t>> frames;  // node, next neighbour slot
  std::vector<std::vector<NodeId>> comps;
  std::size_t counter = 0;

  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      auto& [u, slot] = frames.back();
      auto adj = g.neighbors(u);
      if (slot < adj.size()) {
        NodeId v = adj[slot++];
        if (index[v] == kUnvisited) {
          index[v] = low[v] = counter++;
          stack.push_back(v);
          on_stack[v] = true;
          frames.push_back({v, 0});
        } else if (on_stack[v]) {
          low[u] = std::min(low[u], index[v]);
        }
        continue;
      }
      const NodeId done = u;
      frames.pop_back();
      if (!frames.empty()) {
        NodeId parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::vector<NodeId> comp;
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  return comps;
}

namespace {

NodeId smallest_original(const Graph& g, const std::vector<NodeId>& comp) {
  NodeId best = g.original_id(comp.front());
  for (NodeId u : comp) best = std::min(best, g.original_id(u));
  return best;
}

const std::vector<NodeId>& pick_largest(const Graph& g,
                                        const std::vector<std::vector<NodeId>>& comps) {
  const std::vector<NodeId>* best = &comps.front();
  for (const auto& c : comps) {
    if (c.size() > best->size() ||
        (c.size() == best->size() && smallest_original(g, c) < smallest_original(g, *best))) {
      best = &c;
    }
  }
  return *best;
}

}  // namespace

Graph largest_connected_component(const Graph& g) {
  if (g.directed()) throw std::invalid_argument("largest_connected_component requires an undirected graph");
  if (g.empty()) throw std::invalid_argument("largest_connected_component of an empty graph");
  auto comps = connected_components(g);
  return induced_subgraph(g, pick_largest(g, comps));
}

Graph largest_strongly_connected_component(const Graph& g) {
  if (!g.directed()) throw std::invalid_argument("largest_strongly_connected_component requires a directed graph");
  if (g.empty()) throw std::invalid_argument("largest_strongly_connected_component of an empty graph");
  auto comps = strongly_connected_components(g);
  return induced_subgraph(g, pick_largest(g, comps));
}

bool is_connected(const Graph& g) {
  return !g.empty() && connected_components(g).size() == 1;
}

bool is_strongly_connected(const Graph& g) {
  return !g.empty() && strongly_connected_components(g).size() == 1;
}

Graph to_directed(const Graph& g, double r, Rng& rng) {
  if (g.directed()) throw std::invalid_argument("to_directed requires an undirected graph");
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("reciprocity must lie in [0, 1]");
  std::vector<Edge> arcs;
  arcs.reserve(2 * g.edge_count());
  for (const Edge& e : g.edges()) {
    if (uniform01(rng) <= r) {
      arcs.push_back(e);
      arcs.push_back({e.to, e.from});
    } else if (uniform01(rng) < 0.5) {
      arcs.push_back(e);
    } else {
      arcs.push_back({e.to, e.from});
    }
  }
  Graph d = Graph::from_edges(g.node_count(), true, arcs);
  d.original_ids_.assign(g.original_ids().begin(), g.original_ids().end());
  return d;
}

Graph to_undirected(const Graph& g) {
  auto arcs = g.edges();
  Graph u = Graph::from_edges(g.node_count(), false, arcs);
  u.original_ids_.assign(g.original_ids().begin(), g.original_ids().end());
  return u;
}

double reciprocity(const Graph& g) {
  if (!g.directed()) throw std::invalid_argument("reciprocity requires a directed graph");
  if (g.edge_count() == 0) throw std::invalid_argument("reciprocity of a graph without edges");
  std::size_t mutual = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (g.has_edge(v, u)) ++mutual;
    }
  }
  return static_cast<double>(mutual) / static_cast<double>(g.edge_count());
}

}  // namespace netxmit
