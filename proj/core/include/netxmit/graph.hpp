#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "netxmit/rng.hpp"

namespace netxmit {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  NodeId from;
  NodeId to;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable simple graph in compressed sparse row form.
///
/// Nodes are the dense integers 0..n-1 and every adjacency list is sorted.
/// Each adjacency slot carries an edge id: undirected graphs share one id
/// between the two slots of an edge, directed graphs give every slot its
/// own id. Ids are dense in 0..edge_count()-1 and ordered by (from, to), with
/// from < to for undirected edges.
///
/// Graphs produced by component extraction keep the labels the nodes had in
/// the graph they were cut from (composed across repeated extraction).
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Duplicate edges are merged (for
  /// undirected graphs, u-v and v-u are the same edge). Self-loops and out of
  /// range ids throw std::invalid_argument.
  static Graph from_edges(std::size_t node_count, bool directed,
                          std::span<const Edge> edges);

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return edge_count_; }
  bool directed() const { return directed_; }
  bool empty() const { return node_count() == 0; }

  /// Sorted out-neighbours of `u` (all neighbours when undirected).
  std::span<const NodeId> neighbors(NodeId u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  /// Edge ids parallel to neighbors(u).
  std::span<const EdgeId> incident_edges(NodeId u) const {
    return {edge_ids_.data() + offsets_[u], edge_ids_.data() + offsets_[u + 1]};
  }

  std::size_t out_degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  std::size_t in_degree(NodeId u) const {
    return directed_ ? in_degree_[u] : out_degree(u);
  }
  /// |adj(u)| for undirected graphs, k_in + k_out for directed graphs.
  std::size_t total_degree(NodeId u) const {
    return directed_ ? in_degree_[u] + out_degree(u) : out_degree(u);
  }

  std::optional<EdgeId> find_edge(NodeId from, NodeId to) const;
  bool has_edge(NodeId from, NodeId to) const { return find_edge(from, to).has_value(); }

  /// Edges in id order.
  std::vector<Edge> edges() const;

  /// Label of each node in the graph this one was extracted from.
  std::span<const NodeId> original_ids() const { return original_ids_; }
  NodeId original_id(NodeId u) const { return original_ids_[u]; }

  /// Mean total degree, 2|E|/n for both undirected and directed graphs.
  double mean_degree() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);
  friend Graph to_directed(const Graph& g, double r, Rng& rng);
  friend Graph to_undirected(const Graph& g);

  bool directed_ = false;
  std::size_t edge_count_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<EdgeId> edge_ids_;
  std::vector<std::size_t> in_degree_;
  std::vector<NodeId> original_ids_;
};

struct DirectedDegrees {
  std::vector<std::size_t> in;
  std::vector<std::size_t> out;
};

/// Per-node degree; k_in + k_out for directed graphs.
std::vector<std::size_t> degrees(const Graph& g);
DirectedDegrees directed_degrees(const Graph& g);

/// Subgraph induced by `nodes` (must be sorted and unique). Node i of the
/// result is nodes[i] of `g`.
Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// Node sets of the connected components of an undirected graph, each sorted.
std::vector<std::vector<NodeId>> connected_components(const Graph& g);
/// Strongly connected components (Tarjan), each sorted.
std::vector<std::vector<NodeId>> strongly_connected_components(const Graph& g);

/// Largest component; ties go to the component holding the smallest
/// original node id. Throws std::invalid_argument on an empty or directed graph.
Graph largest_connected_component(const Graph& g);
/// As above for strongly connected components of a directed graph.
Graph largest_strongly_connected_component(const Graph& g);

bool is_connected(const Graph& g);
bool is_strongly_connected(const Graph& g);

/// Assigns directions to an undirected graph. Each edge independently keeps
/// both directions with probability r, otherwise one direction picked by a
/// fair coin.
Graph to_directed(const Graph& g, double r, Rng& rng);

/// Undirected view of a directed graph: every arc becomes an undirected edge.
Graph to_undirected(const Graph& g);

/// Fraction of arcs whose reverse arc is present.
double reciprocity(const Graph& g);

/// Edge-list text format:
///   directed <n>  |  undirected <n>
///   u v
///   ...
/// Undirected edges are written once, smaller id first.
void write_edge_list(std::ostream& os, const Graph& g);
Graph read_edge_list(std::istream& is);

}  // namespace netxmit
