#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netxmit/graph.hpp"
#include "netxmit/rng.hpp"

namespace netxmit {

enum class Dynamics { RW, RWD, RWID, TSAW };

/// A probing dynamics. Degree-biased walks move to neighbour j with weight
/// k_j^alpha; the true self-avoiding walk moves along incident edge e with
/// weight gamma^(-f_e), f_e being how often e has been traversed.
struct WalkKind {
  Dynamics variant = Dynamics::RW;
  double alpha = 0.0;
  double gamma = 2.0;

  static constexpr WalkKind rw() { return {Dynamics::RW, 0.0, 2.0}; }
  static constexpr WalkKind rwd() { return {Dynamics::RWD, 1.0, 2.0}; }
  static constexpr WalkKind rwid() { return {Dynamics::RWID, -1.0, 2.0}; }
  static constexpr WalkKind tsaw(double gamma = 2.0) { return {Dynamics::TSAW, 0.0, gamma}; }

  bool self_avoiding() const { return variant == Dynamics::TSAW; }

  friend bool operator==(const WalkKind&, const WalkKind&) = default;
};

std::string_view dynamics_name(Dynamics d);
/// "RW", "RWD", "RWID" or "TSAW" with default parameters.
WalkKind parse_walk_kind(std::string_view name);

/// Weight a degree-biased walk gives to candidate `j`. Directed graphs use
/// the candidate's total degree k_in + k_out.
double degree_bias(const Graph& g, NodeId j, double alpha);

struct WalkState {
  NodeId current = 0;
  std::uint64_t step_index = 0;
  /// Traversal count per edge id; only populated for self-avoiding walks.
  /// Undirected edges share one counter for both directions.
  std::vector<std::uint64_t> edge_visits;
  Rng rng;
};

/// Fresh state. Without `start` the first node is drawn uniformly from the
/// state's own engine.
WalkState make_walk_state(const Graph& g, const WalkKind& kind, std::uint64_t seed,
                          std::optional<NodeId> start = std::nullopt);

/// Probabilities of moving to each out-neighbour of the current node, in
/// adjacency order. Throws std::logic_error at a node without out-neighbours.
std::vector<double> transition_probs(const Graph& g, const WalkState& state, const WalkKind& kind);

/// Samples and takes one step; returns the new node.
NodeId step(const Graph& g, WalkState& state, const WalkKind& kind);

/// Same law as step(), with the static degree weights tabulated once.
/// Produces the same sequence as repeated step() calls for the same state.
class Walker {
 public:
  struct Move {
    NodeId to;
    EdgeId edge;
  };

  Walker(const Graph& g, WalkKind kind, std::uint64_t seed,
         std::optional<NodeId> start = std::nullopt);

  Move advance();
  NodeId current() const { return state_.current; }
  const WalkState& state() const { return state_; }
  const WalkKind& kind() const { return kind_; }

 private:
  const Graph* graph_;
  WalkKind kind_;
  WalkState state_;
  std::vector<double> cumulative_;  // per adjacency slot, static kinds only
  std::vector<std::size_t> slot_offset_;
  std::vector<double> scratch_;
};

/// Walk of `steps` moves; the returned sequence has steps + 1 symbols and
/// starts at `start` (uniform random when absent).
std::vector<NodeId> simulate(const Graph& g, const WalkKind& kind, std::uint64_t steps,
                             std::optional<NodeId> start, std::uint64_t seed);

/// Topology-based prediction of the long-run visit frequencies.
///
/// Undirected: proportional to k_i for RW and TSAW, and to
/// k_i^alpha * sum_{j in N(i)} k_j^alpha for degree-biased walks (the exact
/// stationary law of those walks). Directed: proportional to k_out(i), exact
/// when k_in = k_out at every node. Throws std::invalid_argument when the
/// graph is not (strongly) connected.
std::vector<double> predicted_stationary(const Graph& g, const WalkKind& kind);

}  // namespace netxmit
