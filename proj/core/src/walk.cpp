#include "netxmit/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netxmit {

namespace {

// Index of the first cumulative weight exceeding `target`. Rounding can push
// target onto the total, in which case the last slot is taken.
std::size_t pick_slot(std::span<const double> cumulative, double target) {
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  if (it == cumulative.end()) --it;
  return static_cast<std::size_t>(it - cumulative.begin());
}

void self_avoiding_weights(const Graph& g, const WalkState& state, double gamma,
                           std::vector<double>& out) {
  auto ids = g.incident_edges(state.current);
  std::uint64_t least = state.edge_visits[ids[0]];
  for (EdgeId e : ids) least = std::min(least, state.edge_visits[e]);
  // Shifting every exponent by the minimum leaves the normalised law intact
  // and keeps the weights away from underflow on long walks.
  out.resize(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    out[k] = std::pow(gamma, -static_cast<double>(state.edge_visits[ids[k]] - least));
  }
}

void cumulate(std::vector<double>& w) {
  for (std::size_t k = 1; k < w.size(); ++k) w[k] += w[k - 1];
}

void require_moves(const Graph& g, NodeId u) {
  if (g.out_degree(u) == 0) {
    throw std::logic_error("walker stranded at node " + std::to_string(u) +
                           " with no out-neighbours");
  }
}

void record_move(WalkState& state, NodeId to, EdgeId edge, bool self_avoiding) {
  if (self_avoiding) ++state.edge_visits[edge];
  state.current = to;
  ++state.step_index;
}

}  // namespace

std::string_view dynamics_name(Dynamics d) {
  switch (d) {
    case Dynamics::RW: return "RW";
    case Dynamics::RWD: return "RWD";
    case Dynamics::RWID: return "RWID";
    case Dynamics::TSAW: return "TSAW";
  }
  return "?";
}

WalkKind parse_walk_kind(std::string_view name) {
  if (name == "RW") return WalkKind::rw();
  if (name == "RWD") return WalkKind::rwd();
  if (name == "RWID") return WalkKind::rwid();
  if (name == "TSAW") return WalkKind::tsaw();
  throw std::invalid_argument("unknown dynamics '" + std::string(name) + "'");
}

double degree_bias(const Graph& g, NodeId j, double alpha) {
  return std::pow(static_cast<double>(g.total_degree(j)), alpha);
}

WalkState make_walk_state(const Graph& g, const WalkKind& kind, std::uint64_t seed,
                          std::optional<NodeId> start) {
  if (g.empty()) throw std::invalid_argument("cannot walk on an empty graph");
  WalkState s;
  s.rng.seed(seed);
  s.current = start ? *start : static_cast<NodeId>(uniform_below(s.rng, g.node_count()));
  if (s.current >= g.node_count()) throw std::invalid_argument("start node out of range");
  if (kind.self_avoiding()) s.edge_visits.assign(g.edge_count(), 0);
  return s;
}

std::vector<double> transition_probs(const Graph& g, const WalkState& state, const WalkKind& kind) {
  require_moves(g, state.current);
  std::vector<double> w;
  if (kind.self_avoiding()) {
    self_avoiding_weights(g, state, kind.gamma, w);
  } else {
    for (NodeId j : g.neighbors(state.current)) w.push_back(degree_bias(g, j, kind.alpha));
  }
  double total = 0.0;
  for (double x : w) total += x;
  for (double& x : w) x /= total;
  return w;
}

NodeId step(const Graph& g, WalkState& state, const WalkKind& kind) {
  require_moves(g, state.current);
  std::vector<double> w;
  if (kind.self_avoiding()) {
    self_avoiding_weights(g, state, kind.gamma, w);
  } else {
    for (NodeId j : g.neighbors(state.current)) w.push_back(degree_bias(g, j, kind.alpha));
  }
  cumulate(w);
  const std::size_t k = pick_slot(w, uniform01(state.rng) * w.back());
  const NodeId to = g.neighbors(state.current)[k];
  record_move(state, to, g.incident_edges(state.current)[k], kind.self_avoiding());
  return to;
}

Walker::Walker(const Graph& g, WalkKind kind, std::uint64_t seed, std::optional<NodeId> start)
    : graph_(&g), kind_(kind), state_(make_walk_state(g, kind, seed, start)) {
  if (kind_.self_avoiding()) return;
  slot_offset_.resize(g.node_count() + 1, 0);
  for (NodeId u = 0; u < g.node_count(); ++u) slot_offset_[u + 1] = slot_offset_[u] + g.out_degree(u);
  cumulative_.resize(slot_offset_.back());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    double acc = 0.0;
    auto adj = g.neighbors(u);
    for (std::size_t k = 0; k < adj.size(); ++k) {
      // Same accumulation order as step() so both routes draw identical moves.
      const double w = degree_bias(g, adj[k], kind_.alpha);
      acc = k == 0 ? w : acc + w;
      cumulative_[slot_offset_[u] + k] = acc;
    }
  }
}

Walker::Move Walker::advance() {
  const Graph& g = *graph_;
  const NodeId u = state_.current;
  require_moves(g, u);
  std::size_t k;
  if (kind_.self_avoiding()) {
    self_avoiding_weights(g, state_, kind_.gamma, scratch_);
    cumulate(scratch_);
    k = pick_slot(scratch_, uniform01(state_.rng) * scratch_.back());
  } else {
    std::span<const double> cum(cumulative_.data() + slot_offset_[u], g.out_degree(u));
    k = pick_slot(cum, uniform01(state_.rng) * cum.back());
  }
  const Move move{g.neighbors(u)[k], g.incident_edges(u)[k]};
  record_move(state_, move.to, move.edge, kind_.self_avoiding());
  return move;
}

std::vector<NodeId> simulate(const Graph& g, const WalkKind& kind, std::uint64_t steps,
                             std::optional<NodeId> start, std::uint64_t seed) {
  if (steps < 1) throw std::invalid_argument("simulate requires at least one step");
  Walker walker(g, kind, seed, start);
  std::vector<NodeId> seq;
  seq.reserve(steps + 1);
  seq.push_back(walker.current());
  for (std::uint64_t t = 0; t < steps; ++t) seq.push_back(walker.advance().to);
  return seq;
}

std::vector<double> predicted_stationary(const Graph& g, const WalkKind& kind) {
  std::vector<double> p(g.node_count(), 0.0);
  if (g.directed()) {
    if (!is_strongly_connected(g)) {
      throw std::invalid_argument("predicted_stationary requires a strongly connected graph");
    }
    for (NodeId i = 0; i < g.node_count(); ++i) p[i] = static_cast<double>(g.out_degree(i));
  } else {
    if (!is_connected(g)) throw std::invalid_argument("predicted_stationary requires a connected graph");
    for (NodeId i = 0; i < g.node_count(); ++i) {
      // TSAW is predicted by its diffusive limit, the plain random walk.
      if (kind.self_avoiding()) {
        p[i] = static_cast<double>(g.out_degree(i));
        continue;
      }
      double s = 0.0;
      for (NodeId j : g.neighbors(i)) s += degree_bias(g, j, kind.alpha);
      p[i] = degree_bias(g, i, kind.alpha) * s;
    }
  }
  double total = 0.0;
  for (double x : p) total += x;
  for (double& x : p) x /= total;
  return p;
}

}  // namespace netxmit
