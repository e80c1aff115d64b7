#include "netxmit/transmission.hpp"

#include <cmath>
#include <string>

namespace netxmit {

namespace {

std::vector<double> as_doubles(std::span<const std::uint64_t> v) {
  return {v.begin(), v.end()};
}

std::vector<double> total_degrees(const Graph& g) {
  std::vector<double> k(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) k[u] = static_cast<double>(g.total_degree(u));
  return k;
}

std::vector<std::uint64_t> with_symbol(std::vector<std::uint64_t> counts, NodeId s) {
  ++counts[s];
  return counts;
}

}  // namespace

Receiver::Receiver(const Graph& original)
    : original_(&original),
      edge_seen_(original.edge_count(), false),
      node_seen_(original.node_count(), false) {}

void Receiver::receive(NodeId symbol) {
  if (symbol >= original_->node_count()) {
    throw CorruptStreamError("symbol " + std::to_string(symbol) + " outside the alphabet");
  }
  if (!last_) {
    if (!node_seen_[symbol]) {
      node_seen_[symbol] = true;
      ++received_nodes_;
    }
    last_ = symbol;
    return;
  }
  auto e = original_->find_edge(*last_, symbol);
  if (!e) {
    throw CorruptStreamError("no edge between consecutive symbols " + std::to_string(*last_) +
                             " and " + std::to_string(symbol));
  }
  receive_edge(*e, symbol);
}

void Receiver::receive_edge(EdgeId edge, NodeId to) {
  if (!edge_seen_[edge]) {
    edge_seen_[edge] = true;
    ++received_edges_;
  }
  if (!node_seen_[to]) {
    node_seen_[to] = true;
    ++received_nodes_;
  }
  last_ = to;
}

double Receiver::coverage() const {
  if (original_->edge_count() == 0) return 1.0;
  return static_cast<double>(received_edges_) / static_cast<double>(original_->edge_count());
}

std::vector<Edge> Receiver::received_edges() const {
  std::vector<Edge> out;
  const auto all = original_->edges();
  for (EdgeId e = 0; e < all.size(); ++e) {
    if (edge_seen_[e]) out.push_back(all[e]);
  }
  return out;
}

std::vector<double> reconstruct_stream(const Graph& g, std::span<const NodeId> sequence) {
  Receiver rx(g);
  std::vector<double> timeline;
  if (sequence.empty()) return timeline;
  timeline.reserve(sequence.size() - 1);
  rx.receive(sequence[0]);
  for (std::size_t t = 1; t < sequence.size(); ++t) {
    rx.receive(sequence[t]);
    timeline.push_back(rx.coverage());
  }
  return timeline;
}

std::optional<std::uint64_t> measure_t90(std::span<const double> timeline, std::uint64_t cap) {
  const std::uint64_t limit = std::min<std::uint64_t>(cap, timeline.size());
  for (std::uint64_t t = 0; t < limit; ++t) {
    if (timeline[t] >= kCoverageTarget) return t + 1;
  }
  return std::nullopt;
}

std::size_t edges_for_target(std::size_t edge_count) {
  // Matches the floating comparison measure_t90 applies to coverage values.
  auto k = static_cast<std::size_t>(kCoverageTarget * static_cast<double>(edge_count));
  k = k > 0 ? k - 1 : 0;
  while (static_cast<double>(k) / static_cast<double>(edge_count) < kCoverageTarget) ++k;
  return k;
}

Steering steering(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("steering: vectors differ in length");
  if (x.size() < 2) throw std::invalid_argument("steering: need at least two entries");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return {0.0, true};
  return {std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0), false};
}

double compression_cost(std::span<const NodeId> sequence, const CodeBook& book, std::size_t n) {
  std::uint64_t bits = 0;
  for (NodeId s : sequence) bits += book.length(s);
  return static_cast<double>(bits) / static_cast<double>(fixed_width_bits(n));
}

double compression_cost(std::span<const std::uint64_t> counts, const CodeBook& book) {
  std::uint64_t bits = 0;
  for (NodeId s = 0; s < counts.size(); ++s) {
    if (counts[s] != 0) bits += counts[s] * book.length(s);
  }
  return static_cast<double>(bits) / static_cast<double>(fixed_width_bits(book.alphabet_size()));
}

TransmissionTrace trace_transmission(const Graph& g, const WalkKind& kind, std::uint64_t seed,
                                     std::uint64_t t90_cap, std::uint64_t t_long) {
  if (g.edge_count() == 0) throw std::invalid_argument("cannot transmit a graph without edges");
  const std::size_t n = g.node_count();
  const std::size_t needed = edges_for_target(g.edge_count());

  Walker walker(g, kind, seed);
  Receiver rx(g);
  rx.receive(walker.current());

  TransmissionTrace tr;
  std::vector<std::uint64_t> counts(n, 0);
  NodeId previous = walker.current();
  std::uint64_t t = 0;
  for (;;) {
    const bool t90_settled = tr.t90.has_value() || t >= t90_cap;
    if (t90_settled && t >= t_long) break;
    // counts holds s_0..s_{t-1} here; s_t is `previous`.
    ++counts[previous];
    const Walker::Move mv = walker.advance();
    ++t;
    rx.receive_edge(mv.edge, mv.to);
    if (!tr.t90 && t <= t90_cap && rx.received_edge_count() >= needed) {
      tr.t90 = t;
      tr.prefix_counts = counts;
      tr.visits_t90 = with_symbol(counts, mv.to);
    }
    if (t == t_long) {
      tr.long_counts = counts;
      tr.visits_long = with_symbol(counts, mv.to);
    }
    previous = mv.to;
  }
  tr.steps = t;
  if (!tr.t90) tr.prefix_counts = counts;
  return tr;
}

MetricsRecord metrics_from_trace(const Graph& g, const WalkKind& kind, const TransmissionTrace& trace) {
  const CodeBook book = huffman_build(degree_probability_model(g, kind));
  const auto degree = total_degrees(g);
  MetricsRecord m;
  if (trace.t90) {
    m.t90 = *trace.t90;
    m.t90c = compression_cost(trace.prefix_counts, book);
    m.r90 = m.t90c / static_cast<double>(m.t90);
    m.s90 = steering(as_doubles(trace.visits_t90), degree).value;
  } else {
    m.censored = true;
  }
  if (!trace.long_counts.empty()) {
    std::uint64_t t_long = 0;
    for (auto c : trace.long_counts) t_long += c;
    m.rl = compression_cost(trace.long_counts, book) / static_cast<double>(t_long);
    m.sl = steering(as_doubles(trace.visits_long), degree).value;
  }
  return m;
}

MetricsRecord run_transmission(const Graph& g, const WalkKind& kind, std::uint64_t seed,
                               std::uint64_t t90_cap, std::uint64_t t_long) {
  return metrics_from_trace(g, kind, trace_transmission(g, kind, seed, t90_cap, t_long));
}

CodeBook message_dictionary(const TransmissionTrace& training, double smoothing) {
  return huffman_build(empirical_probability_model(training.prefix_counts, smoothing));
}

double prefix_ratio(const TransmissionTrace& trace, const CodeBook& book) {
  if (!trace.t90) return std::numeric_limits<double>::quiet_NaN();
  return compression_cost(trace.prefix_counts, book) / static_cast<double>(*trace.t90);
}

std::vector<double> single_message_ratio(const Graph& g, const WalkKind& kind,
                                         std::uint64_t train_seed,
                                         std::span<const std::uint64_t> eval_seeds,
                                         double smoothing, std::uint64_t t90_cap) {
  if (eval_seeds.empty()) throw std::invalid_argument("single_message_ratio needs an evaluation run");
  const CodeBook book =
      message_dictionary(trace_transmission(g, kind, train_seed, t90_cap, 0), smoothing);
  std::vector<double> ratios;
  ratios.reserve(eval_seeds.size());
  for (std::uint64_t seed : eval_seeds) {
    ratios.push_back(prefix_ratio(trace_transmission(g, kind, seed, t90_cap, 0), book));
  }
  return ratios;
}

}  // namespace netxmit
