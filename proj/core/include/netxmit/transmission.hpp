#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "netxmit/coding.hpp"
#include "netxmit/graph.hpp"
#include "netxmit/walk.hpp"

namespace netxmit {

/// Fraction of the original edges the receiver must hold for a run to count
/// as transmitted.
inline constexpr double kCoverageTarget = 0.9;
inline constexpr std::uint64_t kDefaultT90Cap = 100'000'000;
inline constexpr std::uint64_t kDefaultLongRun = 1'000'000;

/// Thrown when consecutive symbols of a stream are not joined by an edge.
class CorruptStreamError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Receiving end of a transmission: rebuilds the edge set from consecutive
/// symbol pairs. Undirected edges count once whichever way they are walked.
class Receiver {
 public:
  explicit Receiver(const Graph& original);

  /// Takes the next symbol. Throws CorruptStreamError if it is not adjacent
  /// to the previous one.
  void receive(NodeId symbol);
  /// Fast path for a producer that already knows the traversed edge.
  void receive_edge(EdgeId edge, NodeId to);

  std::size_t received_edge_count() const { return received_edges_; }
  std::size_t received_node_count() const { return received_nodes_; }
  double coverage() const;
  bool has_edge(EdgeId e) const { return edge_seen_[e]; }
  /// Received edges, in edge id order of the original graph.
  std::vector<Edge> received_edges() const;

 private:
  const Graph* original_;
  std::vector<bool> edge_seen_;
  std::vector<bool> node_seen_;
  std::size_t received_edges_ = 0;
  std::size_t received_nodes_ = 0;
  std::optional<NodeId> last_;
};

/// Coverage after each received edge: entry t-1 is the coverage once
/// symbols s_0..s_t have arrived. Throws CorruptStreamError on a jump.
std::vector<double> reconstruct_stream(const Graph& g, std::span<const NodeId> sequence);

/// Smallest t (1-based, within the first `cap` entries) with coverage at
/// least the target; nullopt when the run is censored.
std::optional<std::uint64_t> measure_t90(std::span<const double> timeline,
                                         std::uint64_t cap = kDefaultT90Cap);

/// Smallest number of received edges whose coverage fraction reaches the target.
std::size_t edges_for_target(std::size_t edge_count);

struct Steering {
  double value = 0.0;
  bool degenerate = false;  // one of the vectors had zero variance
};

/// Pearson correlation. Throws std::invalid_argument on a length mismatch or
/// fewer than two entries.
Steering steering(std::span<const double> frequencies, std::span<const double> degrees);

/// Compressed cost of a stream in fixed-width symbol units:
/// (sum of codeword lengths) / fixed_width_bits(n).
double compression_cost(std::span<const NodeId> sequence, const CodeBook& book, std::size_t n);
/// Same quantity from per-symbol counts.
double compression_cost(std::span<const std::uint64_t> counts, const CodeBook& book);

/// One run's measurements. Quantities derived from t90 are NaN when the run
/// is censored; r90s is NaN until a message dictionary is applied.
struct MetricsRecord {
  std::uint64_t t90 = 0;
  double t90c = std::numeric_limits<double>::quiet_NaN();
  double s90 = std::numeric_limits<double>::quiet_NaN();
  double sl = std::numeric_limits<double>::quiet_NaN();
  double r90 = std::numeric_limits<double>::quiet_NaN();
  double rl = std::numeric_limits<double>::quiet_NaN();
  double r90s = std::numeric_limits<double>::quiet_NaN();
  bool censored = false;
};

/// Symbol statistics of one streamed walk, enough to evaluate any codebook
/// against it without keeping the sequence.
struct TransmissionTrace {
  std::uint64_t steps = 0;
  std::optional<std::uint64_t> t90;
  /// Counts of s_0..s_{t90-1}; of every emitted symbol when censored.
  std::vector<std::uint64_t> prefix_counts;
  /// Counts of s_0..s_{t90} (every symbol received at t90).
  std::vector<std::uint64_t> visits_t90;
  /// Counts of s_0..s_{t_long-1} and s_0..s_{t_long}; empty if t_long == 0.
  std::vector<std::uint64_t> long_counts;
  std::vector<std::uint64_t> visits_long;
};

/// Streams a walk until both t90 is reached (or `t90_cap` steps pass) and
/// `t_long` steps are taken.
TransmissionTrace trace_transmission(const Graph& g, const WalkKind& kind, std::uint64_t seed,
                                     std::uint64_t t90_cap = kDefaultT90Cap,
                                     std::uint64_t t_long = kDefaultLongRun);

/// Metrics of a trace under the degree-predicted codebook for `kind`.
MetricsRecord metrics_from_trace(const Graph& g, const WalkKind& kind, const TransmissionTrace& trace);

/// Full pipeline for one run: stream, reconstruct, measure.
MetricsRecord run_transmission(const Graph& g, const WalkKind& kind, std::uint64_t seed,
                               std::uint64_t t90_cap = kDefaultT90Cap,
                               std::uint64_t t_long = kDefaultLongRun);

/// Huffman dictionary estimated from the t90 prefix of one message.
CodeBook message_dictionary(const TransmissionTrace& training, double smoothing = 1.0);

/// Compression ratio of a trace's t90 prefix under `book`; NaN if censored.
double prefix_ratio(const TransmissionTrace& trace, const CodeBook& book);

/// R90 of each evaluation message under a dictionary built from the message
/// streamed with `train_seed`.
std::vector<double> single_message_ratio(const Graph& g, const WalkKind& kind,
                                         std::uint64_t train_seed,
                                         std::span<const std::uint64_t> eval_seeds,
                                         double smoothing = 1.0,
                                         std::uint64_t t90_cap = kDefaultT90Cap);

}  // namespace netxmit
