#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "netxmit/graph.hpp"
#include "netxmit/rng.hpp"

namespace netxmit {

enum class ModelKind { ER, BA, WS, WAX, GEO, KN, ERE };

std::string_view model_name(ModelKind kind);
/// Accepts the short names above; throws std::invalid_argument otherwise.
ModelKind parse_model_kind(std::string_view name);

/// Intrinsically directed models skip the reciprocity conversion.
constexpr bool is_intrinsically_directed(ModelKind kind) {
  return kind == ModelKind::KN || kind == ModelKind::ERE;
}

/// Thrown when a calibrated generator cannot reach its target mean degree.
class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One network model with its parameters. `label` names the experiment cell
/// (e.g. "WS1", "ER-0.4") and defaults to the model name.
struct ModelSpec {
  ModelKind model = ModelKind::ER;
  std::string label;
  std::size_t n = 1000;
  double mean_degree = 8.0;
  double rewire_p = 0.01;    // WS
  std::size_t attach_m = 4;  // BA
  double reciprocity = 0.6;  // undirected -> directed conversion
  double waxman_d0 = 0.15;   // WAX distance scale

  std::string display_label() const {
    return label.empty() ? std::string(model_name(model)) : label;
  }

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

/// Largest perfect square not exceeding n.
std::size_t largest_square_at_most(std::size_t n);

struct Point {
  double x;
  double y;
};

std::vector<Point> random_points(std::size_t n, Rng& rng);

/// G(n, p).
Graph erdos_renyi(std::size_t n, double p, Rng& rng);
/// G(n, p) with p = mean_degree / (n - 1).
Graph generate_er(std::size_t n, double mean_degree, Rng& rng);

/// Preferential attachment grown from an (m+1)-clique; each new node links to
/// m distinct existing nodes with probability proportional to degree.
Graph generate_ba(std::size_t n, std::size_t m, Rng& rng);

/// side x side torus where every node links to its 8 Moore neighbours.
Graph moore_torus(std::size_t side);
/// Moore torus with each edge rewired with probability p: one endpoint is kept
/// and the other is redrawn uniformly, avoiding self-loops and duplicates.
/// n must be a perfect square of a side >= 3.
Graph generate_ws(std::size_t n, double p, Rng& rng);

/// Points in the unit square joined when closer than `radius`. No component
/// extraction.
Graph geometric_graph(std::span<const Point> points, double radius);
/// Random geometric graph with the radius bisected until the giant component
/// has a mean degree within 2% of the target. Returns the giant component.
Graph generate_geo(std::size_t n, double mean_degree, Rng& rng);

/// Waxman graph: each pair joined with probability beta * exp(-d / d0).
/// No component extraction.
Graph waxman_graph(std::span<const Point> points, double beta, double d0, Rng& rng);
/// Waxman graph with d0 fixed and beta bisected to the target mean degree of
/// the giant component (within 2%). Returns the giant component.
Graph generate_wax(std::size_t n, double mean_degree, Rng& rng, double d0 = 0.15);

/// Knitted network: mean_degree / 2 threads, each a uniformly random
/// permutation of all nodes linked head to tail. Directed.
Graph generate_kn(std::size_t n, double mean_degree, Rng& rng);

/// Directed configuration model with k_in(i) = k_out(i) for every node,
/// per-node stub counts binomial with mean mean_degree / 2. Self-loops,
/// duplicates and reciprocal pairs are removed by stub swaps.
Graph generate_ere(std::size_t n, double mean_degree, Rng& rng);

/// Raw model output; validates `spec` first.
Graph generate(const ModelSpec& spec, Rng& rng);

/// The graph actually transmitted: undirected models are reduced to their
/// largest connected component, or converted with `spec.reciprocity` and
/// reduced to the largest strongly connected component when `directed`.
/// KN and ERE are always directed and require `directed`.
Graph prepare_network(const ModelSpec& spec, bool directed, Rng& rng);

}  // namespace netxmit
