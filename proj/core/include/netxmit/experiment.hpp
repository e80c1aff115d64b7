#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "netxmit/generators.hpp"
#include "netxmit/transmission.hpp"
#include "netxmit/walk.hpp"

namespace netxmit {

struct ExperimentConfig {
  std::vector<ModelSpec> models;
  std::vector<WalkKind> dynamics;
  bool directed = false;
  std::size_t repetitions = 30;
  std::uint64_t t_long = kDefaultLongRun;
  std::uint64_t t90_cap = kDefaultT90Cap;
  std::uint64_t master_seed = 1;
  std::filesystem::path output_path = "results";
  std::size_t workers = 1;
  /// Additive smoothing of single-message dictionaries.
  double smoothing = 1.0;

  void validate() const;
};

/// ER, BA, WS1, WS2, WAX, GEO at n ~ 1000 and mean degree ~ 8 under all four
/// dynamics. WS uses a 31 x 31 torus.
ExperimentConfig undirected_grid();
/// The undirected grid plus KN, converted with reciprocity 0.6.
ExperimentConfig directed_grid();
/// ER at reciprocity 0.0 / 0.4 / 0.9, ERE and KN, all directed.
std::vector<ModelSpec> reciprocity_study_models(std::size_t n = 1000, double mean_degree = 8.0);

/// One run of one (model, dynamics, repetition) cell.
struct RunRecord {
  std::string model;
  std::string dynamics;
  bool directed = false;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double mean_degree = 0.0;
  MetricsRecord metrics;
};

struct AggregateRow {
  std::string model;
  std::string dynamics;
  std::string metric;
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t runs = 0;
  std::size_t censored = 0;
};

/// A network realization that could not be produced; its runs are missing.
struct CellError {
  std::string model;
  std::size_t repetition = 0;
  std::string message;
};

struct ExperimentResult {
  std::vector<RunRecord> runs;  // model, dynamics, repetition order
  std::vector<AggregateRow> aggregates;
  std::vector<CellError> errors;
};

/// Metric names in output order.
std::span<const std::string_view> metric_names();

/// Seeds are derived from (master seed, labels, repetition) only, so a cell's
/// runs do not depend on the other cells, the worker count or their order.
std::uint64_t graph_seed(std::uint64_t master, std::string_view model, std::size_t rep);
std::uint64_t walk_seed(std::uint64_t master, std::string_view model, std::string_view dynamics,
                        std::size_t rep);
std::uint64_t training_seed(std::uint64_t master, std::string_view model,
                            std::string_view dynamics, std::size_t rep);

ExperimentResult run_experiment(const ExperimentConfig& config);
/// run_experiment over reciprocity_study_models() with the directed pipeline.
ExperimentResult run_s2_study(const ExperimentConfig& config);

/// Mean and sample standard deviation per (model, dynamics, metric), with
/// models and dynamics in the given orders. Censored runs and NaN values are
/// left out of each metric's statistics.
std::vector<AggregateRow> aggregate(std::span<const RunRecord> runs,
                                    std::span<const std::string> model_order,
                                    std::span<const std::string> dynamics_order);
/// As above with orders of first appearance in `runs`.
std::vector<AggregateRow> aggregate(std::span<const RunRecord> runs);

const AggregateRow* find_aggregate(std::span<const AggregateRow> rows, std::string_view model,
                                   std::string_view dynamics, std::string_view metric);

void write_runs_csv(std::ostream& os, std::span<const RunRecord> runs);
std::vector<RunRecord> read_runs_csv(std::istream& is);
void write_aggregates_csv(std::ostream& os, std::span<const AggregateRow> rows);
void write_errors_csv(std::ostream& os, std::span<const CellError> errors);

/// Writes `dir`/aggregates.csv and one `dir`/plotdata/<metric>.csv per metric
/// with a row per model and a mean and std column per dynamics.
void emit_plot_data(std::span<const AggregateRow> rows, const std::filesystem::path& dir);

/// runs.csv, errors.csv (if any) and the emit_plot_data() files.
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

/// JSON configuration. Every ExperimentConfig field is optional; models and
/// dynamics may be given as bare names. WS node counts are rounded down to
/// a perfect square.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace netxmit
