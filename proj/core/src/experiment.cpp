#include "netxmit/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <set>
#include <thread>

namespace netxmit {

namespace {

constexpr std::string_view kMetrics[] = {"t90", "t90c", "s90", "sl", "r90", "rl", "r90s"};

// Metrics that only exist once 90% coverage was reached.
bool needs_t90(std::string_view metric) { return metric != "sl" && metric != "rl"; }

double metric_value(const MetricsRecord& m, std::string_view metric) {
  if (metric == "t90") return m.censored ? std::nan("") : static_cast<double>(m.t90);
  if (metric == "t90c") return m.t90c;
  if (metric == "s90") return m.s90;
  if (metric == "sl") return m.sl;
  if (metric == "r90") return m.r90;
  if (metric == "rl") return m.rl;
  return m.r90s;
}

ModelSpec spec(ModelKind kind, std::string label) {
  ModelSpec s;
  s.model = kind;
  s.label = std::move(label);
  return s;
}

std::vector<ModelSpec> grid_models() {
  ModelSpec ws1 = spec(ModelKind::WS, "WS1");
  ws1.n = largest_square_at_most(1000);
  ws1.rewire_p = 0.01;
  ModelSpec ws2 = ws1;
  ws2.label = "WS2";
  ws2.rewire_p = 0.005;
  return {spec(ModelKind::ER, "ER"),   spec(ModelKind::BA, "BA"),   ws1, ws2,
          spec(ModelKind::WAX, "WAX"), spec(ModelKind::GEO, "GEO")};
}

struct Task {
  std::size_t model;
  std::size_t rep;
};

struct TaskOutput {
  std::vector<RunRecord> runs;  // one per dynamics
  std::optional<CellError> error;
};

TaskOutput run_task(const ExperimentConfig& cfg, const Task& task) {
  const ModelSpec& ms = cfg.models[task.model];
  const std::string label = ms.display_label();
  TaskOutput out;
  Graph g;
  try {
    Rng rng(graph_seed(cfg.master_seed, label, task.rep));
    g = prepare_network(ms, cfg.directed, rng);
  } catch (const std::exception& e) {
    out.error = CellError{label, task.rep, e.what()};
    return out;
  }
  for (const WalkKind& kind : cfg.dynamics) {
    const std::string dyn(dynamics_name(kind.variant));
    RunRecord rec;
    rec.model = label;
    rec.dynamics = dyn;
    rec.directed = cfg.directed;
    rec.seed = walk_seed(cfg.master_seed, label, dyn, task.rep);
    rec.n = g.node_count();
    rec.mean_degree = g.mean_degree();
    const TransmissionTrace trace = trace_transmission(g, kind, rec.seed, cfg.t90_cap, cfg.t_long);
    rec.metrics = metrics_from_trace(g, kind, trace);
    const TransmissionTrace training = trace_transmission(
        g, kind, training_seed(cfg.master_seed, label, dyn, task.rep), cfg.t90_cap, 0);
    rec.metrics.r90s = prefix_ratio(trace, message_dictionary(training, cfg.smoothing));
    out.runs.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  if (t_long < 1) throw std::invalid_argument("t_long must be at least 1");
  if (t90_cap < 1) throw std::invalid_argument("t90_cap must be at least 1");
  if (models.empty()) throw std::invalid_argument("no network models configured");
  if (dynamics.empty()) throw std::invalid_argument("no dynamics configured");
  std::set<std::string> labels;
  for (const auto& m : models) {
    m.validate();
    if (!labels.insert(m.display_label()).second) {
      throw std::invalid_argument("duplicate model label '" + m.display_label() + "'");
    }
    if (is_intrinsically_directed(m.model) && !directed) {
      throw std::invalid_argument(m.display_label() + " requires a directed experiment");
    }
  }
  std::set<Dynamics> seen;
  for (const auto& d : dynamics) {
    if (!seen.insert(d.variant).second) {
      throw std::invalid_argument("dynamics '" + std::string(dynamics_name(d.variant)) +
                                  "' listed twice");
    }
  }
  if (!(smoothing > 0.0)) throw std::invalid_argument("smoothing must be positive");
}

ExperimentConfig undirected_grid() {
  ExperimentConfig c;
  c.models = grid_models();
  c.dynamics = {WalkKind::rw(), WalkKind::rwd(), WalkKind::rwid(), WalkKind::tsaw()};
  return c;
}

ExperimentConfig directed_grid() {
  ExperimentConfig c = undirected_grid();
  c.directed = true;
  c.models.push_back(spec(ModelKind::KN, "KN"));
  return c;
}

std::vector<ModelSpec> reciprocity_study_models(std::size_t n, double mean_degree) {
  std::vector<ModelSpec> out;
  for (auto [r, label] : {std::pair{0.0, "ER-0.0"}, {0.4, "ER-0.4"}, {0.9, "ER-0.9"}}) {
    ModelSpec s = spec(ModelKind::ER, label);
    s.reciprocity = r;
    out.push_back(s);
  }
  out.push_back(spec(ModelKind::ERE, "ERE"));
  out.push_back(spec(ModelKind::KN, "KN"));
  for (auto& s : out) {
    s.n = n;
    s.mean_degree = mean_degree;
  }
  return out;
}

std::span<const std::string_view> metric_names() { return kMetrics; }

std::uint64_t graph_seed(std::uint64_t master, std::string_view model, std::size_t rep) {
  return SeedHasher(master).add("graph").add(model).add(std::uint64_t{rep}).value();
}

std::uint64_t walk_seed(std::uint64_t master, std::string_view model, std::string_view dynamics,
                        std::size_t rep) {
  return SeedHasher(master).add("walk").add(model).add(dynamics).add(std::uint64_t{rep}).value();
}

std::uint64_t training_seed(std::uint64_t master, std::string_view model,
                            std::string_view dynamics, std::size_t rep) {
  return SeedHasher(master).add("train").add(model).add(dynamics).add(std::uint64_t{rep}).value();
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<Task> tasks;
  for (std::size_t m = 0; m < config.models.size(); ++m) {
    for (std::size_t r = 0; r < config.repetitions; ++r) tasks.push_back({m, r});
  }

  std::vector<TaskOutput> outputs(tasks.size());
  std::vector<std::exception_ptr> failures(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        outputs[i] = run_task(config, tasks[i]);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(config.workers, tasks.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  // Tasks are model-major, so regrouping by dynamics keeps (model, dynamics, rep) order.
  ExperimentResult result;
  for (std::size_t m = 0; m < config.models.size(); ++m) {
    for (std::size_t d = 0; d < config.dynamics.size(); ++d) {
      for (std::size_t r = 0; r < config.repetitions; ++r) {
        const TaskOutput& out = outputs[m * config.repetitions + r];
        if (!out.error) result.runs.push_back(out.runs[d]);
      }
    }
    for (std::size_t r = 0; r < config.repetitions; ++r) {
      const TaskOutput& out = outputs[m * config.repetitions + r];
      if (out.error) result.errors.push_back(*out.error);
    }
  }
  std::vector<std::string> model_order, dynamics_order;
  for (const auto& m : config.models) model_order.push_back(m.display_label());
  for (const auto& d : config.dynamics) dynamics_order.emplace_back(dynamics_name(d.variant));
  result.aggregates = aggregate(result.runs, model_order, dynamics_order);
  return result;
}

ExperimentResult run_s2_study(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.models = reciprocity_study_models();
  c.directed = true;
  return run_experiment(c);
}

std::vector<AggregateRow> aggregate(std::span<const RunRecord> runs,
                                    std::span<const std::string> model_order,
                                    std::span<const std::string> dynamics_order) {
  std::vector<AggregateRow> rows;
  for (const auto& model : model_order) {
    for (const auto& dyn : dynamics_order) {
      std::size_t censored = 0;
      bool any = false;
      for (const auto& r : runs) {
        if (r.model == model && r.dynamics == dyn) {
          any = true;
          censored += r.metrics.censored ? 1 : 0;
        }
      }
      if (!any) continue;
      for (std::string_view metric : kMetrics) {
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& r : runs) {
          if (r.model != model || r.dynamics != dyn) continue;
          if (needs_t90(metric) && r.metrics.censored) continue;
          const double v = metric_value(r.metrics, metric);
          if (std::isnan(v)) continue;
          sum += v;
          ++count;
        }
        AggregateRow row{model, dyn, std::string(metric), std::nan(""), 0.0, count, censored};
        if (count > 0) {
          row.mean = sum / static_cast<double>(count);
          double ss = 0.0;
          for (const auto& r : runs) {
            if (r.model != model || r.dynamics != dyn) continue;
            if (needs_t90(metric) && r.metrics.censored) continue;
            const double v = metric_value(r.metrics, metric);
            if (std::isnan(v)) continue;
            ss += (v - row.mean) * (v - row.mean);
          }
          row.stddev = count > 1 ? std::sqrt(ss / static_cast<double>(count - 1)) : 0.0;
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::vector<AggregateRow> aggregate(std::span<const RunRecord> runs) {
  std::vector<std::string> models, dyns;
  for (const auto& r : runs) {
    if (std::find(models.begin(), models.end(), r.model) == models.end()) models.push_back(r.model);
    if (std::find(dyns.begin(), dyns.end(), r.dynamics) == dyns.end()) dyns.push_back(r.dynamics);
  }
  return aggregate(runs, models, dyns);
}

const AggregateRow* find_aggregate(std::span<const AggregateRow> rows, std::string_view model,
                                   std::string_view dynamics, std::string_view metric) {
  for (const auto& r : rows) {
    if (r.model == model && r.dynamics == dynamics && r.metric == metric) return &r;
  }
  return nullptr;
}

}  // namespace netxmit
