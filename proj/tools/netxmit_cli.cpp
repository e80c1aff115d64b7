// netxmit command line: one subcommand per pipeline stage.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netxmit/coding.hpp"
#include "netxmit/experiment.hpp"
#include "netxmit/generators.hpp"
#include "netxmit/graph.hpp"
#include "netxmit/transmission.hpp"
#include "netxmit/walk.hpp"

namespace fs = std::filesystem;
using namespace netxmit;

namespace {

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream is(path, mode);
  if (!is) throw std::runtime_error("cannot open " + path);
  return is;
}

// Writes to `path`, or stdout when it is empty or "-".
template <typename Fn>
void with_output(const std::string& path, std::ios::openmode mode, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream os(path, mode);
  if (!os) throw std::runtime_error("cannot write " + path);
  fn(os);
  if (!os) throw std::runtime_error("error writing " + path);
}

Graph load_graph(const std::string& path) {
  auto is = open_in(path);
  return read_edge_list(is);
}

std::vector<NodeId> load_symbols(const std::string& path) {
  auto is = open_in(path);
  std::vector<NodeId> out;
  long long v;
  while (is >> v) {
    if (v < 0) throw std::runtime_error(path + ": negative symbol");
    out.push_back(static_cast<NodeId>(v));
  }
  if (!is.eof()) throw std::runtime_error(path + ": expected one node id per line");
  return out;
}

struct DynamicsArgs {
  std::string name = "RW";
  std::optional<double> gamma;

  WalkKind kind() const {
    WalkKind k = parse_walk_kind(name);
    if (gamma) k.gamma = *gamma;
    return k;
  }
};

void add_dynamics(CLI::App* app, DynamicsArgs& d) {
  app->add_option("--dynamics", d.name, "RW, RWD, RWID or TSAW")->capture_default_str();
  app->add_option("--gamma", d.gamma, "TSAW penalty base");
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network transmission by random walks"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a network and write its edge list");
  ModelSpec spec;
  std::string gen_model = "ER";
  std::uint64_t gen_seed = 1;
  bool gen_directed = false;
  bool gen_raw = false;
  std::string gen_out;
  gen->add_option("--model", gen_model, "ER, BA, WS, WAX, GEO, KN or ERE")->capture_default_str();
  gen->add_option("--n", spec.n, "node count")->capture_default_str();
  gen->add_option("--k", spec.mean_degree, "target mean degree")->capture_default_str();
  gen->add_option("--p", spec.rewire_p, "WS rewiring probability")->capture_default_str();
  gen->add_option("--m", spec.attach_m, "BA attachment count")->capture_default_str();
  gen->add_option("--r", spec.reciprocity, "reciprocity of the directed conversion")->capture_default_str();
  gen->add_option("--d0", spec.waxman_d0, "Waxman distance scale")->capture_default_str();
  gen->add_option("--seed", gen_seed)->capture_default_str();
  gen->add_option("--directed", gen_directed, "apply the directed pipeline")->capture_default_str();
  gen->add_flag("--raw", gen_raw, "skip the component restriction");
  gen->add_option("--out", gen_out, "edge list path (stdout if omitted)");

  // walk
  auto* walk = app.add_subcommand("walk", "Emit a walk as newline-separated node ids");
  std::string walk_graph, walk_out;
  DynamicsArgs walk_dyn;
  std::uint64_t walk_steps = 1000, walk_seed = 1;
  std::optional<NodeId> walk_start;
  walk->add_option("--graph", walk_graph, "edge list")->required();
  add_dynamics(walk, walk_dyn);
  walk->add_option("--steps", walk_steps)->capture_default_str();
  walk->add_option("--seed", walk_seed)->capture_default_str();
  walk->add_option("--start", walk_start, "start node (uniform if omitted)");
  walk->add_option("--out", walk_out);

  // codebook
  auto* cb = app.add_subcommand("codebook", "Build a Huffman dictionary, optionally encode a walk");
  std::string cb_graph, cb_message, cb_out, cb_encode, cb_bits;
  DynamicsArgs cb_dyn;
  double cb_smoothing = 1.0;
  cb->add_option("--graph", cb_graph, "edge list")->required();
  add_dynamics(cb, cb_dyn);
  cb->add_option("--message", cb_message, "train on this symbol file instead of the degree model");
  cb->add_option("--smoothing", cb_smoothing)->capture_default_str();
  cb->add_option("--out", cb_out, "codebook path (stdout if omitted)");
  cb->add_option("--encode", cb_encode, "symbol file to encode");
  cb->add_option("--bits", cb_bits, "bitstream output for --encode")->needs(cb->get_option("--encode"));

  // transmit
  auto* tx = app.add_subcommand("transmit", "One transmission run; metrics to stdout");
  std::string tx_graph;
  DynamicsArgs tx_dyn;
  std::uint64_t tx_seed = 1, tx_long = kDefaultLongRun, tx_cap = kDefaultT90Cap;
  tx->add_option("--graph", tx_graph, "edge list")->required();
  add_dynamics(tx, tx_dyn);
  tx->add_option("--seed", tx_seed)->capture_default_str();
  tx->add_option("--t-long", tx_long)->capture_default_str();
  tx->add_option("--cap", tx_cap, "t90 step cap")->capture_default_str();

  // experiment
  auto* ex = app.add_subcommand("experiment", "Run a model x dynamics grid");
  std::string ex_config, ex_study = "grid", ex_out;
  std::optional<std::uint64_t> ex_seed, ex_long, ex_cap;
  std::optional<std::size_t> ex_workers, ex_reps;
  bool ex_directed = false;
  ex->add_option("--config", ex_config, "JSON configuration");
  ex->add_option("--study", ex_study, "grid or s2 (reciprocity sweep)")
      ->check(CLI::IsMember({"grid", "s2"}))
      ->capture_default_str();
  ex->add_option("--seed", ex_seed, "master seed");
  ex->add_option("--workers", ex_workers);
  ex->add_option("--out", ex_out, "output directory");
  auto* ex_directed_opt = ex->add_option("--directed", ex_directed, "directed pipeline");
  ex->add_option("--t-long", ex_long);
  ex->add_option("--cap", ex_cap, "t90 step cap");
  ex->add_option("--reps", ex_reps, "repetitions per cell");

  // report
  auto* rep = app.add_subcommand("report", "Aggregate a runs.csv and emit plot data");
  std::string rep_runs, rep_out = ".";
  rep->add_option("--runs", rep_runs, "runs.csv")->required();
  rep->add_option("--out", rep_out, "output directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      spec.model = parse_model_kind(gen_model);
      Rng rng(gen_seed);
      Graph g;
      if (gen_raw) {
        spec.validate();
        g = generate(spec, rng);
      } else {
        g = prepare_network(spec, gen_directed, rng);
      }
      with_output(gen_out, std::ios::out, [&](std::ostream& os) { write_edge_list(os, g); });
    } else if (walk->parsed()) {
      const Graph g = load_graph(walk_graph);
      const auto seq = simulate(g, walk_dyn.kind(), walk_steps, walk_start, walk_seed);
      with_output(walk_out, std::ios::out, [&](std::ostream& os) {
        for (NodeId s : seq) os << s << '\n';
      });
    } else if (cb->parsed()) {
      const Graph g = load_graph(cb_graph);
      const ProbabilityModel model =
          cb_message.empty()
              ? degree_probability_model(g, cb_dyn.kind())
              : empirical_probability_model(load_symbols(cb_message), g.node_count(), cb_smoothing);
      const CodeBook book = huffman_build(model);
      with_output(cb_out, std::ios::out, [&](std::ostream& os) { write_codebook(os, book); });
      if (!cb_encode.empty()) {
        const auto seq = load_symbols(cb_encode);
        const BitStream bits = encode(seq, book);
        if (!cb_bits.empty()) {
          with_output(cb_bits, std::ios::binary, [&](std::ostream& os) { write_bitstream(os, bits); });
        }
        std::cerr << seq.size() << " symbols, " << bits.bit_count << " bits, ratio "
                  << fmt(static_cast<double>(bits.bit_count) /
                         static_cast<double>(seq.size() * fixed_width_bits(g.node_count())))
                  << '\n';
      }
    } else if (tx->parsed()) {
      const Graph g = load_graph(tx_graph);
      const MetricsRecord m = run_transmission(g, tx_dyn.kind(), tx_seed, tx_cap, tx_long);
      std::cout << "n " << g.node_count() << "\nedges " << g.edge_count() << "\nt90 "
                << (m.censored ? std::string("nan") : std::to_string(m.t90)) << "\nt90c " << fmt(m.t90c)
                << "\ns90 " << fmt(m.s90) << "\nsl " << fmt(m.sl) << "\nr90 " << fmt(m.r90) << "\nrl "
                << fmt(m.rl) << "\ncensored " << (m.censored ? "true" : "false") << '\n';
    } else if (ex->parsed()) {
      ExperimentConfig cfg;
      if (!ex_config.empty()) {
        cfg = load_config(ex_config);
      } else if (ex_study == "grid") {
        cfg = (ex_directed_opt->count() && ex_directed) ? directed_grid() : undirected_grid();
      } else {
        cfg = directed_grid();
      }
      if (ex_directed_opt->count()) cfg.directed = ex_directed;
      if (ex_seed) cfg.master_seed = *ex_seed;
      if (ex_workers) cfg.workers = *ex_workers;
      if (ex_long) cfg.t_long = *ex_long;
      if (ex_cap) cfg.t90_cap = *ex_cap;
      if (ex_reps) cfg.repetitions = *ex_reps;
      if (!ex_out.empty()) cfg.output_path = ex_out;

      const ExperimentResult result = ex_study == "s2" ? run_s2_study(cfg) : run_experiment(cfg);
      write_outputs(result, cfg.output_path);
      std::cerr << result.runs.size() << " runs written to " << cfg.output_path.string() << '\n';
      if (!result.errors.empty()) {
        for (const auto& e : result.errors) {
          std::cerr << "aborted " << e.model << " rep " << e.repetition << ": " << e.message << '\n';
        }
        return 3;
      }
    } else if (rep->parsed()) {
      auto is = open_in(rep_runs);
      const auto runs = read_runs_csv(is);
      if (runs.empty()) throw std::runtime_error(rep_runs + ": no runs");
      emit_plot_data(aggregate(runs), rep_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "netxmit: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
