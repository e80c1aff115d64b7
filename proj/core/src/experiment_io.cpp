#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "netxmit/experiment.hpp"

namespace netxmit {

namespace {

using nlohmann::json;

constexpr std::string_view kRunsHeader =
    "model,dynamics,directed,seed,n,mean_degree,t90,t90c,s90,sl,r90,rl,r90s,censored";

// Shortest representation that parses back to the same double.
std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_double(std::string_view s) {
  if (s == "nan") return std::nan("");
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error("bad number '" + std::string(s) + "'");
  }
  return v;
}

std::uint64_t parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error("bad integer '" + std::string(s) + "'");
  }
  return v;
}

bool parse_bool(std::string_view s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::runtime_error("bad boolean '" + std::string(s) + "'");
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return os;
}

ModelSpec model_from_json(const json& j) {
  ModelSpec s;
  if (j.is_string()) {
    s.model = parse_model_kind(j.get<std::string>());
  } else {
    s.model = parse_model_kind(j.at("model").get<std::string>());
    s.label = j.value("label", std::string{});
    s.n = j.value("n", s.n);
    s.mean_degree = j.value("mean_degree", s.mean_degree);
    s.rewire_p = j.value("p", s.rewire_p);
    s.attach_m = j.value("m", s.attach_m);
    s.reciprocity = j.value("r", s.reciprocity);
    s.waxman_d0 = j.value("d0", s.waxman_d0);
  }
  if (s.model == ModelKind::WS) s.n = largest_square_at_most(s.n);
  return s;
}

WalkKind dynamics_from_json(const json& j) {
  if (j.is_string()) return parse_walk_kind(j.get<std::string>());
  WalkKind k = parse_walk_kind(j.at("name").get<std::string>());
  k.gamma = j.value("gamma", k.gamma);
  return k;
}

}  // namespace

void write_runs_csv(std::ostream& os, std::span<const RunRecord> runs) {
  os << kRunsHeader << '\n';
  for (const auto& r : runs) {
    const auto& m = r.metrics;
    os << r.model << ',' << r.dynamics << ',' << (r.directed ? "true" : "false") << ','
       << r.seed << ',' << r.n << ',' << fmt(r.mean_degree) << ','
       << (m.censored ? std::string("nan") : std::to_string(m.t90)) << ',' << fmt(m.t90c) << ','
       << fmt(m.s90) << ',' << fmt(m.sl) << ',' << fmt(m.r90) << ',' << fmt(m.rl) << ','
       << fmt(m.r90s) << ',' << (m.censored ? "true" : "false") << '\n';
  }
}

std::vector<RunRecord> read_runs_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kRunsHeader) {
    throw std::runtime_error("runs.csv: unexpected header");
  }
  std::vector<RunRecord> runs;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto f = split(line);
    if (f.size() != 14) throw std::runtime_error("runs.csv: expected 14 fields in '" + line + "'");
    RunRecord r;
    r.model = f[0];
    r.dynamics = f[1];
    r.directed = parse_bool(f[2]);
    r.seed = parse_uint(f[3]);
    r.n = parse_uint(f[4]);
    r.mean_degree = parse_double(f[5]);
    r.metrics.censored = parse_bool(f[13]);
    r.metrics.t90 = r.metrics.censored ? 0 : parse_uint(f[6]);
    r.metrics.t90c = parse_double(f[7]);
    r.metrics.s90 = parse_double(f[8]);
    r.metrics.sl = parse_double(f[9]);
    r.metrics.r90 = parse_double(f[10]);
    r.metrics.rl = parse_double(f[11]);
    r.metrics.r90s = parse_double(f[12]);
    runs.push_back(std::move(r));
  }
  return runs;
}

void write_aggregates_csv(std::ostream& os, std::span<const AggregateRow> rows) {
  os << "model,dynamics,metric,mean,std,runs,censored\n";
  for (const auto& r : rows) {
    os << r.model << ',' << r.dynamics << ',' << r.metric << ',' << fmt(r.mean) << ','
       << fmt(r.stddev) << ',' << r.runs << ',' << r.censored << '\n';
  }
}

void write_errors_csv(std::ostream& os, std::span<const CellError> errors) {
  os << "model,repetition,message\n";
  for (const auto& e : errors) {
    std::string msg = e.message;
    for (char& c : msg) {
      if (c == ',' || c == '\n') c = ';';
    }
    os << e.model << ',' << e.repetition << ',' << msg << '\n';
  }
}

void emit_plot_data(std::span<const AggregateRow> rows, const std::filesystem::path& dir) {
  if (rows.empty()) throw std::invalid_argument("emit_plot_data: no aggregate rows");
  std::filesystem::create_directories(dir / "plotdata");
  {
    auto os = open_output(dir / "aggregates.csv");
    write_aggregates_csv(os, rows);
  }
  std::vector<std::string> models, dyns;
  for (const auto& r : rows) {
    if (std::find(models.begin(), models.end(), r.model) == models.end()) models.push_back(r.model);
    if (std::find(dyns.begin(), dyns.end(), r.dynamics) == dyns.end()) dyns.push_back(r.dynamics);
  }
  for (std::string_view metric : metric_names()) {
    auto os = open_output(dir / "plotdata" / (std::string(metric) + ".csv"));
    os << "model";
    for (const auto& d : dyns) os << ',' << d;
    for (const auto& d : dyns) os << ',' << d << "_std";
    os << '\n';
    for (const auto& m : models) {
      os << m;
      for (const auto& d : dyns) {
        const AggregateRow* a = find_aggregate(rows, m, d, metric);
        os << ',' << (a ? fmt(a->mean) : std::string("nan"));
      }
      for (const auto& d : dyns) {
        const AggregateRow* a = find_aggregate(rows, m, d, metric);
        os << ',' << (a ? fmt(a->stddev) : std::string("nan"));
      }
      os << '\n';
    }
  }
}

void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    auto os = open_output(dir / "runs.csv");
    write_runs_csv(os, result.runs);
  }
  if (!result.errors.empty()) {
    auto os = open_output(dir / "errors.csv");
    write_errors_csv(os, result.errors);
  }
  if (!result.aggregates.empty()) emit_plot_data(result.aggregates, dir);
}

ExperimentConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  ExperimentConfig c;
  try {
    if (j.contains("models")) {
      for (const auto& m : j.at("models")) c.models.push_back(model_from_json(m));
    }
    if (j.contains("dynamics")) {
      for (const auto& d : j.at("dynamics")) c.dynamics.push_back(dynamics_from_json(d));
    }
    c.directed = j.value("directed", c.directed);
    c.repetitions = j.value("repetitions", c.repetitions);
    c.t_long = j.value("t_long", c.t_long);
    c.t90_cap = j.value("t90_cap", c.t90_cap);
    c.master_seed = j.value("master_seed", c.master_seed);
    c.output_path = j.value("output_path", c.output_path.string());
    c.workers = j.value("workers", c.workers);
    c.smoothing = j.value("smoothing", c.smoothing);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read config " + path.string());
  std::stringstream buf;
  buf << is.rdbuf();
  return parse_config(buf.str());
}

}  // namespace netxmit
