#include "n2e/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "n2e/errors.hpp"
#include "n2e/metrics.hpp"
#include "n2e/noise.hpp"
#include "n2e/parallel.hpp"

namespace n2e {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::vector<std::string> split_colon(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  return parts;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (dataset.empty() == gen.empty())
    throw std::invalid_argument("exactly one of dataset/gen must be set");
  if (task != "ec" && task != "tp" && task != "md" && task != "dd")
    throw std::invalid_argument("task must be one of ec|tp|md|dd");
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  PrivacyParams check(eps, delta, beta);  // range validation
  BudgetSplit::by_name(split);
}

void apply_config_line(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "dataset") cfg.dataset = value;
  else if (key == "gen") cfg.gen = value;
  else if (key == "gen_seed") cfg.gen_seed = std::stoull(value);
  else if (key == "task") cfg.task = value;
  else if (key == "eps") cfg.eps = std::stod(value);
  else if (key == "delta") cfg.delta = std::stod(value);
  else if (key == "beta") cfg.beta = std::stod(value);
  else if (key == "split") cfg.split = value;
  else if (key == "seed") cfg.seed = std::stoull(value);
  else if (key == "rounds") cfg.rounds = std::stoi(value);
  else if (key == "workers") cfg.workers = std::stoi(value);
  else if (key == "brute_force_limit") cfg.brute_force_limit = std::stoi(value);
  else if (key == "baseline") cfg.baseline = (value == "1" || value == "true");
  else if (key == "out_csv") cfg.out_csv = value;
  else if (key == "out_jsonl") cfg.out_jsonl = value;
  else throw ParseError("unknown config key: " + key);
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config: " + path);
  ExperimentConfig cfg;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(line_no) + ": expected key = value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

Graph build_input_graph(const ExperimentConfig& cfg) {
  if (!cfg.dataset.empty()) return load_edge_list_file(cfg.dataset).graph;
  const auto parts = split_colon(cfg.gen);
  if (parts.empty()) throw std::invalid_argument("empty generator spec");
  std::mt19937_64 rng(cfg.gen_seed);
  const std::string& kind = parts[0];
  auto arg_int = [&](std::size_t i) { return std::stoi(parts.at(i)); };
  if (kind == "gnp") return make_gnp(arg_int(1), std::stod(parts.at(2)), rng);
  if (kind == "pa") return make_preferential(arg_int(1), arg_int(2), rng);
  if (kind == "cycle") return make_cycle(arg_int(1));
  if (kind == "star") return make_star(arg_int(1));
  if (kind == "complete") return make_complete(arg_int(1));
  if (kind == "path") return make_path(arg_int(1));
  throw std::invalid_argument("unknown generator: " + kind);
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const double t0 = wall_time_s();
  const Graph g = build_input_graph(cfg);
  const BudgetSplit split = BudgetSplit::by_name(cfg.split);
  const PrivacyParams params(cfg.eps, cfg.delta, cfg.beta);

  ExperimentSummary summary;
  summary.cfg = cfg;
  summary.metric_kind = cfg.task == "md"   ? "relative_rank_error"
                        : cfg.task == "dd" ? "relative_l1"
                                           : "relative_error";
  summary.records.resize(cfg.rounds);

  // Truth values shared by all rounds.
  const std::vector<int> degrees = g.degree_sequence();
  const int true_max = g.max_degree();
  EdgeCountMechanism ec;
  TwoPathCountMechanism tp;
  MaxDegreeMechanism md;
  const EdgeDpMechanism* mech = nullptr;
  if (cfg.task == "ec") mech = &ec;
  if (cfg.task == "tp") mech = &tp;
  if (cfg.task == "md") mech = &md;
  const HistogramSpec truth_spec(std::max(true_max, 1));
  const std::vector<double> truth_hist =
      cfg.task == "dd" ? truth_spec.true_histogram(g) : std::vector<double>{};

  auto cache = std::make_shared<LpValueCache>();
  std::int64_t n_hat = 1;
  while (n_hat < g.node_count()) n_hat *= 2;

  parallel_for(cfg.rounds, cfg.workers, [&](std::int64_t i) {
    RoundRecord& rec = summary.records[i];
    rec.round = static_cast<int>(i);
    rec.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    SeededNoise noise(rec.seed);
    PipelineOptions popt;
    popt.workers = 1;  // rounds already run concurrently
    popt.brute_force_limit = cfg.brute_force_limit;
    popt.cache = cache;
    try {
      if (cfg.task == "dd") {
        const PipelineResult r = n2e_degree_distribution(g, params, split, noise, popt);
        const int bins = std::max<int>(truth_spec.bin_count(),
                                       static_cast<int>(r.result.histogram.size()));
        const auto est = HistogramSpec::extend(r.result.histogram, bins);
        const auto truth = HistogramSpec::extend(truth_hist, bins);
        rec.abs_error = l1_histogram(est, truth);
        rec.truth = static_cast<double>(g.node_count());
        rec.value = rec.abs_error;
        rec.metric = 100.0 * rec.abs_error / rec.truth;
        rec.tau_star_int = r.approx.tau_star_int;
        rec.tau_svt = r.approx.tau_svt;
        rec.clip_removed = r.result.clip->removed_edges;
        rec.epsilon_spent = r.result.consumed_epsilon;
        rec.approx_s = r.approx_seconds;
        rec.clip_s = r.clip_seconds;
        rec.mech_s = r.mech_seconds;
        return;
      }
      TaskResult result;
      if (cfg.baseline) {
        const double t = wall_time_s();
        result = group_privacy_baseline(g, *mech, params, n_hat, noise);
        rec.mech_s = wall_time_s() - t;
      } else {
        const PipelineResult r = n2e_run(g, *mech, params, split, noise, popt);
        result = r.result;
        rec.tau_star_int = r.approx.tau_star_int;
        rec.tau_svt = r.approx.tau_svt;
        rec.clip_removed = r.result.clip->removed_edges;
        rec.approx_s = r.approx_seconds;
        rec.clip_s = r.clip_seconds;
        rec.mech_s = r.mech_seconds;
      }
      rec.value = result.value;
      rec.epsilon_spent = result.consumed_epsilon;
      if (cfg.task == "md") {
        rec.truth = true_max;
        rec.abs_error = rank_error(result.value, degrees);
        rec.metric = 100.0 * rec.abs_error / std::max(1, true_max);
      } else {
        rec.truth = mech->true_value(g);
        rec.abs_error = std::abs(result.value - rec.truth);
        rec.metric = relative_error(result.value, rec.truth);
      }
    } catch (const std::exception& e) {
      rec.failed = true;
      rec.error = e.what();
    }
  });

  std::vector<double> metrics;
  for (const auto& rec : summary.records) {
    if (rec.failed) throw std::runtime_error("round " + std::to_string(rec.round) +
                                             " failed: " + rec.error);
    metrics.push_back(rec.metric);
  }
  if (cfg.rounds >= 5) {
    summary.mean = trimmed_mean(metrics);
    std::sort(metrics.begin(), metrics.end());
    metrics = std::vector<double>(metrics.begin() + 2, metrics.end() - 2);
    summary.stddev = sample_std(metrics);
  } else {
    double s = 0.0;
    for (double m : metrics) s += m;
    summary.mean = s / metrics.size();
    summary.stddev = sample_std(metrics);
  }
  summary.wall_seconds = wall_time_s() - t0;

  if (!cfg.out_csv.empty()) {
    const bool fresh = !std::ifstream(cfg.out_csv).good();
    std::ofstream out(cfg.out_csv, std::ios::app);
    if (fresh) out << summary.csv_header() << '\n';
    out << summary.csv_row() << '\n';
  }
  if (!cfg.out_jsonl.empty()) {
    std::ofstream out(cfg.out_jsonl);
    write_jsonl(out, summary);
  }
  return summary;
}

std::string ExperimentSummary::csv_header() const {
  return "dataset,task,eps,delta,beta,split,rounds,metric,mean,std,time_s";
}

std::string ExperimentSummary::csv_row() const {
  std::ostringstream out;
  out << (cfg.dataset.empty() ? cfg.gen : cfg.dataset) << ',' << cfg.task << ','
      << fmt_double(cfg.eps) << ',' << fmt_double(cfg.delta) << ',' << fmt_double(cfg.beta)
      << ',' << cfg.split << ',' << cfg.rounds << ',' << metric_kind << ','
      << fmt_double(mean) << ',' << fmt_double(stddev) << ',' << fmt_double(wall_seconds);
  return out.str();
}

void write_jsonl(std::ostream& out, const ExperimentSummary& summary) {
  for (const auto& rec : summary.records) {
    nlohmann::json j{{"round", rec.round},
                     {"seed", rec.seed},
                     {"value", rec.value},
                     {"truth", rec.truth},
                     {"metric", rec.metric},
                     {"abs_error", rec.abs_error},
                     {"tau_star_int", rec.tau_star_int},
                     {"tau_svt", rec.tau_svt},
                     {"clip_removed", rec.clip_removed},
                     {"epsilon_spent", rec.epsilon_spent},
                     {"approx_s", rec.approx_s},
                     {"clip_s", rec.clip_s},
                     {"mech_s", rec.mech_s}};
    out << j.dump() << '\n';
  }
}

}  // namespace n2e
