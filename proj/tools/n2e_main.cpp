#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "n2e/clipping.hpp"
#include "n2e/degree_approx.hpp"
#include "n2e/experiment.hpp"
#include "n2e/graph.hpp"
#include "n2e/mechanisms.hpp"
#include "n2e/noise.hpp"
#include "n2e/oracle_checks.hpp"
#include "n2e/parallel.hpp"

namespace {

using nlohmann::json;

n2e::Graph load_or_generate(const std::string& dataset, const std::string& gen,
                            std::uint64_t gen_seed) {
  n2e::ExperimentConfig cfg;
  cfg.dataset = dataset;
  cfg.gen = gen;
  cfg.gen_seed = gen_seed;
  return n2e::build_input_graph(cfg);
}

json approx_to_json(const n2e::DegreeApproxOutput& a) {
  return json{{"tau_star", a.tau_star},
              {"tau_star_int", a.tau_star_int},
              {"tau_svt", a.tau_svt},
              {"q_at_tau", a.q_at_tau},
              {"iterations", a.iterations},
              {"clamped", a.clamped},
              {"lp_solves", a.lp_solves},
              {"lp_seconds", a.lp_seconds},
              {"wall_seconds", a.wall_seconds}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Node-DP graph analytics via edge-DP mechanisms"};
  app.require_subcommand(1);

  // --- run ---
  auto* run = app.add_subcommand("run", "Run a private analytics task over repeated rounds");
  n2e::ExperimentConfig cfg;
  std::string config_path;
  bool eps_given = false;
  run->add_option("--config", config_path, "flat key=value config file; flags override");
  run->add_option("--dataset", cfg.dataset, "edge-list file");
  run->add_option("--gen", cfg.gen, "generator spec, e.g. gnp:2000:0.01 or pa:1000:5");
  run->add_option("--gen-seed", cfg.gen_seed, "generator seed");
  run->add_option("--task", cfg.task, "ec | tp | md | dd")->capture_default_str();
  auto* eps_opt = run->add_option("--eps", cfg.eps, "total epsilon (default 0.8; dd: 3.2)");
  run->add_option("--delta", cfg.delta, "total delta")->capture_default_str();
  run->add_option("--beta", cfg.beta, "error failure probability")->capture_default_str();
  run->add_option("--split", cfg.split, "budget split preset: theory | empirical")
      ->capture_default_str();
  run->add_option("--seed", cfg.seed, "experiment seed")->capture_default_str();
  run->add_option("--rounds", cfg.rounds, "repetition rounds")->capture_default_str();
  run->add_option("--workers", cfg.workers, "worker budget")->capture_default_str();
  run->add_flag("--baseline", cfg.baseline, "group-privacy baseline instead of the pipeline");
  run->add_option("--csv", cfg.out_csv, "append summary CSV row here");
  run->add_option("--jsonl", cfg.out_jsonl, "write per-round JSON lines here");

  // --- clip ---
  auto* clip = app.add_subcommand("clip", "Clip an edge list to a degree bound");
  std::string clip_in, clip_out, clip_report, clip_mode = "rank";
  int clip_tau = 1;
  clip->add_option("--input", clip_in, "edge-list file")->required();
  clip->add_option("--tau", clip_tau, "degree bound")->required();
  clip->add_option("--mode", clip_mode, "rank (both-endpoint rank) | endpoint (greedy)")
      ->capture_default_str();
  clip->add_option("--output", clip_out, "clipped edge-list file");
  clip->add_option("--report", clip_report, "clip report JSON file");

  // --- approx ---
  auto* approx = app.add_subcommand("approx", "Private maximum-degree approximation");
  std::string ap_dataset, ap_gen, ap_method = "poly";
  std::uint64_t ap_gen_seed = 1, ap_seed = 1;
  double ap_eps = 0.8, ap_delta = 0x1p-30, ap_beta = 0.1;
  int ap_workers = 1;
  approx->add_option("--dataset", ap_dataset, "edge-list file");
  approx->add_option("--gen", ap_gen, "generator spec");
  approx->add_option("--gen-seed", ap_gen_seed, "generator seed");
  approx->add_option("--method", ap_method, "poly | exp")->capture_default_str();
  approx->add_option("--eps", ap_eps, "epsilon")->capture_default_str();
  approx->add_option("--delta", ap_delta, "delta")->capture_default_str();
  approx->add_option("--beta", ap_beta, "beta")->capture_default_str();
  approx->add_option("--seed", ap_seed, "noise seed")->capture_default_str();
  approx->add_option("--workers", ap_workers, "worker budget")->capture_default_str();

  // --- oracle ---
  auto* oracle = app.add_subcommand("oracle", "Property checks; exits nonzero on violation");
  std::string prop_id;
  n2e::OracleOptions oopt;
  oracle->add_option("--property", prop_id,
                     "clip-distance | sensitivity-excess-degree | "
                     "sensitivity-deletions-exact | sensitivity-deletions-lp | "
                     "lp-vs-exact | svt-utility")
      ->required();
  oracle->add_option("--trials", oopt.trials, "trial count")->capture_default_str();
  oracle->add_option("--size-bound", oopt.size_bound, "max node count")->capture_default_str();
  oracle->add_option("--seed", oopt.seed, "seed")->capture_default_str();
  oracle->add_option("--workers", oopt.workers, "worker budget (0 = all cores)")
      ->capture_default_str();

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "Generate a synthetic graph as an edge list");
  std::string gen_spec, gen_out;
  std::uint64_t gen_seed = 1;
  gen->add_option("--model", gen_spec, "gnp:N:p | pa:N:m | cycle:N | star:K | complete:N")
      ->required();
  gen->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
  gen->add_option("--output", gen_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      if (!config_path.empty()) {
        n2e::ExperimentConfig file_cfg = n2e::parse_config_file(config_path);
        // flags override file values
        if (cfg.dataset.empty()) cfg.dataset = file_cfg.dataset;
        if (cfg.gen.empty()) cfg.gen = file_cfg.gen;
        for (auto* opt : run->get_options()) (void)opt;
        if (run->count("--task") == 0) cfg.task = file_cfg.task;
        if (run->count("--eps") == 0) cfg.eps = file_cfg.eps;
        if (run->count("--delta") == 0) cfg.delta = file_cfg.delta;
        if (run->count("--beta") == 0) cfg.beta = file_cfg.beta;
        if (run->count("--split") == 0) cfg.split = file_cfg.split;
        if (run->count("--seed") == 0) cfg.seed = file_cfg.seed;
        if (run->count("--rounds") == 0) cfg.rounds = file_cfg.rounds;
        if (run->count("--workers") == 0) cfg.workers = file_cfg.workers;
        if (run->count("--gen-seed") == 0) cfg.gen_seed = file_cfg.gen_seed;
        if (run->count("--csv") == 0) cfg.out_csv = file_cfg.out_csv;
        if (run->count("--jsonl") == 0) cfg.out_jsonl = file_cfg.out_jsonl;
        if (run->count("--baseline") == 0) cfg.baseline = file_cfg.baseline;
      }
      eps_given = eps_opt->count() > 0;
      if (!eps_given && config_path.empty() && cfg.task == "dd") cfg.eps = 3.2;
      const n2e::ExperimentSummary summary = n2e::run_experiment(cfg);
      n2e::write_jsonl(std::cout, summary);
      std::cout << summary.csv_header() << '\n' << summary.csv_row() << '\n';
      return 0;
    }
    if (*clip) {
      const n2e::Graph g = n2e::load_edge_list_file(clip_in).graph;
      const n2e::ClipReport report = clip_mode == "endpoint"
                                         ? n2e::endpoint_degree_clip(g, clip_tau)
                                         : n2e::clip_graph(g, clip_tau);
      if (!clip_out.empty()) {
        std::ofstream out(clip_out);
        n2e::write_edge_list(out, report.clipped);
      } else {
        n2e::write_edge_list(std::cout, report.clipped);
      }
      const json j{{"tau", report.tau},
                   {"mode", clip_mode},
                   {"removed_edges", report.removed_edges},
                   {"saturated_nodes", report.saturated_nodes},
                   {"nodes", report.clipped.node_count()},
                   {"edges", report.clipped.edge_count()},
                   {"max_degree", report.clipped.max_degree()}};
      if (!clip_report.empty())
        std::ofstream(clip_report) << j.dump(2) << '\n';
      else
        std::cerr << j.dump(2) << '\n';
      return 0;
    }
    if (*approx) {
      const n2e::Graph g = load_or_generate(ap_dataset, ap_gen, ap_gen_seed);
      n2e::SeededNoise noise(ap_seed);
      n2e::DegreeApproxOptions opt;
      opt.workers = ap_workers;
      const double t0 = n2e::wall_time_s();
      const n2e::DegreeApproxOutput out =
          ap_method == "exp"
              ? n2e::node_dp_max_degree_exp(g, ap_eps, ap_delta, ap_beta, noise, opt)
              : n2e::node_dp_max_degree_poly(g, ap_eps, ap_delta, ap_beta, noise, opt);
      json j = approx_to_json(out);
      j["method"] = ap_method;
      j["total_seconds"] = n2e::wall_time_s() - t0;
      std::cout << j.dump(2) << '\n';
      return 0;
    }
    if (*oracle) {
      const n2e::PropertyReport report = n2e::run_property(prop_id, oopt);
      std::cout << report.to_json() << '\n';
      return report.ok() ? 0 : 1;
    }
    if (*gen) {
      n2e::ExperimentConfig gcfg;
      gcfg.gen = gen_spec;
      gcfg.gen_seed = gen_seed;
      const n2e::Graph g = n2e::build_input_graph(gcfg);
      if (!gen_out.empty()) {
        std::ofstream out(gen_out);
        n2e::write_edge_list(out, g);
      } else {
        n2e::write_edge_list(std::cout, g);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
