#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "n2e/graph.hpp"
#include "n2e/mechanisms.hpp"

namespace n2e {

struct ExperimentConfig {
  std::string dataset;      // edge-list path; empty when generating
  std::string gen;          // "gnp:2000:0.01", "cycle:500", "star:10",
                            // "complete:6", "pa:1000:5", "path:8"
  std::uint64_t gen_seed = 1;
  std::string task = "ec";  // ec | tp | md | dd
  double eps = 0.8;         // shipped default; dd defaults to 3.2
  double delta = 0x1p-30;
  double beta = 0.1;
  std::string split = "empirical";
  std::uint64_t seed = 1;
  int rounds = 10;
  int workers = 1;
  int brute_force_limit = 16;
  bool baseline = false;    // group-privacy baseline instead of the pipeline
  std::string out_csv;
  std::string out_jsonl;

  void validate() const;
};

// Flat key = value lines, '#' comments. CLI flags override parsed values.
ExperimentConfig parse_config_file(const std::string& path);
void apply_config_line(ExperimentConfig& cfg, const std::string& key, const std::string& value);

Graph build_input_graph(const ExperimentConfig& cfg);

struct RoundRecord {
  int round = 0;
  std::uint64_t seed = 0;
  double value = 0.0;      // scalar estimate; L1 error stands in for dd
  double truth = 0.0;
  double metric = 0.0;     // relative error (%) / relative rank error (%) /
                           // relative L1 (%)
  double abs_error = 0.0;
  int tau_star_int = 0;
  int tau_svt = 0;
  std::int64_t clip_removed = 0;
  double epsilon_spent = 0.0;
  double approx_s = 0.0, clip_s = 0.0, mech_s = 0.0;
  bool failed = false;
  std::string error;
};

struct ExperimentSummary {
  ExperimentConfig cfg;
  std::vector<RoundRecord> records;
  std::string metric_kind;
  double mean = 0.0;  // trimmed when rounds >= 5
  double stddev = 0.0;
  double wall_seconds = 0.0;

  std::string csv_header() const;
  std::string csv_row() const;
};

ExperimentSummary run_experiment(const ExperimentConfig& cfg);

void write_jsonl(std::ostream& out, const ExperimentSummary& summary);

}  // namespace n2e
