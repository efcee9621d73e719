#pragma once

#include <cstdint>
#include <string>

namespace n2e {

struct PropertyReport {
  std::string property;
  std::int64_t trials = 0;
  std::int64_t violations = 0;
  // Serialized witness (edge lists + parameters) of the worst violation, so
  // any failure replays as a unit test.
  std::string witness;
  // Statistical checks carry their tolerance and observed frequency.
  double failure_frequency = 0.0;
  double allowed_frequency = 0.0;

  bool ok() const { return violations == 0 && failure_frequency <= allowed_frequency; }
  std::string to_json() const;
};

struct OracleOptions {
  std::int64_t trials = 10000;
  int size_bound = 30;
  std::uint64_t seed = 1;
  int workers = 0;  // 0 = all cores
};

// Distance preservation of rank-based clipping: for sampled node-neighbor
// pairs, every k and tau = kth_degree(base, k), the clipped pair stays
// within edge distance tau + k.
PropertyReport check_clip_distance(const OracleOptions& opt);

// |dQ| <= 1 (plus tolerance for the LP query) and directional monotonicity
// across neighbor pairs.
enum class QueryKind { kExcessDegree, kMinDeletionsExact, kDeletionLp };
PropertyReport check_query_sensitivity(QueryKind kind, const OracleOptions& opt);

// Relaxation sandwich: |Q_exact(G, 3 tau)| <= 3 |Q_lp(G, tau)| and
// |Q_lp(G, tau)| <= |Q_exact(G, tau)| on small graphs.
PropertyReport check_lp_vs_exact(const OracleOptions& opt);

// Sparse-vector utility on a known-index instance family: with constant
// queries sitting exactly at T + 4 ln(2/beta)/eps, the scan must fire at
// index 1 with frequency >= 1 - beta (binomial slack 3 sigma).
PropertyReport check_svt_utility(double epsilon, double beta, const OracleOptions& opt);

PropertyReport run_property(const std::string& id, const OracleOptions& opt);

}  // namespace n2e
