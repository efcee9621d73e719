#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "n2e/graph.hpp"
#include "n2e/noise.hpp"

namespace n2e {

// Negative half-sum of degree excess above tau:
//   -(1/2) * sum_{v: deg(v) >= tau} (deg(v) - tau).
// Edge-level sensitivity 1, monotone in tau, zero once tau >= max degree.
double excess_degree_query(const Graph& g, int tau);

// Exact minimum number of node deletions that bounds the max degree by tau,
// negated. Brute force over node subsets in increasing size; throws
// OracleLimitError when node_count exceeds `limit`.
std::int64_t min_deletions_exact(const Graph& g, int tau, int limit = 16);

// First tau in 1,2,3,... whose noisy excess-degree query clears a noisy
// threshold T = -4 ln(2/beta)/eps (c=1 sparse vector; the query sequence is
// sensitivity-monotonic). Scan is capped at max(N,1); the cap is returned if
// nothing fires.
int edge_dp_max_degree(const Graph& g, double epsilon, double beta, NoiseSource& noise);

struct DegreeApproxOutput {
  double tau_star = 0.0;   // released approximation, before integerization
  int tau_star_int = 1;    // max(1, ceil(tau_star))
  int tau_svt = 1;         // candidate where the scan stopped
  double q_at_tau = 0.0;   // exact query value at tau_svt (<= 0)
  int iterations = 0;      // candidates actually evaluated
  bool clamped = false;    // tau_star <= 0 got clamped to 1
  double wall_seconds = 0.0;
  double lp_seconds = 0.0;
  int lp_solves = 0;
};

// Exact LP values (or certified upper bounds on them) per candidate tau,
// shareable across repeated runs on the same graph: the values are a
// deterministic function of (graph, tau), so reuse cannot change any output.
class LpValueCache {
public:
  struct Entry {
    bool exact = false;
    double value = 0.0;  // exact objective, or a certified upper bound on it
  };
  std::optional<Entry> lookup(int tau) const;
  void store_exact(int tau, double value);
  void store_bound(int tau, double bound);

private:
  mutable std::mutex mu_;
  std::unordered_map<int, Entry> map_;
};

struct DegreeApproxOptions {
  int workers = 1;
  int brute_force_limit = 16;
  std::shared_ptr<LpValueCache> cache;  // poly variant only
  double lp_tol = 1e-7;
};

// Node-DP maximum-degree approximation, exponential-time query variant.
// Draw order: threshold, then one per scheduled candidate ascending, then
// the release hardening draw; the count is schedule-length + 2 regardless
// of where the scan fires. Candidates double (1,2,4,...) while < N, then a
// sentinel candidate N. The scan budget is epsilon/2 (noise 4/eps) and the
// release budget epsilon/2:
//   tau* = tau + |Q(tau)| + Lap(2/eps) + (2/eps) ln max(1/delta, 2/beta) + 1.
// `delta` = nullopt drops the 1/delta arm (pure-epsilon callers that do not
// need the distance certificate).
DegreeApproxOutput node_dp_max_degree_exp(const Graph& g, double epsilon,
                                          std::optional<double> delta, double beta,
                                          NoiseSource& noise,
                                          const DegreeApproxOptions& opt = {});

// Polynomial variant: queries are LP relaxations, candidates are evaluated
// concurrently with pre-drawn noise, and each LP gets an exact early-stop
// threshold (noisy SVT threshold minus that candidate's own noise), so a
// candidate that cannot fire is abandoned as soon as the solver's certified
// bound proves it. Release:
//   tau* = 3 tau + 3 |Q_LP(tau)| + Lap(6/eps) + (6/eps) ln max(1/delta, 2/beta) + 1.
DegreeApproxOutput node_dp_max_degree_poly(const Graph& g, double epsilon,
                                           std::optional<double> delta, double beta,
                                           NoiseSource& noise,
                                           const DegreeApproxOptions& opt = {});

// Candidate schedule shared by both variants.
std::vector<int> degree_candidate_schedule(NodeId node_count);

}  // namespace n2e
