#include "n2e/degree_approx.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "n2e/errors.hpp"
#include "n2e/lp.hpp"
#include "n2e/parallel.hpp"
#include "n2e/svt.hpp"

namespace n2e {

double excess_degree_query(const Graph& g, int tau) {
  if (tau < 1) throw std::invalid_argument("excess_degree_query: tau must be >= 1");
  double excess = 0.0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const int d = g.degree(v);
    if (d >= tau) excess += d - tau;
  }
  return -0.5 * excess;
}

std::int64_t min_deletions_exact(const Graph& g, int tau, int limit) {
  if (tau < 0) throw std::invalid_argument("min_deletions_exact: tau must be >= 0");
  const int n = g.node_count();
  if (n > limit || n > 25)
    throw OracleLimitError("min_deletions_exact: " + std::to_string(n) +
                           " nodes exceeds the brute-force limit of " + std::to_string(limit));
  if (g.max_degree() <= tau) return 0;

  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.lo] |= 1u << e.hi;
    adj[e.hi] |= 1u << e.lo;
  }
  auto feasible = [&](std::uint32_t removed) {
    for (int v = 0; v < n; ++v) {
      if (removed >> v & 1) continue;
      if (std::popcount(adj[v] & ~removed) > tau) return false;
    }
    return true;
  };
  // Subsets in increasing size; the first feasible size is the minimum.
  for (int k = 1; k < n; ++k) {
    std::uint32_t s = (1u << k) - 1;
    const std::uint32_t end = 1u << n;
    while (s < end) {
      if (feasible(s)) return -k;
      // Gosper's hack: next subset of the same popcount.
      const std::uint32_t c = s & -s;
      const std::uint32_t r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }
  return -(n - 1);  // removing all but one node always works
}

int edge_dp_max_degree(const Graph& g, double epsilon, double beta, NoiseSource& noise) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must be in (0,1)");
  const int cap = std::max<int>(g.node_count(), 1);
  SvtOptions svt;
  svt.threshold = -4.0 * std::log(2.0 / beta) / epsilon;
  svt.epsilon = epsilon;
  svt.c = 1;  // excess-degree queries are sensitivity-monotonic
  const auto fired =
      sparse_vector(svt, cap, [&](int tau) { return excess_degree_query(g, tau); }, noise);
  return fired.value_or(cap);
}

std::vector<int> degree_candidate_schedule(NodeId node_count) {
  const int sentinel = std::max<int>(node_count, 1);
  std::vector<int> schedule;
  for (int tau = 1; tau < sentinel; tau *= 2) schedule.push_back(tau);
  schedule.push_back(sentinel);
  return schedule;
}

std::optional<LpValueCache::Entry> LpValueCache::lookup(int tau) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = map_.find(tau);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void LpValueCache::store_exact(int tau, double value) {
  std::lock_guard<std::mutex> lock(mu_);
  map_[tau] = {true, value};
}

void LpValueCache::store_bound(int tau, double bound) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = map_.find(tau);
  if (it != map_.end() && (it->second.exact || it->second.value <= bound)) return;
  map_[tau] = {false, bound};
}

namespace {

struct CandidateDecision {
  bool fired = false;
  bool evaluated = false;
  bool has_exact = false;
  double exact = 0.0;
};

struct ApproxShape {
  double release_scale;   // noise scale of the release draw
  double query_factor;    // 1 for the exact variant, 3 for the LP variant
};

DegreeApproxOutput run_approximator(
    const Graph& g, double epsilon, std::optional<double> delta, double beta,
    NoiseSource& noise, const DegreeApproxOptions& opt, const ApproxShape& shape,
    // evaluate(tau, early_stop_below) -> exact value, or nullopt when the
    // evaluator certified value <= early_stop_below without finishing.
    const std::function<std::optional<double>(int, double)>& evaluate,
    const std::function<double(int)>& exact_only) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must be in (0,1)");
  if (delta && !(*delta > 0.0 && *delta < 1.0))
    throw std::invalid_argument("delta must be in (0,1) when present");

  const double t0 = wall_time_s();
  const std::vector<int> schedule = degree_candidate_schedule(g.node_count());
  const double threshold = -8.0 * std::log(4.0 / beta) / epsilon;

  // All noise up front: threshold, candidates in schedule order, release.
  const double noisy_threshold = threshold + noise.laplace(4.0 / epsilon);
  std::vector<double> cand_noise(schedule.size());
  for (double& z : cand_noise) z = noise.laplace(4.0 / epsilon);
  const double release_noise = noise.laplace(shape.release_scale);

  std::vector<CandidateDecision> decision(schedule.size());
  std::atomic<int> first_fired{static_cast<int>(schedule.size())};

  parallel_for(static_cast<std::int64_t>(schedule.size()), opt.workers, [&](std::int64_t i) {
    if (static_cast<int>(i) > first_fired.load(std::memory_order_relaxed)) return;
    const int tau = schedule[i];
    const double non_fire_cutoff = noisy_threshold - cand_noise[i];
    const auto value = evaluate(tau, non_fire_cutoff);
    decision[i].evaluated = true;
    if (value) {
      decision[i].has_exact = true;
      decision[i].exact = *value;
      decision[i].fired = *value + cand_noise[i] > noisy_threshold;
    } else {
      decision[i].fired = false;  // certified value <= cutoff
    }
    if (decision[i].fired) {
      int cur = first_fired.load(std::memory_order_relaxed);
      while (static_cast<int>(i) < cur &&
             !first_fired.compare_exchange_weak(cur, static_cast<int>(i))) {
      }
    }
  });

  // Smallest fired candidate; all smaller ones were evaluated and did not
  // fire (a candidate is only skipped when a smaller one already fired).
  std::size_t fired_at = schedule.size();
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (decision[i].evaluated && decision[i].fired) {
      fired_at = i;
      break;
    }
  }

  DegreeApproxOutput out;
  if (fired_at == schedule.size()) {
    out.tau_svt = schedule.back();  // sentinel fallback
    out.q_at_tau = exact_only(out.tau_svt);
  } else {
    out.tau_svt = schedule[fired_at];
    out.q_at_tau =
        decision[fired_at].has_exact ? decision[fired_at].exact : exact_only(out.tau_svt);
  }
  for (const auto& d : decision) out.iterations += d.evaluated ? 1 : 0;

  const double log_arm =
      delta ? std::max(1.0 / *delta, 2.0 / beta) : 2.0 / beta;
  out.tau_star = shape.query_factor * out.tau_svt +
                 shape.query_factor * std::abs(out.q_at_tau) + release_noise +
                 shape.release_scale * std::log(log_arm) + 1.0;
  if (out.tau_star <= 0.0) {
    out.clamped = true;
    out.tau_star_int = 1;
  } else {
    out.tau_star_int = std::max(1, static_cast<int>(std::ceil(out.tau_star)));
  }
  out.wall_seconds = wall_time_s() - t0;
  return out;
}

}  // namespace

DegreeApproxOutput node_dp_max_degree_exp(const Graph& g, double epsilon,
                                          std::optional<double> delta, double beta,
                                          NoiseSource& noise, const DegreeApproxOptions& opt) {
  auto exact = [&](int tau) {
    return static_cast<double>(min_deletions_exact(g, tau, opt.brute_force_limit));
  };
  ApproxShape shape{2.0 / epsilon, 1.0};
  return run_approximator(
      g, epsilon, delta, beta, noise, opt, shape,
      [&](int tau, double) -> std::optional<double> { return exact(tau); }, exact);
}

DegreeApproxOutput node_dp_max_degree_poly(const Graph& g, double epsilon,
                                           std::optional<double> delta, double beta,
                                           NoiseSource& noise, const DegreeApproxOptions& opt) {
  const int max_deg = g.max_degree();
  std::atomic<int> lp_solves{0};
  std::atomic<std::int64_t> lp_ns{0};

  auto lp_exact = [&](int tau) -> double {
    if (tau >= max_deg) return 0.0;
    if (opt.cache) {
      const auto hit = opt.cache->lookup(tau);
      if (hit && hit->exact) return hit->value;
    }
    const double t0 = wall_time_s();
    LpSolveOptions sopt;
    sopt.tol = opt.lp_tol;
    const LpSolution sol = solve(build_deletion_lp(g, tau), sopt);
    lp_ns.fetch_add(static_cast<std::int64_t>((wall_time_s() - t0) * 1e9));
    lp_solves.fetch_add(1);
    if (opt.cache) opt.cache->store_exact(tau, sol.objective);
    return sol.objective;
  };

  auto evaluate = [&](int tau, double cutoff) -> std::optional<double> {
    if (tau >= max_deg) return 0.0;               // LP optimum is exactly 0
    if (opt.cache) {
      const auto hit = opt.cache->lookup(tau);
      if (hit) {
        if (hit->exact) return hit->value;
        if (hit->value <= cutoff) return std::nullopt;  // cached bound decides
      }
    }
    const double t0 = wall_time_s();
    LpSolveOptions sopt;
    sopt.tol = opt.lp_tol;
    sopt.early_stop_below = cutoff;
    const LpSolution sol = solve(build_deletion_lp(g, tau), sopt);
    lp_ns.fetch_add(static_cast<std::int64_t>((wall_time_s() - t0) * 1e9));
    lp_solves.fetch_add(1);
    if (sol.status == LpStatus::kOptimal) {
      if (opt.cache) opt.cache->store_exact(tau, sol.objective);
      return sol.objective;
    }
    if (opt.cache) opt.cache->store_bound(tau, sol.upper_bound);
    return std::nullopt;
  };

  ApproxShape shape{6.0 / epsilon, 3.0};
  DegreeApproxOutput out =
      run_approximator(g, epsilon, delta, beta, noise, opt, shape, evaluate, lp_exact);
  out.lp_solves = lp_solves.load();
  out.lp_seconds = static_cast<double>(lp_ns.load()) * 1e-9;
  return out;
}

}  // namespace n2e
