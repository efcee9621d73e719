#include "n2e/oracle_checks.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "n2e/clipping.hpp"
#include "n2e/degree_approx.hpp"
#include "n2e/graph.hpp"
#include "n2e/lp.hpp"
#include "n2e/noise.hpp"
#include "n2e/parallel.hpp"
#include "n2e/svt.hpp"

namespace n2e {

namespace {

std::string serialize_pair(const Graph& base, const Graph& ext, const std::string& params) {
  std::ostringstream out;
  out << "base N=" << base.node_count() << " edges:";
  for (const Edge& e : base.edges()) out << ' ' << e.lo << '-' << e.hi;
  out << " | extended N=" << ext.node_count() << " edges:";
  for (const Edge& e : ext.edges()) out << ' ' << e.lo << '-' << e.hi;
  out << " | " << params;
  return out.str();
}

// Random base graph plus a random node-neighbor extension.
NeighborPair random_neighbor_pair(int max_nodes, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(1, max_nodes - 1);
  std::uniform_real_distribution<double> dens(0.0, 1.0);
  const int n = size(rng);
  const Graph base = random_graph(n, dens(rng), rng);
  return make_node_neighbor(base, dens(rng), rng);
}

struct ViolationCollector {
  std::mutex mu;
  std::int64_t violations = 0;
  std::string witness;

  void record(const std::string& w) {
    std::lock_guard<std::mutex> lock(mu);
    ++violations;
    if (witness.empty()) witness = w;
  }
};

}  // namespace

std::string PropertyReport::to_json() const {
  nlohmann::json j{{"property", property},
                   {"trials", trials},
                   {"violations", violations},
                   {"failure_frequency", failure_frequency},
                   {"allowed_frequency", allowed_frequency},
                   {"ok", ok()}};
  if (!witness.empty()) j["witness"] = witness;
  return j.dump();
}

PropertyReport check_clip_distance(const OracleOptions& opt) {
  PropertyReport report;
  report.property = "clip-distance";
  report.trials = opt.trials;
  ViolationCollector collector;

  parallel_for(opt.trials, opt.workers, [&](std::int64_t t) {
    std::mt19937_64 rng(derive_seed(opt.seed, static_cast<std::uint64_t>(t)));
    const NeighborPair pair = random_neighbor_pair(opt.size_bound, rng);
    const int n = pair.base.node_count();
    for (int k = 1; k <= n; ++k) {
      const int tau = kth_degree(pair.base, k);
      if (tau < 1) continue;
      const Graph cb = clip_graph(pair.base, tau).clipped;
      const Graph ce = clip_graph(pair.extended, tau).clipped;
      const std::int64_t dist = edge_distance(cb, ce);
      if (dist > clip_distance_bound(tau, k)) {
        std::ostringstream params;
        params << "k=" << k << " tau=" << tau << " dist=" << dist;
        collector.record(serialize_pair(pair.base, pair.extended, params.str()));
      }
    }
  });
  report.violations = collector.violations;
  report.witness = collector.witness;
  return report;
}

PropertyReport check_query_sensitivity(QueryKind kind, const OracleOptions& opt) {
  PropertyReport report;
  report.trials = opt.trials;
  ViolationCollector collector;
  const double tol = kind == QueryKind::kDeletionLp ? 1e-6 : 0.0;
  report.property = kind == QueryKind::kExcessDegree      ? "sensitivity-excess-degree"
                    : kind == QueryKind::kMinDeletionsExact ? "sensitivity-deletions-exact"
                                                            : "sensitivity-deletions-lp";

  const int size_bound = kind == QueryKind::kExcessDegree ? std::min(opt.size_bound, 24)
                                                          : std::min(opt.size_bound, 10);
  auto value = [kind](const Graph& g, int tau) -> double {
    switch (kind) {
      case QueryKind::kExcessDegree:
        return excess_degree_query(g, tau);
      case QueryKind::kMinDeletionsExact:
        return static_cast<double>(min_deletions_exact(g, tau, 25));
      case QueryKind::kDeletionLp:
        return solve(build_deletion_lp(g, tau)).objective;
    }
    return 0.0;
  };

  parallel_for(opt.trials, opt.workers, [&](std::int64_t t) {
    std::mt19937_64 rng(derive_seed(opt.seed, static_cast<std::uint64_t>(t)));
    Graph base, ext;
    std::string kind_s;
    if (kind == QueryKind::kExcessDegree) {
      // Edge-level neighbors.
      std::uniform_int_distribution<int> size(2, size_bound);
      std::uniform_real_distribution<double> dens(0.0, 0.9);
      const int n = size(rng);
      Graph g = random_graph(n, dens(rng), rng);
      if (static_cast<std::int64_t>(n) * (n - 1) / 2 == g.edge_count()) return;  // complete
      const EdgeNeighborPair pair = make_edge_neighbor(g, rng);
      base = pair.base;
      ext = pair.extended;
      kind_s = "edge";
    } else {
      const NeighborPair pair = random_neighbor_pair(size_bound, rng);
      base = pair.base;
      ext = pair.extended;
      kind_s = "node";
    }
    const int max_tau = std::max(1, ext.max_degree());
    for (int tau = 1; tau <= max_tau; ++tau) {
      const double qb = value(base, tau);
      const double qe = value(ext, tau);
      const bool bounded = std::abs(qb - qe) <= 1.0 + tol;
      const bool monotone = qb >= qe - tol;  // base is contained in ext
      if (!bounded || !monotone) {
        std::ostringstream params;
        params << "tau=" << tau << " q_base=" << qb << " q_ext=" << qe << " neighbor=" << kind_s;
        collector.record(serialize_pair(base, ext, params.str()));
      }
    }
  });
  report.violations = collector.violations;
  report.witness = collector.witness;
  return report;
}

PropertyReport check_lp_vs_exact(const OracleOptions& opt) {
  PropertyReport report;
  report.property = "lp-vs-exact";
  report.trials = opt.trials;
  ViolationCollector collector;
  const int size_bound = std::min(opt.size_bound, 12);

  parallel_for(opt.trials, opt.workers, [&](std::int64_t t) {
    std::mt19937_64 rng(derive_seed(opt.seed, static_cast<std::uint64_t>(t)));
    std::uniform_int_distribution<int> size(1, size_bound);
    std::uniform_real_distribution<double> dens(0.0, 1.0);
    const Graph g = random_graph(size(rng), dens(rng), rng);
    const int max_tau = std::max(1, g.max_degree());
    for (int tau = 1; tau <= max_tau; ++tau) {
      const double lp = std::abs(solve(build_deletion_lp(g, tau)).objective);
      const double exact_same = std::abs(min_deletions_exact(g, tau, 25));
      const double exact_3tau = std::abs(min_deletions_exact(g, 3 * tau, 25));
      if (exact_3tau > 3.0 * lp + 1e-6 || lp > exact_same + 1e-6) {
        std::ostringstream params;
        params << "tau=" << tau << " lp=" << lp << " exact=" << exact_same
               << " exact_3tau=" << exact_3tau;
        collector.record(serialize_pair(g, g, params.str()));
      }
    }
  });
  report.violations = collector.violations;
  report.witness = collector.witness;
  return report;
}

PropertyReport check_svt_utility(double epsilon, double beta, const OracleOptions& opt) {
  PropertyReport report;
  report.property = "svt-utility";
  report.trials = opt.trials;

  // Constant query sequence sitting exactly at the firing margin; the scan
  // should return index 1 with probability >= 1 - beta.
  const double threshold = -1.0;
  const double q = threshold + 4.0 * std::log(2.0 / beta) / epsilon;
  std::vector<int> fired_late(static_cast<std::size_t>(opt.trials), 0);
  parallel_for(opt.trials, opt.workers, [&](std::int64_t t) {
    SeededNoise noise(derive_seed(opt.seed, static_cast<std::uint64_t>(t)));
    SvtOptions svt{threshold, epsilon, 1};
    const auto idx = sparse_vector(svt, 64, [&](int) { return q; }, noise);
    fired_late[t] = (idx.value_or(65) == 1) ? 0 : 1;
  });
  std::int64_t failures = 0;
  for (int f : fired_late) failures += f;
  report.failure_frequency = static_cast<double>(failures) / static_cast<double>(opt.trials);
  report.allowed_frequency =
      beta + 3.0 * std::sqrt(beta * (1.0 - beta) / static_cast<double>(opt.trials));
  return report;
}

PropertyReport run_property(const std::string& id, const OracleOptions& opt) {
  if (id == "clip-distance") return check_clip_distance(opt);
  if (id == "sensitivity-excess-degree")
    return check_query_sensitivity(QueryKind::kExcessDegree, opt);
  if (id == "sensitivity-deletions-exact")
    return check_query_sensitivity(QueryKind::kMinDeletionsExact, opt);
  if (id == "sensitivity-deletions-lp")
    return check_query_sensitivity(QueryKind::kDeletionLp, opt);
  if (id == "lp-vs-exact") return check_lp_vs_exact(opt);
  if (id == "svt-utility") return check_svt_utility(0.8, 0.1, opt);
  throw std::invalid_argument("unknown property id: " + id);
}

}  // namespace n2e
