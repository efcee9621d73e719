#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "n2e/budget.hpp"
#include "n2e/clipping.hpp"
#include "n2e/degree_approx.hpp"
#include "n2e/graph.hpp"
#include "n2e/noise.hpp"

namespace n2e {

// Logarithmic degree bins {0}, {1}, [2,3], [4,7], ..., last bin contains cap.
struct HistogramSpec {
  int cap = 1;

  explicit HistogramSpec(int cap_degree) : cap(cap_degree < 1 ? 1 : cap_degree) {}
  int bin_count() const;
  int bin_of(int degree) const;  // degree must be in [0, cap]
  std::vector<double> true_histogram(const Graph& g) const;
  // Zero-extend a histogram computed under this spec to a wider cap.
  static std::vector<double> extend(const std::vector<double>& h, int bins);
};

struct NoiseAudit {
  std::int64_t draws = 0;
  std::vector<double> scales;
};

struct TaskResult {
  std::string task;
  double value = 0.0;              // scalar tasks
  std::vector<double> histogram;   // degree-distribution task
  int histogram_cap = 0;
  double consumed_epsilon = 0.0;
  double consumed_delta = 0.0;
  NoiseAudit audit;
  std::shared_ptr<const ClipReport> clip;
};

struct MechContext {
  // Degree bound certified for the input graph by the pipeline (clipping
  // threshold, or the public bound for the no-clipping baseline).
  int tau_clip = 0;
};

// An edge-DP task mechanism, pluggable into the node-DP pipeline.
class EdgeDpMechanism {
public:
  virtual ~EdgeDpMechanism() = default;
  virtual std::string id() const = 0;
  // Noiseless query value; used by metrics and sensitivity fuzzing.
  virtual double true_value(const Graph& g) const = 0;
  // Declared edge-level global sensitivity per unit budget.
  virtual double edge_sensitivity(const MechContext& ctx) const = 0;
  virtual TaskResult run(const Graph& g, const PrivacyParams& p, const MechContext& ctx,
                         NoiseSource& noise) const = 0;
};

// M + Lap(1/eps).
class EdgeCountMechanism final : public EdgeDpMechanism {
public:
  std::string id() const override { return "ec"; }
  double true_value(const Graph& g) const override;
  double edge_sensitivity(const MechContext&) const override { return 1.0; }
  TaskResult run(const Graph& g, const PrivacyParams& p, const MechContext& ctx,
                 NoiseSource& noise) const override;
};

// Number of two-edge paths sum_v C(deg v, 2), noised at scale
// 2(tau_clip - 1)/eps; one edge moves the count by at most
// (deg u - 1) + (deg v - 1) on a graph with max degree <= tau_clip.
// Requires deg(G) <= tau_clip.
class TwoPathCountMechanism final : public EdgeDpMechanism {
public:
  std::string id() const override { return "tp"; }
  double true_value(const Graph& g) const override;
  double edge_sensitivity(const MechContext& ctx) const override {
    return 2.0 * std::max(0, ctx.tau_clip - 1);
  }
  TaskResult run(const Graph& g, const PrivacyParams& p, const MechContext& ctx,
                 NoiseSource& noise) const override;
};

// Wraps the edge-DP maximum-degree scan; the value is the returned tau.
class MaxDegreeMechanism final : public EdgeDpMechanism {
public:
  std::string id() const override { return "md"; }
  double true_value(const Graph& g) const override { return g.max_degree(); }
  double edge_sensitivity(const MechContext&) const override { return 1.0; }
  TaskResult run(const Graph& g, const PrivacyParams& p, const MechContext& ctx,
                 NoiseSource& noise) const override;
};

// Per-bin Laplace at scale (2*theta + 1)/eps on a graph already clipped to
// max degree <= theta. Pure epsilon at the node level given that clipping.
TaskResult degree_histogram_mechanism(const Graph& g, int theta, double epsilon,
                                      const HistogramSpec& spec, NoiseSource& noise);

// How the total (epsilon, delta, beta) is divided between the pipeline
// procedures: (1) the degree-approximation scan, (2) the approximation
// release, (3) the task mechanism. eps3/beta3 are the remainders so the
// charges always sum exactly to the totals.
struct BudgetSplit {
  std::string name;
  double eps1 = 0.0, eps2 = 0.0;      // fractions of epsilon
  double delta_cert = 0.0;            // fraction of delta spent on the
                                      // clipped-distance certificate
  double delta_mech = 0.0;            // fraction handed to the mechanism
  double beta1 = 0.0, beta2 = 0.0;

  double eps3() const { return 1.0 - eps1 - eps2; }
  double beta3() const { return 1.0 - beta1 - beta2; }

  static BudgetSplit theory();
  static BudgetSplit empirical();
  static BudgetSplit by_name(const std::string& name);
};

struct PipelineOptions {
  int workers = 1;
  int brute_force_limit = 16;
  std::shared_ptr<LpValueCache> cache;
};

struct PipelineResult {
  TaskResult result;
  DegreeApproxOutput approx;
  std::vector<BudgetCharge> charges;
  double approx_seconds = 0.0;
  double clip_seconds = 0.0;
  double mech_seconds = 0.0;
};

// The node-DP pipeline: (1) approximate the maximum degree with budget
// (eps1+eps2, delta_cert, beta1+beta2); (2) clip at tau*; (3) run the
// edge-DP mechanism with the step-3 budget divided by the certified edge
// distance 2*tau* between clipped node neighbors. Under the theory split
// this reproduces eps/(6 tau*) and delta/(4 tau*) for the mechanism.
PipelineResult n2e_run(const Graph& g, const EdgeDpMechanism& mech, const PrivacyParams& p,
                       const BudgetSplit& split, NoiseSource& noise,
                       const PipelineOptions& opt = {});

// Pure-epsilon degree distribution: theta = tau* from the approximator (no
// distance certificate needed), endpoint-degree clipping, then the
// histogram mechanism whose 2*theta+1 sensitivity already accounts for a
// whole node; no group-privacy division.
PipelineResult n2e_degree_distribution(const Graph& g, const PrivacyParams& p,
                                       const BudgetSplit& split, NoiseSource& noise,
                                       const PipelineOptions& opt = {});

// Naive baseline: run the edge-DP mechanism at (eps/N_hat, delta/N_hat)
// with no clipping; N_hat must be >= N.
TaskResult group_privacy_baseline(const Graph& g, const EdgeDpMechanism& mech,
                                  const PrivacyParams& p, std::int64_t n_hat,
                                  NoiseSource& noise);

}  // namespace n2e
