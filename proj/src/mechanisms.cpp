#include "n2e/mechanisms.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "n2e/errors.hpp"
#include "n2e/parallel.hpp"

namespace n2e {

int HistogramSpec::bin_count() const {
  // {0}, {1}, [2,3], ..., [2^i, 2^{i+1}-1] with the last bin containing cap.
  return cap == 0 ? 1 : 2 + std::bit_width(static_cast<unsigned>(cap)) - 1;
}

int HistogramSpec::bin_of(int degree) const {
  if (degree < 0 || degree > cap)
    throw std::invalid_argument("histogram: degree outside [0, cap]");
  if (degree == 0) return 0;
  return 1 + std::bit_width(static_cast<unsigned>(degree)) - 1;
}

std::vector<double> HistogramSpec::true_histogram(const Graph& g) const {
  std::vector<double> h(bin_count(), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) h[bin_of(g.degree(v))] += 1.0;
  return h;
}

std::vector<double> HistogramSpec::extend(const std::vector<double>& h, int bins) {
  if (bins < static_cast<int>(h.size()))
    throw std::invalid_argument("histogram extend: target narrower than source");
  std::vector<double> out = h;
  out.resize(bins, 0.0);
  return out;
}

double EdgeCountMechanism::true_value(const Graph& g) const {
  return static_cast<double>(g.edge_count());
}

TaskResult EdgeCountMechanism::run(const Graph& g, const PrivacyParams& p, const MechContext&,
                                   NoiseSource& noise) const {
  TaskResult r;
  r.task = id();
  const double scale = 1.0 / p.epsilon;
  r.value = true_value(g) + noise.laplace(scale);
  r.consumed_epsilon = p.epsilon;
  r.audit.draws = 1;
  r.audit.scales = {scale};
  return r;
}

double TwoPathCountMechanism::true_value(const Graph& g) const {
  double paths = 0.0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const double d = g.degree(v);
    paths += d * (d - 1.0) / 2.0;
  }
  return paths;
}

TaskResult TwoPathCountMechanism::run(const Graph& g, const PrivacyParams& p,
                                      const MechContext& ctx, NoiseSource& noise) const {
  if (g.max_degree() > ctx.tau_clip)
    throw ContractError("two-path mechanism: graph exceeds the certified degree bound");
  TaskResult r;
  r.task = id();
  r.value = true_value(g);
  const double scale = edge_sensitivity(ctx) / p.epsilon;
  if (scale > 0.0) {
    r.value += noise.laplace(scale);
    r.audit.draws = 1;
    r.audit.scales = {scale};
  }
  // tau_clip == 1 leaves no two-edge path to hide; the count is identically
  // zero and needs no noise.
  r.consumed_epsilon = p.epsilon;
  return r;
}

TaskResult MaxDegreeMechanism::run(const Graph& g, const PrivacyParams& p, const MechContext&,
                                   NoiseSource& noise) const {
  TaskResult r;
  r.task = id();
  const std::int64_t before = noise.draws();
  r.value = edge_dp_max_degree(g, p.epsilon, p.beta, noise);
  r.audit.draws = noise.draws() - before;
  r.audit.scales = {2.0 / p.epsilon};
  r.consumed_epsilon = p.epsilon;
  return r;
}

TaskResult degree_histogram_mechanism(const Graph& g, int theta, double epsilon,
                                      const HistogramSpec& spec, NoiseSource& noise) {
  if (theta < 0) throw std::invalid_argument("theta must be >= 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (g.max_degree() > theta)
    throw ContractError("histogram mechanism: graph exceeds the clipping bound theta");
  if (spec.cap < theta && g.max_degree() > spec.cap)
    throw ContractError("histogram mechanism: spec cap below observed degrees");
  TaskResult r;
  r.task = "dd";
  r.histogram = spec.true_histogram(g);
  r.histogram_cap = spec.cap;
  const double scale = (2.0 * theta + 1.0) / epsilon;
  for (double& bin : r.histogram) bin += noise.laplace(scale);
  r.audit.draws = static_cast<std::int64_t>(r.histogram.size());
  r.audit.scales = {scale};
  r.consumed_epsilon = epsilon;
  return r;
}

BudgetSplit BudgetSplit::theory() {
  BudgetSplit s;
  s.name = "theory";
  s.eps1 = 1.0 / 3.0;
  s.eps2 = 1.0 / 3.0;
  s.delta_cert = 0.5;
  s.delta_mech = 0.5;
  s.beta1 = 1.0 / 3.0;
  s.beta2 = 1.0 / 3.0;
  return s;
}

BudgetSplit BudgetSplit::empirical() {
  BudgetSplit s;
  s.name = "empirical";
  s.eps1 = 0.20;
  s.eps2 = 0.20;
  s.delta_cert = 1.0;
  s.delta_mech = 0.0;
  s.beta1 = 0.20;
  s.beta2 = 0.0001;
  return s;
}

BudgetSplit BudgetSplit::by_name(const std::string& name) {
  if (name == "theory") return theory();
  if (name == "empirical") return empirical();
  throw std::invalid_argument("unknown split preset: " + name);
}

PipelineResult n2e_run(const Graph& g, const EdgeDpMechanism& mech, const PrivacyParams& p,
                       const BudgetSplit& split, NoiseSource& noise,
                       const PipelineOptions& opt) {
  BudgetLedger ledger(p);
  PipelineResult out;

  const double eps1 = split.eps1 * p.epsilon;
  const double eps2 = split.eps2 * p.epsilon;
  const double eps3 = p.epsilon - eps1 - eps2;  // exact remainder
  const double delta_cert = split.delta_cert * p.delta;
  const double beta_approx = (split.beta1 + split.beta2) * p.beta;
  const double beta_mech = p.beta - beta_approx;

  DegreeApproxOptions aopt;
  aopt.workers = opt.workers;
  aopt.brute_force_limit = opt.brute_force_limit;
  aopt.cache = opt.cache;

  double t0 = wall_time_s();
  const std::optional<double> delta_for_cert =
      delta_cert > 0.0 ? std::optional<double>(delta_cert) : std::nullopt;
  out.approx = node_dp_max_degree_poly(g, eps1 + eps2, delta_for_cert, beta_approx, noise, aopt);
  out.approx_seconds = wall_time_s() - t0;
  ledger.charge("degree-approx-scan", eps1, 0.0, split.beta1 * p.beta);
  ledger.charge("degree-approx-release", eps2, 0.0, split.beta2 * p.beta);
  ledger.charge("distance-certificate", 0.0, delta_cert);

  t0 = wall_time_s();
  auto clip = std::make_shared<ClipReport>(clip_graph(g, out.approx.tau_star_int));
  out.clip_seconds = wall_time_s() - t0;

  // Group privacy over the certified edge distance 2*tau* between clipped
  // node neighbors.
  const int distance = 2 * out.approx.tau_star_int;
  const double eps_mech = eps3 / distance;
  const double delta_mech = split.delta_mech * p.delta / distance;
  MechContext ctx{out.approx.tau_star_int};

  t0 = wall_time_s();
  PrivacyParams mech_params(eps_mech, delta_mech, beta_mech);
  out.result = mech.run(clip->clipped, mech_params, ctx, noise);
  out.mech_seconds = wall_time_s() - t0;
  ledger.charge("edge-mechanism", eps3, split.delta_mech * p.delta, beta_mech);

  out.result.clip = clip;
  out.result.consumed_epsilon = ledger.spent_epsilon();
  out.result.consumed_delta = ledger.spent_delta();
  out.charges = ledger.charges();
  return out;
}

PipelineResult n2e_degree_distribution(const Graph& g, const PrivacyParams& p,
                                       const BudgetSplit& split, NoiseSource& noise,
                                       const PipelineOptions& opt) {
  BudgetLedger ledger(p);
  PipelineResult out;

  const double eps1 = split.eps1 * p.epsilon;
  const double eps2 = split.eps2 * p.epsilon;
  const double eps3 = p.epsilon - eps1 - eps2;
  const double beta_approx = (split.beta1 + split.beta2) * p.beta;

  DegreeApproxOptions aopt;
  aopt.workers = opt.workers;
  aopt.brute_force_limit = opt.brute_force_limit;
  aopt.cache = opt.cache;

  // No group-privacy division downstream, so no distance certificate: the
  // approximator runs in its pure-epsilon form (delta absent).
  double t0 = wall_time_s();
  out.approx = node_dp_max_degree_poly(g, eps1 + eps2, std::nullopt, beta_approx, noise, aopt);
  out.approx_seconds = wall_time_s() - t0;
  ledger.charge("degree-approx-scan", eps1, 0.0, split.beta1 * p.beta);
  ledger.charge("degree-approx-release", eps2, 0.0, split.beta2 * p.beta);

  const int theta = out.approx.tau_star_int;
  t0 = wall_time_s();
  auto clip = std::make_shared<ClipReport>(endpoint_degree_clip(g, theta));
  out.clip_seconds = wall_time_s() - t0;

  t0 = wall_time_s();
  HistogramSpec spec(theta);
  out.result = degree_histogram_mechanism(clip->clipped, theta, eps3, spec, noise);
  out.mech_seconds = wall_time_s() - t0;
  ledger.charge("histogram-mechanism", eps3, 0.0, split.beta3() * p.beta);

  out.result.clip = clip;
  out.result.consumed_epsilon = ledger.spent_epsilon();
  out.result.consumed_delta = ledger.spent_delta();
  out.charges = ledger.charges();
  return out;
}

TaskResult group_privacy_baseline(const Graph& g, const EdgeDpMechanism& mech,
                                  const PrivacyParams& p, std::int64_t n_hat,
                                  NoiseSource& noise) {
  if (n_hat < g.node_count())
    throw std::invalid_argument("group privacy baseline: N_hat must be >= N");
  const PrivacyParams scaled = group_privacy_scale(p, static_cast<int>(n_hat));
  MechContext ctx{static_cast<int>(n_hat)};  // public worst-case degree bound
  TaskResult r = mech.run(g, scaled, ctx, noise);
  r.consumed_epsilon = p.epsilon;
  r.consumed_delta = p.delta;
  return r;
}

}  // namespace n2e
