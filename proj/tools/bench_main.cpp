// Wall-clock comparison of the serial reference path (worker budget 1)
// against the OpenMP path for the two parallel kernels: the LP candidate
// scan inside the degree approximator, and the clip-distance property
// fuzzer. Outputs must be identical across budgets by construction; this
// binary reports the timing side of that contract.
#include <cstdio>
#include <vector>

#include "n2e/degree_approx.hpp"
#include "n2e/graph.hpp"
#include "n2e/noise.hpp"
#include "n2e/oracle_checks.hpp"
#include "n2e/parallel.hpp"

namespace {

double time_approx(const n2e::Graph& g, int workers) {
  n2e::SeededNoise noise(7);
  n2e::DegreeApproxOptions opt;
  opt.workers = workers;  // fresh cache each run: every candidate solves
  const double t0 = n2e::wall_time_s();
  (void)n2e::node_dp_max_degree_poly(g, 0.8, 0x1p-30, 0.1, noise, opt);
  return n2e::wall_time_s() - t0;
}

double time_oracle(int workers) {
  n2e::OracleOptions opt;
  opt.trials = 4000;
  opt.size_bound = 30;
  opt.workers = workers;
  const double t0 = n2e::wall_time_s();
  (void)n2e::check_clip_distance(opt);
  return n2e::wall_time_s() - t0;
}

}  // namespace

int main() {
  std::mt19937_64 rng(11);
  const n2e::Graph g = n2e::make_gnp(300, 0.05, rng);
  std::printf("kernel                        serial      parallel    speedup\n");

  const double a1 = time_approx(g, 1);
  const double ap = time_approx(g, 0);
  std::printf("degree-approx LP scan      %8.3fs    %8.3fs    %5.2fx\n", a1, ap, a1 / ap);

  const double o1 = time_oracle(1);
  const double op = time_oracle(0);
  std::printf("clip-distance fuzzer       %8.3fs    %8.3fs    %5.2fx\n", o1, op, o1 / op);

  // Same outputs regardless of budget; a cheap spot check here, the full
  // check lives in the acceptance suite.
  n2e::SeededNoise n1(99), n2(99);
  n2e::DegreeApproxOptions w1, w16;
  w1.workers = 1;
  w16.workers = 16;
  const auto r1 = n2e::node_dp_max_degree_poly(g, 0.8, 0x1p-30, 0.1, n1, w1);
  const auto r16 = n2e::node_dp_max_degree_poly(g, 0.8, 0x1p-30, 0.1, n2, w16);
  std::printf("determinism: tau* %.6f (w=1) vs %.6f (w=16) -> %s\n", r1.tau_star, r16.tau_star,
              r1.tau_star == r16.tau_star ? "identical" : "MISMATCH");
  return r1.tau_star == r16.tau_star ? 0 : 1;
}
