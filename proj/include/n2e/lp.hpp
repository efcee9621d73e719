#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "n2e/graph.hpp"

namespace n2e {

// Fractional node-deletion LP for a graph and degree budget tau:
//
//   maximize  -sum_v x_v
//   s.t.      y_e >= 1 - x_u - x_v          for every edge e = (u, v)
//             sum_{e in E(v)} y_e <= tau    for every node v
//             x_v, y_e in [0, 1]
//
// x_v is the fractional removal of node v, y_e the fractional retention of
// edge e. Always feasible (x = 1, y = 0), optimum in [-N, 0].
struct LpProblem {
  Graph graph;
  double tau = 1.0;

  std::int64_t node_var_count() const { return graph.node_count(); }
  std::int64_t edge_var_count() const { return graph.edge_count(); }
  std::int64_t constraint_count() const { return graph.node_count() + graph.edge_count(); }
};

LpProblem build_deletion_lp(const Graph& g, double tau);

enum class LpStatus { kOptimal, kEarlyStopped };

struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  // Objective of the maximization (<= 0). For kEarlyStopped this mirrors
  // upper_bound; the true optimum is only known to lie below it.
  double objective = 0.0;
  // Certified upper bound on the objective at the moment the solver
  // stopped. Equal to objective (within tolerance) at kOptimal.
  double upper_bound = 0.0;
  std::vector<double> x;  // per node; empty when early-stopped
  std::vector<double> y;  // per edge; empty when early-stopped
  // Dual values at optimum (zeros when early-stopped): alpha per edge-cover
  // constraint, gamma per degree-budget constraint. Any non-negative
  // (alpha, gamma) pair bounds the optimum from above, which is what
  // verify_optimal uses to certify the solve.
  std::vector<double> dual_cover;
  std::vector<double> dual_budget;
  std::int64_t iterations = 0;
};

struct LpSolveOptions {
  // Stop as soon as the certified upper bound on the objective drops below
  // this value; the solver then returns kEarlyStopped with that bound.
  std::optional<double> early_stop_below;
  double tol = 1e-7;
  // Hard cap as a multiple of the row count; exceeding it raises SolverError.
  double max_iter_factor = 60.0;
};

// Bounded-variable dual simplex; the current basis value is a valid upper
// bound on the objective throughout the solve, which is what makes
// early_stop_below exact rather than heuristic.
LpSolution solve(const LpProblem& p, const LpSolveOptions& opt = {});

// Independent optimality check: verifies primal feasibility, bound
// compliance and a matching dual certificate for an optimal solution.
// Returns an empty string when the certificate is valid, else a diagnostic.
std::string verify_optimal(const LpProblem& p, const LpSolution& sol, double tol = 1e-6);

struct RoundedSubgraph {
  Graph graph;  // same node ids; removed nodes become isolated
  std::vector<NodeId> removed_nodes;
};

// Threshold rounding of an optimal LP solution: drop every node with
// x_v > 1/3 (a 1e-9 guard band keeps ties deterministic). The result has
// max degree <= 3*tau and at most 3*|objective| removals.
RoundedSubgraph round_subgraph(const Graph& g, const LpSolution& sol);

// Plain-text LP dump (CPLEX LP format) for cross-checking with external
// solvers.
void write_lp_format(std::ostream& out, const LpProblem& p);

}  // namespace n2e
