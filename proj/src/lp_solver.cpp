#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <utility>
#include <vector>

#include "n2e/errors.hpp"
#include "n2e/lp.hpp"

namespace n2e {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;

// Cheap dual-feasible bound on min sum(x) from the two-parameter family
// alpha_e = a, gamma_v = g (weak duality). Lets the solver certify
// "objective below early_stop_below" without a single pivot on candidates
// that are far from firing.
double combinatorial_lower_bound(const Graph& g, double tau) {
  const std::int64_t m = g.edge_count();
  const std::int64_t n = g.node_count();
  if (m == 0) return 0.0;
  std::vector<int> deg = g.degree_sequence();
  int dmax = 0;
  for (int d : deg) dmax = std::max(dmax, d);
  if (dmax == 0) return 0.0;
  double best = 0.0;
  for (int d = 1; d <= dmax; ++d) {
    const double a = 1.0 / d;
    for (double gfrac : {0.25, 0.5, 0.75}) {
      const double gma = a * gfrac;
      // LB(a,g) = M*a - tau*N*g - sum_v (a*deg_v - 1)^+ - M*(a - 2g)^+
      double lb = m * a - tau * n * gma - m * std::max(0.0, a - 2.0 * gma);
      for (int dv : deg) lb -= std::max(0.0, a * dv - 1.0);
      best = std::max(best, lb);
    }
  }
  return best;
}

struct Eta {
  int r = 0;
  double wr = 1.0;
  std::vector<std::pair<int, double>> nz;  // excludes r
};

enum class VStat : std::uint8_t { kLower, kUpper, kBasic };

// Sparse LU of a basis matrix, Markowitz-flavoured: pivots are chosen from
// the sparsest remaining columns subject to a relative magnitude threshold.
// The elimination is recorded as a sequence of row operations plus the
// surviving pivot rows (U), which is all that forward/backward and
// transposed solves need.
class BasisLU {
public:
  // cols[j] = sparse column j of the basis (row, value), j = 0..n-1.
  bool factorize(int n, const std::vector<std::vector<std::pair<int, double>>>& cols);

  void solve(std::vector<double>& b) const;             // B x = b, in place
  void solve_transposed(std::vector<double>& b) const;  // B^T x = b, in place
  bool ready() const { return n_ > 0; }
  void reset() { n_ = 0; }

private:
  struct RowOp {
    int target_row;
    int pivot_row;
    double factor;
  };
  int n_ = 0;
  std::vector<RowOp> ops_;                    // in elimination order
  std::vector<int> pivot_row_, pivot_col_;    // k-th pivot position
  std::vector<double> pivot_val_;
  // U rows at pivot time: entries (column, value) excluding the pivot column.
  std::vector<std::vector<std::pair<int, double>>> urows_;
  std::vector<int> row_of_col_;  // pivot row for each column
  std::vector<int> order_of_row_;
};

bool BasisLU::factorize(int n, const std::vector<std::vector<std::pair<int, double>>>& cols) {
  n_ = 0;
  ops_.clear();
  pivot_row_.assign(n, -1);
  pivot_col_.assign(n, -1);
  pivot_val_.assign(n, 0.0);
  urows_.assign(n, {});
  row_of_col_.assign(n, -1);
  order_of_row_.assign(n, -1);

  // Working rows.
  std::vector<std::vector<std::pair<int, double>>> rows(n);
  std::vector<int> colcount(n, 0);
  for (int j = 0; j < n; ++j) {
    for (auto [i, v] : cols[j]) {
      rows[i].push_back({j, v});
      ++colcount[j];
    }
  }
  std::vector<bool> row_done(n, false), col_done(n, false);
  std::vector<int> rowcount(n, 0);
  for (int i = 0; i < n; ++i) rowcount[i] = static_cast<int>(rows[i].size());

  // cols-of lists are kept lazily: membership is re-verified against the
  // live row data before use.
  std::vector<std::vector<int>> colrows(n);
  for (int i = 0; i < n; ++i)
    for (auto [j, v] : rows[i]) colrows[j].push_back(i);

  auto row_find = [&](int i, int j) -> double* {
    for (auto& e : rows[i])
      if (e.first == j) return &e.second;
    return nullptr;
  };

  for (int k = 0; k < n; ++k) {
    // Pivot column: smallest live column count; within it, the row with the
    // fewest entries whose magnitude clears the threshold.
    int best_col = -1, best_count = n + 1;
    for (int j = 0; j < n; ++j) {
      if (!col_done[j] && colcount[j] < best_count) {
        best_count = colcount[j];
        best_col = j;
        if (best_count <= 1) break;
      }
    }
    if (best_col < 0 || best_count == 0) return false;  // structurally singular

    double col_max = 0.0;
    int live = 0;
    for (int i : colrows[best_col]) {
      if (row_done[i]) continue;
      if (const double* v = row_find(i, best_col)) {
        if (*v != 0.0) {
          col_max = std::max(col_max, std::abs(*v));
          ++live;
        }
      }
    }
    if (col_max < 1e-11) {
      // Stale count (lazy deletions); retry with the true count, fail only
      // on a genuinely empty column.
      if (live == 0 && colcount[best_col] > 0) {
        colcount[best_col] = n + 1;  // push it out of selection
        --k;
        continue;
      }
      return false;
    }

    int best_row = -1;
    double best_val = 0.0;
    int best_rowcount = n + 1;
    for (int i : colrows[best_col]) {
      if (row_done[i]) continue;
      const double* v = row_find(i, best_col);
      if (!v || std::abs(*v) < 0.01 * col_max) continue;
      if (rowcount[i] < best_rowcount ||
          (rowcount[i] == best_rowcount && std::abs(*v) > std::abs(best_val))) {
        best_rowcount = rowcount[i];
        best_row = i;
        best_val = *v;
      }
    }
    if (best_row < 0) return false;

    const int p = best_row, q = best_col;
    pivot_row_[k] = p;
    pivot_col_[k] = q;
    pivot_val_[k] = best_val;
    row_of_col_[q] = p;
    order_of_row_[p] = k;
    row_done[p] = true;
    col_done[q] = true;

    // Snapshot the U row (live columns except the pivot).
    for (auto [j, v] : rows[p]) {
      if (j == q || col_done[j]) continue;
      urows_[k].push_back({j, v});
    }
    for (auto [j, v] : rows[p])
      if (!col_done[j]) --colcount[j];
    // colcount[q] handled via col_done.

    // Eliminate q from the remaining rows.
    for (int i : colrows[q]) {
      if (row_done[i]) continue;
      double* entry = row_find(i, q);
      if (!entry || *entry == 0.0) continue;
      const double f = *entry / best_val;
      ops_.push_back({i, p, f});
      *entry = 0.0;
      // row_i -= f * row_p over live columns.
      for (auto [j, v] : urows_[k]) {
        if (double* t = row_find(i, j)) {
          *t -= f * v;
        } else {
          rows[i].push_back({j, -f * v});
          ++colcount[j];
          ++rowcount[i];
          colrows[j].push_back(i);
        }
      }
      // Compact dropped entries occasionally.
      if (rows[i].size() > 8) {
        std::size_t w = 0;
        for (auto& e : rows[i]) {
          if (e.second != 0.0 && !col_done[e.first]) rows[i][w++] = e;
        }
        const int removed = static_cast<int>(rows[i].size() - w);
        rows[i].resize(w);
        rowcount[i] -= removed;
      } else {
        rowcount[i] = 0;
        for (auto& e : rows[i])
          if (e.second != 0.0 && !col_done[e.first]) ++rowcount[i];
      }
    }
  }
  n_ = n;
  return true;
}

void BasisLU::solve(std::vector<double>& b) const {
  // Forward elimination in recorded order, then back substitution.
  for (const RowOp& op : ops_) b[op.target_row] -= op.factor * b[op.pivot_row];
  std::vector<double> x(n_);
  for (int k = n_ - 1; k >= 0; --k) {
    double acc = b[pivot_row_[k]];
    for (auto [j, v] : urows_[k]) acc -= v * x[j];
    x[pivot_col_[k]] = acc / pivot_val_[k];
  }
  b = std::move(x);
}

void BasisLU::solve_transposed(std::vector<double>& b) const {
  // U^T forward solve in pivot order (contributions scattered ahead), then
  // transposed row ops in reverse.
  std::vector<double> y(n_);
  std::vector<double> pending(n_, 0.0);
  for (int k = 0; k < n_; ++k) {
    const double w = (b[pivot_col_[k]] - pending[pivot_col_[k]]) / pivot_val_[k];
    y[pivot_row_[k]] = w;
    if (w != 0.0)
      for (auto [j, v] : urows_[k]) pending[j] += v * w;
  }
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it)
    y[it->pivot_row] -= it->factor * y[it->target_row];
  b = std::move(y);
}

// Bounded-variable dual simplex with a product-form inverse. Internally a
// minimization of sum(x); the starting all-logical basis is the identity and
// is dual feasible for this LP family, so no phase 1 is needed. Rows:
// kept edge rows first (negated so the surplus has coefficient +1), then
// kept node rows.
//
// `active` restricts the degree-budget rows to a node subset: the result is
// a relaxation of the full LP whose optimum upper-bounds it, which the
// outer active-set loop in solve() uses both for certified early stops and
// for exact solves once every dropped row checks out.
class DualSimplex {
public:
  DualSimplex(const LpProblem& p, const LpSolveOptions& opt, const std::vector<bool>* active)
      : p_(p), opt_(opt), active_(active) {
    build();
  }

  LpSolution run();

private:
  void build();
  void ftran(std::vector<double>& v) const;
  void btran(std::vector<double>& v) const;
  double column_dot(int col, const std::vector<double>& rho) const;
  double dual_objective() const;
  void recompute_basics();
  void recompute_reduced_costs();
  void extract(LpSolution& sol);

  const LpProblem& p_;
  const LpSolveOptions& opt_;
  const std::vector<bool>* active_;  // nullptr = all nodes

  int rows_ = 0, n_edge_rows_ = 0;
  int n_struct_ = 0, n_cols_ = 0;  // structural cols; total = structural + logicals
  std::vector<int> col_ptr_, row_idx_;
  std::vector<double> val_;
  std::vector<double> cost_, lo_, up_, b_;

  // Mapping between the reduced LP and the original graph.
  std::vector<int> x_col_of_node_, y_col_of_edge_;  // -1 when not active/live
  std::vector<int> node_of_x_col_, edge_of_y_col_;
  std::vector<int> edge_row_of_edge_, node_row_of_node_;  // -1 when dropped

  std::vector<int> basic_;        // row -> column
  std::vector<int> pos_in_basis_; // column -> row or -1
  std::vector<VStat> vstat_;
  std::vector<double> xb_, d_;
  std::vector<Eta> etas_;
  double lb0_ = 0.0;  // combinatorial bound, valid throughout
  std::int64_t iter_ = 0;
};

void DualSimplex::build() {
  const Graph& g = p_.graph;
  const auto& edges = g.edges();
  const int n = g.node_count();
  const std::int64_t m = g.edge_count();

  // Presolve. A node row with deg <= tau can never bind (y <= 1), so it is
  // dropped. An edge whose both node rows are dropped imposes nothing once
  // y_e = 1, so the edge row is dropped and y_e fixed at 1.
  node_row_of_node_.assign(n, -1);
  edge_row_of_edge_.assign(static_cast<std::size_t>(m), -1);
  x_col_of_node_.assign(n, -1);
  y_col_of_edge_.assign(static_cast<std::size_t>(m), -1);

  std::vector<bool> keep_node(n);
  for (int v = 0; v < n; ++v)
    keep_node[v] = g.degree(v) > p_.tau && (!active_ || (*active_)[v]);

  std::vector<std::int64_t> kept_edges;
  for (std::int64_t i = 0; i < m; ++i)
    if (keep_node[edges[i].lo] || keep_node[edges[i].hi]) kept_edges.push_back(i);

  n_edge_rows_ = static_cast<int>(kept_edges.size());
  int node_rows = 0;
  for (int v = 0; v < n; ++v)
    if (keep_node[v]) node_row_of_node_[v] = n_edge_rows_ + node_rows++;
  rows_ = n_edge_rows_ + node_rows;

  for (int r = 0; r < n_edge_rows_; ++r) edge_row_of_edge_[kept_edges[r]] = r;

  for (std::int64_t i : kept_edges) {
    for (NodeId v : {edges[i].lo, edges[i].hi})
      if (x_col_of_node_[v] < 0) {
        x_col_of_node_[v] = static_cast<int>(node_of_x_col_.size());
        node_of_x_col_.push_back(v);
      }
  }
  const int nx = static_cast<int>(node_of_x_col_.size());
  for (std::int64_t i : kept_edges) {
    y_col_of_edge_[i] = nx + static_cast<int>(edge_of_y_col_.size());
    edge_of_y_col_.push_back(static_cast<int>(i));
  }
  n_struct_ = nx + static_cast<int>(edge_of_y_col_.size());
  n_cols_ = n_struct_ + rows_;

  // CSC for structural columns. Edge rows are stored negated:
  //   -x_u - x_v - y_e + s = -1.
  std::vector<std::vector<std::pair<int, double>>> cols(n_struct_);
  for (std::int64_t i : kept_edges) {
    const int r = edge_row_of_edge_[i];
    cols[x_col_of_node_[edges[i].lo]].push_back({r, -1.0});
    cols[x_col_of_node_[edges[i].hi]].push_back({r, -1.0});
    cols[y_col_of_edge_[i]].push_back({r, -1.0});
    for (NodeId v : {edges[i].lo, edges[i].hi}) {
      const int nr = node_row_of_node_[v];
      if (nr >= 0) cols[y_col_of_edge_[i]].push_back({nr, 1.0});
    }
  }
  col_ptr_.assign(n_struct_ + 1, 0);
  for (int j = 0; j < n_struct_; ++j) col_ptr_[j + 1] = col_ptr_[j] + static_cast<int>(cols[j].size());
  row_idx_.resize(col_ptr_[n_struct_]);
  val_.resize(col_ptr_[n_struct_]);
  for (int j = 0; j < n_struct_; ++j) {
    int at = col_ptr_[j];
    for (auto [r, v] : cols[j]) {
      row_idx_[at] = r;
      val_[at++] = v;
    }
  }

  cost_.assign(n_cols_, 0.0);
  lo_.assign(n_cols_, 0.0);
  up_.assign(n_cols_, 1.0);
  for (int j = 0; j < nx; ++j) cost_[j] = 1.0;  // min sum(x)
  for (int j = n_struct_; j < n_cols_; ++j) up_[j] = kInf;

  b_.assign(rows_, 0.0);
  for (int r = 0; r < n_edge_rows_; ++r) b_[r] = -1.0;
  for (int r = n_edge_rows_; r < rows_; ++r) b_[r] = p_.tau;

  basic_.resize(rows_);
  pos_in_basis_.assign(n_cols_, -1);
  vstat_.assign(n_cols_, VStat::kLower);
  for (int r = 0; r < rows_; ++r) {
    basic_[r] = n_struct_ + r;
    pos_in_basis_[n_struct_ + r] = r;
    vstat_[n_struct_ + r] = VStat::kBasic;
  }
  xb_ = b_;
  d_ = cost_;
  lb0_ = combinatorial_lower_bound(g, p_.tau);
}

void DualSimplex::ftran(std::vector<double>& v) const {
  for (const Eta& e : etas_) {
    const double piv = v[e.r] / e.wr;
    if (piv != 0.0) {
      for (auto [i, w] : e.nz) v[i] -= w * piv;
    }
    v[e.r] = piv;
  }
}

void DualSimplex::btran(std::vector<double>& v) const {
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double acc = v[it->r];
    for (auto [i, w] : it->nz) acc -= v[i] * w;
    v[it->r] = acc / it->wr;
  }
}

double DualSimplex::column_dot(int col, const std::vector<double>& rho) const {
  if (col >= n_struct_) return rho[col - n_struct_];  // logical: unit column
  double acc = 0.0;
  for (int k = col_ptr_[col]; k < col_ptr_[col + 1]; ++k) acc += val_[k] * rho[row_idx_[k]];
  return acc;
}

double DualSimplex::dual_objective() const {
  // Basis value = dual objective for a dual-feasible basis; only x columns
  // carry cost.
  double z = 0.0;
  const int nx = static_cast<int>(node_of_x_col_.size());
  for (int j = 0; j < nx; ++j) {
    if (vstat_[j] == VStat::kBasic)
      z += xb_[pos_in_basis_[j]];
    else if (vstat_[j] == VStat::kUpper)
      z += 1.0;
  }
  return z;
}

void DualSimplex::recompute_basics() {
  std::vector<double> rhs = b_;
  for (int j = 0; j < n_struct_; ++j) {
    const double bound = vstat_[j] == VStat::kUpper ? up_[j] : 0.0;
    if (vstat_[j] == VStat::kBasic || bound == 0.0) continue;
    for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) rhs[row_idx_[k]] -= val_[k] * bound;
  }
  // Logical upper bounds are infinite; nonbasic logicals sit at zero.
  ftran(rhs);
  xb_ = rhs;
}

void DualSimplex::recompute_reduced_costs() {
  std::vector<double> lambda(rows_, 0.0);
  for (int r = 0; r < rows_; ++r) lambda[r] = cost_[basic_[r]];
  btran(lambda);
  for (int j = 0; j < n_cols_; ++j) {
    d_[j] = vstat_[j] == VStat::kBasic ? 0.0 : cost_[j] - column_dot(j, lambda);
  }
}

void DualSimplex::extract(LpSolution& sol) {
  const Graph& g = p_.graph;
  sol.x.assign(g.node_count(), 0.0);
  sol.y.assign(static_cast<std::size_t>(g.edge_count()), 1.0);
  auto value_of = [&](int j) -> double {
    if (vstat_[j] == VStat::kBasic) return xb_[pos_in_basis_[j]];
    return vstat_[j] == VStat::kUpper ? up_[j] : lo_[j];
  };
  const int nx = static_cast<int>(node_of_x_col_.size());
  for (int j = 0; j < nx; ++j)
    sol.x[node_of_x_col_[j]] = std::clamp(value_of(j), 0.0, 1.0);
  for (std::size_t k = 0; k < edge_of_y_col_.size(); ++k)
    sol.y[edge_of_y_col_[k]] = std::clamp(value_of(nx + static_cast<int>(k)), 0.0, 1.0);
  double sum = 0.0;
  for (double v : sol.x) sum += v;
  sol.objective = -sum;
  sol.upper_bound = sol.objective;

  // Dual values from the final basis: lambda = c_B B^-1. Rows were stored
  // with edge rows negated, so the original-form multipliers flip sign.
  sol.dual_cover.assign(sol.y.size(), 0.0);
  sol.dual_budget.assign(sol.x.size(), 0.0);
  if (rows_ > 0) {
    std::vector<double> lambda(rows_, 0.0);
    for (int r = 0; r < rows_; ++r) lambda[r] = cost_[basic_[r]];
    btran(lambda);
    for (std::size_t i = 0; i < sol.dual_cover.size(); ++i) {
      const int r = edge_row_of_edge_[i];
      if (r >= 0) sol.dual_cover[i] = std::max(0.0, -lambda[r]);
    }
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const int r = node_row_of_node_[v];
      if (r >= 0) sol.dual_budget[v] = std::max(0.0, -lambda[r]);
    }
  }
}

LpSolution DualSimplex::run() {
  LpSolution sol;
  const double esb = opt_.early_stop_below.value_or(-kInf);
  if (-lb0_ < esb) {
    sol.status = LpStatus::kEarlyStopped;
    sol.objective = sol.upper_bound = -lb0_;
    return sol;
  }
  if (rows_ == 0) {
    extract(sol);
    sol.iterations = 0;
    return sol;
  }

  const double ftol = opt_.tol;
  const std::int64_t max_iter =
      std::max<std::int64_t>(10000, static_cast<std::int64_t>(opt_.max_iter_factor * rows_));
  const std::int64_t bland_after = 5 * static_cast<std::int64_t>(rows_) + 2000;

  std::vector<double> rho(rows_), w(rows_);
  std::vector<std::pair<int, double>> alphas;  // nonbasic pivot-row entries

  for (iter_ = 0; iter_ < max_iter; ++iter_) {
    if (iter_ > 0 && iter_ % 512 == 0) {
      recompute_basics();
      recompute_reduced_costs();
    }
    const bool bland = iter_ > bland_after;

    // Leaving row: worst bound violation among basic variables.
    int r = -1;
    double worst = ftol;
    for (int i = 0; i < rows_; ++i) {
      const int j = basic_[i];
      const double below = lo_[j] - xb_[i];
      const double above = xb_[i] - up_[j];
      const double viol = std::max(below, above);
      if (viol > worst) {
        worst = viol;
        r = i;
        if (bland) break;  // first violated row
      }
    }
    if (r < 0) {
      extract(sol);
      sol.iterations = iter_;
      return sol;
    }

    const double z = dual_objective();
    if (-std::max(z, lb0_) < esb) {
      sol.status = LpStatus::kEarlyStopped;
      sol.objective = sol.upper_bound = -std::max(z, lb0_);
      sol.iterations = iter_;
      return sol;
    }

    const int leave = basic_[r];
    const bool below_lower = xb_[r] < lo_[leave];
    const double target = below_lower ? lo_[leave] : up_[leave];

    std::fill(rho.begin(), rho.end(), 0.0);
    rho[r] = 1.0;
    btran(rho);

    // Pivot row over nonbasic columns.
    alphas.clear();
    for (int j = 0; j < n_cols_; ++j) {
      if (vstat_[j] == VStat::kBasic) continue;
      const double a = column_dot(j, rho);
      if (std::abs(a) > kPivotTol) alphas.push_back({j, a});
    }

    // Dual ratio test. Ratios share one sign; theta is the one closest to
    // zero, which is exactly what keeps every nonbasic reduced cost on its
    // feasible side after the update.
    int q = -1;
    double alpha_q = 0.0, theta = 0.0;
    double best_ratio = below_lower ? -kInf : kInf;
    for (auto [j, a] : alphas) {
      const bool at_lower = vstat_[j] == VStat::kLower;
      bool eligible;
      if (below_lower)
        eligible = (at_lower && a < 0.0) || (!at_lower && a > 0.0);
      else
        eligible = (at_lower && a > 0.0) || (!at_lower && a < 0.0);
      if (!eligible) continue;
      const double ratio = d_[j] / a;
      bool take;
      if (bland) {
        take = q < 0 || (below_lower ? ratio > best_ratio + 1e-12 : ratio < best_ratio - 1e-12);
      } else if (q < 0) {
        take = true;
      } else if (below_lower ? ratio > best_ratio + 1e-9 : ratio < best_ratio - 1e-9) {
        take = true;
      } else if (below_lower ? ratio > best_ratio - 1e-9 : ratio < best_ratio + 1e-9) {
        take = std::abs(a) > std::abs(alpha_q);  // stability tie-break
      } else {
        take = false;
      }
      if (take) {
        q = j;
        alpha_q = a;
        best_ratio = ratio;
      }
    }
    if (q < 0)
      throw SolverError("dual simplex: no eligible entering column (row " + std::to_string(r) +
                        "); the primal should always be feasible for this LP family");
    theta = best_ratio;

    // FTRAN of the entering column.
    std::fill(w.begin(), w.end(), 0.0);
    if (q >= n_struct_) {
      w[q - n_struct_] = 1.0;
    } else {
      for (int k = col_ptr_[q]; k < col_ptr_[q + 1]; ++k) w[row_idx_[k]] = val_[k];
    }
    ftran(w);
    if (std::abs(w[r] - alpha_q) > 1e-6 * std::max(1.0, std::abs(alpha_q))) {
      // FTRAN/BTRAN disagreement: refresh state and retry this iteration.
      recompute_basics();
      recompute_reduced_costs();
      --iter_;
      continue;
    }

    // Primal step.
    const double t = (xb_[r] - target) / w[r];
    for (int i = 0; i < rows_; ++i) xb_[i] -= t * w[i];
    const double entering_from = vstat_[q] == VStat::kUpper ? up_[q] : lo_[q];
    xb_[r] = entering_from + t;

    // Dual step.
    for (auto [j, a] : alphas)
      if (j != q) d_[j] -= theta * a;
    d_[q] = 0.0;
    d_[leave] = -theta;

    vstat_[leave] = below_lower ? VStat::kLower : VStat::kUpper;
    pos_in_basis_[leave] = -1;
    vstat_[q] = VStat::kBasic;
    pos_in_basis_[q] = r;
    basic_[r] = q;

    Eta eta;
    eta.r = r;
    eta.wr = w[r];
    for (int i = 0; i < rows_; ++i)
      if (i != r && std::abs(w[i]) > 1e-13) eta.nz.push_back({i, w[i]});
    etas_.push_back(std::move(eta));
  }
  throw SolverError("dual simplex: iteration limit (" + std::to_string(max_iter) +
                    ") exceeded on " + std::to_string(rows_) + " rows");
}

}  // namespace

LpProblem build_deletion_lp(const Graph& g, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("deletion LP: tau must be > 0");
  LpProblem p;
  p.graph = g;
  p.tau = tau;
  return p;
}

LpSolution solve(const LpProblem& p, const LpSolveOptions& opt) {
  const Graph& g = p.graph;
  const int n = g.node_count();

  // Nodes whose budget row can bind at all.
  std::vector<NodeId> bindable;
  for (NodeId v = 0; v < n; ++v)
    if (g.degree(v) > p.tau) bindable.push_back(v);
  std::sort(bindable.begin(), bindable.end(),
            [&](NodeId a, NodeId b) { return g.degree(a) != g.degree(b)
                                          ? g.degree(a) > g.degree(b)
                                          : a < b; });

  auto run_subset = [&](const std::vector<bool>* mask) {
    DualSimplex simplex(p, opt, mask);
    return simplex.run();
  };

  LpSolution sol;
  if (bindable.size() <= 1024) {
    sol = run_subset(nullptr);
  } else {
    // Active-set outer loop: budget rows restricted to a subset of the
    // highest-degree nodes give a relaxation; grow the set until either the
    // relaxation certifies an early stop or the extended solution satisfies
    // every dropped row, at which point it is optimal for the full LP.
    std::vector<bool> active(n, false);
    std::size_t frontier = 0;  // position in the degree-ordered list
    std::size_t active_count = 0;
    std::size_t target = 1024;
    const double feastol = std::max(1e-9, opt.tol) * std::max(1.0, p.tau);
    for (;;) {
      while (frontier < bindable.size() && active_count < target) {
        const NodeId v = bindable[frontier++];
        if (!active[v]) {
          active[v] = true;
          ++active_count;
        }
      }
      sol = run_subset(&active);
      if (sol.status == LpStatus::kEarlyStopped) return sol;
      std::vector<NodeId> violated;
      for (const NodeId v : bindable) {
        if (active[v]) continue;
        auto [begin, end] = g.incident(v);
        double load = 0.0;
        for (auto it = begin; it != end; ++it) load += sol.y[*it];
        if (load > p.tau + feastol) violated.push_back(v);
      }
      if (violated.empty()) break;  // extension feasible => optimal
      for (const NodeId v : violated) {
        if (!active[v]) {
          active[v] = true;
          ++active_count;
        }
      }
      target = std::min(bindable.size(), std::max(active_count, 2 * target));
    }
  }

  if (sol.status == LpStatus::kOptimal) {
    const std::string err = verify_optimal(p, sol, std::max(1e-6, opt.tol * 10));
    if (!err.empty()) throw SolverError("optimality certificate failed: " + err);
  }
  return sol;
}

std::string verify_optimal(const LpProblem& p, const LpSolution& sol, double tol) {
  const Graph& g = p.graph;
  const auto& edges = g.edges();
  if (sol.status != LpStatus::kOptimal) return "solution is not marked optimal";
  if (static_cast<NodeId>(sol.x.size()) != g.node_count() ||
      static_cast<std::int64_t>(sol.y.size()) != g.edge_count())
    return "solution size mismatch";

  double sum_x = 0.0;
  for (double v : sol.x) {
    if (v < -tol || v > 1.0 + tol) return "x out of [0,1]";
    sum_x += v;
  }
  for (double v : sol.y)
    if (v < -tol || v > 1.0 + tol) return "y out of [0,1]";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (sol.y[i] < 1.0 - sol.x[edges[i].lo] - sol.x[edges[i].hi] - tol)
      return "edge cover constraint violated";
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto [begin, end] = g.incident(v);
    double load = 0.0;
    for (auto it = begin; it != end; ++it) load += sol.y[*it];
    if (load > p.tau + tol * std::max(1.0, p.tau)) return "degree budget constraint violated";
  }
  if (std::abs(sol.objective + sum_x) > tol * std::max(1.0, sum_x))
    return "objective does not match -sum(x)";

  // Dual certificate. Any alpha, gamma >= 0 yields, by weak duality,
  //   min sum(x) >= sum(alpha) - tau*sum(gamma)
  //              - sum_v (sum_{e in E(v)} alpha_e - 1)^+
  //              - sum_e (alpha_e - gamma_u - gamma_v)^+,
  // so a gap <= tol against sum(x) certifies optimality of the primal.
  if (sol.dual_cover.size() != sol.y.size() || sol.dual_budget.size() != sol.x.size())
    return "dual values missing";
  for (double a : sol.dual_cover)
    if (a < 0.0) return "negative cover dual";
  for (double gm : sol.dual_budget)
    if (gm < 0.0) return "negative budget dual";
  double dual_value = 0.0;
  for (double a : sol.dual_cover) dual_value += a;
  for (double gm : sol.dual_budget) dual_value -= p.tau * gm;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto [begin, end] = g.incident(v);
    double a_sum = 0.0;
    for (auto it = begin; it != end; ++it) a_sum += sol.dual_cover[*it];
    dual_value -= std::max(0.0, a_sum - 1.0);
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    dual_value -= std::max(
        0.0, sol.dual_cover[i] - sol.dual_budget[edges[i].lo] - sol.dual_budget[edges[i].hi]);
  }
  if (sum_x - dual_value > tol * std::max(1.0, sum_x))
    return "duality gap " + std::to_string(sum_x - dual_value) + " exceeds tolerance";
  return "";
}

RoundedSubgraph round_subgraph(const Graph& g, const LpSolution& sol) {
  if (static_cast<NodeId>(sol.x.size()) != g.node_count())
    throw std::invalid_argument("round_subgraph: solution does not match graph");
  RoundedSubgraph out;
  std::vector<bool> removed(g.node_count(), false);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (sol.x[v] > 1.0 / 3.0 + 1e-9) {
      removed[v] = true;
      out.removed_nodes.push_back(v);
    }
  }
  std::vector<Edge> kept;
  for (const Edge& e : g.edges())
    if (!removed[e.lo] && !removed[e.hi]) kept.push_back(e);
  out.graph = Graph(g.node_count(), std::move(kept));
  return out;
}

void write_lp_format(std::ostream& out, const LpProblem& p) {
  const Graph& g = p.graph;
  out << "Maximize\n obj:";
  for (NodeId v = 0; v < g.node_count(); ++v) out << " - x" << v;
  if (g.node_count() == 0) out << " 0 x_dummy";
  out << "\nSubject To\n";
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out << " cover" << i << ": x" << edges[i].lo << " + x" << edges[i].hi << " + y" << i
        << " >= 1\n";
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto [begin, end] = g.incident(v);
    if (begin == end) continue;
    out << " budget" << v << ":";
    bool first = true;
    for (auto it = begin; it != end; ++it) {
      out << (first ? " y" : " + y") << *it;
      first = false;
    }
    out << " <= " << p.tau << "\n";
  }
  out << "Bounds\n";
  for (NodeId v = 0; v < g.node_count(); ++v) out << " 0 <= x" << v << " <= 1\n";
  for (std::size_t i = 0; i < edges.size(); ++i) out << " 0 <= y" << i << " <= 1\n";
  out << "End\n";
}

}  // namespace n2e
