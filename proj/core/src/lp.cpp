#include "batchmg/lp.hpp"

#include <cmath>
#include <limits>

#include "batchmg/errors.hpp"

namespace batchmg {

namespace {

constexpr double kEps = 1e-9;

struct Tableau {
  int n_rows = 0;  // constraints
  int n_cols = 0;  // structural + slack + artificial columns (no rhs)
  std::vector<double> cells;  // (n_rows) x (n_cols + 1), last column = rhs
  std::vector<int> basis;     // basic column per row

  double& at(int r, int c) { return cells[static_cast<std::size_t>(r) * (n_cols + 1) + c]; }
  double at(int r, int c) const { return cells[static_cast<std::size_t>(r) * (n_cols + 1) + c]; }
  double& rhs(int r) { return at(r, n_cols); }
  double rhs(int r) const { return at(r, n_cols); }

  void pivot(int pr, int pc) {
    double pv = at(pr, pc);
    for (int c = 0; c <= n_cols; ++c) at(pr, c) /= pv;
    for (int r = 0; r < n_rows; ++r) {
      if (r == pr) continue;
      double f = at(r, pc);
      if (f == 0.0) continue;
      for (int c = 0; c <= n_cols; ++c) at(r, c) -= f * at(pr, c);
    }
    basis[pr] = pc;
  }
};

// Reduced-cost row for maximizing obj over the current basis:
// red[j] = obj[j] - sum_i obj[basis[i]] * T[i][j].
void reduced_costs(const Tableau& t, const std::vector<double>& obj,
                   std::vector<double>& red, double& value) {
  red.assign(t.n_cols, 0.0);
  value = 0.0;
  for (int j = 0; j < t.n_cols; ++j) red[j] = obj[j];
  for (int r = 0; r < t.n_rows; ++r) {
    double cb = obj[t.basis[r]];
    if (cb == 0.0) continue;
    value += cb * t.rhs(r);
    for (int j = 0; j < t.n_cols; ++j) red[j] -= cb * t.at(r, j);
  }
}

// Pivots until no improving column remains. Bland's rule: the entering
// column is the lowest-index one with positive reduced cost, the leaving row
// breaks ratio ties by lowest basis index. Returns false on unbounded.
bool run_simplex(Tableau& t, const std::vector<double>& obj, int max_iters,
                 bool* hit_limit) {
  std::vector<double> red;
  double value = 0.0;
  for (int iter = 0; iter < max_iters; ++iter) {
    reduced_costs(t, obj, red, value);
    int enter = -1;
    for (int j = 0; j < t.n_cols; ++j) {
      if (red[j] > kEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return true;

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < t.n_rows; ++r) {
      double a = t.at(r, enter);
      if (a > kEps) {
        double ratio = t.rhs(r) / a;
        if (ratio < best_ratio - kEps ||
            (ratio < best_ratio + kEps &&
             (leave < 0 || t.basis[r] < t.basis[leave]))) {
          best_ratio = ratio;
          leave = r;
        }
      }
    }
    if (leave < 0) return false;  // unbounded direction
    t.pivot(leave, enter);
  }
  *hit_limit = true;
  return true;
}

}  // namespace

LpResult solve_lp(const std::vector<double>& objective,
                  const std::vector<LpConstraint>& constraints,
                  int max_iters) {
  const int n = static_cast<int>(objective.size());
  const int m = static_cast<int>(constraints.size());
  for (double c : objective)
    if (!std::isfinite(c)) throw NumericError("solve_lp: non-finite objective");

  // Normalize rows to nonnegative rhs, then count slack/artificial columns.
  std::vector<std::vector<double>> rows(m);
  std::vector<LpSense> senses(m);
  std::vector<double> rhs(m);
  for (int i = 0; i < m; ++i) {
    const LpConstraint& con = constraints[i];
    if (static_cast<int>(con.coeffs.size()) != n)
      throw ContractError("solve_lp: constraint width mismatch");
    rows[i] = con.coeffs;
    senses[i] = con.sense;
    rhs[i] = con.rhs;
    for (double v : con.coeffs)
      if (!std::isfinite(v)) throw NumericError("solve_lp: non-finite entry");
    if (!std::isfinite(con.rhs)) throw NumericError("solve_lp: non-finite rhs");
    if (rhs[i] < 0.0) {
      for (double& v : rows[i]) v = -v;
      rhs[i] = -rhs[i];
      if (senses[i] == LpSense::kLessEqual)
        senses[i] = LpSense::kGreaterEqual;
      else if (senses[i] == LpSense::kGreaterEqual)
        senses[i] = LpSense::kLessEqual;
    }
  }

  int n_slack = 0, n_art = 0;
  for (int i = 0; i < m; ++i) {
    if (senses[i] != LpSense::kEqual) ++n_slack;
    if (senses[i] != LpSense::kLessEqual) ++n_art;
  }

  Tableau t;
  t.n_rows = m;
  t.n_cols = n + n_slack + n_art;
  t.cells.assign(static_cast<std::size_t>(m) * (t.n_cols + 1), 0.0);
  t.basis.assign(m, -1);

  int slack_at = n;
  int art_at = n + n_slack;
  std::vector<int> art_cols;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t.at(i, j) = rows[i][j];
    t.rhs(i) = rhs[i];
    if (senses[i] == LpSense::kLessEqual) {
      t.at(i, slack_at) = 1.0;
      t.basis[i] = slack_at++;
    } else if (senses[i] == LpSense::kGreaterEqual) {
      t.at(i, slack_at) = -1.0;
      ++slack_at;
      t.at(i, art_at) = 1.0;
      t.basis[i] = art_at;
      art_cols.push_back(art_at++);
    } else {
      t.at(i, art_at) = 1.0;
      t.basis[i] = art_at;
      art_cols.push_back(art_at++);
    }
  }

  bool hit_limit = false;

  // Phase 1: maximize -sum(artificials); feasible iff the optimum is 0.
  if (!art_cols.empty()) {
    std::vector<double> phase1(t.n_cols, 0.0);
    for (int c : art_cols) phase1[c] = -1.0;
    if (!run_simplex(t, phase1, max_iters, &hit_limit))
      throw NumericError("solve_lp: phase 1 unbounded");
    if (hit_limit) return {LpStatus::kIterationLimit, 0.0, {}};

    double infeas = 0.0;
    for (int r = 0; r < t.n_rows; ++r)
      if (t.basis[r] >= n + n_slack) infeas += t.rhs(r);
    if (infeas > 1e-7) return {LpStatus::kInfeasible, 0.0, {}};

    // Drive any zero-level artificial out of the basis when possible.
    for (int r = 0; r < t.n_rows; ++r) {
      if (t.basis[r] < n + n_slack) continue;
      int pc = -1;
      for (int j = 0; j < n + n_slack; ++j) {
        if (std::abs(t.at(r, j)) > kEps) {
          pc = j;
          break;
        }
      }
      if (pc >= 0) t.pivot(r, pc);
    }
  }

  // Phase 2: the real objective; artificial columns are frozen at zero by
  // giving them a strongly negative cost so they never re-enter.
  std::vector<double> phase2(t.n_cols, 0.0);
  for (int j = 0; j < n; ++j) phase2[j] = objective[j];
  for (int c : art_cols) phase2[c] = -1e30;
  if (!run_simplex(t, phase2, max_iters, &hit_limit))
    return {LpStatus::kUnbounded, 0.0, {}};
  if (hit_limit) return {LpStatus::kIterationLimit, 0.0, {}};

  LpResult res;
  res.status = LpStatus::kOptimal;
  res.x.assign(n, 0.0);
  for (int r = 0; r < t.n_rows; ++r)
    if (t.basis[r] < n) res.x[t.basis[r]] = t.rhs(r);
  res.value = 0.0;
  for (int j = 0; j < n; ++j) res.value += objective[j] * res.x[j];
  return res;
}

}  // namespace batchmg
