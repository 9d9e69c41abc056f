#include "batchmg/solve.hpp"

#include <algorithm>
#include <cmath>

#include "batchmg/errors.hpp"
#include "batchmg/lp.hpp"

namespace batchmg {

namespace {

// One LP per player: maximize the guarantee level v with the strategy on
// the simplex. Variables are [p_0..p_{n-1}, v_pos, v_neg], v = v_pos - v_neg.
std::pair<double, std::vector<double>> solve_one_side(
    const std::vector<double>& payoff, int n_rows, int n_cols, bool row_side) {
  const int n = row_side ? n_rows : n_cols;
  const int n_opp = row_side ? n_cols : n_rows;
  std::vector<double> obj(n + 2, 0.0);
  obj[n] = 1.0;
  obj[n + 1] = -1.0;

  std::vector<LpConstraint> cons;
  cons.reserve(n_opp + 1);
  for (int o = 0; o < n_opp; ++o) {
    LpConstraint c;
    c.coeffs.assign(n + 2, 0.0);
    for (int i = 0; i < n; ++i) {
      double entry = row_side ? payoff[static_cast<std::size_t>(i) * n_cols + o]
                              : -payoff[static_cast<std::size_t>(o) * n_cols + i];
      c.coeffs[i] = -entry;
    }
    c.coeffs[n] = 1.0;
    c.coeffs[n + 1] = -1.0;
    c.sense = LpSense::kLessEqual;
    c.rhs = 0.0;
    cons.push_back(std::move(c));
  }
  LpConstraint simplex;
  simplex.coeffs.assign(n + 2, 0.0);
  for (int i = 0; i < n; ++i) simplex.coeffs[i] = 1.0;
  simplex.sense = LpSense::kEqual;
  simplex.rhs = 1.0;
  cons.push_back(std::move(simplex));

  LpResult res = solve_lp(obj, cons);
  if (res.status != LpStatus::kOptimal)
    throw NumericError("solve_matrix_game: LP did not reach optimality");
  std::vector<double> strategy(res.x.begin(), res.x.begin() + n);
  double total = 0.0;
  for (double& p : strategy) {
    p = std::max(p, 0.0);
    total += p;
  }
  for (double& p : strategy) p /= total;
  return {res.value, strategy};
}

}  // namespace

MatrixGameSolution solve_matrix_game(const std::vector<double>& payoff,
                                     int n_rows, int n_cols) {
  if (n_rows <= 0 || n_cols <= 0 ||
      payoff.size() != static_cast<std::size_t>(n_rows) * n_cols)
    throw ContractError("solve_matrix_game: bad payoff shape");
  for (double v : payoff)
    if (!std::isfinite(v))
      throw NumericError("solve_matrix_game: non-finite payoff entry");

  double lo = payoff[0], hi = payoff[0];
  for (double v : payoff) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  MatrixGameSolution sol;
  if (hi - lo <= 1e-12) {  // constant matrix: value is the constant
    sol.value = payoff[0];
    sol.row_strategy.assign(n_rows, 1.0 / n_rows);
    sol.col_strategy.assign(n_cols, 1.0 / n_cols);
    return sol;
  }

  auto [row_value, row_strategy] = solve_one_side(payoff, n_rows, n_cols, true);
  auto [col_value, col_strategy] =
      solve_one_side(payoff, n_rows, n_cols, false);
  sol.value = row_value;
  sol.row_strategy = std::move(row_strategy);
  sol.col_strategy = std::move(col_strategy);
  // The column player's guarantee is -col_value; duality says they match.
  if (std::abs(row_value + col_value) > 1e-6)
    throw NumericError("solve_matrix_game: duality gap exceeds tolerance");
  return sol;
}

namespace {

void check_policy_dims(const ModelView& m, const MaxPolicy& p, int n_actions,
                       const char* what) {
  if (p.horizon() != m.dims.horizon || p.n_states() != m.dims.n_states ||
      p.n_actions() != n_actions)
    throw ConfigError(std::string(what) + ": policy dims do not match model");
}

void check_reward_dims(const ModelView& m, const RewardFunction& r,
                       const char* what) {
  if (r.dims() != m.dims)
    throw ConfigError(std::string(what) + ": reward dims do not match model");
}

// q(h, s, a, b) = r + P . v_next over core states (absorbing adds nothing).
void fill_q_layer(const ModelView& m, const RewardFunction& reward, int h,
                  const std::vector<double>& v_next, std::vector<double>& q) {
  const Dims& d = m.dims;
  q.assign(static_cast<std::size_t>(d.n_states) * d.n_actions_max *
               d.n_actions_min,
           0.0);
  std::size_t i = 0;
  for (int s = 0; s < d.n_states; ++s)
    for (int a = 0; a < d.n_actions_max; ++a)
      for (int b = 0; b < d.n_actions_min; ++b) {
        double x = reward.at(h, s, a, b);
        for (int s2 = 0; s2 < d.n_states; ++s2)
          x += m.prob(h, s, a, b, s2) * v_next[s2];
        q[i++] = x;
      }
}

}  // namespace

NashSolution nash_value_iteration(const ModelView& model,
                                  const RewardFunction& reward) {
  const Dims& d = model.dims;
  check_reward_dims(model, reward, "nash_value_iteration");

  NashSolution sol;
  sol.value.assign(static_cast<std::size_t>(d.horizon) * d.n_states, 0.0);
  sol.max_strategy = MaxPolicy(d.horizon, d.n_states, d.n_actions_max);
  sol.min_strategy = MinPolicy(d.horizon, d.n_states, d.n_actions_min);

  std::vector<double> v_next(d.n_states, 0.0);
  std::vector<double> v_here(d.n_states, 0.0);
  std::vector<double> q;
  std::vector<double> stage(static_cast<std::size_t>(d.n_actions_max) *
                            d.n_actions_min);
  for (int h = d.horizon - 1; h >= 0; --h) {
    fill_q_layer(model, reward, h, v_next, q);
    for (int s = 0; s < d.n_states; ++s) {
      const double* qs = q.data() + static_cast<std::size_t>(s) *
                                        d.n_actions_max * d.n_actions_min;
      std::copy(qs, qs + stage.size(), stage.begin());
      MatrixGameSolution mg =
          solve_matrix_game(stage, d.n_actions_max, d.n_actions_min);
      v_here[s] = mg.value;
      sol.value[static_cast<std::size_t>(h) * d.n_states + s] = mg.value;
      for (int a = 0; a < d.n_actions_max; ++a)
        sol.max_strategy.set(h, s, a, mg.row_strategy[a]);
      for (int b = 0; b < d.n_actions_min; ++b)
        sol.min_strategy.set(h, s, b, mg.col_strategy[b]);
    }
    std::swap(v_next, v_here);
  }
  return sol;
}

BestResponse best_response_value(const ModelView& model,
                                 const RewardFunction& reward,
                                 const MaxPolicy& max_policy) {
  const Dims& d = model.dims;
  check_reward_dims(model, reward, "best_response_value");
  check_policy_dims(model, max_policy, d.n_actions_max, "best_response_value");

  BestResponse br;
  br.policy = MinPolicy(d.horizon, d.n_states, d.n_actions_min);
  std::vector<double> v_next(d.n_states, 0.0);
  std::vector<double> v_here(d.n_states, 0.0);
  std::vector<double> q;
  for (int h = d.horizon - 1; h >= 0; --h) {
    fill_q_layer(model, reward, h, v_next, q);
    for (int s = 0; s < d.n_states; ++s) {
      int best_b = 0;
      double best = 0.0;
      for (int b = 0; b < d.n_actions_min; ++b) {
        double x = 0.0;
        for (int a = 0; a < d.n_actions_max; ++a)
          x += max_policy.at(h, s, a) *
               q[(static_cast<std::size_t>(s) * d.n_actions_max + a) *
                     d.n_actions_min +
                 b];
        if (b == 0 || x < best) {
          best = x;
          best_b = b;
        }
      }
      v_here[s] = best;
      br.policy.set(h, s, best_b, 1.0);
    }
    std::swap(v_next, v_here);
  }
  br.value = v_next[model.initial_state];
  return br;
}

BestResponseMax best_response_max(const ModelView& model,
                                  const RewardFunction& reward,
                                  const MinPolicy& min_policy) {
  const Dims& d = model.dims;
  check_reward_dims(model, reward, "best_response_max");
  check_policy_dims(model, min_policy, d.n_actions_min, "best_response_max");

  BestResponseMax br;
  br.policy = MaxPolicy(d.horizon, d.n_states, d.n_actions_max);
  std::vector<double> v_next(d.n_states, 0.0);
  std::vector<double> v_here(d.n_states, 0.0);
  std::vector<double> q;
  for (int h = d.horizon - 1; h >= 0; --h) {
    fill_q_layer(model, reward, h, v_next, q);
    for (int s = 0; s < d.n_states; ++s) {
      int best_a = 0;
      double best = 0.0;
      for (int a = 0; a < d.n_actions_max; ++a) {
        double x = 0.0;
        for (int b = 0; b < d.n_actions_min; ++b)
          x += min_policy.at(h, s, b) *
               q[(static_cast<std::size_t>(s) * d.n_actions_max + a) *
                     d.n_actions_min +
                 b];
        if (a == 0 || x > best) {
          best = x;
          best_a = a;
        }
      }
      v_here[s] = best;
      br.policy.set(h, s, best_a, 1.0);
    }
    std::swap(v_next, v_here);
  }
  br.value = v_next[model.initial_state];
  return br;
}

ValueTable policy_pair_value(const ModelView& model,
                             const RewardFunction& reward,
                             const MaxPolicy& max_policy,
                             const MinPolicy& min_policy) {
  const Dims& d = model.dims;
  check_reward_dims(model, reward, "policy_pair_value");
  check_policy_dims(model, max_policy, d.n_actions_max, "policy_pair_value");
  check_policy_dims(model, min_policy, d.n_actions_min, "policy_pair_value");

  ValueTable table;
  table.dims = d;
  table.v.assign(static_cast<std::size_t>(d.horizon + 1) * d.n_states, 0.0);
  table.q.assign(static_cast<std::size_t>(d.horizon) * d.n_states *
                     d.n_actions_max * d.n_actions_min,
                 0.0);

  std::vector<double> q;
  for (int h = d.horizon - 1; h >= 0; --h) {
    std::vector<double> v_next(
        table.v.begin() + static_cast<std::size_t>(h + 1) * d.n_states,
        table.v.begin() + static_cast<std::size_t>(h + 2) * d.n_states);
    fill_q_layer(model, reward, h, v_next, q);
    for (int s = 0; s < d.n_states; ++s) {
      double v = 0.0;
      for (int a = 0; a < d.n_actions_max; ++a)
        for (int b = 0; b < d.n_actions_min; ++b) {
          double qv = q[(static_cast<std::size_t>(s) * d.n_actions_max + a) *
                            d.n_actions_min +
                        b];
          table.q[((static_cast<std::size_t>(h) * d.n_states + s) *
                       d.n_actions_max +
                   a) *
                      d.n_actions_min +
                  b] = qv;
          v += max_policy.at(h, s, a) * min_policy.at(h, s, b) * qv;
        }
      table.v[static_cast<std::size_t>(h) * d.n_states + s] = v;
    }
  }
  return table;
}

double pair_value(const ModelView& model, const RewardFunction& reward,
                  const MaxPolicy& max_policy, const MinPolicy& min_policy) {
  return policy_pair_value(model, reward, max_policy, min_policy)
      .initial_value(model);
}

double mixture_value(const ModelView& model, const RewardFunction& reward,
                     const MixturePolicy& policy) {
  policy.validate();
  double v = 0.0;
  for (std::size_t i = 0; i < policy.components.size(); ++i)
    v += policy.weights[i] * pair_value(model, reward,
                                        policy.components[i].first,
                                        policy.components[i].second);
  return v;
}

std::vector<double> occupancy_measure(const ModelView& model,
                                      const MaxPolicy& max_policy,
                                      const MinPolicy& min_policy) {
  const Dims& d = model.dims;
  check_policy_dims(model, max_policy, d.n_actions_max, "occupancy_measure");
  check_policy_dims(model, min_policy, d.n_actions_min, "occupancy_measure");

  std::vector<double> occ(static_cast<std::size_t>(d.horizon) * d.n_states *
                              d.n_actions_max * d.n_actions_min,
                          0.0);
  std::vector<double> here(d.n_states, 0.0);
  std::vector<double> next(d.n_states, 0.0);
  here[model.initial_state] = 1.0;
  for (int h = 0; h < d.horizon; ++h) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int s = 0; s < d.n_states; ++s) {
      if (here[s] == 0.0) continue;
      for (int a = 0; a < d.n_actions_max; ++a) {
        double pa = max_policy.at(h, s, a);
        if (pa == 0.0) continue;
        for (int b = 0; b < d.n_actions_min; ++b) {
          double mass = here[s] * pa * min_policy.at(h, s, b);
          if (mass == 0.0) continue;
          occ[((static_cast<std::size_t>(h) * d.n_states + s) *
                   d.n_actions_max +
               a) *
                  d.n_actions_min +
              b] = mass;
          for (int s2 = 0; s2 < d.n_states; ++s2)
            next[s2] += mass * model.prob(h, s, a, b, s2);
        }
      }
    }
    std::swap(here, next);
  }
  return occ;
}

std::vector<double> occupancy_measure(const ModelView& model,
                                      const MixturePolicy& policy) {
  policy.validate();
  std::vector<double> total;
  for (std::size_t i = 0; i < policy.components.size(); ++i) {
    std::vector<double> occ = occupancy_measure(
        model, policy.components[i].first, policy.components[i].second);
    if (total.empty()) total.assign(occ.size(), 0.0);
    for (std::size_t j = 0; j < occ.size(); ++j)
      total[j] += policy.weights[i] * occ[j];
  }
  return total;
}

double visitation_probability(const ModelView& model,
                              const MixturePolicy& policy, int h, int s) {
  const Dims& d = model.dims;
  std::vector<double> occ = occupancy_measure(model, policy);
  double p = 0.0;
  for (int a = 0; a < d.n_actions_max; ++a)
    for (int b = 0; b < d.n_actions_min; ++b)
      p += occ[((static_cast<std::size_t>(h) * d.n_states + s) *
                    d.n_actions_max +
                a) *
                   d.n_actions_min +
               b];
  return p;
}

double visitation_probability(const ModelView& model,
                              const MixturePolicy& policy, int h, int s, int a,
                              int b) {
  const Dims& d = model.dims;
  std::vector<double> occ = occupancy_measure(model, policy);
  return occ[((static_cast<std::size_t>(h) * d.n_states + s) *
                  d.n_actions_max +
              a) *
                 d.n_actions_min +
             b];
}

}  // namespace batchmg
