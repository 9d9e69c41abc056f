#pragma once

#include <vector>

#include "batchmg/game.hpp"

namespace batchmg {

struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
};

// Value of the zero-sum matrix game max_p min_q p^T M q, found by linear
// programming (one LP per player). Ties between optimal strategies resolve
// to the solver's first optimal basic solution.
MatrixGameSolution solve_matrix_game(const std::vector<double>& payoff,
                                     int n_rows, int n_cols);

// Nash value and a Nash policy pair for a finite-horizon model, computed by
// backward induction with a matrix-game solve at every (h, s).
struct NashSolution {
  std::vector<double> value;  // [H][S]
  MaxPolicy max_strategy;
  MinPolicy min_strategy;

  double value_at(int h, int s, int n_states) const {
    return value[static_cast<std::size_t>(h) * n_states + s];
  }
  double initial_value(const ModelView& m) const {
    return value_at(0, m.initial_state, m.dims.n_states);
  }
};

NashSolution nash_value_iteration(const ModelView& model,
                                  const RewardFunction& reward);

struct BestResponse {
  double value = 0.0;  // at (h=1, s1)
  MinPolicy policy;
};

// inf over all Markov min-policies of the max-policy's value, realized
// exactly by dynamic programming over the induced single-agent model.
BestResponse best_response_value(const ModelView& model,
                                 const RewardFunction& reward,
                                 const MaxPolicy& max_policy);

struct BestResponseMax {
  double value = 0.0;
  MaxPolicy policy;
};

// sup over all Markov max-policies against a fixed min-policy.
BestResponseMax best_response_max(const ModelView& model,
                                  const RewardFunction& reward,
                                  const MinPolicy& min_policy);

// Exact evaluation of a fixed policy pair: state values v and joint-action
// values q with q = r + P v_{h+1} and v_h = E_{policy} q_h.
struct ValueTable {
  Dims dims;
  std::vector<double> v;  // [H+1][S], layer H all zero
  std::vector<double> q;  // [H][S][A][B]

  double v_at(int h, int s) const {
    return v[static_cast<std::size_t>(h) * dims.n_states + s];
  }
  double q_at(int h, int s, int a, int b) const {
    return q[((static_cast<std::size_t>(h) * dims.n_states + s) *
                  dims.n_actions_max +
              a) *
                 dims.n_actions_min +
             b];
  }
  double initial_value(const ModelView& m) const {
    return v_at(0, m.initial_state);
  }
};

ValueTable policy_pair_value(const ModelView& model,
                             const RewardFunction& reward,
                             const MaxPolicy& max_policy,
                             const MinPolicy& min_policy);

double pair_value(const ModelView& model, const RewardFunction& reward,
                  const MaxPolicy& max_policy, const MinPolicy& min_policy);

double mixture_value(const ModelView& model, const RewardFunction& reward,
                     const MixturePolicy& policy);

// Occupancy measure: probability of visiting (h, s, a, b) under the pair.
// Flat layout [H][S][A][B]. Mass lost to the absorbing state shows up as a
// per-layer deficit (layer sums may be < 1).
std::vector<double> occupancy_measure(const ModelView& model,
                                      const MaxPolicy& max_policy,
                                      const MinPolicy& min_policy);

std::vector<double> occupancy_measure(const ModelView& model,
                                      const MixturePolicy& policy);

double visitation_probability(const ModelView& model,
                              const MixturePolicy& policy, int h, int s);
double visitation_probability(const ModelView& model,
                              const MixturePolicy& policy, int h, int s, int a,
                              int b);

}  // namespace batchmg
