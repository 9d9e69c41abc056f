#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "batchmg/errors.hpp"
#include "batchmg/rng.hpp"

namespace batchmg {

// Problem dimensions: horizon, states, and per-player action counts.
struct Dims {
  int horizon = 0;
  int n_states = 0;
  int n_actions_max = 0;  // max-player
  int n_actions_min = 0;  // min-player

  bool operator==(const Dims&) const = default;
  void validate() const;
};

// Read-only view of a transition model over the core state space. Rows may
// sum to less than one; the deficit is mass routed to an implicit absorbing
// state that yields no reward. A plain game has zero deficit everywhere.
struct ModelView {
  Dims dims;
  int initial_state = 0;
  const double* data = nullptr;
  std::int64_t stride_h = 0;
  std::int64_t stride_s = 0;
  std::int64_t stride_a = 0;
  std::int64_t stride_b = 0;

  double prob(int h, int s, int a, int b, int s2) const {
    return data[h * stride_h + s * stride_s + a * stride_a + b * stride_b +
                s2];
  }
  double core_row_sum(int h, int s, int a, int b) const {
    const double* row =
        data + h * stride_h + s * stride_s + a * stride_a + b * stride_b;
    double total = 0.0;
    for (int s2 = 0; s2 < dims.n_states; ++s2) total += row[s2];
    return total;
  }
  double absorbing_mass(int h, int s, int a, int b) const {
    double m = 1.0 - core_row_sum(h, s, a, b);
    return m > 0.0 ? m : 0.0;
  }
};

// Reward tensor indexed by (h, s, a, b), entries in [0, 1].
class RewardFunction {
 public:
  RewardFunction() = default;
  RewardFunction(const Dims& dims, double fill);

  static RewardFunction zeros(const Dims& dims) {
    return RewardFunction(dims, 0.0);
  }
  static RewardFunction ones(const Dims& dims) {
    return RewardFunction(dims, 1.0);
  }

  double at(int h, int s, int a, int b) const { return values_[index(h, s, a, b)]; }
  void set(int h, int s, int a, int b, double v) { values_[index(h, s, a, b)] = v; }

  const Dims& dims() const { return dims_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }

  void validate() const;

 private:
  std::int64_t index(int h, int s, int a, int b) const;
  Dims dims_;
  std::vector<double> values_;
};

// Reward that pays 1 exactly at step h in state s when the joint action
// (a, b) is played, 0 elsewhere. The value of a policy pair under this
// reward is the visitation probability of (h, s, a, b).
RewardFunction indicator_reward(int h, int s, int a, int b, const Dims& dims);

// Same for a (h, s) pair: pays 1 at step h in state s for any joint action.
RewardFunction indicator_state_reward(int h, int s, const Dims& dims);

// Markov policy of the max-player: a distribution over A actions per (h, s).
class MaxPolicy {
 public:
  MaxPolicy() = default;
  MaxPolicy(int horizon, int n_states, int n_actions);

  static MaxPolicy uniform(int horizon, int n_states, int n_actions);
  static MaxPolicy point_mass(int horizon, int n_states, int n_actions,
                              int action);

  double at(int h, int s, int a) const { return dist_[(h * n_states_ + s) * n_actions_ + a]; }
  void set(int h, int s, int a, double p) { dist_[(h * n_states_ + s) * n_actions_ + a] = p; }
  std::span<const double> row(int h, int s) const {
    return {dist_.data() + (h * n_states_ + s) * n_actions_,
            static_cast<std::size_t>(n_actions_)};
  }

  int horizon() const { return horizon_; }
  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }
  const std::vector<double>& flat() const { return dist_; }

  void validate() const;
  bool operator==(const MaxPolicy&) const = default;

 private:
  int horizon_ = 0;
  int n_states_ = 0;
  int n_actions_ = 0;
  std::vector<double> dist_;
};

// Min-player counterpart (distribution over B actions per (h, s)).
using MinPolicy = MaxPolicy;

// A general (non-Markov) policy given as a mixture of Markov policy pairs:
// one component is drawn per episode and held fixed for all H steps.
struct MixturePolicy {
  std::vector<std::pair<MaxPolicy, MinPolicy>> components;
  std::vector<double> weights;

  static MixturePolicy single(MaxPolicy mu, MinPolicy nu);
  void validate() const;
};

struct TrajectoryStep {
  int state = 0;
  int action_a = 0;
  int action_b = 0;
  double reward = 0.0;
  int next_state = 0;

  bool operator==(const TrajectoryStep&) const = default;
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;
  std::uint64_t episode_seed = 0;

  bool operator==(const Trajectory&) const = default;
};

// The true environment: dense transition and reward tensors plus a fixed
// initial state. Immutable after construction.
class MarkovGame {
 public:
  MarkovGame() = default;
  MarkovGame(const Dims& dims, std::vector<double> transition,
             RewardFunction reward, int initial_state);

  const Dims& dims() const { return dims_; }
  int initial_state() const { return initial_state_; }
  const RewardFunction& reward() const { return reward_; }

  double transition(int h, int s, int a, int b, int s2) const {
    return transition_[trans_index(h, s, a, b, s2)];
  }
  std::span<const double> transition_row(int h, int s, int a, int b) const {
    return {transition_.data() + trans_index(h, s, a, b, 0),
            static_cast<std::size_t>(dims_.n_states)};
  }

  ModelView view() const;
  void validate() const;

 private:
  std::int64_t trans_index(int h, int s, int a, int b, int s2) const;

  Dims dims_;
  std::vector<double> transition_;  // [H][S][A][B][S]
  RewardFunction reward_;
  int initial_state_ = 0;
};

// Runs one episode: draws a mixture component (seeded), then rolls H steps
// through the game dynamics. Deterministic for a fixed seed.
Trajectory sample_episode(const MarkovGame& game, const MixturePolicy& policy,
                          std::uint64_t seed);

// Named experiment environments.
struct EnvSpec {
  std::string name;  // random_dense | rps_chain | hard_gap
  Dims dims;
  double gap = 0.2;  // hard_gap only
};

MarkovGame make_env(const EnvSpec& spec, std::uint64_t seed);

}  // namespace batchmg
