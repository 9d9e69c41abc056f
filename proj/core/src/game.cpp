#include "batchmg/game.hpp"

#include <cmath>
#include <numeric>

namespace batchmg {

namespace {
constexpr double kRowSumTol = 1e-9;

void check_simplex_rows(const std::vector<double>& flat, int n_rows,
                        int row_len, const char* what) {
  for (int r = 0; r < n_rows; ++r) {
    double total = 0.0;
    for (int i = 0; i < row_len; ++i) {
      double p = flat[static_cast<std::size_t>(r) * row_len + i];
      if (p < 0.0 || !std::isfinite(p))
        throw ConfigError(std::string(what) + ": negative or non-finite entry");
      total += p;
    }
    if (std::abs(total - 1.0) > kRowSumTol)
      throw ConfigError(std::string(what) + ": row does not sum to 1");
  }
}
}  // namespace

void Dims::validate() const {
  if (horizon <= 0 || n_states <= 0 || n_actions_max <= 0 || n_actions_min <= 0)
    throw ConfigError("dims: all of H, S, A, B must be positive");
}

RewardFunction::RewardFunction(const Dims& dims, double fill)
    : dims_(dims),
      values_(static_cast<std::size_t>(dims.horizon) * dims.n_states *
                  dims.n_actions_max * dims.n_actions_min,
              fill) {
  dims.validate();
}

std::int64_t RewardFunction::index(int h, int s, int a, int b) const {
  return ((static_cast<std::int64_t>(h) * dims_.n_states + s) *
              dims_.n_actions_max +
          a) *
             dims_.n_actions_min +
         b;
}

void RewardFunction::validate() const {
  for (double v : values_)
    if (v < 0.0 || v > 1.0 || !std::isfinite(v))
      throw ConfigError("reward: entries must lie in [0, 1]");
}

RewardFunction indicator_reward(int h, int s, int a, int b, const Dims& dims) {
  dims.validate();
  if (h < 0 || h >= dims.horizon || s < 0 || s >= dims.n_states || a < 0 ||
      a >= dims.n_actions_max || b < 0 || b >= dims.n_actions_min)
    throw ConfigError("indicator_reward: index out of range");
  RewardFunction r(dims, 0.0);
  r.set(h, s, a, b, 1.0);
  return r;
}

RewardFunction indicator_state_reward(int h, int s, const Dims& dims) {
  dims.validate();
  if (h < 0 || h >= dims.horizon || s < 0 || s >= dims.n_states)
    throw ConfigError("indicator_state_reward: index out of range");
  RewardFunction r(dims, 0.0);
  for (int a = 0; a < dims.n_actions_max; ++a)
    for (int b = 0; b < dims.n_actions_min; ++b) r.set(h, s, a, b, 1.0);
  return r;
}

MaxPolicy::MaxPolicy(int horizon, int n_states, int n_actions)
    : horizon_(horizon),
      n_states_(n_states),
      n_actions_(n_actions),
      dist_(static_cast<std::size_t>(horizon) * n_states * n_actions, 0.0) {}

MaxPolicy MaxPolicy::uniform(int horizon, int n_states, int n_actions) {
  MaxPolicy p(horizon, n_states, n_actions);
  double w = 1.0 / n_actions;
  for (double& x : p.dist_) x = w;
  return p;
}

MaxPolicy MaxPolicy::point_mass(int horizon, int n_states, int n_actions,
                                int action) {
  if (action < 0 || action >= n_actions)
    throw ConfigError("point_mass: action out of range");
  MaxPolicy p(horizon, n_states, n_actions);
  for (int h = 0; h < horizon; ++h)
    for (int s = 0; s < n_states; ++s) p.set(h, s, action, 1.0);
  return p;
}

void MaxPolicy::validate() const {
  check_simplex_rows(dist_, horizon_ * n_states_, n_actions_, "policy");
}

MixturePolicy MixturePolicy::single(MaxPolicy mu, MinPolicy nu) {
  MixturePolicy pi;
  pi.components.emplace_back(std::move(mu), std::move(nu));
  pi.weights.push_back(1.0);
  return pi;
}

void MixturePolicy::validate() const {
  if (components.empty()) throw ConfigError("mixture: needs >= 1 component");
  if (components.size() != weights.size())
    throw ConfigError("mixture: component/weight count mismatch");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w))
      throw ConfigError("mixture: negative or non-finite weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kRowSumTol)
    throw ConfigError("mixture: weights do not sum to 1");
  for (const auto& [mu, nu] : components) {
    mu.validate();
    nu.validate();
  }
}

MarkovGame::MarkovGame(const Dims& dims, std::vector<double> transition,
                       RewardFunction reward, int initial_state)
    : dims_(dims),
      transition_(std::move(transition)),
      reward_(std::move(reward)),
      initial_state_(initial_state) {
  validate();
}

std::int64_t MarkovGame::trans_index(int h, int s, int a, int b,
                                     int s2) const {
  return (((static_cast<std::int64_t>(h) * dims_.n_states + s) *
               dims_.n_actions_max +
           a) *
              dims_.n_actions_min +
          b) *
             dims_.n_states +
         s2;
}

ModelView MarkovGame::view() const {
  ModelView v;
  v.dims = dims_;
  v.initial_state = initial_state_;
  v.data = transition_.data();
  v.stride_s = static_cast<std::int64_t>(dims_.n_actions_max) *
               dims_.n_actions_min * dims_.n_states;
  v.stride_h = v.stride_s * dims_.n_states;
  v.stride_a = static_cast<std::int64_t>(dims_.n_actions_min) * dims_.n_states;
  v.stride_b = dims_.n_states;
  return v;
}

void MarkovGame::validate() const {
  dims_.validate();
  if (initial_state_ < 0 || initial_state_ >= dims_.n_states)
    throw ConfigError("game: initial_state out of range");
  std::size_t expected = static_cast<std::size_t>(dims_.horizon) *
                         dims_.n_states * dims_.n_actions_max *
                         dims_.n_actions_min * dims_.n_states;
  if (transition_.size() != expected)
    throw ConfigError("game: transition tensor has wrong size");
  check_simplex_rows(transition_,
                     dims_.horizon * dims_.n_states * dims_.n_actions_max *
                         dims_.n_actions_min,
                     dims_.n_states, "transition");
  if (reward_.dims() != dims_) throw ConfigError("game: reward dims mismatch");
  reward_.validate();
}

Trajectory sample_episode(const MarkovGame& game, const MixturePolicy& policy,
                          std::uint64_t seed) {
  const Dims& d = game.dims();
  if (policy.components.empty())
    throw ConfigError("sample_episode: empty mixture");
  for (const auto& [mu, nu] : policy.components) {
    if (mu.horizon() != d.horizon || mu.n_states() != d.n_states ||
        mu.n_actions() != d.n_actions_max || nu.horizon() != d.horizon ||
        nu.n_states() != d.n_states || nu.n_actions() != d.n_actions_min)
      throw ConfigError("sample_episode: policy dims do not match game");
  }

  Rng rng(seed);
  int c = policy.weights.size() == 1 ? 0 : rng.categorical(policy.weights);
  const MaxPolicy& mu = policy.components[c].first;
  const MinPolicy& nu = policy.components[c].second;

  Trajectory traj;
  traj.episode_seed = seed;
  traj.steps.reserve(d.horizon);
  int s = game.initial_state();
  for (int h = 0; h < d.horizon; ++h) {
    int a = rng.categorical(mu.row(h, s));
    int b = rng.categorical(nu.row(h, s));
    double r = game.reward().at(h, s, a, b);
    int s2 = rng.categorical(game.transition_row(h, s, a, b));
    traj.steps.push_back({s, a, b, r, s2});
    s = s2;
  }
  return traj;
}

namespace {

MarkovGame make_random_dense(const Dims& dims, std::uint64_t seed) {
  Rng rng(seed);
  std::size_t n_rows = static_cast<std::size_t>(dims.horizon) * dims.n_states *
                       dims.n_actions_max * dims.n_actions_min;
  std::vector<double> trans(n_rows * dims.n_states);
  for (std::size_t r = 0; r < n_rows; ++r) {
    double total = 0.0;
    for (int s2 = 0; s2 < dims.n_states; ++s2) {
      // Exponential draws normalized: a flat Dirichlet over next states.
      double e = -std::log(1.0 - rng.uniform());
      trans[r * dims.n_states + s2] = e;
      total += e;
    }
    for (int s2 = 0; s2 < dims.n_states; ++s2)
      trans[r * dims.n_states + s2] /= total;
  }
  RewardFunction reward(dims, 0.0);
  for (double& v : reward.mutable_values()) v = rng.uniform();
  return MarkovGame(dims, std::move(trans), std::move(reward), 0);
}

// Each state hosts the same cyclic-dominance stage game (rock-paper-scissors
// for 3 actions, matching pennies for 2), so the stage value is 0.5
// everywhere, the Nash policies are strictly stochastic, and the game value
// from the initial state is H/2 regardless of the transitions. Transitions
// still depend on the joint action so there is something to learn.
MarkovGame make_rps_chain(const Dims& dims) {
  if (dims.n_actions_max != dims.n_actions_min)
    throw ConfigError("rps_chain: requires A == B");
  const int n = dims.n_actions_max;
  RewardFunction reward(dims, 0.0);
  for (int h = 0; h < dims.horizon; ++h)
    for (int s = 0; s < dims.n_states; ++s)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          int diff = ((a - b) % n + n) % n;
          double r;
          if (n % 2 == 0) {
            // Matching-pennies generalization: each row and column holds
            // exactly n/2 wins, so the unique stage value is 0.5 and the
            // uniform pair is a Nash equilibrium.
            r = diff < n / 2 ? 1.0 : 0.0;
          } else {
            // Cyclic dominance (rock-paper-scissors for n = 3).
            r = diff == 0 ? 0.5 : (diff <= (n - 1) / 2 ? 1.0 : 0.0);
          }
          reward.set(h, s, a, b, r);
        }

  std::size_t n_rows = static_cast<std::size_t>(dims.horizon) * dims.n_states *
                       dims.n_actions_max * dims.n_actions_min;
  std::vector<double> trans(n_rows * dims.n_states, 0.0);
  std::size_t idx = 0;
  for (int h = 0; h < dims.horizon; ++h)
    for (int s = 0; s < dims.n_states; ++s)
      for (int a = 0; a < dims.n_actions_max; ++a)
        for (int b = 0; b < dims.n_actions_min; ++b) {
          int favored = (s + a + b) % dims.n_states;
          double base = 1.0, bonus = 2.0;
          double total = dims.n_states * base + bonus;
          for (int s2 = 0; s2 < dims.n_states; ++s2)
            trans[idx * dims.n_states + s2] =
                (base + (s2 == favored ? bonus : 0.0)) / total;
          ++idx;
        }
  return MarkovGame(dims, std::move(trans), std::move(reward), 0);
}

// Action 0 of the max-player dominates every other action by `gap` per step
// (independent of the min-player), so deterministic candidates that avoid
// action 0 are exactly gap * H below the Nash value.
MarkovGame make_hard_gap(const Dims& dims, double gap) {
  if (gap <= 0.0 || gap > 0.8)
    throw ConfigError("hard_gap: gap must lie in (0, 0.8]");
  RewardFunction reward(dims, 0.8 - gap);
  for (int h = 0; h < dims.horizon; ++h)
    for (int s = 0; s < dims.n_states; ++s)
      for (int b = 0; b < dims.n_actions_min; ++b)
        reward.set(h, s, 0, b, 0.8);

  std::size_t n_rows = static_cast<std::size_t>(dims.horizon) * dims.n_states *
                       dims.n_actions_max * dims.n_actions_min;
  std::vector<double> trans(n_rows * dims.n_states, 1.0 / dims.n_states);
  return MarkovGame(dims, std::move(trans), std::move(reward), 0);
}

}  // namespace

MarkovGame make_env(const EnvSpec& spec, std::uint64_t seed) {
  spec.dims.validate();
  if (spec.name == "random_dense") return make_random_dense(spec.dims, seed);
  if (spec.name == "rps_chain") return make_rps_chain(spec.dims);
  if (spec.name == "hard_gap") return make_hard_gap(spec.dims, spec.gap);
  throw ConfigError("make_env: unknown environment spec '" + spec.name + "'");
}

}  // namespace batchmg
