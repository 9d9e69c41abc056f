#pragma once

#include <map>
#include <vector>

#include "batchmg/game.hpp"
#include "batchmg/ledger.hpp"
#include "batchmg/solve.hpp"

namespace batchmg {

// Exact per-policy gap V*(s1) - V^{mu,br}(s1) on the true game, memoized by
// the max-policy's distribution table. The deployed min-policy does not
// enter the max-player's regret.
class RegretOracle {
 public:
  RegretOracle(const MarkovGame& game, const RewardFunction& reward);

  double nash_value() const { return nash_value_; }
  double policy_gap(const MaxPolicy& max_policy) const;
  double mixture_gap(const MixturePolicy& policy) const;

 private:
  const MarkovGame* game_;
  RewardFunction reward_;
  double nash_value_ = 0.0;
  mutable std::map<std::vector<double>, double> gap_cache_;
};

// Single point through which algorithms interact with the environment: each
// deploy() is one batch (one pre-committed general policy run for a fixed
// number of episodes), recorded in the ledger together with the exact
// per-episode regret of the deployed policy.
class GameSampler {
 public:
  GameSampler(const MarkovGame& game, const RegretOracle& oracle,
              RunLedger& ledger, std::uint64_t run_seed);

  std::vector<Trajectory> deploy(const MixturePolicy& policy,
                                 std::int64_t n_episodes, int stage,
                                 int survivors);

  std::int64_t episodes_run() const { return episode_count_; }
  const MarkovGame& game() const { return *game_; }

 private:
  const MarkovGame* game_;
  const RegretOracle* oracle_;
  RunLedger* ledger_;
  std::uint64_t run_seed_;
  std::int64_t episode_count_ = 0;
};

}  // namespace batchmg
