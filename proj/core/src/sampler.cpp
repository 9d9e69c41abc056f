#include "batchmg/sampler.hpp"

#include "batchmg/errors.hpp"

namespace batchmg {

RegretOracle::RegretOracle(const MarkovGame& game, const RewardFunction& reward)
    : game_(&game), reward_(reward) {
  nash_value_ = nash_value_iteration(game.view(), reward_).initial_value(game.view());
}

double RegretOracle::policy_gap(const MaxPolicy& max_policy) const {
  auto it = gap_cache_.find(max_policy.flat());
  if (it != gap_cache_.end()) return it->second;
  double gap =
      nash_value_ -
      best_response_value(game_->view(), reward_, max_policy).value;
  gap_cache_.emplace(max_policy.flat(), gap);
  return gap;
}

double RegretOracle::mixture_gap(const MixturePolicy& policy) const {
  double gap = 0.0;
  for (std::size_t i = 0; i < policy.components.size(); ++i)
    gap += policy.weights[i] * policy_gap(policy.components[i].first);
  return gap;
}

GameSampler::GameSampler(const MarkovGame& game, const RegretOracle& oracle,
                         RunLedger& ledger, std::uint64_t run_seed)
    : game_(&game), oracle_(&oracle), ledger_(&ledger), run_seed_(run_seed) {}

std::vector<Trajectory> GameSampler::deploy(const MixturePolicy& policy,
                                            std::int64_t n_episodes, int stage,
                                            int survivors) {
  if (n_episodes <= 0)
    throw ContractError("sampler: deployment must run >= 1 episode");
  policy.validate();
  double gap = oracle_->mixture_gap(policy);
  ledger_->begin_batch(stage, survivors);
  std::vector<Trajectory> out;
  out.reserve(static_cast<std::size_t>(n_episodes));
  for (std::int64_t e = 0; e < n_episodes; ++e) {
    std::uint64_t seed =
        derive_seed(run_seed_, static_cast<std::uint64_t>(episode_count_));
    out.push_back(sample_episode(*game_, policy, seed));
    ledger_->record_episode(gap);
    ++episode_count_;
  }
  return out;
}

}  // namespace batchmg
