#include "batchmg/version_space.hpp"

#include <string>

#include "batchmg/errors.hpp"

namespace batchmg {

int VersionSpace::n_alive() const {
  int n = 0;
  for (char a : alive_) n += a != 0;
  return n;
}

std::vector<int> VersionSpace::alive_indices() const {
  std::vector<int> idx;
  for (int i = 0; i < size(); ++i)
    if (alive_[i]) idx.push_back(i);
  return idx;
}

int VersionSpace::add(MaxPolicy policy, Provenance provenance) {
  policy.validate();
  for (int i = 0; i < size(); ++i)
    if (candidates_[i] == policy) return i;
  candidates_.push_back(std::move(policy));
  alive_.push_back(1);
  provenance_.push_back(provenance);
  return size() - 1;
}

namespace {

// All length-n compositions of `denom` into nonnegative parts, as simplex
// points with denominator `denom`. Largest first coordinate comes first.
void enumerate_distributions(int n, int denom,
                             std::vector<std::vector<double>>& out) {
  out.clear();
  std::vector<int> cur(n, 0);
  auto rec = [&](auto&& self, int idx, int remaining) -> void {
    if (idx == n - 1) {
      cur[idx] = remaining;
      std::vector<double> dist(n);
      for (int i = 0; i < n; ++i) dist[i] = static_cast<double>(cur[i]) / denom;
      out.push_back(std::move(dist));
      return;
    }
    for (int take = remaining; take >= 0; --take) {
      cur[idx] = take;
      self(self, idx + 1, remaining - take);
    }
  };
  rec(rec, 0, denom);
}

}  // namespace

VersionSpace init_version_space(const Dims& dims, int grid_resolution,
                                const std::vector<MaxPolicy>& extras,
                                int max_candidates) {
  dims.validate();
  if (grid_resolution < 1)
    throw ConfigError("version space: grid_resolution must be >= 1");

  std::vector<std::vector<double>> options;
  enumerate_distributions(dims.n_actions_max, grid_resolution, options);

  const int slots = dims.horizon * dims.n_states;
  double log_count = slots * std::log(static_cast<double>(options.size()));
  if (log_count > std::log(static_cast<double>(max_candidates)))
    throw ConfigError(
        "version space: candidate count " + std::to_string(options.size()) +
        "^" + std::to_string(slots) + " exceeds the cap of " +
        std::to_string(max_candidates) + "; reduce dims or grid_resolution");

  VersionSpace vs;
  std::vector<int> choice(slots, 0);
  while (true) {
    MaxPolicy p(dims.horizon, dims.n_states, dims.n_actions_max);
    for (int slot = 0; slot < slots; ++slot) {
      int h = slot / dims.n_states;
      int s = slot % dims.n_states;
      for (int a = 0; a < dims.n_actions_max; ++a)
        p.set(h, s, a, options[choice[slot]][a]);
    }
    vs.add(std::move(p), VersionSpace::Provenance::kGrid);

    int slot = slots - 1;
    while (slot >= 0) {
      if (++choice[slot] < static_cast<int>(options.size())) break;
      choice[slot] = 0;
      --slot;
    }
    if (slot < 0) break;
  }

  for (const MaxPolicy& extra : extras)
    vs.add(extra, VersionSpace::Provenance::kUser);
  return vs;
}

}  // namespace batchmg
