#pragma once

#include <vector>

#include "batchmg/game.hpp"

namespace batchmg {

// Explicit finite candidate set standing in for the set of all max-player
// Markov policies. Candidates are only ever switched off; injected
// candidates append. The min-player side stays implicit (exact best-response
// dynamic programming), so only max-policies live here.
class VersionSpace {
 public:
  enum class Provenance { kGrid, kEmpiricalNash, kUser };

  VersionSpace() = default;

  int size() const { return static_cast<int>(candidates_.size()); }
  int n_alive() const;
  bool alive(int i) const { return alive_[i] != 0; }
  const MaxPolicy& candidate(int i) const { return candidates_[i]; }
  Provenance provenance(int i) const { return provenance_[i]; }
  std::vector<int> alive_indices() const;

  void kill(int i) { alive_[i] = 0; }
  // Returns the index; a duplicate of an existing candidate is not re-added.
  int add(MaxPolicy policy, Provenance provenance);

 private:
  std::vector<MaxPolicy> candidates_;
  std::vector<char> alive_;
  std::vector<Provenance> provenance_;
};

// All Markov max-policies whose per-(h, s) action distributions lie on the
// simplex grid with the given denominator, plus the extras, deduplicated.
VersionSpace init_version_space(const Dims& dims, int grid_resolution,
                                const std::vector<MaxPolicy>& extras,
                                int max_candidates = 200000);

}  // namespace batchmg
