#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "batchmg/game.hpp"

namespace batchmg {

// Set of (h, s, a, b, s') transition tuples whose observed visit counts fell
// below the rarity threshold. Grows monotonically; membership is O(1).
class InfrequentSet {
 public:
  InfrequentSet() = default;
  explicit InfrequentSet(const Dims& dims);

  bool contains(int h, int s, int a, int b, int s2) const {
    return mask_[index(h, s, a, b, s2)] != 0;
  }
  void insert(int h, int s, int a, int b, int s2);
  std::size_t size() const { return count_; }
  const Dims& dims() const { return dims_; }

  // True when every successor of the row is infrequent.
  bool row_fully_infrequent(int h, int s, int a, int b) const;

  std::vector<std::array<int, 5>> members() const;
  bool operator==(const InfrequentSet&) const = default;

 private:
  std::int64_t index(int h, int s, int a, int b, int s2) const;
  Dims dims_;
  std::vector<std::uint8_t> mask_;
  std::size_t count_ = 0;
};

// Visit counts per transition tuple and per state-action row.
class CountTable {
 public:
  CountTable() = default;
  explicit CountTable(const Dims& dims);

  void add_trajectory(const Trajectory& traj);
  void add(int h, int s, int a, int b, int s2, std::int64_t n = 1);

  std::int64_t tuple_count(int h, int s, int a, int b, int s2) const;
  std::int64_t row_count(int h, int s, int a, int b) const;
  const Dims& dims() const { return dims_; }

 private:
  Dims dims_;
  std::vector<std::int64_t> n4_;  // [H][S][A][B][S]
  std::vector<std::int64_t> n3_;  // [H][S][A][B]
};

// A transition model over the state space extended with one absorbing state.
// Rows at the absorbing state are point-mass on itself; entries listed in
// the infrequent set are zero, with their mass routed to the absorbing
// column. Immutable from the outside; estimation returns a new model.
class EstimatedModel {
 public:
  EstimatedModel() = default;

  // Uniform over the extended state space (the "know nothing" initial model).
  static EstimatedModel uniform_init(const Dims& dims, int initial_state);

  const Dims& dims() const { return dims_; }
  int initial_state() const { return initial_state_; }
  const InfrequentSet& infrequent() const { return infrequent_; }

  // Probability of reaching core state s2 (s2 < S) or, with s2 == S, the
  // absorbing state.
  double prob(int h, int s, int a, int b, int s2) const {
    return transition_[index(h, s, a, b, s2)];
  }

  ModelView view() const;
  void validate() const;

  std::string to_json() const;
  static EstimatedModel from_json(const std::string& text);

  friend EstimatedModel build_absorbing(const MarkovGame& game,
                                        const InfrequentSet& infrequent);
  friend EstimatedModel estimate_transition(const CountTable& counts,
                                            const InfrequentSet& infrequent,
                                            int layer,
                                            const EstimatedModel& model);

 private:
  std::int64_t index(int h, int s, int a, int b, int s2) const;
  void fix_absorbing_rows();

  Dims dims_;
  int initial_state_ = 0;
  std::vector<double> transition_;  // [H][S+1][A][B][S+1]
  InfrequentSet infrequent_;
};

// The absorbing counterpart of a known game: copies the true transitions,
// zeroes the infrequent tuples, and routes the removed mass to the absorbing
// state. Requires the true model, so it serves as a test oracle.
EstimatedModel build_absorbing(const MarkovGame& game,
                               const InfrequentSet& infrequent);

// Replaces layer `layer` of the model with the empirical estimate from the
// counts: infrequent entries become 0, the rest become n4/n3, the absorbing
// column takes the residual. Rows with zero visits become point-mass on the
// absorbing state. Other layers are copied unchanged.
EstimatedModel estimate_transition(const CountTable& counts,
                                   const InfrequentSet& infrequent, int layer,
                                   const EstimatedModel& model);

struct AccuracyViolation {
  int h, s, a, b, s2;
  double p_ref, p_other;
};

struct AccuracyReport {
  bool ok = true;
  double worst_ratio = 1.0;
  std::vector<AccuracyViolation> violations;
};

// Entrywise multiplicative sandwich between two absorbing models over core
// successor states: (1-theta) p1 <= p2 <= (1+theta) p1. The absorbing column
// is exempt. Both models must carry the same infrequent set.
AccuracyReport check_multiplicative_accuracy(const EstimatedModel& reference,
                                             const EstimatedModel& other,
                                             double theta);

}  // namespace batchmg
