#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace batchmg {

// Per-run record: one row per episode plus batch boundaries, per-stage
// survivor counts, and run metadata. Written as CSV (rows) and JSON
// (summary). The CSV is deterministic for a fixed config and seed; wall
// clock lives only in the summary.
class RunLedger {
 public:
  struct Row {
    std::int64_t episode = 0;
    int stage = 0;
    int batch_id = 0;
    double inst_regret = 0.0;
    double cum_regret = 0.0;
    int survivors = 0;
  };

  void begin_batch(int stage, int survivors);
  void record_episode(double inst_regret);
  void record_stage_survivors(int stage, int survivors);

  std::int64_t episodes() const { return static_cast<std::int64_t>(rows_.size()); }
  int batch_count() const { return static_cast<int>(batch_starts_.size()); }
  double total_regret() const { return cum_regret_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<std::int64_t>& batch_starts() const { return batch_starts_; }
  const std::vector<std::pair<int, int>>& stage_survivors() const {
    return stage_survivors_;
  }

  int n_stages = 0;
  double final_gap = 0.0;
  std::uint64_t seed = 0;
  double wall_clock_s = 0.0;
  bool flagged = false;  // set when a run hit a documented fallback path

  // First line is "# config_hash=<hex> seed=<n>", then a header row.
  std::string to_csv(const std::string& config_hash) const;
  void write_csv(const std::string& path, const std::string& config_hash) const;

 private:
  std::vector<Row> rows_;
  std::vector<std::int64_t> batch_starts_;
  std::vector<std::pair<int, int>> stage_survivors_;
  double cum_regret_ = 0.0;
  int current_stage_ = 0;
  int current_survivors_ = 0;
};

}  // namespace batchmg
