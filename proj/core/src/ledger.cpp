#include "batchmg/ledger.hpp"

#include <cstdio>
#include <fstream>

#include "batchmg/errors.hpp"

namespace batchmg {

void RunLedger::begin_batch(int stage, int survivors) {
  batch_starts_.push_back(episodes());
  current_stage_ = stage;
  current_survivors_ = survivors;
}

void RunLedger::record_episode(double inst_regret) {
  cum_regret_ += inst_regret;
  rows_.push_back({episodes(), current_stage_,
                   static_cast<int>(batch_starts_.size()) - 1, inst_regret,
                   cum_regret_, current_survivors_});
}

void RunLedger::record_stage_survivors(int stage, int survivors) {
  stage_survivors_.emplace_back(stage, survivors);
}

std::string RunLedger::to_csv(const std::string& config_hash) const {
  std::string out;
  out.reserve(rows_.size() * 48 + 128);
  char buf[192];
  std::snprintf(buf, sizeof(buf), "# config_hash=%s seed=%llu\n",
                config_hash.c_str(), static_cast<unsigned long long>(seed));
  out += buf;
  out += "episode,stage,batch_id,inst_regret,cum_regret,survivors\n";
  for (const Row& r : rows_) {
    std::snprintf(buf, sizeof(buf), "%lld,%d,%d,%.17g,%.17g,%d\n",
                  static_cast<long long>(r.episode), r.stage, r.batch_id,
                  r.inst_regret, r.cum_regret, r.survivors);
    out += buf;
  }
  return out;
}

void RunLedger::write_csv(const std::string& path,
                          const std::string& config_hash) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("ledger: cannot open '" + path + "' for writing");
  f << to_csv(config_hash);
}

}  // namespace batchmg
