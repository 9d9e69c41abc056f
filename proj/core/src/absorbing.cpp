#include "batchmg/absorbing.hpp"

#include <cmath>
#include <limits>

#include "batchmg/errors.hpp"
#include "json.hpp"

namespace batchmg {

InfrequentSet::InfrequentSet(const Dims& dims) : dims_(dims) {
  dims.validate();
  mask_.assign(static_cast<std::size_t>(dims.horizon) * dims.n_states *
                   dims.n_actions_max * dims.n_actions_min * dims.n_states,
               0);
}

std::int64_t InfrequentSet::index(int h, int s, int a, int b, int s2) const {
  return (((static_cast<std::int64_t>(h) * dims_.n_states + s) *
               dims_.n_actions_max +
           a) *
              dims_.n_actions_min +
          b) *
             dims_.n_states +
         s2;
}

void InfrequentSet::insert(int h, int s, int a, int b, int s2) {
  if (h < 0 || h >= dims_.horizon || s < 0 || s >= dims_.n_states || a < 0 ||
      a >= dims_.n_actions_max || b < 0 || b >= dims_.n_actions_min ||
      s2 < 0 || s2 >= dims_.n_states)
    throw ConfigError("infrequent set: tuple index out of range");
  std::uint8_t& cell = mask_[index(h, s, a, b, s2)];
  if (!cell) {
    cell = 1;
    ++count_;
  }
}

bool InfrequentSet::row_fully_infrequent(int h, int s, int a, int b) const {
  for (int s2 = 0; s2 < dims_.n_states; ++s2)
    if (!contains(h, s, a, b, s2)) return false;
  return true;
}

std::vector<std::array<int, 5>> InfrequentSet::members() const {
  std::vector<std::array<int, 5>> out;
  out.reserve(count_);
  for (int h = 0; h < dims_.horizon; ++h)
    for (int s = 0; s < dims_.n_states; ++s)
      for (int a = 0; a < dims_.n_actions_max; ++a)
        for (int b = 0; b < dims_.n_actions_min; ++b)
          for (int s2 = 0; s2 < dims_.n_states; ++s2)
            if (contains(h, s, a, b, s2)) out.push_back({h, s, a, b, s2});
  return out;
}

CountTable::CountTable(const Dims& dims) : dims_(dims) {
  dims.validate();
  std::size_t rows = static_cast<std::size_t>(dims.horizon) * dims.n_states *
                     dims.n_actions_max * dims.n_actions_min;
  n4_.assign(rows * dims.n_states, 0);
  n3_.assign(rows, 0);
}

void CountTable::add_trajectory(const Trajectory& traj) {
  if (static_cast<int>(traj.steps.size()) != dims_.horizon)
    throw DataError("count table: trajectory length != horizon");
  for (int h = 0; h < dims_.horizon; ++h) {
    const TrajectoryStep& st = traj.steps[h];
    add(h, st.state, st.action_a, st.action_b, st.next_state);
  }
}

void CountTable::add(int h, int s, int a, int b, int s2, std::int64_t n) {
  if (n < 0) throw DataError("count table: negative count");
  std::int64_t row = ((static_cast<std::int64_t>(h) * dims_.n_states + s) *
                          dims_.n_actions_max +
                      a) *
                         dims_.n_actions_min +
                     b;
  n4_[row * dims_.n_states + s2] += n;
  n3_[row] += n;
}

std::int64_t CountTable::tuple_count(int h, int s, int a, int b,
                                     int s2) const {
  std::int64_t row = ((static_cast<std::int64_t>(h) * dims_.n_states + s) *
                          dims_.n_actions_max +
                      a) *
                         dims_.n_actions_min +
                     b;
  return n4_[row * dims_.n_states + s2];
}

std::int64_t CountTable::row_count(int h, int s, int a, int b) const {
  return n3_[((static_cast<std::int64_t>(h) * dims_.n_states + s) *
                  dims_.n_actions_max +
              a) *
                 dims_.n_actions_min +
             b];
}

std::int64_t EstimatedModel::index(int h, int s, int a, int b, int s2) const {
  const int se = dims_.n_states + 1;
  return (((static_cast<std::int64_t>(h) * se + s) * dims_.n_actions_max + a) *
              dims_.n_actions_min +
          b) *
             se +
         s2;
}

void EstimatedModel::fix_absorbing_rows() {
  const int sink = dims_.n_states;
  for (int h = 0; h < dims_.horizon; ++h)
    for (int a = 0; a < dims_.n_actions_max; ++a)
      for (int b = 0; b < dims_.n_actions_min; ++b) {
        for (int s2 = 0; s2 <= sink; ++s2)
          transition_[index(h, sink, a, b, s2)] = 0.0;
        transition_[index(h, sink, a, b, sink)] = 1.0;
      }
}

EstimatedModel EstimatedModel::uniform_init(const Dims& dims,
                                            int initial_state) {
  dims.validate();
  EstimatedModel m;
  m.dims_ = dims;
  m.initial_state_ = initial_state;
  m.infrequent_ = InfrequentSet(dims);
  const int se = dims.n_states + 1;
  m.transition_.assign(static_cast<std::size_t>(dims.horizon) * se *
                           dims.n_actions_max * dims.n_actions_min * se,
                       1.0 / se);
  m.fix_absorbing_rows();
  return m;
}

ModelView EstimatedModel::view() const {
  const int se = dims_.n_states + 1;
  ModelView v;
  v.dims = dims_;
  v.initial_state = initial_state_;
  v.data = transition_.data();
  v.stride_s =
      static_cast<std::int64_t>(dims_.n_actions_max) * dims_.n_actions_min * se;
  v.stride_h = v.stride_s * se;
  v.stride_a = static_cast<std::int64_t>(dims_.n_actions_min) * se;
  v.stride_b = se;
  return v;
}

void EstimatedModel::validate() const {
  const int sink = dims_.n_states;
  for (int h = 0; h < dims_.horizon; ++h)
    for (int s = 0; s <= sink; ++s)
      for (int a = 0; a < dims_.n_actions_max; ++a)
        for (int b = 0; b < dims_.n_actions_min; ++b) {
          double total = 0.0;
          for (int s2 = 0; s2 <= sink; ++s2) {
            double p = transition_[index(h, s, a, b, s2)];
            if (p < 0.0 || !std::isfinite(p))
              throw ContractError("estimated model: bad probability entry");
            total += p;
          }
          if (std::abs(total - 1.0) > 1e-9)
            throw ContractError("estimated model: row does not sum to 1");
          if (s == sink && transition_[index(h, s, a, b, sink)] != 1.0)
            throw ContractError("estimated model: absorbing row not fixed");
          if (s < sink)
            for (int s2 = 0; s2 < sink; ++s2)
              if (infrequent_.contains(h, s, a, b, s2) &&
                  transition_[index(h, s, a, b, s2)] != 0.0)
                throw ContractError(
                    "estimated model: infrequent entry not zeroed");
        }
}

EstimatedModel build_absorbing(const MarkovGame& game,
                               const InfrequentSet& infrequent) {
  const Dims& d = game.dims();
  if (infrequent.dims() != d)
    throw ConfigError("build_absorbing: infrequent set dims mismatch");
  EstimatedModel m = EstimatedModel::uniform_init(d, game.initial_state());
  m.infrequent_ = infrequent;
  const int sink = d.n_states;
  for (int h = 0; h < d.horizon; ++h)
    for (int s = 0; s < d.n_states; ++s)
      for (int a = 0; a < d.n_actions_max; ++a)
        for (int b = 0; b < d.n_actions_min; ++b) {
          double kept = 0.0;
          for (int s2 = 0; s2 < d.n_states; ++s2) {
            double p = infrequent.contains(h, s, a, b, s2)
                           ? 0.0
                           : game.transition(h, s, a, b, s2);
            m.transition_[m.index(h, s, a, b, s2)] = p;
            kept += p;
          }
          m.transition_[m.index(h, s, a, b, sink)] = 1.0 - kept;
        }
  return m;
}

EstimatedModel estimate_transition(const CountTable& counts,
                                   const InfrequentSet& infrequent, int layer,
                                   const EstimatedModel& model) {
  const Dims& d = model.dims();
  if (counts.dims() != d || infrequent.dims() != d)
    throw ConfigError("estimate_transition: dims mismatch");
  if (layer < 0 || layer >= d.horizon)
    throw ConfigError("estimate_transition: layer out of range");

  EstimatedModel out = model;
  out.infrequent_ = infrequent;
  const int sink = d.n_states;
  for (int s = 0; s < d.n_states; ++s)
    for (int a = 0; a < d.n_actions_max; ++a)
      for (int b = 0; b < d.n_actions_min; ++b) {
        std::int64_t n_row = counts.row_count(layer, s, a, b);
        if (n_row < 0) throw DataError("estimate_transition: negative count");
        double kept = 0.0;
        for (int s2 = 0; s2 < d.n_states; ++s2) {
          double p = 0.0;
          if (!infrequent.contains(layer, s, a, b, s2) && n_row > 0)
            p = static_cast<double>(counts.tuple_count(layer, s, a, b, s2)) /
                static_cast<double>(n_row);
          out.transition_[out.index(layer, s, a, b, s2)] = p;
          kept += p;
        }
        // Unvisited rows carry no information; all mass goes to the sink.
        out.transition_[out.index(layer, s, a, b, sink)] =
            n_row > 0 ? 1.0 - kept : 1.0;
      }
  return out;
}

AccuracyReport check_multiplicative_accuracy(const EstimatedModel& reference,
                                             const EstimatedModel& other,
                                             double theta) {
  if (reference.dims() != other.dims())
    throw ContractError("multiplicative accuracy: dims mismatch");
  if (!(reference.infrequent() == other.infrequent()))
    throw ContractError("multiplicative accuracy: infrequent sets differ");

  const Dims& d = reference.dims();
  AccuracyReport report;
  constexpr double kSlack = 1e-12;
  for (int h = 0; h < d.horizon; ++h)
    for (int s = 0; s < d.n_states; ++s)
      for (int a = 0; a < d.n_actions_max; ++a)
        for (int b = 0; b < d.n_actions_min; ++b)
          for (int s2 = 0; s2 < d.n_states; ++s2) {
            double p1 = reference.prob(h, s, a, b, s2);
            double p2 = other.prob(h, s, a, b, s2);
            bool within = p2 >= (1.0 - theta) * p1 - kSlack &&
                          p2 <= (1.0 + theta) * p1 + kSlack;
            double ratio;
            if (p1 == 0.0 && p2 == 0.0)
              ratio = 1.0;
            else if (p1 == 0.0 || p2 == 0.0)
              ratio = std::numeric_limits<double>::infinity();
            else
              ratio = p2 > p1 ? p2 / p1 : p1 / p2;
            report.worst_ratio = std::max(report.worst_ratio, ratio);
            if (!within) {
              report.ok = false;
              report.violations.push_back({h, s, a, b, s2, p1, p2});
            }
          }
  return report;
}

std::string EstimatedModel::to_json() const {
  nlohmann::json j;
  j["horizon"] = dims_.horizon;
  j["n_states"] = dims_.n_states;
  j["n_actions_max"] = dims_.n_actions_max;
  j["n_actions_min"] = dims_.n_actions_min;
  j["initial_state"] = initial_state_;
  j["transition"] = transition_;
  nlohmann::json tuples = nlohmann::json::array();
  for (const auto& t : infrequent_.members())
    tuples.push_back({t[0], t[1], t[2], t[3], t[4]});
  j["infrequent"] = std::move(tuples);
  return j.dump();
}

EstimatedModel EstimatedModel::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Dims d{j.at("horizon").get<int>(), j.at("n_states").get<int>(),
         j.at("n_actions_max").get<int>(), j.at("n_actions_min").get<int>()};
  EstimatedModel m = uniform_init(d, j.at("initial_state").get<int>());
  m.transition_ = j.at("transition").get<std::vector<double>>();
  const int se = d.n_states + 1;
  std::size_t expected = static_cast<std::size_t>(d.horizon) * se *
                         d.n_actions_max * d.n_actions_min * se;
  if (m.transition_.size() != expected)
    throw ConfigError("model snapshot: transition size mismatch");
  for (const auto& t : j.at("infrequent"))
    m.infrequent_.insert(t.at(0).get<int>(), t.at(1).get<int>(),
                         t.at(2).get<int>(), t.at(3).get<int>(),
                         t.at(4).get<int>());
  m.validate();
  return m;
}

}  // namespace batchmg
