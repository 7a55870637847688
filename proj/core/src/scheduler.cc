#include "indexcode/scheduler.h"

#include <algorithm>

#include "indexcode/errors.h"

namespace indexcode {

ArrivalStream::ArrivalStream(std::vector<double> rates, uint64_t seed)
    : rates_(std::move(rates)) {
  for (size_t m = 0; m < rates_.size(); ++m) {
    if (!(rates_[m] >= 0.0 && rates_[m] <= 1.0)) {
      throw ConfigError("arrival rates must lie in [0, 1]");
    }
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(m)};
    streams_.emplace_back(seq);
  }
}

std::vector<int> ArrivalStream::draw(int slots) {
  std::vector<int> out(rates_.size(), 0);
  for (size_t m = 0; m < rates_.size(); ++m) {
    for (int s = 0; s < slots; ++s) out[m] += unit_draw(streams_[m]) < rates_[m];
  }
  return out;
}

QueueState QueueState::empty(int num_types) {
  QueueState s;
  s.backlog.assign(num_types, 0);
  s.pending.resize(num_types);
  return s;
}

double QueueState::lyapunov() const {
  double l = 0.0;
  for (long long q : backlog) l += 0.5 * static_cast<double>(q) * static_cast<double>(q);
  return l;
}

double mw1_weight(const CodingAction& action, const std::vector<long long>& backlog,
                  const std::vector<double>& rates) {
  double served = 0.0, offered = 0.0;
  for (size_t m = 0; m < backlog.size(); ++m) {
    const double q = static_cast<double>(backlog[m]);
    served += q * action.clearance[m];
    offered += q * rates[m];
  }
  return served - action.frame_len * offered;
}

CodingAction mw1_select(const std::vector<long long>& backlog,
                        const std::vector<double>& rates, const ActionSet& actions) {
  if (static_cast<int>(rates.size()) != actions.num_types) {
    throw ShapeError("rate vector length must equal the number of types");
  }
  CodingAction best;
  double best_weight = 0.0;
  for (const CodingAction& a : actions.actions) {
    CodingAction bound = bind_template(a, actions, backlog);
    const double w = mw1_weight(bound, backlog, rates);
    if (best.id < 0 || w > best_weight) {
      best = std::move(bound);
      best_weight = w;
    }
  }
  return best;
}

CodingAction mw2_select(const std::vector<long long>& backlog,
                        const ActionSet& actions) {
  CodingAction best;
  long long best_num = 0, best_den = 1;
  for (const CodingAction& a : actions.actions) {
    CodingAction bound = bind_template(a, actions, backlog);
    long long num = 0;
    for (size_t m = 0; m < backlog.size(); ++m) num += backlog[m] * bound.clearance[m];
    const long long den = bound.frame_len;
    if (best.id < 0 || num * best_den > best_num * den) {
      best = std::move(bound);
      best_num = num;
      best_den = den;
    }
  }
  return best;
}

CodingAction uncoded_select(const std::vector<long long>& backlog,
                            const ActionSet& actions) {
  const CodingAction* best = nullptr;
  long long best_q = -1;
  for (const CodingAction& a : actions.actions) {
    if (a.kind != ActionKind::kDirect) continue;
    const int type = a.cleared.front().type;
    if (backlog[type] > best_q) {
      best = &a;
      best_q = backlog[type];
    }
  }
  if (!best) throw ConfigError("uncoded scheduling needs direct actions");
  return *best;
}

FrameRecord step_frame(QueueState& state, const CodingAction& action,
                       ArrivalStream& arrivals) {
  if (action.is_template) {
    throw TemplateActionError("bind a template action before running it");
  }
  const size_t m_types = state.backlog.size();
  FrameRecord rec;
  rec.action_id = action.id;
  rec.frame_len = action.frame_len;
  rec.lyapunov = state.lyapunov();
  rec.served.assign(m_types, 0);
  rec.wasted.assign(m_types, 0);
  rec.delivered.resize(m_types);
  for (size_t m = 0; m < m_types; ++m) {
    const long long mu = action.clearance[m];
    const long long served = std::min(state.backlog[m], mu);
    rec.served[m] = static_cast<int>(served);
    rec.wasted[m] = static_cast<int>(mu - served);
    auto& queue = state.pending[m];
    rec.delivered[m].assign(queue.begin(), queue.begin() + served);
    queue.erase(queue.begin(), queue.begin() + served);
    state.backlog[m] -= served;
  }
  rec.arrivals = arrivals.draw(action.frame_len);
  for (size_t m = 0; m < m_types; ++m) {
    for (int k = 0; k < rec.arrivals[m]; ++k) state.pending[m].push_back(state.next_handle++);
    state.backlog[m] += rec.arrivals[m];
  }
  state.slot += action.frame_len;
  ++state.frame;
  return rec;
}

}  // namespace indexcode
