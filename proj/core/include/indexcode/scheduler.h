#pragma once

#include <cstdint>
#include <deque>
#include <random>
#include <vector>

#include "indexcode/code_actions.h"

namespace indexcode {

// Bernoulli(lambda_m) arrivals per type per slot. Each type draws from its
// own generator seeded by (seed, type index), so adding types leaves the
// earlier streams untouched.
class ArrivalStream {
 public:
  ArrivalStream(std::vector<double> rates, uint64_t seed);

  // Arrivals per type over the next `slots` slots.
  std::vector<int> draw(int slots);
  const std::vector<double>& rates() const { return rates_; }

 private:
  std::vector<double> rates_;
  std::vector<std::mt19937_64> streams_;
};

// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct QueueState {
  long long frame = 0;  // r
  long long slot = 0;   // t[r]
  std::vector<long long> backlog;
  // Handles of queued packets, oldest first; sizes equal backlog.
  std::vector<std::deque<uint64_t>> pending;
  uint64_t next_handle = 0;

  static QueueState empty(int num_types);
  // 0.5 * sum Q_m^2
  double lyapunov() const;
};

struct FrameRecord {
  int action_id = -1;
  int frame_len = 0;
  std::vector<int> arrivals;
  std::vector<int> served;
  std::vector<int> wasted;
  // L[r] at the start of the frame.
  double lyapunov = 0.0;
  // Handles delivered this frame, per type.
  std::vector<std::vector<uint64_t>> delivered;
};

// sum_m Q_m mu_m - T * sum_m Q_m lambda_m
double mw1_weight(const CodingAction& action, const std::vector<long long>& backlog,
                  const std::vector<double>& rates);

// Maximizes mw1_weight; templates are bound first. Ties go to the smallest
// action id.
CodingAction mw1_select(const std::vector<long long>& backlog,
                        const std::vector<double>& rates, const ActionSet& actions);

// Maximizes sum_m Q_m mu_m / T, compared exactly; smallest id on ties.
CodingAction mw2_select(const std::vector<long long>& backlog,
                        const ActionSet& actions);

// Longest queue first over the direct actions; smallest id on ties.
CodingAction uncoded_select(const std::vector<long long>& backlog,
                            const ActionSet& actions);

// Runs one frame: serves min(Q_m, mu_m) head-of-line packets (the rest of
// the clearance is null packets), then adds the frame's T arrivals. Packets
// arriving during the frame wait for the next one.
FrameRecord step_frame(QueueState& state, const CodingAction& action,
                       ArrivalStream& arrivals);

}  // namespace indexcode
