#include "indexcode/simulation.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include "indexcode/errors.h"
#include "indexcode/scheduler.h"

namespace indexcode {
namespace {

// Deterministic payload for a packet handle.
PacketPayload payload_for(uint64_t handle, uint64_t seed, size_t bits) {
  std::seed_seq seq{static_cast<uint32_t>(handle), static_cast<uint32_t>(handle >> 32),
                    static_cast<uint32_t>(seed), 0x9a71u};
  std::mt19937_64 rng(seq);
  return PacketPayload::random(bits, rng);
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

Algorithm parse_algorithm(const std::string& name) {
  static const std::map<std::string, Algorithm> kNames = {
      {"mw1", Algorithm::kMw1},
      {"mw2", Algorithm::kMw2},
      {"stationary", Algorithm::kStationary},
      {"uncoded", Algorithm::kUncoded}};
  auto it = kNames.find(name);
  if (it == kNames.end()) throw ConfigError("unknown algorithm '" + name + "'");
  return it->second;
}

std::string algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kMw1:
      return "mw1";
    case Algorithm::kMw2:
      return "mw2";
    case Algorithm::kStationary:
      return "stationary";
    case Algorithm::kUncoded:
      return "uncoded";
  }
  return "unknown";
}

void SimConfig::validate() const {
  if (frames < 1) throw ConfigError("frame count must be at least 1");
  if (static_cast<int>(rates.size()) != spec.num_types()) {
    throw ConfigError("rate vector length must equal the number of types");
  }
  if (actions.num_types != spec.num_types() || actions.actions.empty()) {
    throw ConfigError("action set does not match the traffic spec");
  }
  if (algorithm == Algorithm::kStationary) {
    if (probabilities.empty()) throw ConfigError("stationary policy needs probabilities");
    double total = 0.0;
    for (const auto& [id, p] : probabilities) {
      if (id < 0 || id >= actions.size()) throw UnknownIdError("stationary policy action id");
      if (actions.at(id).is_template) {
        throw TemplateActionError("stationary policy needs concrete actions");
      }
      if (p < 0.0) throw ConfigError("negative probability");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-6) throw ConfigError("probabilities must sum to 1");
  }
  if (payload_bits < 1) throw ConfigError("payload length must be positive");
  if (trace_every < 1) throw ConfigError("trace period must be positive");
}

std::string stability_verdict(const SimStats& stats) {
  if (stats.total_qr_ratio < kStableRatio) return "stable";
  if (stats.total_qr_ratio > kUnstableRatio) return "unstable";
  return "inconclusive";
}

SimStats run_simulation(const SimConfig& config) {
  config.validate();
  const int m_types = config.spec.num_types();
  ArrivalStream arrivals(config.rates, config.seed);
  QueueState state = QueueState::empty(m_types);

  std::seed_seq policy_seq{static_cast<uint32_t>(config.seed),
                           static_cast<uint32_t>(config.seed >> 32), 0x57a7u};
  std::mt19937_64 policy_rng(policy_seq);
  std::vector<double> cumulative;
  for (const auto& [id, p] : config.probabilities) {
    cumulative.push_back((cumulative.empty() ? 0.0 : cumulative.back()) + p);
  }

  SimStats st;
  st.avg_backlog.assign(m_types, 0.0);
  st.arrivals.assign(m_types, 0);
  st.served.assign(m_types, 0);
  st.wasted.assign(m_types, 0);
  std::vector<double> backlog_slots(m_types, 0.0);

  for (long long r = 0; r < config.frames; ++r) {
    CodingAction action;
    switch (config.algorithm) {
      case Algorithm::kMw1:
        action = mw1_select(state.backlog, config.rates, config.actions);
        break;
      case Algorithm::kMw2:
        action = mw2_select(state.backlog, config.actions);
        break;
      case Algorithm::kUncoded:
        action = uncoded_select(state.backlog, config.actions);
        break;
      case Algorithm::kStationary: {
        const double u = unit_draw(policy_rng) * cumulative.back();
        size_t k = 0;
        while (k + 1 < cumulative.size() && u >= cumulative[k]) ++k;
        action = config.actions.at(config.probabilities[k].first);
        break;
      }
    }
    if (r % config.trace_every == 0) st.lyapunov_trace.emplace_back(r, state.lyapunov());
    for (int m = 0; m < m_types; ++m) {
      backlog_slots[m] += static_cast<double>(state.backlog[m]) * action.frame_len;
    }

    std::vector<PacketPayload> payloads;
    if (config.verify_execution) {
      for (const PacketRef& ref : action.cleared) {
        const auto& queue = state.pending[ref.type];
        payloads.push_back(ref.slot < static_cast<int>(queue.size())
                               ? payload_for(queue[ref.slot], config.seed, config.payload_bits)
                               : PacketPayload::zero(config.payload_bits));
      }
    }
    const FrameRecord rec = step_frame(state, action, arrivals);
    if (config.verify_execution) {
      const DecodedPayloads decoded = execute_and_decode(action, config.spec, payloads);
      for (size_t k = 0; k < action.cleared.size(); ++k) {
        const PacketRef& ref = action.cleared[k];
        if (ref.slot >= rec.served[ref.type]) continue;  // null packet
        for (UserId u : config.spec.types[ref.type].dest) {
          if (!(decoded.at(u).at(ref) == payloads[k])) {
            throw DecodeFailure("frame " + std::to_string(r) + ": user " +
                                std::to_string(u) + " decoded a wrong payload");
          }
          ++st.decoded_packets;
        }
      }
    }
    for (int m = 0; m < m_types; ++m) {
      st.arrivals[m] += rec.arrivals[m];
      st.served[m] += rec.served[m];
      st.wasted[m] += rec.wasted[m];
    }
  }

  st.frames = config.frames;
  st.slots = state.slot;
  st.final_backlog = state.backlog;
  st.qr_ratio.assign(m_types, 0.0);
  long long total_final = 0;
  for (int m = 0; m < m_types; ++m) {
    st.avg_backlog[m] = backlog_slots[m] / static_cast<double>(st.slots);
    st.total_avg_backlog += st.avg_backlog[m];
    st.qr_ratio[m] = static_cast<double>(state.backlog[m]) / static_cast<double>(config.frames);
    st.max_qr_ratio = std::max(st.max_qr_ratio, st.qr_ratio[m]);
    total_final += state.backlog[m];
    st.total_wasted += st.wasted[m];
  }
  st.total_qr_ratio = static_cast<double>(total_final) / static_cast<double>(config.frames);
  return st;
}

std::string csv_header() {
  return "lambda,algorithm,seed,frames,total_avg_backlog,max_QR_ratio,wasted,"
         "total_QR_ratio,verdict\n";
}

std::string csv_row(const SimRow& row) {
  return fmt6(row.lambda) + "," + row.algorithm + "," + std::to_string(row.seed) + "," +
         std::to_string(row.stats.frames) + "," + fmt6(row.stats.total_avg_backlog) + "," +
         fmt6(row.stats.max_qr_ratio) + "," + std::to_string(row.stats.total_wasted) + "," +
         fmt6(row.stats.total_qr_ratio) + "," + stability_verdict(row.stats) + "\n";
}

}  // namespace indexcode
