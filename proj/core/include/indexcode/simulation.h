#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "indexcode/code_actions.h"
#include "indexcode/traffic.h"

namespace indexcode {

enum class Algorithm { kMw1, kMw2, kStationary, kUncoded };
Algorithm parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm algorithm);

struct SimConfig {
  TrafficSpec spec;
  std::vector<double> rates;
  ActionSet actions;
  Algorithm algorithm = Algorithm::kMw2;
  // Stationary policy: (action id, probability).
  std::vector<std::pair<int, double>> probabilities;
  long long frames = 200000;
  uint64_t seed = 1;
  // Execute and decode every frame's plan over real payloads.
  bool verify_execution = false;
  size_t payload_bits = kDefaultPayloadBits;
  // Lyapunov trace subsampling period in frames.
  long long trace_every = 1000;
  // Reported in the CSV lambda column.
  double lambda_label = 0.0;

  void validate() const;
};

// Stable below this Q[R]/R, unstable above kUnstableRatio.
inline constexpr double kStableRatio = 0.01;
inline constexpr double kUnstableRatio = 0.05;

struct SimStats {
  long long frames = 0;
  long long slots = 0;
  // Slot-weighted time averages.
  std::vector<double> avg_backlog;
  double total_avg_backlog = 0.0;
  std::vector<long long> final_backlog;
  // Q_m[R] / R
  std::vector<double> qr_ratio;
  double max_qr_ratio = 0.0;
  // sum_m Q_m[R] / R
  double total_qr_ratio = 0.0;
  std::vector<long long> arrivals;
  std::vector<long long> served;
  std::vector<long long> wasted;
  long long total_wasted = 0;
  // (frame, L[frame]) every trace_every frames.
  std::vector<std::pair<long long, double>> lyapunov_trace;
  long long decoded_packets = 0;

  friend bool operator==(const SimStats&, const SimStats&) = default;
};

// "stable", "unstable" or "inconclusive" from the total Q[R]/R.
std::string stability_verdict(const SimStats& stats);

SimStats run_simulation(const SimConfig& config);

struct SimRow {
  double lambda = 0.0;
  std::string algorithm;
  uint64_t seed = 0;
  SimStats stats;
};

std::string csv_header();
// Floats with 6 significant digits.
std::string csv_row(const SimRow& row);

}  // namespace indexcode
