#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "indexcode/code_actions.h"

namespace indexcode {

// Time-sharing weights over concrete actions that support a rate vector.
struct CapacityCertificate {
  // (action id, probability) for every action with positive weight.
  std::vector<std::pair<int, double>> probabilities;
  // Per type: sum p mu_m - lambda_m sum p T, non-negative up to tolerance.
  std::vector<double> slack;
  // Decided in rational arithmetic.
  bool exact = false;
};

// Rational arithmetic up to this many actions, doubles above.
inline constexpr int kExactLpActionLimit = 200;

// Certificate iff some distribution p over the actions satisfies
// lambda_m * sum p T <= sum p mu_m for every type m.
std::optional<CapacityCertificate> in_capacity_region(
    const ActionSet& actions, const std::vector<double>& rates);

struct BoundaryProbe {
  double theta = 0.0;
  // Certificate for theta * direction.
  CapacityCertificate certificate;
};

// Largest theta with theta * direction in the region, by bisection to
// `tolerance`; reports the feasible end of the final bracket.
BoundaryProbe probe_boundary(const ActionSet& actions,
                             const std::vector<double>& direction,
                             double tolerance = 1e-4);
double max_scaled_rate(const ActionSet& actions,
                       const std::vector<double>& direction,
                       double tolerance = 1e-4);

// Per-type service rate sum p mu_m / sum p T of a certificate.
std::vector<double> service_rates(const ActionSet& actions,
                                  const CapacityCertificate& certificate);

}  // namespace indexcode
