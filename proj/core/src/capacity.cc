#include "indexcode/capacity.h"

#include <algorithm>
#include <numeric>

#include "indexcode/errors.h"
#include "indexcode/simplex.h"

namespace indexcode {
namespace {

void check_actions(const ActionSet& actions) {
  if (actions.actions.empty()) throw ConfigError("action set is empty");
  if (actions.has_templates()) {
    throw TemplateActionError("capacity needs concrete actions, not templates");
  }
}

}  // namespace

std::optional<CapacityCertificate> in_capacity_region(
    const ActionSet& actions, const std::vector<double>& rates) {
  check_actions(actions);
  const int m_types = actions.num_types;
  if (static_cast<int>(rates.size()) != m_types) {
    throw ShapeError("rate vector length must equal the number of types");
  }
  for (double r : rates) {
    if (!(r >= 0.0)) throw ConfigError("rates must be non-negative");
  }
  const int n = actions.size();
  // Columns: p_alpha, then one surplus per type.
  std::vector<std::vector<double>> a(m_types + 1,
                                     std::vector<double>(n + m_types, 0.0));
  std::vector<double> b(m_types + 1, 0.0);
  for (int m = 0; m < m_types; ++m) {
    for (int k = 0; k < n; ++k) {
      const CodingAction& act = actions.actions[k];
      a[m][k] = act.clearance[m] - rates[m] * act.frame_len;
    }
    a[m][n + m] = -1.0;
  }
  for (int k = 0; k < n; ++k) a[m_types][k] = 1.0;
  b[m_types] = 1.0;

  const Feasibility f = phase_one(a, b, n <= kExactLpActionLimit);
  if (!f.feasible) return std::nullopt;

  CapacityCertificate cert;
  cert.exact = f.exact;
  double total_t = 0.0;
  for (int k = 0; k < n; ++k) {
    if (f.x[k] > 0.0) {
      cert.probabilities.emplace_back(actions.actions[k].id, f.x[k]);
      total_t += f.x[k] * actions.actions[k].frame_len;
    }
  }
  cert.slack.assign(m_types, 0.0);
  for (const auto& [id, p] : cert.probabilities) {
    for (int m = 0; m < m_types; ++m) {
      cert.slack[m] += p * actions.at(id).clearance[m];
    }
  }
  for (int m = 0; m < m_types; ++m) cert.slack[m] -= rates[m] * total_t;
  return cert;
}

BoundaryProbe probe_boundary(const ActionSet& actions,
                             const std::vector<double>& direction,
                             double tolerance) {
  check_actions(actions);
  if (static_cast<int>(direction.size()) != actions.num_types) {
    throw ShapeError("direction length must equal the number of types");
  }
  if (std::any_of(direction.begin(), direction.end(), [](double d) { return !(d >= 0.0); })) {
    throw ConfigError("direction must be non-negative");
  }
  if (std::all_of(direction.begin(), direction.end(), [](double d) { return d == 0.0; })) {
    throw ConfigError("direction must be nonzero");
  }
  // No rate beyond the best single-action service ratio can be supported.
  double hi = -1.0;
  for (int m = 0; m < actions.num_types; ++m) {
    if (direction[m] == 0.0) continue;
    double best = 0.0;
    for (const CodingAction& a : actions.actions) {
      best = std::max(best, static_cast<double>(a.clearance[m]) / a.frame_len);
    }
    const double cap = best / direction[m];
    hi = hi < 0.0 ? cap : std::min(hi, cap);
  }
  auto scaled = [&](double theta) {
    std::vector<double> r(direction);
    for (double& v : r) v *= theta;
    return r;
  };
  BoundaryProbe probe;
  if (auto c = in_capacity_region(actions, scaled(hi))) {
    probe.theta = hi;
    probe.certificate = std::move(*c);
    return probe;
  }
  double lo = 0.0;
  probe.certificate = *in_capacity_region(actions, scaled(0.0));
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (auto c = in_capacity_region(actions, scaled(mid))) {
      lo = mid;
      probe.certificate = std::move(*c);
    } else {
      hi = mid;
    }
  }
  probe.theta = lo;
  return probe;
}

double max_scaled_rate(const ActionSet& actions,
                       const std::vector<double>& direction, double tolerance) {
  return probe_boundary(actions, direction, tolerance).theta;
}

std::vector<double> service_rates(const ActionSet& actions,
                                  const CapacityCertificate& certificate) {
  std::vector<double> served(actions.num_types, 0.0);
  double total_t = 0.0;
  for (const auto& [id, p] : certificate.probabilities) {
    const CodingAction& a = actions.at(id);
    total_t += p * a.frame_len;
    for (int m = 0; m < actions.num_types; ++m) served[m] += p * a.clearance[m];
  }
  for (double& s : served) s /= total_t;
  return served;
}

}  // namespace indexcode
