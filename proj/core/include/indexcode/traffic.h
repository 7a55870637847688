#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "indexcode/demand_graph.h"

namespace indexcode {

// A traffic type: packets delivered to every user in `dest` and already
// cached at every user in `side`.
struct TrafficType {
  IdSet dest;
  IdSet side;

  friend bool operator==(const TrafficType&, const TrafficType&) = default;
};

struct TrafficSpec {
  int num_users = 0;
  std::vector<TrafficType> types;
  // Per-type arrival rate in packets/slot, each in [0, 1].
  std::optional<std::vector<double>> rates;

  int num_types() const { return static_cast<int>(types.size()); }

  // Normalizes the id sets and throws on an empty destination set, a user id
  // out of range, overlapping dest/side sets, or a bad rate vector.
  void validate();

  bool in_dest(int type, UserId n) const;
  bool in_side(int type, UserId n) const;

  friend bool operator==(const TrafficSpec&, const TrafficSpec&) = default;
};

// JSON schema:
//   {"users": 3,
//    "types": [{"dest": [1], "side": [2]}, ...],
//    "rates": [0.25, ...]}            // optional
TrafficSpec parse_traffic_spec(std::string_view json_text);
TrafficSpec read_traffic_spec_file(const std::string& path);
std::string serialize_traffic_spec(const TrafficSpec& spec);

}  // namespace indexcode
