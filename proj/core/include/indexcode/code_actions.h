#pragma once

#include <array>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "indexcode/demand_graph.h"
#include "indexcode/gf2.h"
#include "indexcode/traffic.h"

namespace indexcode {

enum class ActionKind { kDirect, kCycle, kDoubleCycle, kCustomLinear };

// The `slot`-th head-of-line packet of queue `type` (0-based type index).
struct PacketRef {
  int type = 0;
  int slot = 0;

  friend auto operator<=>(const PacketRef&, const PacketRef&) = default;
};

// XOR of the referenced packets.
using Message = std::vector<PacketRef>;

struct CodingAction {
  int id = -1;
  ActionKind kind = ActionKind::kDirect;
  // T(alpha): downlink slots plus, in relay mode, one uplink slot per
  // cleared packet.
  int frame_len = 1;
  // mu(alpha), one entry per traffic type.
  std::vector<int> clearance;
  // Downlink messages, one per downlink slot.
  std::vector<Message> plan;
  // Packets delivered, in leg order for cycles.
  std::vector<PacketRef> cleared;
  // Cycle users n_1..n_K (cycles and templates only).
  std::vector<UserId> cycle;
  // A template cycle binds each leg to a traffic type at scheduling time.
  bool is_template = false;
  int uplink_slots = 0;

  int total_cleared() const;
  // Packets delivered per slot of frame.
  double efficiency() const;
  std::string kind_name() const;
};

struct PacketPayload {
  BitVector bits;

  static PacketPayload zero(size_t num_bits);
  static PacketPayload random(size_t num_bits, std::mt19937_64& rng);

  friend bool operator==(const PacketPayload&, const PacketPayload&) = default;
};

inline constexpr size_t kDefaultPayloadBits = 128;

// 1-cycle action: transmit one packet of `type` uncoded.
CodingAction direct_action(const TrafficSpec& spec, int type);

// K-cycle XOR chain around `cycle`. Leg k carries a packet of leg_types[k]
// from cycle[k] (side information) to cycle[k+1] (destination). Sends
// X_k + X_{k+1} for k = 1..K-1.
CodingAction k_cycle_action(const TrafficSpec& spec, const UserCycle& cycle,
                            const std::vector<int>& leg_types);

// Single message A+B+C: every destination of each type holds the other two.
CodingAction double_cycle_action(const TrafficSpec& spec,
                                 std::array<int, 3> types);

struct ActionSetOptions {
  bool include_direct = true;
  // Longest K-cycle generated; values below 2 disable cycle actions.
  int max_cycle_len = 3;
  bool include_double_cycle = true;
  // Each action first uploads its packets to a relay.
  bool relay_mode = false;
  // Cycle legs pick the longest eligible queue at scheduling time.
  bool template_cycles = false;

  // "direct", "cycle", "double" (comma separated) or "all"/"uncoded".
  static ActionSetOptions from_kinds(const std::string& kinds,
                                     int max_cycle_len = 3);
};

struct ActionSet {
  std::vector<CodingAction> actions;
  ActionSetOptions options;
  int num_types = 0;
  // Types eligible for a template leg i -> j.
  std::map<std::pair<UserId, UserId>, std::vector<int>> leg_types;

  const CodingAction& at(int id) const { return actions.at(id); }
  int size() const { return static_cast<int>(actions.size()); }
  bool has_templates() const;
};

// Deterministic: sorted by kind (direct, 2-cycle, 3-cycle, ..., double
// cycle) then by type indices; ids follow that order from 0. Actions with
// the same kind and clearance vector are kept once.
ActionSet generate_action_set(const TrafficSpec& spec,
                              const ActionSetOptions& options = {});

// Concrete instance of a template for the given backlogs. Each leg takes the
// eligible type with the largest backlog, smallest index on ties. Concrete
// actions are returned unchanged.
CodingAction bind_template(const CodingAction& action, const ActionSet& set,
                           const std::vector<long long>& backlog);

// Packets recovered per destination user.
using DecodedPayloads = std::map<UserId, std::map<PacketRef, PacketPayload>>;

// Broadcasts the plan over `payloads` (aligned with action.cleared) and has
// every destination reconstruct its packet from its side information and
// the messages. Throws DecodeFailure when some destination cannot.
DecodedPayloads execute_and_decode(const CodingAction& action,
                                   const TrafficSpec& spec,
                                   const std::vector<PacketPayload>& payloads);

// True iff every user can solve for each wanted packet from the messages
// plus its side information, over GF(2).
bool verify_linear_code(const DemandGraph& graph,
                        const std::vector<IdSet>& messages);

// The action's cleared packets as a standalone demand graph (packet k+1 is
// action.cleared[k]) and its plan as packet subsets.
struct InducedCode {
  DemandGraph graph;
  std::vector<IdSet> messages;
};
InducedCode induced_code(const CodingAction& action, const TrafficSpec& spec);

// `id kind T=.. mu=[..] plan=[{t0,t3#1},..]`
std::string format_action(const CodingAction& action);
std::string dump_action_set(const ActionSet& set);

}  // namespace indexcode
