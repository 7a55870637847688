#pragma once

#include <optional>
#include <string>
#include <vector>

#include "indexcode/code_actions.h"
#include "indexcode/demand_graph.h"

namespace indexcode {

// One coding action of a static plan over concrete packet ids.
struct PlannedAction {
  ActionKind kind = ActionKind::kDirect;
  // Cycle users n_1..n_K; double-cycle receivers; empty for direct.
  std::vector<UserId> users;
  // Want links the action satisfies.
  std::vector<WantLink> deliveries;
  // XOR subsets of packet ids, one per slot.
  std::vector<IdSet> messages;

  int slots() const { return static_cast<int>(messages.size()); }
};

using StaticPlan = std::vector<PlannedAction>;

struct ClearanceResult {
  int lower_bound = 0;
  std::optional<StaticPlan> plan;
  std::optional<int> plan_slots;
  // plan_slots == lower_bound.
  bool exact = false;
};

// Every message of the plan, in order.
std::vector<IdSet> plan_messages(const StaticPlan& plan);

// True when every action's deliveries decode from that action's messages
// plus the receiver's side information, and the deliveries cover each want
// link of the graph exactly once.
bool verify_plan(const DemandGraph& graph, const StaticPlan& plan);

enum class BoundMode { kExact, kGreedy };

struct AcyclicSubgraph {
  int packets = 0;
  // Want links whose removal (then residual deletion) leaves an acyclic
  // graph with `packets` packets.
  std::vector<WantLink> removed;
};

// Largest acyclic subgraph reachable by pruning. Exact mode searches all
// user orderings (subset dynamic program) and is capped at
// kMaxExactBoundUsers users; greedy mode repeatedly cuts a want link on
// some cycle.
inline constexpr int kMaxExactBoundUsers = 16;
AcyclicSubgraph max_acyclic_subgraph(const DemandGraph& graph, BoundMode mode);
int acyclic_subgraph_bound(const DemandGraph& graph,
                           BoundMode mode = BoundMode::kExact);

// P minus the minimum link weight of each cycle. Requires disjoint cycles
// in the compressed graph whose packets are distinct and unicast.
ClearanceResult disjoint_cycle_clearance(const DemandGraph& graph);

// P - min(P12, P21); requires exactly two users.
ClearanceResult two_user_clearance(const DemandGraph& graph);

// Exact downlink clearance for a 3-user relay batch given by its weights.
// Packets follow relay_graph numbering.
ClearanceResult three_user_relay_clearance(const WeightedCompressedGraph& wcg);
// Same on a demand graph with relay structure and three users.
ClearanceResult three_user_relay_clearance(const DemandGraph& graph);

struct CyclicSearchOptions {
  // Longest cycle action; 0 means N.
  int max_cycle_len = 0;
  bool double_cycle = true;
  // Actions applied before the search, in order.
  StaticPlan forced_prefix;
  int max_packets = 12;
  int max_users = 16;
};

// Minimum-slot plan built from direct, K-cycle and double-cycle actions.
// Side information stays fixed at the original have sets.
ClearanceResult optimal_cyclic_plan(const DemandGraph& graph,
                                    const CyclicSearchOptions& options = {});

// A K-cycle step delivering packets[k] from users[k] to users[k+1]. Throws
// LegMismatchError when a leg is not a have/want pair of the graph.
PlannedAction cycle_step(const DemandGraph& graph,
                         const std::vector<UserId>& users,
                         const std::vector<PacketId>& packets);

// At most one nonzero entry per row, or at most one per column.
bool row_column_structure_check(const std::vector<std::vector<int>>& weights);

enum class StaticSolver { kAuto, kBound, kDisjoint, kTwoUser, kRelay3, kExhaustive };
StaticSolver parse_static_solver(const std::string& name);

ClearanceResult solve_static(const DemandGraph& graph,
                             StaticSolver solver = StaticSolver::kAuto,
                             const CyclicSearchOptions& options = {});

// `lower_bound=<n> plan_slots=<n> exact=<bool>`
std::string format_result(const ClearanceResult& result);
// One line per action: `kind users=[..] msgs=[{..},..] delivers=[p->n,..]`.
std::string format_plan(const StaticPlan& plan);

}  // namespace indexcode
