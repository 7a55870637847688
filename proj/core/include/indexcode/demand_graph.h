#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

namespace indexcode {

// Users are numbered 1..N and packets 1..P throughout the library.
using UserId = int;
using PacketId = int;

// Sorted, duplicate-free list of ids.
using IdSet = std::vector<int>;

// A want link: packet `packet` is requested by user `user`.
struct WantLink {
  PacketId packet = 0;
  UserId user = 0;

  friend auto operator<=>(const WantLink&, const WantLink&) = default;
};

// Directed bipartite demand graph. A user->packet link means the user
// already holds the packet; a packet->user link means the user wants it.
//
// Immutable once built. Every packet is wanted by at least one user and no
// user wants a packet it already holds.
class DemandGraph {
 public:
  // Validates and normalizes (sorts, dedups) the sets. `num_packets` of -1
  // infers P as the largest id present.
  static DemandGraph build(int num_users, std::vector<IdSet> have,
                           std::vector<IdSet> want, int num_packets = -1);

  int num_users() const { return num_users_; }
  int num_packets() const { return num_packets_; }

  const IdSet& have(UserId n) const;
  const IdSet& want(UserId n) const;
  // Users holding / wanting packet p.
  const IdSet& holders(PacketId p) const;
  const IdSet& wanters(PacketId p) const;

  bool has(UserId n, PacketId p) const;
  bool wants(UserId n, PacketId p) const;

  int num_want_links() const;
  std::vector<WantLink> want_links() const;

  friend bool operator==(const DemandGraph&, const DemandGraph&) = default;

 private:
  DemandGraph() = default;

  int num_users_ = 0;
  int num_packets_ = 0;
  std::vector<IdSet> have_;
  std::vector<IdSet> want_;
  std::vector<IdSet> holders_;
  std::vector<IdSet> wanters_;
};

// Free-function spelling of DemandGraph::build with P inferred.
DemandGraph build_graph(int num_users, std::vector<IdSet> have_sets,
                        std::vector<IdSet> want_sets);

// Leaf-peeling test on the bipartite digraph.
bool is_acyclic(const DemandGraph& graph);

struct RemovePacket {
  PacketId packet = 0;
};
struct RemoveUser {
  UserId user = 0;
};
struct RemoveWantLink {
  PacketId packet = 0;
  UserId user = 0;
};
using PruneOp = std::variant<RemovePacket, RemoveUser, RemoveWantLink>;

struct PruneResult {
  DemandGraph graph;
  // Indexed by old id; 0 marks a removed packet/user.
  std::vector<PacketId> packet_map;
  std::vector<UserId> user_map;
};

// Applies the removals, deletes packets left with no want link, and
// renumbers surviving users and packets densely in their original order.
PruneResult prune(const DemandGraph& graph, const std::vector<PruneOp>& ops);

// User-only digraph; weight(i, j) counts packets user i holds that user j
// wants.
class WeightedCompressedGraph {
 public:
  explicit WeightedCompressedGraph(int num_users);
  // Row-major N x N matrix. Throws ShapeError on a non-square matrix,
  // a negative weight, or a non-zero diagonal.
  static WeightedCompressedGraph from_matrix(
      const std::vector<std::vector<int>>& rows);

  int num_users() const { return num_users_; }
  int weight(UserId i, UserId j) const;
  void set_weight(UserId i, UserId j, int w);
  bool has_link(UserId i, UserId j) const { return weight(i, j) > 0; }
  // Sum of all link weights.
  int total_weight() const;
  std::vector<std::vector<int>> matrix() const;

  friend bool operator==(const WeightedCompressedGraph&,
                         const WeightedCompressedGraph&) = default;

 private:
  int num_users_ = 0;
  std::vector<int> weights_;
};

WeightedCompressedGraph compress(const DemandGraph& graph);

// Colour-marking DFS over the user digraph.
bool is_acyclic_digraph(const WeightedCompressedGraph& wcg);

// Simple directed cycle n_1 -> ... -> n_K -> n_1, stored with the smallest
// user id first.
struct UserCycle {
  std::vector<UserId> nodes;

  int length() const { return static_cast<int>(nodes.size()); }
  // Link (nodes[k], nodes[k+1]) with wrap-around.
  std::pair<UserId, UserId> link(int k) const;

  friend auto operator<=>(const UserCycle&, const UserCycle&) = default;
};

// All simple cycles with 2 <= length <= max_len, each once, ordered by
// leading node and then depth-first in ascending neighbour order.
// max_len <= 0 means N.
std::vector<UserCycle> enumerate_cycles(const WeightedCompressedGraph& wcg,
                                        int max_len = 0);

struct DisjointCycles {
  bool disjoint = true;
  std::vector<UserCycle> cycles;
};

// `disjoint` is false when some link lies on two or more simple cycles.
// `cycles` always lists every simple cycle.
DisjointCycles has_disjoint_cycles(const WeightedCompressedGraph& wcg);

// Demand graph of a broadcast relay batch: weight(i, j) packets held only by
// i and wanted only by j. Packets are numbered link by link in (i, j) order.
DemandGraph relay_graph(const WeightedCompressedGraph& wcg);

// True when every packet has exactly one holder and exactly one wanter.
bool is_relay_structure(const DemandGraph& graph);

}  // namespace indexcode
