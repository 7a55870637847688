#include "indexcode/demand_graph.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <string>

#include "indexcode/errors.h"

namespace indexcode {
namespace {

void normalize(IdSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

bool contains(const IdSet& s, int v) {
  return std::binary_search(s.begin(), s.end(), v);
}

}  // namespace

DemandGraph DemandGraph::build(int num_users, std::vector<IdSet> have,
                               std::vector<IdSet> want, int num_packets) {
  if (num_users < 1) {
    throw ShapeError("demand graph needs at least one user");
  }
  if (static_cast<int>(have.size()) != num_users ||
      static_cast<int>(want.size()) != num_users) {
    throw ShapeError("have/want lists must have one entry per user");
  }
  int max_id = 0;
  for (int n = 0; n < num_users; ++n) {
    normalize(have[n]);
    normalize(want[n]);
    for (const IdSet* s : {&have[n], &want[n]}) {
      for (int p : *s) {
        if (p < 1) {
          throw UnknownIdError("packet id " + std::to_string(p) +
                               " out of range");
        }
        max_id = std::max(max_id, p);
      }
    }
  }
  if (num_packets < 0) num_packets = max_id;
  if (max_id > num_packets) {
    throw UnknownIdError("packet id " + std::to_string(max_id) +
                         " exceeds packet count " +
                         std::to_string(num_packets));
  }

  DemandGraph g;
  g.num_users_ = num_users;
  g.num_packets_ = num_packets;
  g.holders_.assign(num_packets, {});
  g.wanters_.assign(num_packets, {});
  for (int n = 0; n < num_users; ++n) {
    for (int p : have[n]) {
      if (contains(want[n], p)) {
        throw OverlapError("user " + std::to_string(n + 1) +
                           " both has and wants packet " + std::to_string(p));
      }
      g.holders_[p - 1].push_back(n + 1);
    }
    for (int p : want[n]) g.wanters_[p - 1].push_back(n + 1);
  }
  for (int p = 1; p <= num_packets; ++p) {
    if (g.wanters_[p - 1].empty()) {
      throw OrphanPacketError("packet " + std::to_string(p) +
                              " is wanted by no user");
    }
  }
  g.have_ = std::move(have);
  g.want_ = std::move(want);
  return g;
}

DemandGraph build_graph(int num_users, std::vector<IdSet> have_sets,
                        std::vector<IdSet> want_sets) {
  return DemandGraph::build(num_users, std::move(have_sets),
                            std::move(want_sets));
}

const IdSet& DemandGraph::have(UserId n) const {
  if (n < 1 || n > num_users_) throw UnknownIdError("unknown user");
  return have_[n - 1];
}

const IdSet& DemandGraph::want(UserId n) const {
  if (n < 1 || n > num_users_) throw UnknownIdError("unknown user");
  return want_[n - 1];
}

const IdSet& DemandGraph::holders(PacketId p) const {
  if (p < 1 || p > num_packets_) throw UnknownIdError("unknown packet");
  return holders_[p - 1];
}

const IdSet& DemandGraph::wanters(PacketId p) const {
  if (p < 1 || p > num_packets_) throw UnknownIdError("unknown packet");
  return wanters_[p - 1];
}

bool DemandGraph::has(UserId n, PacketId p) const {
  return contains(have(n), p);
}

bool DemandGraph::wants(UserId n, PacketId p) const {
  return contains(want(n), p);
}

int DemandGraph::num_want_links() const {
  int total = 0;
  for (const auto& w : want_) total += static_cast<int>(w.size());
  return total;
}

std::vector<WantLink> DemandGraph::want_links() const {
  std::vector<WantLink> links;
  for (int p = 1; p <= num_packets_; ++p) {
    for (UserId n : wanters_[p - 1]) links.push_back({p, n});
  }
  return links;
}

bool is_acyclic(const DemandGraph& graph) {
  // Nodes 0..N-1 are users, N..N+P-1 packets. Repeatedly strip nodes with no
  // remaining outgoing links; a cycle survives the peeling.
  const int n_users = graph.num_users();
  const int total = n_users + graph.num_packets();
  std::vector<int> out_degree(total, 0);
  std::vector<std::vector<int>> predecessors(total);
  for (UserId n = 1; n <= n_users; ++n) {
    for (PacketId p : graph.have(n)) {
      ++out_degree[n - 1];
      predecessors[n_users + p - 1].push_back(n - 1);
    }
  }
  for (PacketId p = 1; p <= graph.num_packets(); ++p) {
    for (UserId n : graph.wanters(p)) {
      ++out_degree[n_users + p - 1];
      predecessors[n - 1].push_back(n_users + p - 1);
    }
  }
  std::queue<int> leaves;
  for (int v = 0; v < total; ++v) {
    if (out_degree[v] == 0) leaves.push(v);
  }
  int removed = 0;
  while (!leaves.empty()) {
    const int v = leaves.front();
    leaves.pop();
    ++removed;
    for (int u : predecessors[v]) {
      if (--out_degree[u] == 0) leaves.push(u);
    }
  }
  return removed == total;
}

PruneResult prune(const DemandGraph& graph, const std::vector<PruneOp>& ops) {
  const int n_users = graph.num_users();
  const int n_packets = graph.num_packets();
  std::vector<bool> user_alive(n_users + 1, true);
  std::vector<bool> packet_alive(n_packets + 1, true);
  std::vector<IdSet> want(n_users);
  for (UserId n = 1; n <= n_users; ++n) want[n - 1] = graph.want(n);

  auto check_user = [&](UserId n) {
    if (n < 1 || n > n_users) {
      throw UnknownIdError("prune: unknown user " + std::to_string(n));
    }
  };
  auto check_packet = [&](PacketId p) {
    if (p < 1 || p > n_packets) {
      throw UnknownIdError("prune: unknown packet " + std::to_string(p));
    }
  };

  for (const PruneOp& op : ops) {
    if (const auto* rp = std::get_if<RemovePacket>(&op)) {
      check_packet(rp->packet);
      packet_alive[rp->packet] = false;
    } else if (const auto* ru = std::get_if<RemoveUser>(&op)) {
      check_user(ru->user);
      user_alive[ru->user] = false;
    } else {
      const auto& rl = std::get<RemoveWantLink>(op);
      check_user(rl.user);
      check_packet(rl.packet);
      IdSet& w = want[rl.user - 1];
      auto it = std::lower_bound(w.begin(), w.end(), rl.packet);
      if (it == w.end() || *it != rl.packet) {
        throw UnknownIdError("prune: no want link from packet " +
                             std::to_string(rl.packet) + " to user " +
                             std::to_string(rl.user));
      }
      w.erase(it);
    }
  }

  // Residual packets without any want link from a surviving user go too.
  std::vector<int> remaining_wants(n_packets + 1, 0);
  for (UserId n = 1; n <= n_users; ++n) {
    if (!user_alive[n]) continue;
    for (PacketId p : want[n - 1]) ++remaining_wants[p];
  }
  std::vector<PacketId> packet_map(n_packets + 1, 0);
  std::vector<UserId> user_map(n_users + 1, 0);
  int next_packet = 0;
  for (PacketId p = 1; p <= n_packets; ++p) {
    if (packet_alive[p] && remaining_wants[p] > 0) {
      packet_map[p] = ++next_packet;
    }
  }
  int next_user = 0;
  for (UserId n = 1; n <= n_users; ++n) {
    if (user_alive[n]) user_map[n] = ++next_user;
  }
  if (next_user == 0) {
    throw ShapeError("prune: cannot remove every user");
  }

  std::vector<IdSet> new_have(next_user), new_want(next_user);
  for (UserId n = 1; n <= n_users; ++n) {
    const UserId m = user_map[n];
    if (m == 0) continue;
    for (PacketId p : graph.have(n)) {
      if (packet_map[p] != 0) new_have[m - 1].push_back(packet_map[p]);
    }
    for (PacketId p : want[n - 1]) {
      if (packet_map[p] != 0) new_want[m - 1].push_back(packet_map[p]);
    }
  }
  return PruneResult{DemandGraph::build(next_user, std::move(new_have),
                                        std::move(new_want), next_packet),
                     std::move(packet_map), std::move(user_map)};
}

WeightedCompressedGraph::WeightedCompressedGraph(int num_users)
    : num_users_(num_users),
      weights_(static_cast<size_t>(num_users) * num_users, 0) {
  if (num_users < 1) throw ShapeError("compressed graph needs a user");
}

WeightedCompressedGraph WeightedCompressedGraph::from_matrix(
    const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  if (n < 1) throw ShapeError("weight matrix is empty");
  WeightedCompressedGraph wcg(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw ShapeError("weight matrix is not square");
    }
    for (int j = 0; j < n; ++j) {
      if (rows[i][j] < 0) throw ShapeError("negative link weight");
      if (i == j && rows[i][j] != 0) {
        throw ShapeError("weight matrix diagonal must be zero");
      }
      wcg.weights_[static_cast<size_t>(i) * n + j] = rows[i][j];
    }
  }
  return wcg;
}

int WeightedCompressedGraph::weight(UserId i, UserId j) const {
  if (i < 1 || i > num_users_ || j < 1 || j > num_users_) {
    throw UnknownIdError("compressed graph: unknown user");
  }
  return weights_[static_cast<size_t>(i - 1) * num_users_ + (j - 1)];
}

void WeightedCompressedGraph::set_weight(UserId i, UserId j, int w) {
  if (i < 1 || i > num_users_ || j < 1 || j > num_users_) {
    throw UnknownIdError("compressed graph: unknown user");
  }
  if (w < 0 || (i == j && w != 0)) throw ShapeError("invalid link weight");
  weights_[static_cast<size_t>(i - 1) * num_users_ + (j - 1)] = w;
}

int WeightedCompressedGraph::total_weight() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0);
}

std::vector<std::vector<int>> WeightedCompressedGraph::matrix() const {
  std::vector<std::vector<int>> rows(num_users_, std::vector<int>(num_users_));
  for (int i = 1; i <= num_users_; ++i) {
    for (int j = 1; j <= num_users_; ++j) rows[i - 1][j - 1] = weight(i, j);
  }
  return rows;
}

WeightedCompressedGraph compress(const DemandGraph& graph) {
  WeightedCompressedGraph wcg(graph.num_users());
  for (PacketId p = 1; p <= graph.num_packets(); ++p) {
    for (UserId i : graph.holders(p)) {
      for (UserId j : graph.wanters(p)) {
        wcg.set_weight(i, j, wcg.weight(i, j) + 1);
      }
    }
  }
  return wcg;
}

bool is_acyclic_digraph(const WeightedCompressedGraph& wcg) {
  const int n = wcg.num_users();
  enum Colour { kWhite, kGrey, kBlack };
  std::vector<Colour> colour(n + 1, kWhite);
  std::function<bool(UserId)> has_back_edge = [&](UserId u) {
    colour[u] = kGrey;
    for (UserId v = 1; v <= n; ++v) {
      if (!wcg.has_link(u, v)) continue;
      if (colour[v] == kGrey) return true;
      if (colour[v] == kWhite && has_back_edge(v)) return true;
    }
    colour[u] = kBlack;
    return false;
  };
  for (UserId u = 1; u <= n; ++u) {
    if (colour[u] == kWhite && has_back_edge(u)) return false;
  }
  return true;
}

std::pair<UserId, UserId> UserCycle::link(int k) const {
  const int len = length();
  return {nodes[k % len], nodes[(k + 1) % len]};
}

std::vector<UserCycle> enumerate_cycles(const WeightedCompressedGraph& wcg,
                                        int max_len) {
  const int n = wcg.num_users();
  if (max_len <= 0) max_len = n;
  std::vector<UserCycle> cycles;
  std::vector<UserId> path;
  std::vector<bool> on_path(n + 1, false);

  // Only nodes larger than the start are visited, so each cycle is found
  // exactly once, rooted at its smallest node.
  std::function<void(UserId)> extend = [&](UserId start) {
    const UserId u = path.back();
    for (UserId v = start; v <= n; ++v) {
      if (!wcg.has_link(u, v)) continue;
      if (v == start) {
        if (path.size() >= 2) cycles.push_back(UserCycle{path});
      } else if (!on_path[v] && static_cast<int>(path.size()) < max_len) {
        on_path[v] = true;
        path.push_back(v);
        extend(start);
        path.pop_back();
        on_path[v] = false;
      }
    }
  };
  for (UserId s = 1; s <= n; ++s) {
    path.assign(1, s);
    on_path[s] = true;
    extend(s);
    on_path[s] = false;
  }
  return cycles;
}

DisjointCycles has_disjoint_cycles(const WeightedCompressedGraph& wcg) {
  DisjointCycles result;
  result.cycles = enumerate_cycles(wcg, wcg.num_users());
  const int n = wcg.num_users();
  std::vector<int> uses(static_cast<size_t>(n + 1) * (n + 1), 0);
  for (const UserCycle& c : result.cycles) {
    for (int k = 0; k < c.length(); ++k) {
      auto [i, j] = c.link(k);
      if (++uses[static_cast<size_t>(i) * (n + 1) + j] > 1) {
        result.disjoint = false;
      }
    }
  }
  return result;
}

DemandGraph relay_graph(const WeightedCompressedGraph& wcg) {
  const int n = wcg.num_users();
  std::vector<IdSet> have(n), want(n);
  int next = 0;
  for (UserId i = 1; i <= n; ++i) {
    for (UserId j = 1; j <= n; ++j) {
      for (int k = 0; k < wcg.weight(i, j); ++k) {
        ++next;
        have[i - 1].push_back(next);
        want[j - 1].push_back(next);
      }
    }
  }
  return DemandGraph::build(n, std::move(have), std::move(want), next);
}

bool is_relay_structure(const DemandGraph& graph) {
  for (PacketId p = 1; p <= graph.num_packets(); ++p) {
    if (graph.holders(p).size() != 1 || graph.wanters(p).size() != 1) {
      return false;
    }
  }
  return true;
}

}  // namespace indexcode
