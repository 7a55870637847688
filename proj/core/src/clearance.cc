#include "indexcode/clearance.h"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "indexcode/errors.h"
#include "indexcode/gf2.h"

namespace indexcode {
namespace {

uint32_t mask_of(const IdSet& users) {
  uint32_t m = 0;
  for (UserId u : users) m |= uint32_t{1} << (u - 1);
  return m;
}

bool in_mask(uint32_t m, UserId u) { return (m >> (u - 1)) & 1u; }

// Can `user` recover `packet` from `messages` and its have set?
bool decodes(const DemandGraph& graph, const std::vector<IdSet>& messages,
             UserId user, PacketId packet) {
  const int n_packets = graph.num_packets();
  const IdSet& known = graph.have(user);
  Gf2Basis basis(n_packets);
  for (const IdSet& msg : messages) {
    BitVector v(n_packets);
    for (PacketId p : msg) {
      if (p < 1 || p > n_packets) throw UnknownIdError("plan references unknown packet");
      if (!std::binary_search(known.begin(), known.end(), p)) v.flip(p - 1);
    }
    basis.insert(std::move(v));
  }
  return basis.in_span(BitVector::unit(n_packets, packet - 1));
}

// Hands out packets link by link and finishes with direct transmissions.
class PlanBuilder {
 public:
  explicit PlanBuilder(const DemandGraph& graph) : graph_(graph) {
    for (PacketId p = 1; p <= graph.num_packets(); ++p) {
      remaining_.push_back(graph.wanters(p));
    }
  }

  void cycle(const std::vector<UserId>& users) {
    const int k_legs = static_cast<int>(users.size());
    std::vector<PacketId> packets;
    for (int k = 0; k < k_legs; ++k) {
      packets.push_back(take(users[k], users[(k + 1) % k_legs], packets));
    }
    PlannedAction step = cycle_step(graph_, users, packets);
    for (const WantLink& d : step.deliveries) deliver(d);
    plan_.push_back(std::move(step));
  }

  StaticPlan finish() {
    for (PacketId p = 1; p <= graph_.num_packets(); ++p) {
      IdSet& rest = remaining_[p - 1];
      if (rest.empty()) continue;
      PlannedAction a;
      a.kind = ActionKind::kDirect;
      a.messages = {IdSet{p}};
      for (UserId u : rest) a.deliveries.push_back(WantLink{p, u});
      rest.clear();
      plan_.push_back(std::move(a));
    }
    return std::move(plan_);
  }

 private:
  PacketId take(UserId from, UserId to, const std::vector<PacketId>& exclude) {
    for (PacketId p : graph_.have(from)) {
      const IdSet& rest = remaining_[p - 1];
      if (std::binary_search(rest.begin(), rest.end(), to) &&
          std::find(exclude.begin(), exclude.end(), p) == exclude.end()) {
        return p;
      }
    }
    throw HypothesisViolation("no undelivered packet on link " +
                              std::to_string(from) + "->" + std::to_string(to));
  }

  void deliver(const WantLink& d) {
    IdSet& rest = remaining_[d.packet - 1];
    rest.erase(std::find(rest.begin(), rest.end(), d.user));
  }

  const DemandGraph& graph_;
  std::vector<IdSet> remaining_;
  StaticPlan plan_;
};

ClearanceResult finish_result(int lower_bound, StaticPlan plan) {
  ClearanceResult r;
  r.lower_bound = lower_bound;
  int slots = 0;
  for (const PlannedAction& a : plan) slots += a.slots();
  r.plan_slots = slots;
  r.plan = std::move(plan);
  r.exact = slots == lower_bound;
  return r;
}

// One directed cycle of the weighted graph, or empty when acyclic.
std::vector<UserId> find_cycle(const std::vector<std::vector<int>>& w) {
  const int n = static_cast<int>(w.size());
  std::vector<int> colour(n, 0), parent(n, -1);
  std::vector<UserId> cycle;
  std::function<bool(int)> dfs = [&](int u) {
    colour[u] = 1;
    for (int v = 0; v < n; ++v) {
      if (w[u][v] <= 0) continue;
      if (colour[v] == 1) {
        for (int x = u; x != v; x = parent[x]) cycle.push_back(x + 1);
        cycle.push_back(v + 1);
        std::reverse(cycle.begin(), cycle.end());
        return true;
      }
      if (colour[v] == 0) {
        parent[v] = u;
        if (dfs(v)) return true;
      }
    }
    colour[u] = 2;
    return false;
  };
  for (int s = 0; s < n; ++s) {
    if (colour[s] == 0 && dfs(s)) return cycle;
  }
  return {};
}

AcyclicSubgraph exact_bound(const DemandGraph& graph) {
  const int n = graph.num_users();
  if (n > kMaxExactBoundUsers) {
    throw SizeCapError("exact acyclic bound is capped at " +
                       std::to_string(kMaxExactBoundUsers) + " users");
  }
  const int n_packets = graph.num_packets();
  // For each user v: masks of H_p u R_p minus v, for packets v wants.
  std::vector<std::vector<uint32_t>> others(n);
  for (PacketId p = 1; p <= n_packets; ++p) {
    const uint32_t all = mask_of(graph.holders(p)) | mask_of(graph.wanters(p));
    for (UserId v : graph.wanters(p)) {
      others[v - 1].push_back(all & ~(uint32_t{1} << (v - 1)));
    }
  }
  // best[S]: most packets kept by an ordering of S placed first. A packet
  // survives when the last of its holders and wanters is a wanter.
  const uint32_t full = (uint32_t{1} << n) - 1;
  std::vector<int> best(size_t{full} + 1, -1);
  std::vector<int8_t> last(size_t{full} + 1, -1);
  best[0] = 0;
  for (uint32_t s = 0; s <= full; ++s) {
    if (best[s] < 0) continue;
    for (int v = 0; v < n; ++v) {
      if ((s >> v) & 1u) continue;
      int gain = 0;
      for (uint32_t o : others[v]) gain += (o & ~s) == 0;
      const uint32_t t = s | (uint32_t{1} << v);
      if (best[s] + gain > best[t]) {
        best[t] = best[s] + gain;
        last[t] = static_cast<int8_t>(v);
      }
    }
  }
  std::vector<int> pos(n + 1);
  uint32_t s = full;
  for (int k = n; k > 0; --k) {
    const int v = last[s];
    pos[v + 1] = k;
    s &= ~(uint32_t{1} << v);
  }
  AcyclicSubgraph out;
  out.packets = best[full];
  for (PacketId p = 1; p <= n_packets; ++p) {
    int latest_holder = 0;
    for (UserId h : graph.holders(p)) latest_holder = std::max(latest_holder, pos[h]);
    for (UserId w : graph.wanters(p)) {
      if (pos[w] < latest_holder) out.removed.push_back(WantLink{p, w});
    }
  }
  return out;
}

AcyclicSubgraph greedy_bound(const DemandGraph& graph) {
  const int n = graph.num_users();
  std::vector<IdSet> want(n);
  for (UserId u = 1; u <= n; ++u) want[u - 1] = graph.want(u);
  AcyclicSubgraph out;
  while (true) {
    std::vector<std::vector<int>> w(n, std::vector<int>(n, 0));
    for (UserId i = 1; i <= n; ++i) {
      for (PacketId p : graph.have(i)) {
        for (UserId j = 1; j <= n; ++j) {
          if (std::binary_search(want[j - 1].begin(), want[j - 1].end(), p)) {
            ++w[i - 1][j - 1];
          }
        }
      }
    }
    const std::vector<UserId> cycle = find_cycle(w);
    if (cycle.empty()) break;
    // Cut the lightest link of the cycle, lexicographically smallest on ties.
    std::pair<UserId, UserId> cut{0, 0};
    int cut_weight = 0;
    for (size_t k = 0; k < cycle.size(); ++k) {
      const UserId i = cycle[k], j = cycle[(k + 1) % cycle.size()];
      const int wij = w[i - 1][j - 1];
      if (cut.first == 0 || wij < cut_weight ||
          (wij == cut_weight && std::make_pair(i, j) < cut)) {
        cut = {i, j};
        cut_weight = wij;
      }
    }
    IdSet& wj = want[cut.second - 1];
    for (PacketId p : graph.have(cut.first)) {
      auto it = std::lower_bound(wj.begin(), wj.end(), p);
      if (it != wj.end() && *it == p) {
        wj.erase(it);
        out.removed.push_back(WantLink{p, cut.second});
      }
    }
  }
  std::vector<bool> alive(graph.num_packets() + 1, false);
  for (const IdSet& s : want) {
    for (PacketId p : s) alive[p] = true;
  }
  out.packets = static_cast<int>(std::count(alive.begin(), alive.end(), true));
  std::sort(out.removed.begin(), out.removed.end());
  return out;
}

// ---- Exhaustive cyclic search ----

struct Entry {
  PacketId id;
  uint32_t have;
  uint32_t rem;
};
using State = std::vector<Entry>;
using Key = std::vector<uint64_t>;

struct KeyHash {
  size_t operator()(const Key& k) const {
    size_t h = k.size();
    for (uint64_t x : k) h ^= std::hash<uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

Key key_of(const State& s) {
  Key k;
  k.reserve(s.size());
  for (const Entry& e : s) k.push_back((uint64_t{e.have} << 32) | e.rem);
  std::sort(k.begin(), k.end());
  return k;
}

struct Move {
  ActionKind kind;
  int cost;
  std::vector<UserId> users;
  // (entry index, user) pairs cleared; for direct the user is 0 (all).
  std::vector<std::pair<int, UserId>> picks;
};

State apply_move(const State& s, const Move& m) {
  State next = s;
  for (const auto& [idx, user] : m.picks) {
    next[idx].rem = user == 0 ? 0 : next[idx].rem & ~(uint32_t{1} << (user - 1));
  }
  next.erase(std::remove_if(next.begin(), next.end(),
                            [](const Entry& e) { return e.rem == 0; }),
             next.end());
  return next;
}

class CyclicSearch {
 public:
  CyclicSearch(int num_users, int max_len, bool double_cycle)
      : n_(num_users), max_len_(max_len), double_cycle_(double_cycle) {}

  std::vector<Move> moves(const State& s) const {
    std::vector<Move> out;
    const int n_entries = static_cast<int>(s.size());
    for (int i = 0; i < n_entries; ++i) {
      out.push_back(Move{ActionKind::kDirect, 1, {}, {{i, 0}}});
    }
    WeightedCompressedGraph wcg(n_);
    for (const Entry& e : s) {
      for (UserId a = 1; a <= n_; ++a) {
        if (!in_mask(e.have, a)) continue;
        for (UserId b = 1; b <= n_; ++b) {
          if (in_mask(e.rem, b)) wcg.set_weight(a, b, wcg.weight(a, b) + 1);
        }
      }
    }
    for (const UserCycle& c : enumerate_cycles(wcg, max_len_)) {
      const int k_legs = c.length();
      std::vector<std::vector<int>> legs(k_legs);
      for (int k = 0; k < k_legs; ++k) {
        const auto [a, b] = c.link(k);
        // Interchangeable entries: keep at most K of each class.
        std::map<std::pair<uint32_t, uint32_t>, int> seen;
        for (int i = 0; i < n_entries; ++i) {
          if (in_mask(s[i].have, a) && in_mask(s[i].rem, b) &&
              seen[{s[i].have, s[i].rem}]++ < k_legs) {
            legs[k].push_back(i);
          }
        }
      }
      std::vector<int> pick(k_legs);
      std::function<void(int)> rec = [&](int k) {
        if (k == k_legs) {
          Move m{ActionKind::kCycle, k_legs - 1, c.nodes, {}};
          for (int j = 0; j < k_legs; ++j) m.picks.push_back({pick[j], c.link(j).second});
          out.push_back(std::move(m));
          return;
        }
        for (int i : legs[k]) {
          if (std::find(pick.begin(), pick.begin() + k, i) != pick.begin() + k) continue;
          pick[k] = i;
          rec(k + 1);
        }
      };
      rec(0);
    }
    if (double_cycle_) {
      for (int i = 0; i < n_entries; ++i) {
        for (int j = i + 1; j < n_entries; ++j) {
          for (int k = j + 1; k < n_entries; ++k) {
            const uint32_t u1s = s[i].rem & s[j].have & s[k].have;
            const uint32_t u2s = s[j].rem & s[i].have & s[k].have;
            const uint32_t u3s = s[k].rem & s[i].have & s[j].have;
            if (!u1s || !u2s || !u3s) continue;
            for (UserId u1 = 1; u1 <= n_; ++u1) {
              if (!in_mask(u1s, u1)) continue;
              for (UserId u2 = 1; u2 <= n_; ++u2) {
                if (!in_mask(u2s, u2)) continue;
                for (UserId u3 = 1; u3 <= n_; ++u3) {
                  if (!in_mask(u3s, u3)) continue;
                  out.push_back(Move{ActionKind::kDoubleCycle, 1, {u1, u2, u3},
                                     {{i, u1}, {j, u2}, {k, u3}}});
                }
              }
            }
          }
        }
      }
    }
    return out;
  }

  int value(const State& s) {
    if (s.empty()) return 0;
    Key key = key_of(s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    int best = static_cast<int>(s.size());  // all direct
    std::set<std::pair<int, Key>> tried;
    for (const Move& m : moves(s)) {
      if (m.cost >= best) continue;
      State next = apply_move(s, m);
      if (!tried.insert({m.cost, key_of(next)}).second) continue;
      best = std::min(best, m.cost + value(next));
    }
    memo_.emplace(std::move(key), best);
    return best;
  }

 private:
  int n_;
  int max_len_;
  bool double_cycle_;
  std::unordered_map<Key, int, KeyHash> memo_;
};

PlannedAction to_planned(const DemandGraph& graph, const State& s, const Move& m) {
  PlannedAction a;
  a.kind = m.kind;
  switch (m.kind) {
    case ActionKind::kDirect: {
      const Entry& e = s[m.picks.front().first];
      a.messages = {IdSet{e.id}};
      for (UserId u = 1; u <= graph.num_users(); ++u) {
        if (in_mask(e.rem, u)) a.deliveries.push_back(WantLink{e.id, u});
      }
      break;
    }
    case ActionKind::kCycle: {
      std::vector<PacketId> packets;
      for (const auto& pick : m.picks) packets.push_back(s[pick.first].id);
      a = cycle_step(graph, m.users, packets);
      break;
    }
    default: {
      a.users = m.users;
      IdSet msg;
      for (const auto& [idx, user] : m.picks) {
        msg.push_back(s[idx].id);
        a.deliveries.push_back(WantLink{s[idx].id, user});
      }
      std::sort(msg.begin(), msg.end());
      a.messages = {msg};
      break;
    }
  }
  return a;
}

std::string join_ids(const std::vector<int>& ids) {
  std::string s;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(ids[i]);
  }
  return s;
}

}  // namespace

std::vector<IdSet> plan_messages(const StaticPlan& plan) {
  std::vector<IdSet> out;
  for (const PlannedAction& a : plan) {
    out.insert(out.end(), a.messages.begin(), a.messages.end());
  }
  return out;
}

bool verify_plan(const DemandGraph& graph, const StaticPlan& plan) {
  std::map<WantLink, int> covered;
  for (const PlannedAction& a : plan) {
    for (const WantLink& d : a.deliveries) {
      if (d.user < 1 || d.user > graph.num_users() || d.packet < 1 ||
          d.packet > graph.num_packets() || !graph.wants(d.user, d.packet)) {
        return false;
      }
      if (!decodes(graph, a.messages, d.user, d.packet)) return false;
      ++covered[d];
    }
  }
  if (static_cast<int>(covered.size()) != graph.num_want_links()) return false;
  return std::all_of(covered.begin(), covered.end(),
                     [](const auto& kv) { return kv.second == 1; });
}

AcyclicSubgraph max_acyclic_subgraph(const DemandGraph& graph, BoundMode mode) {
  return mode == BoundMode::kExact ? exact_bound(graph) : greedy_bound(graph);
}

int acyclic_subgraph_bound(const DemandGraph& graph, BoundMode mode) {
  return max_acyclic_subgraph(graph, mode).packets;
}

PlannedAction cycle_step(const DemandGraph& graph,
                         const std::vector<UserId>& users,
                         const std::vector<PacketId>& packets) {
  const int k_legs = static_cast<int>(users.size());
  if (k_legs < 2 || static_cast<int>(packets.size()) != k_legs) {
    throw LegMismatchError("a cycle step needs K >= 2 users and one packet per leg");
  }
  std::set<PacketId> distinct(packets.begin(), packets.end());
  std::set<UserId> distinct_users(users.begin(), users.end());
  if (static_cast<int>(distinct.size()) != k_legs ||
      static_cast<int>(distinct_users.size()) != k_legs) {
    throw LegMismatchError("cycle users and packets must be distinct");
  }
  PlannedAction a;
  a.kind = ActionKind::kCycle;
  a.users = users;
  for (int k = 0; k < k_legs; ++k) {
    const UserId from = users[k], to = users[(k + 1) % k_legs];
    if (from < 1 || from > graph.num_users() || to < 1 || to > graph.num_users() ||
        packets[k] < 1 || packets[k] > graph.num_packets()) {
      throw UnknownIdError("cycle step references an unknown user or packet");
    }
    if (!graph.has(from, packets[k]) || !graph.wants(to, packets[k])) {
      throw LegMismatchError("packet " + std::to_string(packets[k]) +
                             " is not on link " + std::to_string(from) + "->" +
                             std::to_string(to));
    }
    a.deliveries.push_back(WantLink{packets[k], to});
  }
  for (int k = 0; k + 1 < k_legs; ++k) {
    IdSet msg{packets[k], packets[k + 1]};
    std::sort(msg.begin(), msg.end());
    a.messages.push_back(std::move(msg));
  }
  return a;
}

ClearanceResult disjoint_cycle_clearance(const DemandGraph& graph) {
  const WeightedCompressedGraph wcg = compress(graph);
  const DisjointCycles dc = has_disjoint_cycles(wcg);
  if (!dc.disjoint) {
    throw HypothesisViolation("compressed graph has a link on two cycles");
  }
  std::set<PacketId> on_cycles;
  for (const UserCycle& c : dc.cycles) {
    for (int k = 0; k < c.length(); ++k) {
      const auto [i, j] = c.link(k);
      for (PacketId p : graph.have(i)) {
        if (!graph.wants(j, p)) continue;
        if (graph.wanters(p).size() != 1) {
          throw HypothesisViolation("cycle packet " + std::to_string(p) +
                                    " is multicast");
        }
        if (!on_cycles.insert(p).second) {
          throw HypothesisViolation("packet " + std::to_string(p) +
                                    " lies on two cycle links");
        }
      }
    }
  }
  PlanBuilder builder(graph);
  int saved = 0;
  for (const UserCycle& c : dc.cycles) {
    int w_min = wcg.weight(c.link(0).first, c.link(0).second);
    for (int k = 1; k < c.length(); ++k) {
      w_min = std::min(w_min, wcg.weight(c.link(k).first, c.link(k).second));
    }
    saved += w_min;
    for (int r = 0; r < w_min; ++r) builder.cycle(c.nodes);
  }
  return finish_result(graph.num_packets() - saved, builder.finish());
}

ClearanceResult two_user_clearance(const DemandGraph& graph) {
  if (graph.num_users() != 2) {
    throw HypothesisViolation("two-user clearance needs exactly two users, got " +
                              std::to_string(graph.num_users()));
  }
  const WeightedCompressedGraph wcg = compress(graph);
  const int w_min = std::min(wcg.weight(1, 2), wcg.weight(2, 1));
  PlanBuilder builder(graph);
  for (int r = 0; r < w_min; ++r) builder.cycle({1, 2});
  return finish_result(graph.num_packets() - w_min, builder.finish());
}

ClearanceResult three_user_relay_clearance(const DemandGraph& graph) {
  if (graph.num_users() != 3 || !is_relay_structure(graph)) {
    throw HypothesisViolation(
        "three-user relay clearance needs 3 users and unicast single-holder packets");
  }
  const WeightedCompressedGraph wcg = compress(graph);
  auto w = [&](UserId i, UserId j) { return wcg.weight(i, j); };
  // Drop the lighter link of each 2-cycle, the smaller (i, j) on ties.
  auto residual = [&](UserId i, UserId j) {
    const bool forward = i < j;
    const int a = w(i, j), b = w(j, i);
    return (forward ? a > b : a >= b) ? a : 0;
  };
  const int min12 = std::min(w(1, 2), w(2, 1));
  const int min23 = std::min(w(2, 3), w(3, 2));
  const int min31 = std::min(w(3, 1), w(1, 3));
  const bool clockwise = residual(1, 2) > 0 && residual(2, 3) > 0 && residual(3, 1) > 0;
  const bool counter = residual(2, 1) > 0 && residual(3, 2) > 0 && residual(1, 3) > 0;

  PlanBuilder builder(graph);
  for (int r = 0; r < min12; ++r) builder.cycle({1, 2});
  for (int r = 0; r < min23; ++r) builder.cycle({2, 3});
  for (int r = 0; r < min31; ++r) builder.cycle({1, 3});
  int z = 0;
  if (clockwise || counter) {
    // Counter-clockwise residue: swap labels 2 and 3 to make it clockwise.
    const std::array<UserId, 4> lab =
        clockwise ? std::array<UserId, 4>{0, 1, 2, 3} : std::array<UserId, 4>{0, 1, 3, 2};
    auto lw = [&](int a, int b) { return w(lab[a], lab[b]); };
    z = std::min({lw(1, 2) - lw(2, 1), lw(2, 3) - lw(3, 2), lw(3, 1) - lw(1, 3)});
    for (int r = 0; r < z; ++r) builder.cycle({lab[1], lab[2], lab[3]});
  }
  return finish_result(graph.num_packets() - min12 - min23 - min31 - z,
                       builder.finish());
}

ClearanceResult three_user_relay_clearance(const WeightedCompressedGraph& wcg) {
  if (wcg.num_users() != 3) {
    throw ShapeError("three-user relay clearance needs a 3x3 weight matrix");
  }
  return three_user_relay_clearance(relay_graph(wcg));
}

ClearanceResult optimal_cyclic_plan(const DemandGraph& graph,
                                    const CyclicSearchOptions& options) {
  const int n = graph.num_users();
  if (graph.num_packets() > options.max_packets) {
    throw SizeCapError("exhaustive cyclic search is capped at " +
                       std::to_string(options.max_packets) + " packets");
  }
  if (n > std::min(options.max_users, kMaxExactBoundUsers)) {
    throw SizeCapError("exhaustive cyclic search is capped at " +
                       std::to_string(options.max_users) + " users");
  }
  State state;
  for (PacketId p = 1; p <= graph.num_packets(); ++p) {
    state.push_back(Entry{p, mask_of(graph.holders(p)), mask_of(graph.wanters(p))});
  }
  StaticPlan plan;
  for (const PlannedAction& a : options.forced_prefix) {
    for (const WantLink& d : a.deliveries) {
      auto it = std::find_if(state.begin(), state.end(),
                             [&](const Entry& e) { return e.id == d.packet; });
      if (it == state.end() || !in_mask(it->rem, d.user)) {
        throw HypothesisViolation("forced action delivers packet " +
                                  std::to_string(d.packet) + " to user " +
                                  std::to_string(d.user) + " twice or unwanted");
      }
      if (!decodes(graph, a.messages, d.user, d.packet)) {
        throw DecodeFailure("forced action is not decodable");
      }
      it->rem &= ~(uint32_t{1} << (d.user - 1));
    }
    state.erase(std::remove_if(state.begin(), state.end(),
                               [](const Entry& e) { return e.rem == 0; }),
                state.end());
    plan.push_back(a);
  }

  CyclicSearch search(n, options.max_cycle_len > 0 ? options.max_cycle_len : n,
                      options.double_cycle);
  while (!state.empty()) {
    const int here = search.value(state);
    bool advanced = false;
    for (const Move& m : search.moves(state)) {
      State next = apply_move(state, m);
      if (m.cost + search.value(next) == here) {
        plan.push_back(to_planned(graph, state, m));
        state = std::move(next);
        advanced = true;
        break;
      }
    }
    if (!advanced) throw std::logic_error("cyclic search lost its optimum");
  }
  return finish_result(acyclic_subgraph_bound(graph, BoundMode::kExact),
                       std::move(plan));
}

bool row_column_structure_check(const std::vector<std::vector<int>>& weights) {
  const size_t n = weights.size();
  bool rows_ok = true, cols_ok = true;
  for (size_t i = 0; i < n; ++i) {
    int in_row = 0, in_col = 0;
    for (size_t j = 0; j < n; ++j) {
      in_row += weights[i].at(j) != 0;
      in_col += weights[j].at(i) != 0;
    }
    rows_ok = rows_ok && in_row <= 1;
    cols_ok = cols_ok && in_col <= 1;
  }
  return rows_ok || cols_ok;
}

StaticSolver parse_static_solver(const std::string& name) {
  static const std::map<std::string, StaticSolver> kNames = {
      {"auto", StaticSolver::kAuto},         {"bound", StaticSolver::kBound},
      {"disjoint", StaticSolver::kDisjoint}, {"two-user", StaticSolver::kTwoUser},
      {"relay3", StaticSolver::kRelay3},     {"exhaustive", StaticSolver::kExhaustive}};
  auto it = kNames.find(name);
  if (it == kNames.end()) throw ConfigError("unknown solver '" + name + "'");
  return it->second;
}

ClearanceResult solve_static(const DemandGraph& graph, StaticSolver solver,
                             const CyclicSearchOptions& options) {
  auto bound_only = [&] {
    ClearanceResult r;
    r.lower_bound = acyclic_subgraph_bound(
        graph, graph.num_users() <= kMaxExactBoundUsers ? BoundMode::kExact
                                                        : BoundMode::kGreedy);
    return r;
  };
  switch (solver) {
    case StaticSolver::kBound:
      return bound_only();
    case StaticSolver::kDisjoint:
      return disjoint_cycle_clearance(graph);
    case StaticSolver::kTwoUser:
      return two_user_clearance(graph);
    case StaticSolver::kRelay3:
      return three_user_relay_clearance(graph);
    case StaticSolver::kExhaustive:
      return optimal_cyclic_plan(graph, options);
    case StaticSolver::kAuto:
      break;
  }
  if (graph.num_users() == 2) return two_user_clearance(graph);
  try {
    return disjoint_cycle_clearance(graph);
  } catch (const HypothesisViolation&) {
  }
  if (graph.num_users() == 3 && is_relay_structure(graph)) {
    return three_user_relay_clearance(graph);
  }
  if (graph.num_packets() <= options.max_packets &&
      graph.num_users() <= std::min(options.max_users, kMaxExactBoundUsers)) {
    return optimal_cyclic_plan(graph, options);
  }
  return bound_only();
}

std::string format_result(const ClearanceResult& r) {
  std::ostringstream out;
  out << "lower_bound=" << r.lower_bound << " plan_slots=";
  if (r.plan_slots) {
    out << *r.plan_slots;
  } else {
    out << "none";
  }
  out << " exact=" << (r.exact ? "true" : "false");
  return out.str();
}

std::string format_plan(const StaticPlan& plan) {
  std::ostringstream out;
  for (const PlannedAction& a : plan) {
    switch (a.kind) {
      case ActionKind::kDirect:
        out << "direct";
        break;
      case ActionKind::kCycle:
        out << a.users.size() << "-cycle";
        break;
      case ActionKind::kDoubleCycle:
        out << "double-cycle";
        break;
      case ActionKind::kCustomLinear:
        out << "custom-linear";
        break;
    }
    out << " users=[" << join_ids(a.users) << "] msgs=[";
    for (size_t k = 0; k < a.messages.size(); ++k) {
      out << (k ? ",{" : "{") << join_ids(a.messages[k]) << '}';
    }
    out << "] delivers=[";
    for (size_t k = 0; k < a.deliveries.size(); ++k) {
      out << (k ? "," : "") << a.deliveries[k].packet << "->" << a.deliveries[k].user;
    }
    out << "]\n";
  }
  return out.str();
}

}  // namespace indexcode
