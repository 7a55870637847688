#include "indexcode/code_actions.h"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "indexcode/errors.h"

namespace indexcode {
namespace {

void check_type(const TrafficSpec& spec, int type) {
  if (type < 0 || type >= spec.num_types()) {
    throw UnknownIdError("traffic type " + std::to_string(type) +
                         " out of range");
  }
}

// Plan, refs and clearance of the XOR chain; no validation.
CodingAction build_cycle(int num_types, const std::vector<UserId>& users,
                         const std::vector<int>& leg_types) {
  const int k_legs = static_cast<int>(users.size());
  CodingAction a;
  a.kind = ActionKind::kCycle;
  a.frame_len = k_legs - 1;
  a.clearance.assign(num_types, 0);
  a.cycle = users;
  for (int k = 0; k < k_legs; ++k) {
    const int t = leg_types[k];
    a.cleared.push_back(PacketRef{t, a.clearance[t]});
    ++a.clearance[t];
  }
  for (int k = 0; k + 1 < k_legs; ++k) {
    a.plan.push_back(Message{a.cleared[k], a.cleared[k + 1]});
  }
  return a;
}

void apply_relay(CodingAction& a) {
  a.uplink_slots = a.total_cleared();
  a.frame_len += a.uplink_slots;
}

int kind_rank(const CodingAction& a) {
  switch (a.kind) {
    case ActionKind::kDirect:
      return 0;
    case ActionKind::kCycle:
      return static_cast<int>(a.cycle.size()) - 1;
    case ActionKind::kDoubleCycle:
      return 1000;
    case ActionKind::kCustomLinear:
      return 2000;
  }
  return 3000;
}

std::vector<int> leg_type_list(const CodingAction& a) {
  std::vector<int> types;
  for (const PacketRef& r : a.cleared) types.push_back(r.type);
  return types;
}

std::string format_ref(const PacketRef& r) {
  std::string s = "t" + std::to_string(r.type);
  if (r.slot > 0) s += "#" + std::to_string(r.slot);
  return s;
}

}  // namespace

int CodingAction::total_cleared() const {
  if (is_template) return static_cast<int>(cycle.size());
  return std::accumulate(clearance.begin(), clearance.end(), 0);
}

double CodingAction::efficiency() const {
  return static_cast<double>(total_cleared()) / frame_len;
}

std::string CodingAction::kind_name() const {
  switch (kind) {
    case ActionKind::kDirect:
      return "direct";
    case ActionKind::kCycle:
      return std::to_string(cycle.size()) + "-cycle" +
             (is_template ? "-template" : "");
    case ActionKind::kDoubleCycle:
      return "double-cycle";
    case ActionKind::kCustomLinear:
      return "custom-linear";
  }
  return "unknown";
}

PacketPayload PacketPayload::zero(size_t num_bits) {
  return PacketPayload{BitVector(num_bits)};
}

PacketPayload PacketPayload::random(size_t num_bits, std::mt19937_64& rng) {
  PacketPayload p{BitVector(num_bits)};
  auto& words = p.bits.words();
  for (auto& w : words) w = rng();
  if (const size_t tail = num_bits % 64; tail != 0 && !words.empty()) {
    words.back() &= (uint64_t{1} << tail) - 1;
  }
  return p;
}

CodingAction direct_action(const TrafficSpec& spec, int type) {
  check_type(spec, type);
  CodingAction a;
  a.kind = ActionKind::kDirect;
  a.frame_len = 1;
  a.clearance.assign(spec.num_types(), 0);
  a.clearance[type] = 1;
  a.cleared = {PacketRef{type, 0}};
  a.plan = {Message{PacketRef{type, 0}}};
  return a;
}

CodingAction k_cycle_action(const TrafficSpec& spec, const UserCycle& cycle,
                            const std::vector<int>& leg_types) {
  const int k_legs = cycle.length();
  if (k_legs < 2) throw LegMismatchError("a cycle needs at least two users");
  if (static_cast<int>(leg_types.size()) != k_legs) {
    throw LegMismatchError("one traffic type per cycle leg is required");
  }
  std::set<UserId> distinct(cycle.nodes.begin(), cycle.nodes.end());
  if (static_cast<int>(distinct.size()) != k_legs) {
    throw LegMismatchError("cycle users must be distinct");
  }
  for (UserId n : cycle.nodes) {
    if (n < 1 || n > spec.num_users) throw UnknownIdError("cycle user out of range");
  }
  for (int k = 0; k < k_legs; ++k) {
    check_type(spec, leg_types[k]);
    const auto [from, to] = cycle.link(k);
    if (!spec.in_side(leg_types[k], from) || !spec.in_dest(leg_types[k], to)) {
      throw LegMismatchError("leg " + std::to_string(k) + " (" +
                             std::to_string(from) + "->" + std::to_string(to) +
                             ") does not match traffic type " +
                             std::to_string(leg_types[k]));
    }
  }
  CodingAction a = build_cycle(spec.num_types(), cycle.nodes, leg_types);
  // Multicast legs also have to reach their other destinations.
  const InducedCode code = induced_code(a, spec);
  if (!verify_linear_code(code.graph, code.messages)) {
    throw LegMismatchError(
        "some destination of a multicast leg cannot decode the chain");
  }
  return a;
}

CodingAction double_cycle_action(const TrafficSpec& spec,
                                 std::array<int, 3> types) {
  for (int t : types) check_type(spec, t);
  if (types[0] == types[1] || types[1] == types[2] || types[0] == types[2]) {
    throw PatternMismatchError("double-cycle needs three distinct types");
  }
  for (int i = 0; i < 3; ++i) {
    for (UserId u : spec.types[types[i]].dest) {
      for (int j = 0; j < 3; ++j) {
        if (j != i && !spec.in_side(types[j], u)) {
          throw PatternMismatchError(
              "user " + std::to_string(u) + " wants type " +
              std::to_string(types[i]) + " but lacks type " +
              std::to_string(types[j]));
        }
      }
    }
  }
  CodingAction a;
  a.kind = ActionKind::kDoubleCycle;
  a.frame_len = 1;
  a.clearance.assign(spec.num_types(), 0);
  Message msg;
  for (int t : types) {
    a.clearance[t] = 1;
    a.cleared.push_back(PacketRef{t, 0});
    msg.push_back(PacketRef{t, 0});
  }
  a.plan = {msg};
  return a;
}

ActionSetOptions ActionSetOptions::from_kinds(const std::string& kinds,
                                              int max_cycle_len) {
  ActionSetOptions opt;
  opt.include_direct = false;
  opt.include_double_cycle = false;
  opt.max_cycle_len = 0;
  std::stringstream ss(kinds);
  std::string kind;
  while (std::getline(ss, kind, ',')) {
    if (kind == "direct" || kind == "uncoded") {
      opt.include_direct = true;
    } else if (kind == "cycle") {
      opt.max_cycle_len = max_cycle_len;
    } else if (kind == "double") {
      opt.include_double_cycle = true;
    } else if (kind == "all") {
      opt.include_direct = true;
      opt.include_double_cycle = true;
      opt.max_cycle_len = max_cycle_len;
    } else {
      throw ConfigError("unknown action kind '" + kind + "'");
    }
  }
  return opt;
}

bool ActionSet::has_templates() const {
  return std::any_of(actions.begin(), actions.end(),
                     [](const CodingAction& a) { return a.is_template; });
}

ActionSet generate_action_set(const TrafficSpec& spec,
                              const ActionSetOptions& options) {
  const int m_types = spec.num_types();
  ActionSet set;
  set.options = options;
  set.num_types = m_types;

  std::vector<CodingAction> candidates;
  if (options.include_direct) {
    for (int m = 0; m < m_types; ++m) candidates.push_back(direct_action(spec, m));
  }

  if (options.max_cycle_len >= 2) {
    // User-level digraph: i -> j when some type is cached at i and wanted
    // by j.
    WeightedCompressedGraph type_graph(spec.num_users);
    std::map<std::pair<UserId, UserId>, std::vector<int>> concrete_legs;
    for (int m = 0; m < m_types; ++m) {
      const TrafficType& t = spec.types[m];
      for (UserId i : t.side) {
        for (UserId j : t.dest) {
          concrete_legs[{i, j}].push_back(m);
          type_graph.set_weight(i, j, type_graph.weight(i, j) + 1);
          if (t.dest.size() == 1) set.leg_types[{i, j}].push_back(m);
        }
      }
    }
    for (const UserCycle& cycle :
         enumerate_cycles(type_graph, options.max_cycle_len)) {
      const int k_legs = cycle.length();
      if (options.template_cycles) {
        bool all_legs = true;
        for (int k = 0; k < k_legs; ++k) {
          all_legs = all_legs && set.leg_types.count(cycle.link(k)) > 0;
        }
        if (!all_legs) continue;
        CodingAction a;
        a.kind = ActionKind::kCycle;
        a.is_template = true;
        a.cycle = cycle.nodes;
        a.frame_len = k_legs - 1;
        candidates.push_back(std::move(a));
        continue;
      }
      std::vector<const std::vector<int>*> legs;
      for (int k = 0; k < k_legs; ++k) legs.push_back(&concrete_legs[cycle.link(k)]);
      std::vector<size_t> idx(k_legs, 0);
      while (true) {
        std::vector<int> types(k_legs);
        for (int k = 0; k < k_legs; ++k) types[k] = (*legs[k])[idx[k]];
        try {
          candidates.push_back(k_cycle_action(spec, cycle, types));
        } catch (const LegMismatchError&) {
          // Multicast combination some destination cannot decode.
        }
        int k = k_legs - 1;
        while (k >= 0 && ++idx[k] == legs[k]->size()) idx[k--] = 0;
        if (k < 0) break;
      }
    }
  }

  if (options.include_double_cycle) {
    for (int a = 0; a < m_types; ++a) {
      for (int b = a + 1; b < m_types; ++b) {
        for (int c = b + 1; c < m_types; ++c) {
          try {
            candidates.push_back(double_cycle_action(spec, {a, b, c}));
          } catch (const PatternMismatchError&) {
          }
        }
      }
    }
  }

  auto sort_key = [](const CodingAction& a) {
    std::vector<int> sorted_types = a.is_template ? a.cycle : leg_type_list(a);
    std::vector<int> ordered = sorted_types;
    std::sort(sorted_types.begin(), sorted_types.end());
    return std::make_tuple(kind_rank(a), a.is_template, sorted_types, ordered);
  };
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const CodingAction& x, const CodingAction& y) {
                     return sort_key(x) < sort_key(y);
                   });

  std::set<std::pair<int, std::vector<int>>> seen;
  for (CodingAction& a : candidates) {
    if (!a.is_template && !seen.insert({kind_rank(a), a.clearance}).second) {
      continue;
    }
    if (options.relay_mode) apply_relay(a);
    a.id = static_cast<int>(set.actions.size());
    set.actions.push_back(std::move(a));
  }
  return set;
}

CodingAction bind_template(const CodingAction& action, const ActionSet& set,
                           const std::vector<long long>& backlog) {
  if (!action.is_template) return action;
  const int k_legs = static_cast<int>(action.cycle.size());
  std::vector<int> types(k_legs);
  for (int k = 0; k < k_legs; ++k) {
    const UserId from = action.cycle[k];
    const UserId to = action.cycle[(k + 1) % k_legs];
    const auto& eligible = set.leg_types.at({from, to});
    int best = eligible.front();
    for (int m : eligible) {
      if (backlog[m] > backlog[best]) best = m;
    }
    types[k] = best;
  }
  CodingAction bound = build_cycle(set.num_types, action.cycle, types);
  bound.id = action.id;
  if (set.options.relay_mode) apply_relay(bound);
  return bound;
}

DecodedPayloads execute_and_decode(const CodingAction& action,
                                   const TrafficSpec& spec,
                                   const std::vector<PacketPayload>& payloads) {
  if (action.is_template) {
    throw TemplateActionError("bind a template action before executing it");
  }
  const size_t n_refs = action.cleared.size();
  if (payloads.size() != n_refs) {
    throw DecodeFailure("expected one payload per cleared packet");
  }
  std::map<PacketRef, size_t> index;
  for (size_t k = 0; k < n_refs; ++k) {
    if (!index.emplace(action.cleared[k], k).second) {
      throw DecodeFailure("cleared packets must be distinct");
    }
  }
  const size_t bits = n_refs ? payloads.front().bits.size() : 0;
  for (const auto& p : payloads) {
    if (p.bits.size() != bits) throw DecodeFailure("payload lengths differ");
  }

  // The broadcast itself: each message is the XOR of its packets.
  struct Row {
    BitVector coef;
    BitVector data;
  };
  std::vector<Row> broadcast;
  for (const Message& msg : action.plan) {
    Row row{BitVector(n_refs), BitVector(bits)};
    for (const PacketRef& r : msg) {
      auto it = index.find(r);
      if (it == index.end()) {
        throw DecodeFailure("message references a packet the action does not clear");
      }
      row.coef.flip(it->second);
      row.data ^= payloads[it->second].bits;
    }
    broadcast.push_back(std::move(row));
  }

  DecodedPayloads decoded;
  for (UserId u = 1; u <= spec.num_users; ++u) {
    std::vector<size_t> targets;
    for (size_t k = 0; k < n_refs; ++k) {
      if (spec.in_dest(action.cleared[k].type, u)) targets.push_back(k);
    }
    if (targets.empty()) continue;

    // Elimination that carries payloads along with coefficients.
    std::vector<std::optional<Row>> pivot(n_refs);
    auto absorb = [&](Row row) {
      for (size_t i = n_refs; i-- > 0;) {
        if (!row.coef.test(i)) continue;
        if (!pivot[i]) {
          pivot[i] = std::move(row);
          return;
        }
        row.coef ^= pivot[i]->coef;
        row.data ^= pivot[i]->data;
      }
    };
    for (size_t k = 0; k < n_refs; ++k) {
      if (spec.in_side(action.cleared[k].type, u)) {
        absorb(Row{BitVector::unit(n_refs, k), payloads[k].bits});
      }
    }
    for (const Row& row : broadcast) absorb(row);

    for (size_t k : targets) {
      BitVector coef = BitVector::unit(n_refs, k);
      BitVector data(bits);
      for (size_t i = n_refs; i-- > 0;) {
        if (coef.test(i) && pivot[i]) {
          coef ^= pivot[i]->coef;
          data ^= pivot[i]->data;
        }
      }
      if (!coef.none()) {
        throw DecodeFailure("user " + std::to_string(u) + " cannot decode " +
                            format_ref(action.cleared[k]));
      }
      decoded[u][action.cleared[k]] = PacketPayload{std::move(data)};
    }
  }
  return decoded;
}

bool verify_linear_code(const DemandGraph& graph,
                        const std::vector<IdSet>& messages) {
  const int n_packets = graph.num_packets();
  for (const IdSet& msg : messages) {
    for (PacketId p : msg) {
      if (p < 1 || p > n_packets) {
        throw UnknownIdError("message references unknown packet " +
                             std::to_string(p));
      }
    }
  }
  // Work modulo the user's side information: drop known coordinates from
  // every message, then ask whether e_p is in the span of what remains.
  for (UserId n = 1; n <= graph.num_users(); ++n) {
    const IdSet& wanted = graph.want(n);
    if (wanted.empty()) continue;
    const IdSet& known = graph.have(n);
    Gf2Basis basis(n_packets);
    for (const IdSet& msg : messages) {
      BitVector v(n_packets);
      for (PacketId p : msg) {
        if (!std::binary_search(known.begin(), known.end(), p)) v.flip(p - 1);
      }
      basis.insert(std::move(v));
    }
    for (PacketId p : wanted) {
      if (!basis.in_span(BitVector::unit(n_packets, p - 1))) return false;
    }
  }
  return true;
}

InducedCode induced_code(const CodingAction& action, const TrafficSpec& spec) {
  if (action.is_template) {
    throw TemplateActionError("bind a template action before inspecting its code");
  }
  const int n = spec.num_users;
  std::vector<IdSet> have(n), want(n);
  std::map<PacketRef, int> id;
  for (size_t k = 0; k < action.cleared.size(); ++k) {
    const PacketRef& r = action.cleared[k];
    id[r] = static_cast<int>(k) + 1;
    for (UserId u : spec.types.at(r.type).side) have[u - 1].push_back(k + 1);
    for (UserId u : spec.types.at(r.type).dest) want[u - 1].push_back(k + 1);
  }
  std::vector<IdSet> messages;
  for (const Message& msg : action.plan) {
    IdSet ids;
    for (const PacketRef& r : msg) ids.push_back(id.at(r));
    std::sort(ids.begin(), ids.end());
    messages.push_back(std::move(ids));
  }
  return InducedCode{
      DemandGraph::build(n, std::move(have), std::move(want),
                         static_cast<int>(action.cleared.size())),
      std::move(messages)};
}

std::string format_action(const CodingAction& a) {
  std::ostringstream out;
  out << a.id << ' ' << a.kind_name() << " T=" << a.frame_len;
  if (a.is_template) {
    out << " legs=[";
    for (size_t k = 0; k < a.cycle.size(); ++k) {
      if (k) out << ',';
      out << a.cycle[k] << "->" << a.cycle[(k + 1) % a.cycle.size()];
    }
    out << ']';
    return out.str();
  }
  out << " mu=[";
  for (size_t m = 0; m < a.clearance.size(); ++m) {
    if (m) out << ',';
    out << a.clearance[m];
  }
  out << "] plan=[";
  for (size_t k = 0; k < a.plan.size(); ++k) {
    if (k) out << ',';
    out << '{';
    for (size_t i = 0; i < a.plan[k].size(); ++i) {
      if (i) out << ',';
      out << format_ref(a.plan[k][i]);
    }
    out << '}';
  }
  out << ']';
  return out.str();
}

std::string dump_action_set(const ActionSet& set) {
  std::string out;
  for (const CodingAction& a : set.actions) out += format_action(a) + "\n";
  return out;
}

}  // namespace indexcode
