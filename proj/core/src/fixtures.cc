#include "indexcode/fixtures.h"

#include <algorithm>

#include "indexcode/errors.h"

namespace indexcode::fixtures {
namespace {

// One unicast packet per (holder, wanter) pair, ids in list order.
DemandGraph unicast(int num_users, const std::vector<std::pair<UserId, UserId>>& links) {
  std::vector<IdSet> have(num_users), want(num_users);
  for (size_t k = 0; k < links.size(); ++k) {
    have[links[k].first - 1].push_back(static_cast<int>(k) + 1);
    want[links[k].second - 1].push_back(static_cast<int>(k) + 1);
  }
  return DemandGraph::build(num_users, std::move(have), std::move(want));
}

}  // namespace

DemandGraph fig1() {
  return build_graph(3, {{5}, {}, {4}}, {{1, 2}, {1, 2, 4}, {3, 5}});
}

WeightedCompressedGraph fig4a_weights() {
  WeightedCompressedGraph w(7);
  const struct {
    UserId i, j;
    int weight;
  } links[] = {{1, 2, 4}, {2, 1, 6}, {3, 4, 5}, {4, 5, 4}, {5, 3, 7},
               {6, 7, 1}, {7, 6, 3}, {2, 3, 8}, {5, 6, 6}, {1, 7, 4}};
  for (const auto& l : links) w.set_weight(l.i, l.j, l.weight);
  return w;
}

DemandGraph fig4a() { return relay_graph(fig4a_weights()); }

DemandGraph fig5a() {
  // A B C D E F G
  return unicast(5, {{1, 2}, {2, 3}, {3, 1}, {3, 4}, {4, 2}, {4, 5}, {5, 3}});
}

PlannedAction fig5a_middle_cycle() {
  return cycle_step(fig5a(), {2, 3, 4}, {2, 4, 5});
}

DemandGraph fig5b() {
  // A B C D E F G H I
  return unicast(6, {{2, 1}, {2, 3}, {3, 4}, {4, 6}, {5, 6}, {1, 5}, {5, 3}, {6, 2}, {4, 1}});
}

std::vector<IdSet> fig5b_messages() {
  // E+G+F, H+E, H+D, A+B+H, C+B, C+G, C+I+D
  return {{5, 6, 7}, {5, 8}, {4, 8}, {1, 2, 8}, {2, 3}, {3, 7}, {3, 4, 9}};
}

DemandGraph fig6() {
  // A: 3 -> 1; B: -> 2; C: 1 -> 2, 3; D: 1 -> 3
  return build_graph(3, {{3, 4}, {}, {1}}, {{1}, {2, 3}, {3, 4}});
}

DemandGraph swap() { return build_graph(2, {{2}, {1}}, {{1}, {2}}); }

TrafficSpec paper_3user() {
  TrafficSpec spec;
  spec.num_users = 3;
  for (UserId d = 1; d <= 3; ++d) {
    IdSet others;
    for (UserId u = 1; u <= 3; ++u) {
      if (u != d) others.push_back(u);
    }
    for (const IdSet& side : {IdSet{}, IdSet{others[0]}, IdSet{others[1]}, others}) {
      spec.types.push_back(TrafficType{{d}, side});
    }
  }
  spec.validate();
  return spec;
}

std::vector<double> paper_3user_direction() { return std::vector<double>(12, 0.25); }

bool is_graph_preset(const std::string& name) {
  static const char* kNames[] = {"fig1", "fig4a", "fig5a", "fig5b", "fig6", "swap"};
  return std::find(std::begin(kNames), std::end(kNames), name) != std::end(kNames);
}

DemandGraph graph_preset(const std::string& name) {
  if (name == "fig1") return fig1();
  if (name == "fig4a") return fig4a();
  if (name == "fig5a") return fig5a();
  if (name == "fig5b") return fig5b();
  if (name == "fig6") return fig6();
  if (name == "swap") return swap();
  throw ConfigError("unknown graph preset '" + name + "'");
}

bool is_spec_preset(const std::string& name) { return name == "paper-3user"; }

TrafficSpec spec_preset(const std::string& name) {
  if (name == "paper-3user") return paper_3user();
  throw ConfigError("unknown workload preset '" + name + "'");
}

}  // namespace indexcode::fixtures
