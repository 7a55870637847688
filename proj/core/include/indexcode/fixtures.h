#pragma once

#include <string>
#include <vector>

#include "indexcode/clearance.h"
#include "indexcode/demand_graph.h"
#include "indexcode/traffic.h"

namespace indexcode::fixtures {

// 3 users, 5 packets, acyclic; clears in 5 slots.
DemandGraph fig1();

// 7-user relay batch, 48 packets on three disjoint cycles with minimum
// link weights 4, 4 and 1.
WeightedCompressedGraph fig4a_weights();
DemandGraph fig4a();

// 5 users, packets A..G as ids 1..7, one unicast packet per link:
// side cycles 1->2->3->1 (A, B, C) and 3->4->5->3 (D, F, G), middle cycle
// 2->3->4->2 (B, D, E).
DemandGraph fig5a();
// The middle 3-cycle on B, D, E as a forced first action.
PlannedAction fig5a_middle_cycle();

// 6 users, packets A..I as ids 1..9; linear coding beats cyclic coding.
DemandGraph fig5b();
// The seven XOR messages E+G+F, H+E, H+D, A+B+H, C+B, C+G, C+I+D.
std::vector<IdSet> fig5b_messages();

// 3 users; packet C is held by user 1 and wanted by users 2 and 3.
DemandGraph fig6();

// User 1 has B wants A, user 2 has A wants B.
DemandGraph swap();

// 3 users, 12 types. Type 4(d-1)+k goes to user d with side information at
// none, the lower other user, the higher other user, or both (k = 0..3).
TrafficSpec paper_3user();
// 0.25 per type, so theta is the per-user rate.
std::vector<double> paper_3user_direction();

// Graph presets: fig1, fig4a, fig5a, fig5b, fig6, swap.
DemandGraph graph_preset(const std::string& name);
bool is_graph_preset(const std::string& name);
// Spec presets: paper-3user.
TrafficSpec spec_preset(const std::string& name);
bool is_spec_preset(const std::string& name);

}  // namespace indexcode::fixtures
