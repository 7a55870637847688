#include <gtest/gtest.h>

#include <random>

#include "indexcode/clearance.h"
#include "indexcode/code_actions.h"
#include "indexcode/errors.h"
#include "indexcode/fixtures.h"
#include "oracles.h"

namespace indexcode {
namespace {

namespace fx = fixtures;

// P12 = 3, P21 = 1, packet 5 wanted by both users and packet 6 wanted by
// user 1 with no holder.
DemandGraph two_user_example() {
  return DemandGraph::build(2, {{1, 2, 3}, {4}}, {{4, 5, 6}, {1, 2, 3, 5}}, 6);
}

// User k holds packet k and user k+1 wants it, wrapping around.
DemandGraph ring(int n) {
  std::vector<IdSet> have(n), want(n);
  for (int k = 0; k < n; ++k) {
    have[k] = {k + 1};
    want[(k + 1) % n] = {k + 1};
  }
  return DemandGraph::build(n, have, want);
}

void expect_plan_ok(const DemandGraph& g, const ClearanceResult& r) {
  ASSERT_TRUE(r.plan.has_value());
  ASSERT_TRUE(r.plan_slots.has_value());
  EXPECT_TRUE(verify_plan(g, *r.plan));
  EXPECT_TRUE(verify_linear_code(g, plan_messages(*r.plan)));
  EXPECT_EQ(static_cast<int>(plan_messages(*r.plan).size()), *r.plan_slots);
  EXPECT_LE(r.lower_bound, *r.plan_slots);
  EXPECT_LE(*r.plan_slots, g.num_packets());
  EXPECT_EQ(r.exact, r.lower_bound == *r.plan_slots);
}

TEST(AcyclicBound, NamedFixtures) {
  EXPECT_EQ(acyclic_subgraph_bound(fx::fig1()), 5);
  EXPECT_EQ(acyclic_subgraph_bound(fx::fig5a()), 5);
  EXPECT_EQ(acyclic_subgraph_bound(fx::fig5b()), 7);
  EXPECT_EQ(acyclic_subgraph_bound(fx::fig4a()), 39);
  EXPECT_EQ(acyclic_subgraph_bound(fx::swap()), 1);
}

TEST(AcyclicBound, WitnessPrunesToAcyclic) {
  for (const DemandGraph& g : {fx::fig5a(), fx::fig5b(), fx::fig6(), fx::fig4a()}) {
    for (BoundMode mode : {BoundMode::kExact, BoundMode::kGreedy}) {
      const AcyclicSubgraph a = max_acyclic_subgraph(g, mode);
      std::vector<PruneOp> ops;
      for (const WantLink& l : a.removed) ops.push_back(RemoveWantLink{l.packet, l.user});
      const PruneResult pr = prune(g, ops);
      EXPECT_TRUE(is_acyclic(pr.graph));
      EXPECT_EQ(pr.graph.num_packets(), a.packets);
    }
  }
}

TEST(AcyclicBound, ExactCapsUsers) {
  EXPECT_THROW(acyclic_subgraph_bound(ring(kMaxExactBoundUsers + 1)), SizeCapError);
  EXPECT_EQ(acyclic_subgraph_bound(ring(kMaxExactBoundUsers + 1), BoundMode::kGreedy),
            kMaxExactBoundUsers);
  EXPECT_EQ(acyclic_subgraph_bound(ring(kMaxExactBoundUsers)), kMaxExactBoundUsers - 1);
}

TEST(AcyclicBound, MatchesBruteForceAndGreedyIsBelow) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    const DemandGraph g = testing::random_graph(rng, 2 + trial % 4, 1 + trial % 7, 0.4, 0.35);
    if (g.num_want_links() > 14) continue;
    const int exact = acyclic_subgraph_bound(g, BoundMode::kExact);
    EXPECT_EQ(exact, testing::brute_force_acyclic_bound(g));
    EXPECT_LE(acyclic_subgraph_bound(g, BoundMode::kGreedy), exact);
  }
}

TEST(DisjointCycle, Fig4a) {
  const DemandGraph g = fx::fig4a();
  const ClearanceResult r = disjoint_cycle_clearance(g);
  EXPECT_EQ(r.lower_bound, 39);
  EXPECT_EQ(r.plan_slots, 39);
  EXPECT_TRUE(r.exact);
  expect_plan_ok(g, r);
}

TEST(DisjointCycle, SwapAndAcyclic) {
  const ClearanceResult s = disjoint_cycle_clearance(fx::swap());
  EXPECT_EQ(s.plan_slots, 1);
  EXPECT_TRUE(s.exact);
  const ClearanceResult a = disjoint_cycle_clearance(fx::fig1());
  EXPECT_EQ(a.plan_slots, 5);
  ASSERT_TRUE(a.plan.has_value());
  for (const PlannedAction& act : *a.plan) EXPECT_EQ(act.kind, ActionKind::kDirect);
}

TEST(DisjointCycle, RejectsOverlapAndMulticast) {
  EXPECT_THROW(disjoint_cycle_clearance(fx::fig5a()), HypothesisViolation);
  // Packet 1 is held by user 1 and wanted by users 2 and 3, on cycle 1->2->1.
  const DemandGraph multicast = DemandGraph::build(3, {{1}, {2}, {}}, {{2}, {1}, {1}});
  EXPECT_THROW(disjoint_cycle_clearance(multicast), HypothesisViolation);
}

TEST(TwoUser, Examples) {
  const DemandGraph g = two_user_example();
  const ClearanceResult r = two_user_clearance(g);
  EXPECT_EQ(r.plan_slots, 5);
  EXPECT_TRUE(r.exact);
  expect_plan_ok(g, r);
  EXPECT_EQ(optimal_cyclic_plan(g).plan_slots, 5);
  EXPECT_EQ(two_user_clearance(fx::swap()).plan_slots, 1);
  const DemandGraph one_way = DemandGraph::build(2, {{1, 2}, {}}, {{3}, {1, 2}});
  EXPECT_EQ(two_user_clearance(one_way).plan_slots, 3);
  EXPECT_THROW(two_user_clearance(fx::fig1()), HypothesisViolation);
}

TEST(Relay3, WorkedExample) {
  const auto w = WeightedCompressedGraph::from_matrix({{0, 5, 1}, {2, 0, 4}, {3, 2, 0}});
  const ClearanceResult r = three_user_relay_clearance(w);
  EXPECT_EQ(r.lower_bound, 10);
  EXPECT_EQ(r.plan_slots, 10);
  EXPECT_TRUE(r.exact);
  const DemandGraph g = relay_graph(w);
  expect_plan_ok(g, r);
  CyclicSearchOptions o;
  o.max_packets = 20;
  EXPECT_EQ(optimal_cyclic_plan(g, o).plan_slots, 10);
  EXPECT_EQ(three_user_relay_clearance(g).plan_slots, 10);
}

TEST(Relay3, CounterClockwiseResidual) {
  // Transpose of the worked example: the residual runs 1->3->2->1.
  const auto w = WeightedCompressedGraph::from_matrix({{0, 2, 3}, {5, 0, 2}, {1, 4, 0}});
  const ClearanceResult r = three_user_relay_clearance(w);
  EXPECT_EQ(r.plan_slots, 10);
  expect_plan_ok(relay_graph(w), r);
}

TEST(Relay3, CaseOneAcyclicResidual) {
  // 2-cycle minima 1, 2, 0; residual 1->2, 3->2, 3->1 is acyclic.
  const auto w = WeightedCompressedGraph::from_matrix({{0, 4, 0}, {1, 0, 2}, {3, 5, 0}});
  const ClearanceResult r = three_user_relay_clearance(w);
  EXPECT_EQ(r.plan_slots, w.total_weight() - 1 - 2 - 0);
  EXPECT_TRUE(r.exact);
}

TEST(Relay3, ZeroAndShape) {
  const ClearanceResult r = three_user_relay_clearance(WeightedCompressedGraph(3));
  EXPECT_EQ(r.plan_slots, 0);
  EXPECT_EQ(r.lower_bound, 0);
  EXPECT_THROW(three_user_relay_clearance(WeightedCompressedGraph(2)), ShapeError);
  EXPECT_THROW(three_user_relay_clearance(fx::fig6()), HypothesisViolation);
}

TEST(CyclicPlan, Fig5a) {
  const DemandGraph g = fx::fig5a();
  const ClearanceResult best = optimal_cyclic_plan(g);
  EXPECT_EQ(best.plan_slots, 5);
  EXPECT_TRUE(best.exact);
  expect_plan_ok(g, best);
  CyclicSearchOptions forced;
  forced.forced_prefix = {fx::fig5a_middle_cycle()};
  const ClearanceResult greedy = optimal_cyclic_plan(g, forced);
  EXPECT_EQ(greedy.plan_slots, 6);
  EXPECT_FALSE(greedy.exact);
  expect_plan_ok(g, greedy);
}

TEST(CyclicPlan, Fig5bNeedsEight) {
  const DemandGraph g = fx::fig5b();
  const ClearanceResult r = optimal_cyclic_plan(g);
  EXPECT_EQ(r.lower_bound, 7);
  EXPECT_EQ(r.plan_slots, 8);
  EXPECT_FALSE(r.exact);
  expect_plan_ok(g, r);
}

TEST(CyclicPlan, AcyclicIsAllDirect) {
  const ClearanceResult r = optimal_cyclic_plan(fx::fig1());
  EXPECT_EQ(r.plan_slots, 5);
  for (const PlannedAction& a : *r.plan) EXPECT_EQ(a.kind, ActionKind::kDirect);
}

TEST(CyclicPlan, CycleLengthCap) {
  // One 3-cycle of unicast packets: 2 slots with 3-cycles, 3 without.
  const DemandGraph g = DemandGraph::build(3, {{1}, {2}, {3}}, {{3}, {1}, {2}});
  EXPECT_EQ(optimal_cyclic_plan(g).plan_slots, 2);
  CyclicSearchOptions o;
  o.max_cycle_len = 2;
  EXPECT_EQ(optimal_cyclic_plan(g, o).plan_slots, 3);
}

TEST(CyclicPlan, DoubleCycle) {
  // Every user wants one packet and holds the other two.
  const DemandGraph g = DemandGraph::build(3, {{2, 3}, {1, 3}, {1, 2}}, {{1}, {2}, {3}});
  const ClearanceResult r = optimal_cyclic_plan(g);
  EXPECT_EQ(r.plan_slots, 1);
  ASSERT_EQ(r.plan->size(), 1u);
  EXPECT_EQ(r.plan->front().kind, ActionKind::kDoubleCycle);
  CyclicSearchOptions o;
  o.double_cycle = false;
  EXPECT_EQ(optimal_cyclic_plan(g, o).plan_slots, 2);
}

TEST(CyclicPlan, SizeCap) {
  const auto w = WeightedCompressedGraph::from_matrix({{0, 5, 1}, {2, 0, 4}, {3, 2, 0}});
  EXPECT_THROW(optimal_cyclic_plan(relay_graph(w)), SizeCapError);
}

TEST(CycleStep, RejectsBadLeg) {
  const DemandGraph g = fx::fig5a();
  EXPECT_THROW(cycle_step(g, {2, 3, 4}, {2, 5, 4}), LegMismatchError);
  const PlannedAction a = cycle_step(g, {2, 3, 4}, {2, 4, 5});
  EXPECT_EQ(a.slots(), 2);
  EXPECT_EQ(a.deliveries.size(), 3u);
}

TEST(RowColumn, Examples) {
  EXPECT_TRUE(row_column_structure_check({{0, 3, 0}, {0, 0, 2}, {1, 0, 0}}));
  EXPECT_FALSE(row_column_structure_check({{0, 5, 1}, {2, 0, 4}, {3, 2, 0}}));
  // One nonzero per column, row 1 has two.
  EXPECT_TRUE(row_column_structure_check({{0, 3, 2}, {1, 0, 0}, {0, 0, 0}}));
}

// A row/column-structured relay matrix is solved exactly by the disjoint
// cycle formula.
TEST(RowColumn, ImpliesDisjointOptimal) {
  std::mt19937_64 rng(11);
  int hits = 0;
  for (int trial = 0; trial < 400 && hits < 40; ++trial) {
    const int n = 2 + trial % 3;
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
      const int j = static_cast<int>(rng() % n);
      if (j != i) m[i][j] = 1 + static_cast<int>(rng() % 3);
    }
    if (!row_column_structure_check(m)) continue;
    const DemandGraph g = relay_graph(WeightedCompressedGraph::from_matrix(m));
    if (g.num_packets() > 12) continue;
    ++hits;
    EXPECT_EQ(disjoint_cycle_clearance(g).plan_slots, optimal_cyclic_plan(g).plan_slots);
  }
  EXPECT_GE(hits, 20);
}

TEST(SolveStatic, DispatchAndFormat) {
  EXPECT_EQ(parse_static_solver("auto"), StaticSolver::kAuto);
  EXPECT_EQ(parse_static_solver("relay3"), StaticSolver::kRelay3);
  EXPECT_THROW(parse_static_solver("magic"), ConfigError);
  const ClearanceResult r = solve_static(fx::fig1());
  EXPECT_EQ(format_result(r), "lower_bound=5 plan_slots=5 exact=true");
  EXPECT_EQ(solve_static(fx::fig4a()).plan_slots, 39);
  EXPECT_EQ(solve_static(fx::fig5b()).plan_slots, 8);
  const ClearanceResult b = solve_static(fx::fig5b(), StaticSolver::kBound);
  EXPECT_FALSE(b.plan.has_value());
  EXPECT_EQ(format_result(b), "lower_bound=7 plan_slots=none exact=false");
  EXPECT_FALSE(format_plan(*solve_static(fx::swap()).plan).empty());
}

// Oracle agreement on random instances satisfying each hypothesis.
TEST(OracleAgreement, TwoUser) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    const DemandGraph g = testing::random_two_user(rng, 10);
    const ClearanceResult r = two_user_clearance(g);
    expect_plan_ok(g, r);
    EXPECT_EQ(r.plan_slots, optimal_cyclic_plan(g).plan_slots);
    EXPECT_EQ(r.plan_slots, acyclic_subgraph_bound(g));
  }
}

TEST(OracleAgreement, Relay3) {
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 60; ++trial) {
    const auto w = testing::random_relay3(rng, 12);
    const DemandGraph g = relay_graph(w);
    const ClearanceResult r = three_user_relay_clearance(w);
    expect_plan_ok(g, r);
    EXPECT_EQ(r.plan_slots, optimal_cyclic_plan(g).plan_slots);
    EXPECT_EQ(r.plan_slots, acyclic_subgraph_bound(g));
  }
}

TEST(OracleAgreement, DisjointCycles) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 60; ++trial) {
    const DemandGraph g = testing::random_disjoint_cycles(rng, 12);
    const ClearanceResult r = disjoint_cycle_clearance(g);
    expect_plan_ok(g, r);
    EXPECT_EQ(r.plan_slots, optimal_cyclic_plan(g).plan_slots);
    EXPECT_EQ(r.plan_slots, acyclic_subgraph_bound(g));
  }
}

}  // namespace
}  // namespace indexcode
