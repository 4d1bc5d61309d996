#include "ecne/centrality.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "support.hpp"

using namespace ecne;
using namespace ecne_test;

namespace {

void expect_matches_oracle(const Graph& g, double tol = 1e-6) {
  auto got = current_flow_betweenness(g);
  auto want = oracle_current_flow(g);
  ASSERT_EQ(got.values.size(), want.size());
  for (std::size_t v = 0; v < want.size(); ++v)
    EXPECT_NEAR(got.values[v], want[v], tol) << "node " << v;
}

}  // namespace

TEST(CurrentFlow, TriangleIsUniform) {
  auto cb = current_flow_betweenness(make_complete(3));
  EXPECT_NEAR(cb.values[0], cb.values[1], 1e-12);
  EXPECT_NEAR(cb.values[1], cb.values[2], 1e-12);
  EXPECT_NEAR(cb.values[0], 1.0 / 3.0, 1e-12);
}

TEST(CurrentFlow, PathMiddleDominates) {
  auto cb = current_flow_betweenness(make_path(3));
  EXPECT_GT(cb.values[1], cb.values[0]);
  EXPECT_NEAR(cb.values[0], cb.values[2], 1e-12);
  EXPECT_NEAR(cb.values[1], 1.0, 1e-12);
  EXPECT_NEAR(cb.values[0], 0.0, 1e-12);
}

TEST(CurrentFlow, StarCenterAndLeaves) {
  // 4 leaves: center carries the full unit current of each of the 6
  // leaf pairs, leaves carry nothing.
  Graph g = make_star(4);
  auto cb = current_flow_betweenness(g);
  auto want = oracle_current_flow(g);
  EXPECT_NEAR(want[0], 6.0, 1e-9);
  for (NodeId v = 1; v <= 4; ++v) EXPECT_NEAR(want[v], 0.0, 1e-12);
  for (NodeId v = 0; v < g.node_count(); ++v)
    EXPECT_NEAR(cb.values[v], want[v], 1e-9);
}

TEST(CurrentFlow, MatchesOracleOnFixtures) {
  expect_matches_oracle(make_path(5));
  expect_matches_oracle(make_cycle(6));
  expect_matches_oracle(make_complete(5));
  expect_matches_oracle(make_star(6));
  expect_matches_oracle(random_connected(8, 6, 3));
}

TEST(CurrentFlow, MatchesOracleOnRandomSixNodeGraphs) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed)
    expect_matches_oracle(random_connected(6, 3 + seed % 7, seed));
}

TEST(CurrentFlow, DisconnectedComputedPerComponent) {
  // two triangles plus an isolated node
  Graph g(7, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  auto cb = current_flow_betweenness(g);
  for (NodeId v = 0; v < 6; ++v) EXPECT_NEAR(cb.values[v], 1.0 / 3.0, 1e-12);
  EXPECT_EQ(cb.values[6], 0.0);
  expect_matches_oracle(g);
}

TEST(CurrentFlow, PermutationEquivariant) {
  Graph g = random_connected(7, 5, 11);
  // relabel v -> (v + 3) mod 7
  std::vector<std::pair<NodeId, NodeId>> relabeled;
  for (const auto& [u, v] : g.edges())
    relabeled.push_back({(u + 3) % 7, (v + 3) % 7});
  Graph h(7, relabeled);
  auto cg = current_flow_betweenness(g);
  auto ch = current_flow_betweenness(h);
  for (NodeId v = 0; v < 7; ++v)
    EXPECT_NEAR(cg.values[v], ch.values[(v + 3) % 7], 1e-9);
}

TEST(CurrentFlow, VertexTransitiveIsConstant) {
  for (const Graph& g : {make_cycle(8), make_complete(6)}) {
    auto cb = current_flow_betweenness(g);
    auto [mn, mx] = std::minmax_element(cb.values.begin(), cb.values.end());
    EXPECT_LT(*mx - *mn, 1e-9);
  }
}

TEST(CurrentFlow, GroundingChoiceIrrelevant) {
  Graph g = random_connected(9, 8, 21);
  CfbOptions a, b;
  a.ground_offset = 0;
  b.ground_offset = 4;
  auto ca = current_flow_betweenness(g, a);
  auto cbv = current_flow_betweenness(g, b);
  for (NodeId v = 0; v < g.node_count(); ++v)
    EXPECT_NEAR(ca.values[v], cbv.values[v], 1e-8);
}

TEST(CurrentFlow, IterativeSolverAgreesWithDense) {
  Graph g = random_connected(40, 50, 5);
  CfbOptions dense, iterative;
  iterative.dense_threshold = 1;  // force CG
  auto cd = current_flow_betweenness(g, dense);
  auto ci = current_flow_betweenness(g, iterative);
  for (NodeId v = 0; v < g.node_count(); ++v)
    EXPECT_NEAR(cd.values[v], ci.values[v], 1e-7);
}

TEST(CurrentFlow, ThreadedAccumulationIsDeterministic) {
  Graph g = random_connected(30, 40, 9);
  CfbOptions one, four;
  one.threads = 1;
  four.threads = 4;
  auto c1 = current_flow_betweenness(g, one);
  auto c4 = current_flow_betweenness(g, four);
  EXPECT_EQ(c1.values, c4.values);
}

TEST(CurrentFlow, EmptyGraphRejected) {
  EXPECT_THROW(current_flow_betweenness(Graph(0, {})),
               std::invalid_argument);
}

TEST(Clamp, FloorsAndKeepsRaw) {
  CentralityVector cv;
  cv.values = {0.0, 0.5, 1e-9};
  auto out = clamp(cv, 1e-6);
  EXPECT_DOUBLE_EQ(out.values[0], 1e-6);
  EXPECT_DOUBLE_EQ(out.values[1], 0.5);
  EXPECT_DOUBLE_EQ(out.values[2], 1e-6);
  EXPECT_DOUBLE_EQ(out.raw[0], 0.0);
  EXPECT_DOUBLE_EQ(out.raw[2], 1e-9);
  EXPECT_TRUE(out.clamped());
}

TEST(Clamp, AllZeroBecomesAllEpsilon) {
  CentralityVector cv;
  cv.values.assign(5, 0.0);
  auto out = clamp(cv, 1e-6);
  for (double v : out.values) EXPECT_DOUBLE_EQ(v, 1e-6);
}

TEST(Clamp, RequiresPositiveEpsilon) {
  CentralityVector cv;
  cv.values = {1.0};
  EXPECT_THROW(clamp(cv, 0.0), std::invalid_argument);
  EXPECT_THROW(clamp(cv, -1.0), std::invalid_argument);
}
