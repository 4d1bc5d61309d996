#include "ecne/paths.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "support.hpp"

using namespace ecne;
using namespace ecne_test;

namespace {

void expect_valid(const Graph& g, NodeId u, NodeId v, std::size_t l,
                  const PathSample& p) {
  ASSERT_EQ(p.edges.size(), l);
  ASSERT_EQ(p.nodes.size(), l + 1);
  EXPECT_EQ(p.nodes.front(), u);
  EXPECT_EQ(p.nodes.back(), v);
  std::set<NodeId> seen(p.nodes.begin(), p.nodes.end());
  EXPECT_EQ(seen.size(), p.nodes.size()) << "repeated node";
  for (std::size_t i = 0; i < l; ++i) {
    auto [a, b] = g.endpoints(p.edges[i]);
    EXPECT_TRUE((a == p.nodes[i] && b == p.nodes[i + 1]) ||
                (b == p.nodes[i] && a == p.nodes[i + 1]))
        << "edge does not join consecutive nodes";
  }
}

}  // namespace

TEST(FindPaths, CycleHasSingleDetour) {
  Graph g = make_cycle(4);  // 0-1-2-3-0
  auto paths = find_paths(g, 0, 1, 3, 100, 1);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].nodes, (std::vector<NodeId>{0, 3, 2, 1}));
  expect_valid(g, 0, 1, 3, paths[0]);
}

TEST(FindPaths, CompleteFourLengthTwo) {
  Graph g = make_complete(4);
  auto paths = find_paths(g, 0, 1, 2, 100, 1);
  ASSERT_EQ(paths.size(), 2u);  // via 2 and via 3
  std::set<NodeId> mids{paths[0].nodes[1], paths[1].nodes[1]};
  EXPECT_EQ(mids, (std::set<NodeId>{2, 3}));
}

TEST(FindPaths, DirectEdgeNeverReturned) {
  Graph g = make_complete(4);
  auto l1 = find_paths(g, 0, 1, 1, 100, 1);
  EXPECT_TRUE(l1.empty());  // the only length-1 path is the excluded edge
  for (std::size_t l : {2u, 3u})
    for (const auto& p : find_paths(g, 0, 1, l, 100, 1))
      for (EdgeId e : p.edges) {
        auto [a, b] = g.endpoints(e);
        EXPECT_FALSE(a == 0 && b == 1);
      }
}

TEST(FindPaths, ReservoirCapsAtLimit) {
  Graph g = make_complete(8);
  std::size_t total = count_paths(g, 0, 1, 4);
  EXPECT_EQ(total, 120u);  // 6*5*4 ordered interior choices
  auto paths = find_paths(g, 0, 1, 4, 100, 1);
  EXPECT_EQ(paths.size(), std::min<std::size_t>(total, 100));
  std::set<std::vector<NodeId>> uniq;
  for (const auto& p : paths) {
    expect_valid(g, 0, 1, 4, p);
    uniq.insert(p.nodes);
  }
  EXPECT_EQ(uniq.size(), paths.size()) << "reservoir returned duplicates";
}

TEST(FindPaths, ReservoirIsRoughlyUniform) {
  // K6, u=0, v=1, l=3: 4*3 = 12 paths, sample 6 of them many times; every
  // path should be picked a reasonable share of the time
  Graph g = make_complete(6);
  std::map<std::vector<NodeId>, std::size_t> hits;
  const int trials = 3000;
  for (int t = 0; t < trials; ++t)
    for (const auto& p : find_paths(g, 0, 1, 3, 6, 1000 + t))
      hits[p.nodes]++;
  ASSERT_EQ(hits.size(), 12u);  // all paths appear across trials
  for (const auto& [nodes, count] : hits) {
    EXPECT_GT(count, trials * 0.35);  // expected share = 0.5
    EXPECT_LT(count, trials * 0.65);
  }
}

TEST(FindPaths, MatchesBruteForceEnumeration) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    Graph g = random_connected(10, 10 + seed, seed);
    for (NodeId u = 0; u < 4; ++u)
      for (NodeId v = u + 1; v < 4; ++v)
        for (std::size_t l : {2u, 3u, 4u}) {
          std::vector<std::vector<NodeId>> want;
          enumerate_paths(g, u, v, l, want);
          auto got = find_paths(g, u, v, l, 100000, seed);
          ASSERT_EQ(got.size(), want.size())
              << "u=" << u << " v=" << v << " l=" << l;
          std::set<std::vector<NodeId>> ws(want.begin(), want.end());
          for (const auto& p : got) {
            expect_valid(g, u, v, l, p);
            EXPECT_TRUE(ws.count(p.nodes));
          }
        }
  }
}

TEST(FindPaths, SortedByNodeSequence) {
  Graph g = make_complete(6);
  auto paths = find_paths(g, 0, 1, 3, 100, 5);
  for (std::size_t i = 1; i < paths.size(); ++i)
    EXPECT_LT(paths[i - 1].nodes, paths[i].nodes);
}

TEST(FindPaths, ArgumentValidation) {
  Graph g = make_cycle(4);
  EXPECT_THROW(find_paths(g, 0, 0, 2, 10, 1), std::invalid_argument);
  EXPECT_THROW(find_paths(g, 0, 1, 0, 10, 1), std::invalid_argument);
}

TEST(FindPaths, NoPathsWhenDisconnected) {
  Graph g(5, {{0, 1}, {2, 3}, {3, 4}});
  EXPECT_TRUE(find_paths(g, 0, 3, 3, 10, 1).empty());
}
