// Copyright 2026 The dynmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dynmatch/matcher.hpp"

#include <gtest/gtest.h>

#include "dynmatch/gen.hpp"
#include "dynmatch/oracle.hpp"
#include "test_support.hpp"

namespace dynmatch {
namespace {

TEST(StaticApproxMatching, EmptyGraph) {
  const DynamicGraph g(4);
  EXPECT_EQ(static_approx_matching(g, Ratio(1, 10)).size(), 0u);
}

TEST(StaticApproxMatching, PerfectMatchingPath) {
  DynamicGraph g(4);
  g.insert_edge(Edge(0, 1));
  g.insert_edge(Edge(2, 3));
  const Matching m = static_approx_matching(g, Ratio(1, 2));
  EXPECT_EQ(m.size(), 2u);
}

TEST(StaticApproxMatching, EngineAgreesWithBruteForce) {
  // The matcher's augmenting engine is independent of the oracle's; both are
  // pinned against exhaustive enumeration.
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const std::size_t n = 4 + seed % 9;
    const std::size_t m = (n * (n - 1) / 2) * (seed % 3 + 1) / 4;
    const DynamicGraph g = random_graph(n, m, seed * 131);
    EXPECT_EQ(static_approx_matching(g, Ratio(1, 4)).size(),
              testing_support::mu_bruteforce(g))
        << "seed " << seed;
  }
}

TEST(StaticApproxMatching, EnginesAgreeAtScale) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const DynamicGraph g = random_graph(80, 300 + 10 * seed, seed);
    EXPECT_EQ(static_approx_matching(g, Ratio(1, 10)).size(), mu_exact(g));
  }
}

TEST(StaticApproxMatching, BoundedDegreeOracleComparison) {
  // Seeded random host, max degree <= 8, eps = 0.1: size >= mu/1.1.
  GenOptions opts;
  opts.degree_cap = 8;
  const auto events = generate_stream(StreamKind::kErdosRenyiDynamic, 50, 400, 7, opts);
  DynamicGraph h(50);
  for (const auto& ev : events) h.apply(ev);
  ASSERT_LE(h.max_degree(), 8u);
  const Matching m = static_approx_matching(h, Ratio(1, 10));
  EXPECT_TRUE(check_matching(h, m));
  EXPECT_GE(m.size() * 11, mu_exact(h) * 10);
}

TEST(StaticApproxMatching, NoShortAugmentingPathAfterRebuild) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GenOptions opts;
    opts.degree_cap = 6;
    const auto events = generate_stream(StreamKind::kErdosRenyiDynamic, 30, 200, seed, opts);
    DynamicGraph h(30);
    for (const auto& ev : events) h.apply(ev);
    const Matching m = static_approx_matching(h, Ratio(1, 3));
    // eps = 1/3 -> no augmenting path of length <= 2*ceil(3)-1 = 5; the
    // bounded-depth search is exhaustive at this depth.
    EXPECT_FALSE(testing_support::has_augmenting_path_upto(h, m, 5));
  }
}

TEST(BoundedDepthSearch, DetectsPlantedAugmentingPath) {
  // Sanity-check the test oracle itself: a 3-path with the middle edge
  // matched admits an augmenting path of length 3.
  DynamicGraph g(4);
  g.insert_edge(Edge(0, 1));
  g.insert_edge(Edge(1, 2));
  g.insert_edge(Edge(2, 3));
  Matching m;
  m.add(Edge(1, 2));
  EXPECT_TRUE(testing_support::has_augmenting_path_upto(g, m, 3));
  EXPECT_FALSE(testing_support::has_augmenting_path_upto(g, m, 1));
}

TEST(LazyMatcher, DeleteMatchedEdgeShrinksMatching) {
  DynamicGraph h(4);
  h.insert_edge(Edge(0, 1));
  h.insert_edge(Edge(2, 3));
  LazyMatcher matcher(h, Ratio(1, 2));
  EXPECT_EQ(matcher.matching().size(), 2u);
  h.delete_edge(Edge(0, 1));
  matcher.apply(h, UpdateEvent::remove(0, 1));
  EXPECT_TRUE(check_matching(h, matcher.matching()));
  EXPECT_LE(matcher.matching().size(), 2u);
}

TEST(LazyMatcher, RebuildFiresExactlyOnceAfterThresholdPlusOne) {
  DynamicGraph h(64);
  for (VertexId v = 0; v + 1 < 40; v += 2) h.insert_edge(Edge(v, v + 1));
  LazyMatcher matcher(h, Ratio(1, 4));  // last_size 20 -> threshold 5
  EXPECT_EQ(matcher.threshold(), 5);
  std::size_t rebuilds = 0;
  for (int i = 0; i < 6; ++i) {
    h.insert_edge(Edge(40 + 2 * i, 41 + 2 * i));
    matcher.apply(h, UpdateEvent::insert(40 + 2 * i, 41 + 2 * i));
    if (matcher.rebuilt_last_op()) ++rebuilds;
  }
  EXPECT_EQ(rebuilds, 1u);
}

TEST(LazyMatcher, StepwiseApproximationBound) {
  // 1000-step trace over a warmed host, degree cap 10, eps = 0.1: every
  // snapshot satisfies |M| * 1.3 >= mu(host). The multiplicative bound needs
  // the matching comfortably past the eps*|M| drift window, hence the warm
  // start (the first few dozen edges of a cold graph sit below it).
  GenOptions opts;
  opts.degree_cap = 10;
  opts.window = 280;
  const auto events = generate_stream(StreamKind::kSlidingWindow, 96, 1800, 12, opts);
  DynamicGraph h(96);
  std::size_t warmup = 400;
  for (std::size_t t = 0; t < warmup; ++t) h.apply(events[t]);
  LazyMatcher matcher(h, Ratio(1, 10));
  ASSERT_GE(matcher.matching().size(), 30u);
  for (std::size_t t = warmup; t < events.size(); ++t) {
    h.apply(events[t]);
    matcher.apply(h, events[t]);
    ASSERT_TRUE(check_matching(h, matcher.matching()));
    ASSERT_GE(matcher.matching().size() * 13, mu_exact(h) * 10) << "step " << t;
  }
}

}  // namespace
}  // namespace dynmatch
