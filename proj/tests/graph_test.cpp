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

#include "dynmatch/graph.hpp"

#include <gtest/gtest.h>

#include "dynmatch/gen.hpp"
#include "dynmatch/rng.hpp"

namespace dynmatch {
namespace {

TEST(Edge, CanonicalOrderAndSelfLoop) {
  const Edge e(5, 2);
  EXPECT_EQ(e.u, 2u);
  EXPECT_EQ(e.v, 5u);
  EXPECT_THROW(Edge(3, 3), GraphError);
}

TEST(DynamicGraph, SingleInsertion) {
  DynamicGraph g(4);
  g.apply(UpdateEvent::insert(0, 1));
  EXPECT_EQ(g.degree(0), 1u);
  EXPECT_EQ(g.degree(1), 1u);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(DynamicGraph, DuplicateInsertRejected) {
  DynamicGraph g(4);
  g.insert_edge(Edge(0, 1));
  try {
    g.insert_edge(Edge(0, 1));
    FAIL() << "expected DuplicateEdge";
  } catch (const GraphError& e) {
    EXPECT_EQ(e.code(), GraphErrorCode::kDuplicateEdge);
  }
}

TEST(DynamicGraph, MissingDeleteRejected) {
  DynamicGraph g(4);
  try {
    g.delete_edge(Edge(0, 1));
    FAIL() << "expected MissingEdge";
  } catch (const GraphError& e) {
    EXPECT_EQ(e.code(), GraphErrorCode::kMissingEdge);
  }
}

TEST(DynamicGraph, RangeChecked) {
  DynamicGraph g(4);
  EXPECT_THROW(g.insert_edge(Edge(0, 7)), GraphError);
}

TEST(DynamicGraph, EdgeDegree) {
  DynamicGraph path(3);
  path.insert_edge(Edge(0, 1));
  path.insert_edge(Edge(1, 2));
  EXPECT_EQ(path.edge_degree(Edge(0, 1)), 3u);

  DynamicGraph empty(3);
  EXPECT_EQ(empty.edge_degree(Edge(0, 1)), 0u);

  DynamicGraph k4(4);
  for (VertexId u = 0; u < 4; ++u) {
    for (VertexId v = u + 1; v < 4; ++v) k4.insert_edge(Edge(u, v));
  }
  EXPECT_EQ(k4.edge_degree(Edge(1, 3)), 6u);
}

TEST(ParseStream, RoundTrip) {
  const auto parsed = parse_stream("3\n+ 0 1\n- 0 1\n");
  EXPECT_EQ(parsed.n, 3u);
  ASSERT_EQ(parsed.events.size(), 2u);
  EXPECT_EQ(parsed.events[0], UpdateEvent::insert(0, 1));
  EXPECT_EQ(parsed.events[1], UpdateEvent::remove(0, 1));
}

TEST(ParseStream, CommentsAndBlanks) {
  const auto parsed = parse_stream("# header comment\n4\n\n+ 2 3\n");
  EXPECT_EQ(parsed.n, 4u);
  EXPECT_EQ(parsed.events.size(), 1u);
}

TEST(ParseStream, SelfLoopRejectedWithLine) {
  try {
    parse_stream("2\n+ 0 0\n");
    FAIL() << "expected parse error";
  } catch (const GraphError& e) {
    EXPECT_EQ(e.code(), GraphErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(ParseStream, RangeErrorWithLine) {
  try {
    parse_stream("2\n+ 0 5\n");
    FAIL() << "expected range error";
  } catch (const GraphError& e) {
    EXPECT_EQ(e.code(), GraphErrorCode::kRangeError);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(ParseStream, Malformed) {
  EXPECT_THROW(parse_stream("2\n* 0 1\n"), GraphError);
  EXPECT_THROW(parse_stream("2\n+ 0\n"), GraphError);
  EXPECT_THROW(parse_stream(""), GraphError);
}

TEST(DynamicGraph, ReplayDeterminism) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto events = generate_stream(StreamKind::kErdosRenyiDynamic, 24, 300, seed);
    DynamicGraph a(24);
    DynamicGraph b(24);
    for (const auto& ev : events) a.apply(ev);
    for (const auto& ev : events) b.apply(ev);
    EXPECT_TRUE(a == b);
  }
}

TEST(DynamicGraph, InsertDeleteRoundTrip) {
  Rng rng(7);
  const auto events = generate_stream(StreamKind::kErdosRenyiDynamic, 16, 200, 7);
  DynamicGraph g(16);
  for (const auto& ev : events) g.apply(ev);
  const DynamicGraph snapshot = g;
  const Edge extra(0, 15);
  if (!g.has_edge(extra)) {
    g.insert_edge(extra);
    g.delete_edge(extra);
    EXPECT_TRUE(g == snapshot);
  }
}

TEST(DynamicGraph, EdgeCountTracksSuccessfulEvents) {
  const auto events = generate_stream(StreamKind::kSlidingWindow, 16, 200, 3);
  DynamicGraph g(16);
  long long inserts = 0;
  long long deletes = 0;
  for (const auto& ev : events) {
    g.apply(ev);
    (ev.kind == UpdateKind::kInsert ? inserts : deletes)++;
  }
  EXPECT_EQ(static_cast<long long>(g.edge_count()), inserts - deletes);
  EXPECT_EQ(g.update_clock(), events.size());
}

TEST(FormatStream, ByteStable) {
  const auto events = generate_stream(StreamKind::kSlidingWindow, 8, 50, 11);
  const std::string once = format_stream(8, events);
  const auto reparsed = parse_stream(once);
  EXPECT_EQ(once, format_stream(reparsed.n, reparsed.events));
}

}  // namespace
}  // namespace dynmatch
