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

#ifndef DYNMATCH_GRAPH_HPP_
#define DYNMATCH_GRAPH_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dynmatch {

using VertexId = std::uint32_t;

enum class GraphErrorCode {
  kSelfLoop,
  kDuplicateEdge,
  kMissingEdge,
  kRangeError,
  kParseError,
};

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  GraphErrorCode code() const { return code_; }

 private:
  GraphErrorCode code_;
};

// Undirected edge in canonical order u < v. Construction rejects self-loops.
struct Edge {
  VertexId u;
  VertexId v;

  Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {
    if (a == b) throw GraphError(GraphErrorCode::kSelfLoop, "self-loop edge (" + std::to_string(a) + ")");
  }

  friend bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }
  friend bool operator<(const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  }
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const {
    return (static_cast<std::size_t>(e.u) << 32) ^ e.v;
  }
};

enum class UpdateKind { kInsert, kDelete };

struct UpdateEvent {
  UpdateKind kind;
  Edge edge;

  static UpdateEvent insert(VertexId a, VertexId b) { return {UpdateKind::kInsert, Edge(a, b)}; }
  static UpdateEvent remove(VertexId a, VertexId b) { return {UpdateKind::kDelete, Edge(a, b)}; }

  UpdateEvent inverse() const {
    return {kind == UpdateKind::kInsert ? UpdateKind::kDelete : UpdateKind::kInsert, edge};
  }

  friend bool operator==(const UpdateEvent& a, const UpdateEvent& b) {
    return a.kind == b.kind && a.edge == b.edge;
  }
};

// Simple undirected graph over a fixed vertex universe [0, n).
// Adjacency lists are kept sorted; the vertex count never changes after
// construction (every parameter formula downstream assumes a fixed n).
class DynamicGraph {
 public:
  explicit DynamicGraph(std::size_t n) : adj_(n) {}

  std::size_t n() const { return adj_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::uint64_t update_clock() const { return update_clock_; }

  std::size_t degree(VertexId v) const;
  std::span<const VertexId> neighbors(VertexId v) const {
    return {adj_[v].data(), adj_[v].size()};
  }

  bool has_edge(const Edge& e) const;

  // deg(u) + deg(v); e need not be present.
  std::size_t edge_degree(const Edge& e) const;

  void insert_edge(const Edge& e);
  void delete_edge(const Edge& e);
  void apply(const UpdateEvent& ev);

  // Edges in canonical (u, v) lexicographic order.
  std::vector<Edge> edges() const;

  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (VertexId u = 0; u < adj_.size(); ++u) {
      for (VertexId v : adj_[u]) {
        if (u < v) fn(Edge(u, v));
      }
    }
  }

  std::size_t max_degree() const;

  friend bool operator==(const DynamicGraph& a, const DynamicGraph& b) {
    return a.adj_ == b.adj_;
  }

 private:
  void check_range(const Edge& e) const;

  std::vector<std::vector<VertexId>> adj_;
  std::size_t edge_count_ = 0;
  std::uint64_t update_clock_ = 0;
};

struct ParsedStream {
  std::size_t n = 0;
  std::vector<UpdateEvent> events;
};

// Stream format: first line is n; each following non-empty line is
// "+ u v" or "- u v"; lines beginning '#' are comments.
ParsedStream parse_stream(std::string_view text);

std::string format_stream(std::size_t n, const std::vector<UpdateEvent>& events);

}  // namespace dynmatch

#endif  // DYNMATCH_GRAPH_HPP_
