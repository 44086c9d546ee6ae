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

#ifndef DYNMATCH_ORACLE_HPP_
#define DYNMATCH_ORACLE_HPP_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dynmatch/graph.hpp"
#include "dynmatch/partition.hpp"
#include "dynmatch/ratio.hpp"

namespace dynmatch {

class Matching {
 public:
  Matching() = default;
  explicit Matching(std::set<Edge> edges) : edges_(std::move(edges)) {}

  std::size_t size() const { return edges_.size(); }
  const std::set<Edge>& edges() const { return edges_; }
  bool contains(const Edge& e) const { return edges_.count(e) > 0; }

  void add(const Edge& e) { edges_.insert(e); }
  void remove(const Edge& e) { edges_.erase(e); }

  friend bool operator==(const Matching& a, const Matching& b) { return a.edges_ == b.edges_; }

 private:
  std::set<Edge> edges_;
};

// Exact maximum cardinality matching (Edmonds' blossom algorithm, BFS
// alternating forest with base contraction). Ground truth for every
// acceptance test; itself validated against exhaustive enumeration at n <= 12.
Matching max_matching_exact(const DynamicGraph& g);
std::size_t mu_exact(const DynamicGraph& g);

// True iff m is vertex-disjoint and every edge is present in g.
bool check_matching(const DynamicGraph& g, const Matching& m);

struct ApproxCertificate {
  std::size_t mu_exact = 0;
  std::size_t matching_size = 0;
  Ratio alpha;
  Ratio delta;
  bool satisfied = false;  // matching_size*alpha + delta*n >= mu_exact
};

ApproxCertificate certify_approx(const DynamicGraph& g, const Matching& m, Ratio alpha,
                                 Ratio delta);

// Damaged-EDCS validity report. Clauses:
//   (a) |V_D| <= delta*n
//   (b) for e in H: deg_H(e) <= beta
//   (c) for e in E\H with e disjoint from V_D: deg_H(e) >= beta*(1-lambda)
struct EdcsViolation {
  enum class Clause { kWitnessSize, kDegreeCap, kExternalDegree, kNotSubgraph };
  Clause clause;
  std::optional<Edge> edge;
  std::string detail;
};

struct EdcsReport {
  std::vector<EdcsViolation> violations;
  std::size_t witness_size = 0;
  bool valid() const { return violations.empty(); }
  std::string to_text() const;
};

struct EdcsCheckOptions {
  // Without a supplied witness the checker refuses to run unless this is set;
  // the greedy fallback is a diagnostic, not part of any validity claim.
  bool allow_greedy_witness = false;
  std::size_t max_violations = 64;  // reported, counting continues
};

EdcsReport check_damaged_edcs(const DynamicGraph& g, const std::vector<Edge>& h, Ratio beta,
                              Ratio lambda, Ratio delta,
                              const std::optional<std::vector<VertexId>>& witness,
                              const EdcsCheckOptions& opts = {});

// Diagnostic witness search: repeatedly damage the endpoint covering the most
// clause-(c) violations.
std::vector<VertexId> greedy_witness(const DynamicGraph& g, const std::vector<Edge>& h,
                                     Ratio beta, Ratio lambda);

// True iff some member of the family yields a concatenation G' of g with
// mu(G') >= (1-eps)*|planted|.
bool check_matching_preserving(const DynamicGraph& g, const PartitioningFamily& family,
                               const Matching& planted, Ratio eps);

}  // namespace dynmatch

#endif  // DYNMATCH_ORACLE_HPP_
