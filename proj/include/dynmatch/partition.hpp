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

#ifndef DYNMATCH_PARTITION_HPP_
#define DYNMATCH_PARTITION_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dynmatch/graph.hpp"
#include "dynmatch/ratio.hpp"

namespace dynmatch {

using PartId = std::uint32_t;

// Map from the vertex universe onto d parts.
struct Partitioning {
  std::vector<PartId> part_of;
  PartId part_count = 0;

  static Partitioning identity(std::size_t n);
  static Partitioning single_part(std::size_t n);
};

enum class FamilyKind { kRandom, kExpanderDerived };

struct PartitioningFamily {
  std::vector<Partitioning> members;
  FamilyKind kind = FamilyKind::kRandom;
  std::size_t k = 0;
  Ratio eps;
};

// Default sizes from the randomized construction: L = ceil(512*ln(n)/eps^2)
// partitionings into d = ceil(8k/eps) parts. Both constants are overridable
// for desk-scale runs.
std::size_t random_family_default_size(std::size_t n, Ratio eps, double constant = 512.0);
std::size_t random_family_part_count(std::size_t k, Ratio eps);

PartitioningFamily gen_random_family(std::size_t n, std::size_t k, Ratio eps,
                                     std::optional<std::size_t> l_override, std::uint64_t seed);

// Left-regular bipartite graph; neighbor order is significant (it defines
// N(v)_i and thereby the i-th derived partitioning).
struct BipartiteExpander {
  std::size_t n_left = 0;
  std::size_t n_right = 0;
  std::size_t d = 0;
  std::vector<std::vector<VertexId>> neighbors;  // n_left rows of exactly d ids

  void validate() const;  // throws GraphError on shape violations
};

// File format: first line "n_left n_right d"; then n_left lines of d
// right-vertex ids (order significant).
BipartiteExpander read_expander(const std::string& text);
std::string write_expander(const BipartiteExpander& exp);

BipartiteExpander sample_left_regular(std::size_t n_left, std::size_t n_right, std::size_t d,
                                      std::uint64_t seed);

// Exhaustive check of Definition: for all S with |S| <= k,
// |N(S)| >= (1-eps)*d*|S|. Throws GraphError(kRangeError) past the budget.
bool verify_expander(const BipartiteExpander& exp, std::size_t k, Ratio eps,
                     std::uint64_t subset_budget = 5'000'000);

// The i-th partitioning assigns v to its i-th expander neighbor.
PartitioningFamily family_from_expander(const BipartiteExpander& exp, std::size_t k, Ratio eps);

// Concatenation of a base graph under a partitioning: parts become vertices,
// inter-part edges collapse with multiplicity, intra-part edges are dropped.
class ConcatenatedGraph {
 public:
  ConcatenatedGraph(const DynamicGraph& base, Partitioning partitioning);

  const Partitioning& partitioning() const { return partitioning_; }
  const DynamicGraph& simple_view() const { return simple_view_; }
  std::size_t multiplicity(const Edge& part_edge) const;

  // Base event already applied to the base graph; returns the induced event
  // on the simple view, if any (0->1 and 1->0 multiplicity transitions).
  std::optional<UpdateEvent> maintain(const UpdateEvent& base_event);

  std::optional<Edge> project(const Edge& base_edge) const;

  std::size_t inter_part_edges() const { return inter_part_edges_; }

 private:
  Partitioning partitioning_;
  DynamicGraph simple_view_;
  std::map<Edge, std::size_t> multiplicity_;
  std::size_t inter_part_edges_ = 0;
};

ConcatenatedGraph concatenate(const DynamicGraph& base, const Partitioning& p);

}  // namespace dynmatch

#endif  // DYNMATCH_PARTITION_HPP_
