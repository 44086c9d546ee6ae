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

#ifndef DYNMATCH_REDUCTION_HPP_
#define DYNMATCH_REDUCTION_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "dynmatch/edcs.hpp"
#include "dynmatch/graph.hpp"
#include "dynmatch/matcher.hpp"
#include "dynmatch/oracle.hpp"
#include "dynmatch/partition.hpp"
#include "dynmatch/ratio.hpp"

namespace dynmatch {

// (alpha, delta) -> (alpha + eps) reduction: for every geometric matching-size
// guess MMSize = (1+eps/(8*alpha))^i and every partitioning of a matching
// preserving family, maintain a concatenation with an inner damaged-EDCS
// matcher at delta = eps/(8C); pull the matchings back to base edges, union
// them into a bounded-degree host and keep a matching there.
struct ReductionConfig {
  Ratio alpha = Ratio(3, 2);
  Ratio eps = Ratio(1, 2);
  // Parts multiplier C; the verbatim default ceil(8/(eps/(8*alpha))) comes
  // from the randomized family's d = ceil(8k/eps') with eps' = eps/(8*alpha).
  std::optional<long long> c_override;
  std::size_t family_size = 2;  // L partitionings per level
  // Inner (alpha, delta)-matcher knobs; delta defaults to eps/(8C).
  Ratio inner_beta = Ratio(8);
  Ratio inner_lambda = Ratio(1, 4);
  std::optional<Ratio> inner_delta;
  Ratio inner_matcher_eps = Ratio(1, 4);
  // Matching maintained on the pulled-back union; defaults to eps/(8*alpha).
  std::optional<Ratio> top_matcher_eps;
  std::uint64_t seed = 1;

  long long parts_multiplier() const;
  Ratio effective_inner_delta() const;
  Ratio effective_top_eps() const;
};

// Level count produced by the geometric guessing loop (MMSize <= n drives
// one more doubling step): ceil(log_{1+eps/(8 alpha)} n).
std::size_t reduction_level_count(std::size_t n, Ratio alpha, Ratio eps);

class AlphaEpsReduction {
 public:
  AlphaEpsReduction(std::size_t n, ReductionConfig cfg);

  void apply(const UpdateEvent& ev);

  const Matching& matching() const { return top_matcher_->matching(); }
  const DynamicGraph& base() const { return base_; }
  const DynamicGraph& host() const { return host_; }

  std::size_t level_count() const { return level_count_; }
  std::size_t cell_count() const { return cells_.size(); }
  Ratio inner_delta() const { return cfg_.effective_inner_delta(); }
  Ratio top_eps() const { return cfg_.effective_top_eps(); }

 private:
  struct Cell {
    ConcatenatedGraph concat;
    DamagedEdcs edcs;
    LazyMatcher matcher;
    // Live base preimages per inter-part edge; the pull-back picks the
    // canonically smallest and substitutes on deletion.
    std::map<Edge, std::set<Edge>> preimages;
    std::set<Edge> pulled;

    Cell(ConcatenatedGraph cg, DamagedEdcs ed, LazyMatcher ma)
        : concat(std::move(cg)), edcs(std::move(ed)), matcher(std::move(ma)) {}
  };

  void refresh_cell_pullback(Cell& cell, std::vector<UpdateEvent>& host_events);

  ReductionConfig cfg_;
  DynamicGraph base_;
  DynamicGraph host_;
  std::map<Edge, int> host_count_;
  std::vector<std::unique_ptr<Cell>> cells_;
  std::unique_ptr<LazyMatcher> top_matcher_;
  std::size_t level_count_ = 0;
};

}  // namespace dynmatch

#endif  // DYNMATCH_REDUCTION_HPP_
