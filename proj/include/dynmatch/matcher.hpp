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

#ifndef DYNMATCH_MATCHER_HPP_
#define DYNMATCH_MATCHER_HPP_

#include <cstdint>

#include "dynmatch/graph.hpp"
#include "dynmatch/oracle.hpp"
#include "dynmatch/ratio.hpp"

namespace dynmatch {

// Matching with no augmenting path of length <= 2*ceil(1/eps)-1, hence
// (1+eps)-approximate on h. The rebuild augments to optimality (which leaves
// no augmenting path of any length); the engine is a disjoint-set blossom
// contraction, independent of the oracle's implementation so that oracle
// comparisons stay meaningful. eps drives the dynamic rebuild spacing below.
Matching static_approx_matching(const DynamicGraph& h, Ratio eps);

// Lazy maintenance with periodic rebuild: deletions of matched edges shrink M,
// and after more than floor(eps*|M_at_rebuild|) updates M is recomputed.
// Between rebuilds M stays (1+3eps)-approximate on the host. Worst-case
// update time is not claimed here; under the batch scheduler the rebuild
// lumps are absorbed by its work spreading.
class LazyMatcher {
 public:
  LazyMatcher(const DynamicGraph& host, Ratio eps);

  // ev has already been applied to the host.
  void apply(const DynamicGraph& host, const UpdateEvent& ev);

  const Matching& matching() const { return matching_; }
  std::size_t last_size() const { return last_size_; }
  long long threshold() const;
  std::uint64_t rebuild_count() const { return rebuild_count_; }
  bool rebuilt_last_op() const { return rebuilt_last_op_; }
  std::uint64_t recourse() const { return recourse_; }
  long long updates_since_rebuild() const { return updates_since_rebuild_; }

 private:
  void rebuild(const DynamicGraph& host);

  Ratio eps_;
  Matching matching_;
  std::size_t last_size_ = 0;
  long long updates_since_rebuild_ = 0;
  std::uint64_t rebuild_count_ = 0;
  std::uint64_t recourse_ = 0;
  bool rebuilt_last_op_ = false;
};

namespace testing_support {
// Exhaustive alternating-path search for short augmenting paths; exponential
// in max_len, intended for property tests with small depth only.
bool has_augmenting_path_upto(const DynamicGraph& g, const Matching& m, std::size_t max_len);
}  // namespace testing_support

}  // namespace dynmatch

#endif  // DYNMATCH_MATCHER_HPP_
