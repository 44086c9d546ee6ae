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

#ifndef DYNMATCH_EDCS_BATCH_HPP_
#define DYNMATCH_EDCS_BATCH_HPP_

#include <cstdint>
#include <set>
#include <vector>

#include "dynmatch/edcs.hpp"
#include "dynmatch/graph.hpp"
#include "dynmatch/journal.hpp"
#include "dynmatch/matcher.hpp"
#include "dynmatch/oracle.hpp"

namespace dynmatch {

// Batch-revertible damaged-EDCS pipeline: a private graph replica, the
// dynamic sparsifier H, and a lazy (1+eps)-matching on H. Every state
// mutation is journaled with its inverse, so revert_batches(j) is exact and
// costs time proportional to the work the reverted batches performed. The
// active rebuild threshold is floor(depth * alpha / k), where depth is the
// number of live batches.
class EdcsMatchingInstance {
 public:
  using Output = Matching;

  EdcsMatchingInstance(std::size_t n, EdcsParams params, int k, Ratio matcher_eps,
                       bool allow_degenerate = false);

  void begin_batch();
  void process(const UpdateEvent& ev);
  void revert_batches(std::size_t count);
  Output output() const { return matching_from_mate(); }

  const DynamicGraph& graph() const { return g_; }
  const DynamicGraph& sparsifier() const { return h_; }
  std::vector<VertexId> witness() const;
  long long depth() const { return depth_; }
  long long alpha() const { return alpha_; }
  const EdcsParams& params() const { return params_; }
  long long active_threshold() const;
  std::uint64_t rebuild_count() const { return static_cast<std::uint64_t>(rebuild_count_); }

  // Full-state fingerprint (graph, sparsifier, buffers, counters, matching);
  // equal digests after a replay certify journal-exact reverts.
  std::uint64_t state_digest() const;

 private:
  void host_event(const UpdateEvent& hev);
  void matcher_rebuild();
  void rebuild();
  Matching matching_from_mate() const;

  EdcsParams params_;
  int k_;
  Ratio matcher_eps_;
  bool allow_degenerate_;
  long long alpha_ = 0;

  UndoLog log_;
  DynamicGraph g_;
  DynamicGraph h_;
  std::set<Edge> e_inserted_;
  std::set<Edge> e_deleted_;
  std::vector<long long> deg_inserted_;
  std::vector<long long> deg_deleted_;
  std::vector<VertexId> v_d_base_;
  long long counter_ = 0;
  long long depth_ = 0;
  long long rebuild_count_ = 0;

  std::set<Edge> matched_;
  long long last_size_ = 0;
  long long m_counter_ = 0;
};

}  // namespace dynmatch

#endif  // DYNMATCH_EDCS_BATCH_HPP_
