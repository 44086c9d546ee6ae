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

#ifndef DYNMATCH_EDCS_HPP_
#define DYNMATCH_EDCS_HPP_

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynmatch/graph.hpp"
#include "dynmatch/ratio.hpp"

namespace dynmatch {

enum class EdcsErrorCode { kDegenerateParams, kBatchOrder, kBuildDivergence, kBadParams };

class EdcsError : public std::runtime_error {
 public:
  EdcsError(EdcsErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  EdcsErrorCode code() const { return code_; }

 private:
  EdcsErrorCode code_;
};

struct EdcsParams {
  Ratio beta;    // >= 2; integral in dynamic use, rational inside rebuilds
  Ratio lambda;  // in (0,1)
  Ratio delta;   // in (0,1)
  bool strict = false;
  Ratio eps = Ratio(1, 2);  // the epsilon the strict-mode constraints refer to
  // Lemma constant for beta >= c * lambda^-2 * ln(1/lambda); the source lemma
  // inherits its constants, so the factor stays configurable.
  double strict_beta_factor = 8.0;

  void validate() const;  // throws EdcsError(kBadParams)
};

struct BuildStats {
  std::size_t iterations = 0;
  std::vector<Ratio> phi_trace;  // Phi = Phi1 - Phi2 after each outer iteration
  std::vector<std::size_t> edges_added_per_iteration;
};

struct StaticBuildResult {
  std::vector<Edge> h;
  std::vector<VertexId> v_d;
  BuildStats stats;
};

// Static damaged-EDCS construction. Deterministic: all passes walk edges in
// canonical order, degrees are re-read live as H mutates within a pass.
// Iteration count is bounded by ceil(16/(lambda^2*delta)) + 1; exceeding the
// bound (possible only at degenerate integer-scale parameters where the
// potential argument loses its slack) raises kBuildDivergence.
StaticBuildResult static_build(const DynamicGraph& g, Ratio beta, Ratio lambda, Ratio delta);

// Phi = |H|(2*beta - 1) - sum_{e in H} deg_H(e); exposed for the tests.
Ratio edcs_potential(const std::vector<Edge>& h, std::size_t n, Ratio beta);

// Dynamic maintenance with periodic rebuilds (the amortized algorithm, plus
// the batch-parameter variant: during batch i the rebuild threshold is
// floor(i*alpha/k)).
class DamagedEdcs {
 public:
  // The caller owns the graph; g is the state right before the first update.
  DamagedEdcs(const DynamicGraph& g, EdcsParams params, int batch_count = 1,
              bool allow_degenerate = false);

  // The event has already been applied to g. Returns the sparsifier diff in
  // canonical order (deletions first).
  std::vector<UpdateEvent> on_insert(const DynamicGraph& g, const Edge& e);
  std::vector<UpdateEvent> on_delete(const DynamicGraph& g, const Edge& e);

  void set_batch(int i);

  // V_D_base plus endpoints with >= beta*lambda/16 inserted or deleted edges.
  std::vector<VertexId> witness() const;

  const DynamicGraph& sparsifier() const { return h_; }
  const EdcsParams& params() const { return params_; }
  long long alpha() const { return alpha_; }
  long long active_threshold() const;
  int batch_index() const { return batch_index_; }
  int batch_count() const { return batch_count_; }
  std::uint64_t rebuild_count() const { return rebuild_count_; }
  bool rebuilt_last_op() const { return rebuilt_last_op_; }
  const BuildStats& last_build_stats() const { return last_stats_; }
  long long updates_since_rebuild() const { return updates_since_rebuild_; }

  // Parameters the rebuild passes to static_build: (beta/(1+lambda/4),
  // lambda/4, delta/2).
  Ratio rebuild_beta() const;
  Ratio rebuild_lambda() const { return params_.lambda / Ratio(4); }
  Ratio rebuild_delta() const { return params_.delta / Ratio(2); }

  std::string dump_snapshot() const;

 private:
  std::vector<UpdateEvent> after_update(const DynamicGraph& g);
  std::vector<UpdateEvent> rebuild(const DynamicGraph& g);

  EdcsParams params_;
  DynamicGraph h_;
  std::set<Edge> e_inserted_;
  std::set<Edge> e_deleted_;
  std::vector<std::size_t> deg_inserted_;
  std::vector<std::size_t> deg_deleted_;
  std::vector<VertexId> v_d_base_;
  long long alpha_ = 0;
  long long updates_since_rebuild_ = 0;
  int batch_index_ = 1;
  int batch_count_ = 1;
  bool allow_degenerate_ = false;
  std::uint64_t rebuild_count_ = 0;
  bool rebuilt_last_op_ = false;
  BuildStats last_stats_;
};

}  // namespace dynmatch

#endif  // DYNMATCH_EDCS_HPP_
