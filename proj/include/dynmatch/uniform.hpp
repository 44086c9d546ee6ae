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

#ifndef DYNMATCH_UNIFORM_HPP_
#define DYNMATCH_UNIFORM_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynmatch/graph.hpp"
#include "dynmatch/ratio.hpp"

namespace dynmatch {

enum class UniformErrorCode { kBadWeights, kMissingEdge, kBatchOrder };

class UniformError : public std::runtime_error {
 public:
  UniformError(UniformErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  UniformErrorCode code() const { return code_; }

 private:
  UniformErrorCode code_;
};

struct FractionalMatching {
  std::map<Edge, Ratio> weights;

  Ratio size() const {
    Ratio s(0);
    for (const auto& [e, w] : weights) s += w;
    return s;
  }
};

// lambda-uniform fractional matching: a maximal subgraph with all degrees
// <= floor(1/lambda), every edge weighted lambda. Test-input generator
// standing in for the pipeline's fractional-matching stage.
FractionalMatching gen_uniform_fm(const DynamicGraph& g, Ratio lambda, std::uint64_t seed);

// Even-position edges (1-based within each walk) of a greedy maximal-walk
// decomposition. Every vertex keeps within 1 of half its degree.
std::vector<Edge> degree_split(const std::vector<Edge>& edges, std::size_t n);

// The uniform fractional-matching sparsifier hierarchy with pending-edge
// buffering, deletion buffers per level, and partial rebuilds. Batch mode
// widens the slack guards to eps*i/k during batch i.
class LevelStructure {
 public:
  // Builds the full structure over the edges of g (static sparsify).
  LevelStructure(const DynamicGraph& g, Ratio lambda, Ratio beta_cap, Ratio eps, int k = 1);

  void insert(const Edge& e);
  void erase(const Edge& e);
  void set_batch(int i);

  std::size_t levels() const { return l_; }  // hierarchy has levels 0..l_
  Ratio lambda() const { return lambda_; }
  Ratio beta_cap() const { return beta_cap_; }
  int batch_index() const { return batch_index_; }
  Ratio active_slack() const;  // eps*i/k

  Ratio level_weight(std::size_t i) const;  // h^(i) = lambda * 2^i

  struct OutputEdge {
    Edge edge;
    Ratio weight;
  };
  // F filtered of buffered deletions, with the level weights.
  std::vector<OutputEdge> output() const;
  Ratio output_size() const;  // size(w')
  Ratio input_size() const;   // size(w) = lambda * live edge count

  std::size_t active_count() const { return e_active_.size(); }
  std::size_t pending_count() const { return e_pending_.size(); }
  std::size_t level_edge_count(std::size_t i) const { return e_at_least_[i].size(); }
  std::size_t deleted_count(std::size_t i) const { return d_at_least_[i].size(); }
  const std::set<Edge>& level_f(std::size_t i) const { return f_[i]; }

  bool rebuilt_last_op() const { return rebuilt_last_op_; }
  std::uint64_t rebuild_count() const { return rebuild_count_; }

  // Empty when all structural invariants hold (guards, weight caps, level
  // containment, F consistency).
  std::vector<std::string> invariant_violations() const;

  // max over v of w'(v) - w(v); negative values mean no excess anywhere.
  Ratio max_vertex_excess() const;

  std::string dump_levels() const;

 private:
  void full_rebuild();
  void rebuild_from(std::size_t i0);
  void clean_up(std::size_t j);
  bool guard_exceeded(std::size_t numer, std::size_t base) const;

  std::size_t n_;
  Ratio lambda_;
  Ratio beta_cap_;
  Ratio eps_;
  int batch_count_ = 1;
  int batch_index_ = 1;
  std::size_t l_ = 0;

  std::set<Edge> e_active_;
  std::set<Edge> e_pending_;
  std::vector<std::set<Edge>> e_at_least_;  // E^(>=i), i in [0, l_]
  std::vector<std::set<Edge>> f_;           // F^(i)
  std::vector<std::set<Edge>> d_at_least_;  // D^(>=i)
  std::vector<std::vector<bool>> v_at_least_;  // V^(>=i)
  std::vector<std::vector<bool>> v_level_;     // V^(i)

  bool rebuilt_last_op_ = false;
  std::uint64_t rebuild_count_ = 0;
};

}  // namespace dynmatch

#endif  // DYNMATCH_UNIFORM_HPP_
