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

#ifndef DYNMATCH_PIPELINE_HPP_
#define DYNMATCH_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynmatch/graph.hpp"
#include "dynmatch/ratio.hpp"

namespace dynmatch {

enum class Algo {
  kDamagedEdcs,
  kDamagedEdcsBatch,
  kWorstCase32,
  kUniformSparsify,
  kUniformSparsifyBatch,
};

Algo algo_from_name(const std::string& name);
std::string algo_name(Algo a);

struct RunConfig {
  Algo algo = Algo::kDamagedEdcs;
  Ratio beta = Ratio(8);
  Ratio lambda = Ratio(1, 4);
  Ratio delta = Ratio(1, 4);
  Ratio eps = Ratio(1, 2);
  int k = 0;  // batches / scheduler arity; 0 picks the smallest feasible
  long long c = 0;  // parts multiplier for the vertex-sparsification driver
  std::size_t l_override = 0;
  std::uint64_t seed = 1;
  std::size_t verify_every = 0;  // 0 disables exact verification
  bool strict = false;
  bool allow_degenerate = false;
};

struct MetricsRow {
  std::uint64_t step = 0;
  std::uint64_t work_units = 0;
  std::size_t matching_size = 0;
  std::optional<std::size_t> mu_exact;
  std::optional<double> ratio;  // mu_exact / matching_size
  bool rebuild_flag = false;
};

std::string metrics_to_csv(const std::vector<MetricsRow>& rows);

struct RunResult {
  std::vector<MetricsRow> rows;
  int exit_code = 0;
  std::string first_violation;
  double max_ratio = 0.0;  // max observed mu/|M| over verified steps
  // uniform-sparsify extras
  double max_size_constant = 0.0;  // c in size(w) <= (1+c*eps*log2(beta/lambda))*size(w')
  double max_vertex_excess = 0.0;
  bool vertex_excess_flagged = false;
};

RunResult run_pipeline(const RunConfig& cfg, std::size_t n,
                       const std::vector<UpdateEvent>& events);

struct BenchResult {
  std::vector<std::uint64_t> per_step_work;
  std::uint64_t max_work = 0;
  std::uint64_t median_work = 0;
  double max_over_median = 0.0;
  std::uint64_t total_work = 0;
};

BenchResult bench_pipeline(const RunConfig& cfg, std::size_t n,
                           const std::vector<UpdateEvent>& events);

}  // namespace dynmatch

#endif  // DYNMATCH_PIPELINE_HPP_
