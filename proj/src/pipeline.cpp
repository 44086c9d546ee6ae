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

#include "dynmatch/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dynmatch/edcs.hpp"
#include "dynmatch/edcs_batch.hpp"
#include "dynmatch/matcher.hpp"
#include "dynmatch/oracle.hpp"
#include "dynmatch/scheduler.hpp"
#include "dynmatch/uniform.hpp"
#include "dynmatch/work.hpp"

namespace dynmatch {

Algo algo_from_name(const std::string& name) {
  if (name == "damaged-edcs") return Algo::kDamagedEdcs;
  if (name == "damaged-edcs-batch") return Algo::kDamagedEdcsBatch;
  if (name == "worstcase-3-2") return Algo::kWorstCase32;
  if (name == "uniform-sparsify") return Algo::kUniformSparsify;
  if (name == "uniform-sparsify-batch") return Algo::kUniformSparsifyBatch;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::string algo_name(Algo a) {
  switch (a) {
    case Algo::kDamagedEdcs:
      return "damaged-edcs";
    case Algo::kDamagedEdcsBatch:
      return "damaged-edcs-batch";
    case Algo::kWorstCase32:
      return "worstcase-3-2";
    case Algo::kUniformSparsify:
      return "uniform-sparsify";
    case Algo::kUniformSparsifyBatch:
      return "uniform-sparsify-batch";
  }
  return "?";
}

std::string metrics_to_csv(const std::vector<MetricsRow>& rows) {
  std::ostringstream os;
  os << "step,work_units,matching_size,mu_exact,ratio,rebuild_flag\n";
  char buf[64];
  for (const auto& r : rows) {
    os << r.step << ',' << r.work_units << ',' << r.matching_size << ',';
    if (r.mu_exact) os << *r.mu_exact;
    os << ',';
    if (r.ratio) {
      std::snprintf(buf, sizeof(buf), "%.6f", *r.ratio);
      os << buf;
    }
    os << ',' << (r.rebuild_flag ? 1 : 0) << '\n';
  }
  return os.str();
}

namespace {

int batch_for_step(std::size_t step, std::size_t total, int k) {
  // Steps split into k equal consecutive batches (remainder to the front).
  if (total == 0 || k <= 1) return 1;
  const std::size_t per = (total + static_cast<std::size_t>(k) - 1) / static_cast<std::size_t>(k);
  return static_cast<int>(step / per) + 1;
}

double ratio_of(std::size_t mu, std::size_t size) {
  if (mu == 0) return 1.0;
  if (size == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(mu) / static_cast<double>(size);
}

struct Violation {
  bool failed = false;
  std::string what;
  void note(const std::string& msg) {
    if (!failed) {
      failed = true;
      what = msg;
    }
  }
};

RunResult run_edcs(const RunConfig& cfg, std::size_t n, const std::vector<UpdateEvent>& events,
                   bool batch_mode) {
  RunResult result;
  Violation violation;
  const int k = batch_mode ? std::max(2, cfg.k) : 1;

  DynamicGraph g(n);
  EdcsParams params;
  params.beta = cfg.beta;
  params.lambda = cfg.lambda;
  params.delta = cfg.delta;
  params.strict = cfg.strict;
  params.eps = cfg.eps;
  DamagedEdcs edcs(g, params, k, cfg.allow_degenerate);
  LazyMatcher matcher(edcs.sparsifier(), cfg.eps);

  for (std::size_t t = 0; t < events.size(); ++t) {
    MetricsRow row;
    row.step = t;
    if (batch_mode) edcs.set_batch(batch_for_step(t, events.size(), k));
    const work::Scope scope;
    g.apply(events[t]);
    const auto h_diff = events[t].kind == UpdateKind::kInsert
                            ? edcs.on_insert(g, events[t].edge)
                            : edcs.on_delete(g, events[t].edge);
    for (const auto& hev : h_diff) matcher.apply(edcs.sparsifier(), hev);
    row.work_units = scope.elapsed();
    row.matching_size = matcher.matching().size();
    row.rebuild_flag = edcs.rebuilt_last_op() || matcher.rebuilt_last_op();

    if (cfg.verify_every > 0 && (t + 1) % cfg.verify_every == 0) {
      const auto report = check_damaged_edcs(g, edcs.sparsifier().edges(), params.beta,
                                             params.lambda, params.delta, edcs.witness());
      if (!report.valid()) {
        violation.note("damaged-EDCS check failed at step " + std::to_string(t) + ": " +
                       report.to_text());
      }
      if (!check_matching(edcs.sparsifier(), matcher.matching())) {
        violation.note("matcher output invalid on sparsifier at step " + std::to_string(t));
      }
      const std::size_t mu = mu_exact(g);
      row.mu_exact = mu;
      row.ratio = ratio_of(mu, row.matching_size);
      result.max_ratio = std::max(result.max_ratio, *row.ratio);
      if (params.strict) {
        // mu(G) <= (3/2 + 32*lambda) * mu(H) + delta*n
        const std::size_t mu_h = mu_exact(edcs.sparsifier());
        const Ratio bound = (Ratio(3, 2) + Ratio(32) * params.lambda) *
                                Ratio(static_cast<long long>(mu_h)) +
                            params.delta * Ratio(static_cast<long long>(n));
        if (Ratio(static_cast<long long>(mu)) > bound) {
          violation.note("strict approximation bound violated at step " + std::to_string(t));
        }
      }
    }
    result.rows.push_back(row);
  }
  if (violation.failed) {
    result.exit_code = 1;
    result.first_violation = violation.what;
  }
  return result;
}

RunResult run_worstcase(const RunConfig& cfg, std::size_t n,
                        const std::vector<UpdateEvent>& events) {
  RunResult result;
  Violation violation;
  const std::size_t k =
      cfg.k >= 2 ? static_cast<std::size_t>(cfg.k) : scheduler_arity(events.size());

  EdcsParams params;
  params.beta = cfg.beta;
  params.lambda = cfg.lambda;
  params.delta = cfg.delta;
  params.strict = cfg.strict;
  params.eps = cfg.eps;

  std::vector<EdcsMatchingInstance> instances;
  instances.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    instances.emplace_back(n, params, static_cast<int>(k), cfg.eps, cfg.allow_degenerate);
  }
  BatchScheduler<EdcsMatchingInstance> sched(k, std::move(instances));

  DynamicGraph g(n);
  DynamicGraph union_graph(n);
  std::map<Edge, int> union_count;
  std::vector<std::set<Edge>> prev(k);
  LazyMatcher top(union_graph, cfg.eps);

  for (std::size_t t = 0; t < events.size(); ++t) {
    MetricsRow row;
    row.step = t;
    const work::Scope scope;
    g.apply(events[t]);
    const auto fresh = sched.step(events[t]);

    // Union of all maintained matchings, filtered to live edges of G.
    std::vector<UpdateEvent> union_events;
    if (events[t].kind == UpdateKind::kDelete && union_graph.has_edge(events[t].edge)) {
      union_events.push_back({UpdateKind::kDelete, events[t].edge});
    }
    for (std::size_t i = 0; i < k; ++i) {
      const std::set<Edge>& cur = sched.instance(i).output().edges();
      for (const Edge& e : prev[i]) {
        if (cur.count(e)) continue;
        auto it = union_count.find(e);
        if (--it->second == 0) {
          union_count.erase(it);
          if (union_graph.has_edge(e)) union_events.push_back({UpdateKind::kDelete, e});
        }
      }
      for (const Edge& e : cur) {
        if (prev[i].count(e)) continue;
        if (++union_count[e] == 1 && g.has_edge(e) && !union_graph.has_edge(e)) {
          union_events.push_back({UpdateKind::kInsert, e});
        }
      }
      prev[i] = cur;
    }
    if (events[t].kind == UpdateKind::kInsert && union_count.count(events[t].edge) &&
        !union_graph.has_edge(events[t].edge)) {
      union_events.push_back({UpdateKind::kInsert, events[t].edge});
    }
    for (const auto& uev : union_events) {
      union_graph.apply(uev);
      top.apply(union_graph, uev);
    }

    row.work_units = scope.elapsed();
    row.matching_size = top.matching().size();
    row.rebuild_flag = top.rebuilt_last_op();

    if (cfg.verify_every > 0 && (t + 1) % cfg.verify_every == 0) {
      if (sched.fresh_set(t).empty()) {
        violation.note("empty fresh set at step " + std::to_string(t));
      }
      if (union_graph.max_degree() > k) {
        violation.note("union degree exceeds k at step " + std::to_string(t));
      }
      if (!check_matching(g, top.matching())) {
        violation.note("pipeline matching invalid on G at step " + std::to_string(t));
      }
      std::size_t best_fresh = 0;
      for (const auto& f : fresh) best_fresh = std::max(best_fresh, f.output.size());
      if (mu_exact(union_graph) < best_fresh) {
        violation.note("union lost a fresh matching at step " + std::to_string(t));
      }
      const std::size_t mu = mu_exact(g);
      row.mu_exact = mu;
      row.ratio = ratio_of(mu, row.matching_size);
      result.max_ratio = std::max(result.max_ratio, *row.ratio);
    }
    result.rows.push_back(row);
  }
  if (violation.failed) {
    result.exit_code = 1;
    result.first_violation = violation.what;
  }
  return result;
}

RunResult run_uniform(const RunConfig& cfg, std::size_t n, const std::vector<UpdateEvent>& events,
                      bool batch_mode) {
  RunResult result;
  Violation violation;
  const int k = batch_mode ? std::max(2, cfg.k) : 1;

  DynamicGraph g(n);
  LevelStructure ls(g, cfg.lambda, cfg.beta, cfg.eps, k);
  const double log_ratio = std::log2((cfg.beta / cfg.lambda).to_double());
  const Ratio excess_tolerance = ls.level_weight(ls.levels());

  for (std::size_t t = 0; t < events.size(); ++t) {
    MetricsRow row;
    row.step = t;
    if (batch_mode) ls.set_batch(batch_for_step(t, events.size(), k));
    const work::Scope scope;
    g.apply(events[t]);
    if (events[t].kind == UpdateKind::kInsert) {
      ls.insert(events[t].edge);
    } else {
      ls.erase(events[t].edge);
    }
    row.work_units = scope.elapsed();
    row.matching_size = ls.output().size();
    row.rebuild_flag = ls.rebuilt_last_op();

    if (cfg.verify_every > 0 && (t + 1) % cfg.verify_every == 0) {
      for (const auto& v : ls.invariant_violations()) {
        violation.note("uniform invariant at step " + std::to_string(t) + ": " + v);
      }
      const double in_size = ls.input_size().to_double();
      const double out_size = ls.output_size().to_double();
      if (out_size > 0 && in_size > out_size && log_ratio > 0 && cfg.eps.to_double() > 0) {
        const double c =
            (in_size / out_size - 1.0) / (cfg.eps.to_double() * log_ratio);
        result.max_size_constant = std::max(result.max_size_constant, c);
      } else if (out_size == 0 && in_size > 0) {
        result.max_size_constant = std::numeric_limits<double>::infinity();
      }
      const Ratio excess = ls.max_vertex_excess();
      result.max_vertex_excess = std::max(result.max_vertex_excess, excess.to_double());
      if (excess > excess_tolerance) result.vertex_excess_flagged = true;

      const std::size_t mu = mu_exact(g);
      row.mu_exact = mu;
      row.ratio = ratio_of(mu, std::max<std::size_t>(row.matching_size, 1));
    }
    result.rows.push_back(row);
  }
  if (violation.failed) {
    result.exit_code = 1;
    result.first_violation = violation.what;
  }
  return result;
}

}  // namespace

RunResult run_pipeline(const RunConfig& cfg, std::size_t n,
                       const std::vector<UpdateEvent>& events) {
  switch (cfg.algo) {
    case Algo::kDamagedEdcs:
      return run_edcs(cfg, n, events, false);
    case Algo::kDamagedEdcsBatch:
      return run_edcs(cfg, n, events, true);
    case Algo::kWorstCase32:
      return run_worstcase(cfg, n, events);
    case Algo::kUniformSparsify:
      return run_uniform(cfg, n, events, false);
    case Algo::kUniformSparsifyBatch:
      return run_uniform(cfg, n, events, true);
  }
  throw std::logic_error("unreachable");
}

BenchResult bench_pipeline(const RunConfig& cfg, std::size_t n,
                           const std::vector<UpdateEvent>& events) {
  RunConfig quiet = cfg;
  quiet.verify_every = 0;  // bench never verifies; work counters stay clean
  const RunResult run = run_pipeline(quiet, n, events);
  BenchResult bench;
  bench.per_step_work.reserve(run.rows.size());
  for (const auto& row : run.rows) {
    bench.per_step_work.push_back(row.work_units);
    bench.total_work += row.work_units;
    bench.max_work = std::max(bench.max_work, row.work_units);
  }
  if (!bench.per_step_work.empty()) {
    std::vector<std::uint64_t> sorted = bench.per_step_work;
    std::sort(sorted.begin(), sorted.end());
    bench.median_work = sorted[sorted.size() / 2];
    bench.max_over_median = bench.median_work == 0
                                ? 0.0
                                : static_cast<double>(bench.max_work) /
                                      static_cast<double>(bench.median_work);
  }
  return bench;
}

}  // namespace dynmatch
