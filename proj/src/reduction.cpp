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

#include "dynmatch/reduction.hpp"

#include <cmath>

#include "dynmatch/rng.hpp"

namespace dynmatch {

long long ReductionConfig::parts_multiplier() const {
  if (c_override) return *c_override;
  return (Ratio(8) / (eps / (Ratio(8) * alpha))).ceil();
}

Ratio ReductionConfig::effective_inner_delta() const {
  if (inner_delta) return *inner_delta;
  return eps / (Ratio(8) * Ratio(parts_multiplier()));
}

Ratio ReductionConfig::effective_top_eps() const {
  if (top_matcher_eps) return *top_matcher_eps;
  return eps / (Ratio(8) * alpha);
}

std::size_t reduction_level_count(std::size_t n, Ratio alpha, Ratio eps) {
  const double ratio = 1.0 + (eps / (Ratio(8) * alpha)).to_double();
  double mm = 1.0;
  std::size_t levels = 0;
  while (mm <= static_cast<double>(n)) {
    mm *= ratio;
    ++levels;
  }
  return levels;
}

AlphaEpsReduction::AlphaEpsReduction(std::size_t n, ReductionConfig cfg)
    : cfg_(cfg), base_(n), host_(n) {
  const double ratio = 1.0 + (cfg_.eps / (Ratio(8) * cfg_.alpha)).to_double();
  const long long c = cfg_.parts_multiplier();
  Rng seeds(cfg_.seed);

  EdcsParams inner;
  inner.beta = cfg_.inner_beta;
  inner.lambda = cfg_.inner_lambda;
  inner.delta = cfg_.effective_inner_delta();

  double mm = 1.0;
  while (mm <= static_cast<double>(n)) {
    mm *= ratio;
    ++level_count_;
    const std::size_t k = static_cast<std::size_t>(std::ceil(mm));
    const std::size_t parts = static_cast<std::size_t>(
        std::max<double>(1.0, std::ceil(static_cast<double>(c) * mm)));
    for (std::size_t j = 0; j < cfg_.family_size; ++j) {
      Partitioning p;
      p.part_count = static_cast<PartId>(parts);
      p.part_of.resize(n);
      Rng r = seeds.fork();
      for (std::size_t v = 0; v < n; ++v) {
        p.part_of[v] = static_cast<PartId>(r.below(parts));
      }
      ConcatenatedGraph cg(base_, std::move(p));
      DamagedEdcs edcs(cg.simple_view(), inner, 1, /*allow_degenerate=*/true);
      LazyMatcher matcher(edcs.sparsifier(), cfg_.inner_matcher_eps);
      cells_.push_back(std::make_unique<Cell>(std::move(cg), std::move(edcs), std::move(matcher)));
    }
    (void)k;
  }
  top_matcher_ = std::make_unique<LazyMatcher>(host_, cfg_.effective_top_eps());
}

void AlphaEpsReduction::refresh_cell_pullback(Cell& cell, std::vector<UpdateEvent>& host_events) {
  std::set<Edge> next;
  for (const Edge& me : cell.matcher.matching().edges()) {
    const auto it = cell.preimages.find(me);
    if (it == cell.preimages.end() || it->second.empty()) continue;
    next.insert(*it->second.begin());
  }
  for (const Edge& e : cell.pulled) {
    if (next.count(e)) continue;
    auto it = host_count_.find(e);
    if (--it->second == 0) {
      host_count_.erase(it);
      host_events.push_back({UpdateKind::kDelete, e});
    }
  }
  for (const Edge& e : next) {
    if (cell.pulled.count(e)) continue;
    if (++host_count_[e] == 1) {
      host_events.push_back({UpdateKind::kInsert, e});
    }
  }
  cell.pulled = std::move(next);
}

void AlphaEpsReduction::apply(const UpdateEvent& ev) {
  base_.apply(ev);
  std::vector<UpdateEvent> host_events;
  for (auto& cell_ptr : cells_) {
    Cell& cell = *cell_ptr;
    const auto part_edge = cell.concat.project(ev.edge);
    if (part_edge) {
      if (ev.kind == UpdateKind::kInsert) {
        cell.preimages[*part_edge].insert(ev.edge);
      } else {
        auto it = cell.preimages.find(*part_edge);
        if (it != cell.preimages.end()) {
          it->second.erase(ev.edge);
          if (it->second.empty()) cell.preimages.erase(it);
        }
      }
    }
    const auto pe = cell.concat.maintain(ev);
    if (pe) {
      const auto h_diff = pe->kind == UpdateKind::kInsert
                              ? cell.edcs.on_insert(cell.concat.simple_view(), pe->edge)
                              : cell.edcs.on_delete(cell.concat.simple_view(), pe->edge);
      for (const auto& hev : h_diff) {
        cell.matcher.apply(cell.edcs.sparsifier(), hev);
      }
    }
    refresh_cell_pullback(cell, host_events);
  }
  for (const auto& hev : host_events) {
    host_.apply(hev);
    top_matcher_->apply(host_, hev);
  }
}

}  // namespace dynmatch
