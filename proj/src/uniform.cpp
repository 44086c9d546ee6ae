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

#include "dynmatch/uniform.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "dynmatch/rng.hpp"
#include "dynmatch/work.hpp"

namespace dynmatch {

FractionalMatching gen_uniform_fm(const DynamicGraph& g, Ratio lambda, std::uint64_t seed) {
  if (!(lambda > Ratio(0) && lambda <= Ratio(1))) {
    throw UniformError(UniformErrorCode::kBadWeights, "lambda must be in (0,1]");
  }
  const long long cap = (Ratio(1) / lambda).floor();
  std::vector<Edge> edges = g.edges();
  Rng rng(seed);
  rng.shuffle(edges);
  std::vector<long long> deg(g.n(), 0);
  FractionalMatching fm;
  for (const Edge& e : edges) {
    work::add();
    if (deg[e.u] < cap && deg[e.v] < cap) {
      ++deg[e.u];
      ++deg[e.v];
      fm.weights.emplace(e, lambda);
    }
  }
  return fm;
}

std::vector<Edge> degree_split(const std::vector<Edge>& edges, std::size_t n) {
  // Remaining adjacency as sorted neighbor sets; walks consume edges.
  std::vector<std::set<VertexId>> adj(n);
  for (const Edge& e : edges) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  std::set<VertexId> live;
  for (VertexId v = 0; v < n; ++v) {
    if (!adj[v].empty()) live.insert(v);
  }

  auto consume = [&](VertexId a, VertexId b) {
    adj[a].erase(b);
    adj[b].erase(a);
    if (adj[a].empty()) live.erase(a);
    if (adj[b].empty()) live.erase(b);
    work::add();
  };

  std::vector<Edge> picked;
  while (!live.empty()) {
    const VertexId start = *live.begin();
    std::deque<VertexId> walk{start};
    // Extend the tail greedily, then the head, so the walk is maximal.
    for (;;) {
      const VertexId tail = walk.back();
      if (adj[tail].empty()) break;
      const VertexId next = *adj[tail].begin();
      consume(tail, next);
      walk.push_back(next);
    }
    for (;;) {
      const VertexId head = walk.front();
      if (adj[head].empty()) break;
      const VertexId next = *adj[head].begin();
      consume(head, next);
      walk.push_front(next);
    }
    // Keep edges at even 1-based positions.
    for (std::size_t pos = 2; pos < walk.size(); pos += 2) {
      picked.emplace_back(walk[pos - 1], walk[pos]);
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

LevelStructure::LevelStructure(const DynamicGraph& g, Ratio lambda, Ratio beta_cap, Ratio eps,
                               int k)
    : n_(g.n()), lambda_(lambda), beta_cap_(beta_cap), eps_(eps), batch_count_(k) {
  if (!(lambda_ > Ratio(0)) || lambda_ >= beta_cap_) {
    throw UniformError(UniformErrorCode::kBadWeights,
                       "requires 0 < lambda < beta (lambda=" + lambda_.str() +
                           ", beta=" + beta_cap_.str() + ")");
  }
  if (!(eps_ > Ratio(0))) {
    throw UniformError(UniformErrorCode::kBadWeights, "eps must be positive");
  }
  if (batch_count_ < 1) {
    throw UniformError(UniformErrorCode::kBadWeights, "k must be >= 1");
  }
  // The unique l with beta/2 <= 2^l * lambda < beta.
  Ratio scaled = lambda_;
  l_ = 0;
  while (scaled < beta_cap_ / Ratio(2)) {
    scaled *= Ratio(2);
    ++l_;
  }
  const long long cap = (Ratio(1) / lambda_).floor();
  for (VertexId v = 0; v < g.n(); ++v) {
    if (static_cast<long long>(g.degree(v)) > cap) {
      throw UniformError(UniformErrorCode::kBadWeights,
                         "vertex " + std::to_string(v) + " degree exceeds floor(1/lambda)");
    }
  }
  e_at_least_.assign(l_ + 1, {});
  f_.assign(l_ + 1, {});
  d_at_least_.assign(l_ + 1, {});
  v_at_least_.assign(l_ + 1, std::vector<bool>(n_, false));
  v_level_.assign(l_ + 1, std::vector<bool>(n_, false));

  g.for_each_edge([&](const Edge& e) { e_active_.insert(e); });
  full_rebuild();
  rebuilt_last_op_ = false;
  rebuild_count_ = 0;
}

Ratio LevelStructure::level_weight(std::size_t i) const {
  Ratio w = lambda_;
  for (std::size_t x = 0; x < i; ++x) w *= Ratio(2);
  return w;
}

Ratio LevelStructure::active_slack() const {
  return eps_ * Ratio(batch_index_) / Ratio(batch_count_);
}

bool LevelStructure::guard_exceeded(std::size_t numer, std::size_t base) const {
  return Ratio(static_cast<long long>(numer)) >
         active_slack() * Ratio(static_cast<long long>(base));
}

void LevelStructure::set_batch(int i) {
  if (i < batch_index_) {
    throw UniformError(UniformErrorCode::kBatchOrder, "batch index decreased");
  }
  if (i > batch_count_) {
    throw UniformError(UniformErrorCode::kBatchOrder, "batch index exceeds k");
  }
  batch_index_ = i;
}

void LevelStructure::full_rebuild() {
  for (std::size_t i = 0; i <= l_; ++i) {
    e_at_least_[i].clear();
    f_[i].clear();
    d_at_least_[i].clear();
    std::fill(v_at_least_[i].begin(), v_at_least_[i].end(), false);
    std::fill(v_level_[i].begin(), v_level_[i].end(), false);
  }
  std::fill(v_at_least_[0].begin(), v_at_least_[0].end(), true);
  e_at_least_[0] = e_active_;
  rebuild_from(0);
  ++rebuild_count_;
  rebuilt_last_op_ = true;
}

void LevelStructure::rebuild_from(std::size_t i0) {
  for (std::size_t i = i0; i + 1 <= l_; ++i) {
    // Peel low-degree vertices into V^(i); degree counts only edges to
    // still-unpeeled vertices, lowest index first for determinism.
    auto& peeled = v_level_[i];
    std::fill(peeled.begin(), peeled.end(), false);
    std::vector<long long> deg(n_, 0);
    std::vector<std::vector<VertexId>> adj(n_);
    for (const Edge& e : e_at_least_[i]) {
      ++deg[e.u];
      ++deg[e.v];
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
      work::add();
    }
    const Ratio inv_eps = Ratio(1) / eps_;
    std::set<VertexId> eligible;
    for (VertexId v = 0; v < n_; ++v) {
      if (v_at_least_[i][v] && Ratio(deg[v]) <= inv_eps) eligible.insert(v);
    }
    while (!eligible.empty()) {
      const VertexId v = *eligible.begin();
      eligible.erase(eligible.begin());
      if (peeled[v]) continue;
      peeled[v] = true;
      work::add();
      for (VertexId u : adj[v]) {
        if (peeled[u]) continue;
        if (--deg[u] >= 0 && Ratio(deg[u]) <= inv_eps && v_at_least_[i][u]) eligible.insert(u);
      }
    }

    auto& next_v = v_at_least_[i + 1];
    for (VertexId v = 0; v < n_; ++v) next_v[v] = v_at_least_[i][v] && !peeled[v];

    f_[i].clear();
    std::vector<Edge> survivors;
    for (const Edge& e : e_at_least_[i]) {
      if (peeled[e.u] || peeled[e.v]) {
        f_[i].insert(e);
      } else {
        survivors.push_back(e);
      }
      work::add();
    }
    const std::vector<Edge> split = degree_split(survivors, n_);
    e_at_least_[i + 1] = std::set<Edge>(split.begin(), split.end());
    d_at_least_[i + 1].clear();
  }
  f_[l_] = e_at_least_[l_];
  v_level_[l_] = v_at_least_[l_];
}

void LevelStructure::clean_up(std::size_t j) {
  for (std::size_t i = j; i <= l_; ++i) {
    for (const Edge& e : d_at_least_[i]) {
      e_at_least_[i].erase(e);
      f_[i].erase(e);
      work::add();
    }
    d_at_least_[i].clear();
  }
}

void LevelStructure::insert(const Edge& e) {
  rebuilt_last_op_ = false;
  e_pending_.insert(e);
  work::add();
  if (guard_exceeded(e_pending_.size(), e_active_.size())) {
    clean_up(0);
    for (const Edge& p : e_pending_) e_active_.insert(p);
    e_pending_.clear();
    full_rebuild();
  }
}

void LevelStructure::erase(const Edge& e) {
  rebuilt_last_op_ = false;
  work::add();
  if (e_pending_.erase(e) > 0) return;
  if (e_active_.erase(e) == 0) {
    throw UniformError(UniformErrorCode::kMissingEdge,
                       "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           ") is neither pending nor active");
  }
  std::size_t ell = 0;
  for (std::size_t i = 0; i <= l_; ++i) {
    if (e_at_least_[i].count(e)) ell = i;
  }
  for (std::size_t i = 0; i <= ell; ++i) {
    d_at_least_[i].insert(e);
    work::add();
  }
  std::size_t min_violated = l_ + 1;
  for (std::size_t i = 0; i <= l_; ++i) {
    if (guard_exceeded(d_at_least_[i].size(), e_at_least_[i].size())) {
      min_violated = i;
      break;
    }
  }
  if (min_violated <= l_) {
    clean_up(min_violated);
    rebuild_from(min_violated);
    ++rebuild_count_;
    rebuilt_last_op_ = true;
  }
}

std::vector<LevelStructure::OutputEdge> LevelStructure::output() const {
  std::vector<OutputEdge> out;
  for (std::size_t i = 0; i <= l_; ++i) {
    const Ratio w = level_weight(i);
    for (const Edge& e : f_[i]) {
      if (!d_at_least_[i].count(e)) out.push_back({e, w});
    }
  }
  return out;
}

Ratio LevelStructure::output_size() const {
  Ratio s(0);
  for (std::size_t i = 0; i <= l_; ++i) {
    long long live = 0;
    for (const Edge& e : f_[i]) {
      if (!d_at_least_[i].count(e)) ++live;
    }
    s += level_weight(i) * Ratio(live);
  }
  return s;
}

Ratio LevelStructure::input_size() const {
  return lambda_ * Ratio(static_cast<long long>(e_active_.size() + e_pending_.size()));
}

Ratio LevelStructure::max_vertex_excess() const {
  std::vector<Ratio> w_out(n_, Ratio(0));
  std::vector<Ratio> w_in(n_, Ratio(0));
  for (std::size_t i = 0; i <= l_; ++i) {
    const Ratio w = level_weight(i);
    for (const Edge& e : f_[i]) {
      if (d_at_least_[i].count(e)) continue;
      w_out[e.u] += w;
      w_out[e.v] += w;
    }
  }
  for (const Edge& e : e_active_) {
    w_in[e.u] += lambda_;
    w_in[e.v] += lambda_;
  }
  for (const Edge& e : e_pending_) {
    w_in[e.u] += lambda_;
    w_in[e.v] += lambda_;
  }
  Ratio worst = Ratio(0) - Ratio(1);
  for (VertexId v = 0; v < n_; ++v) {
    const Ratio excess = w_out[v] - w_in[v];
    if (excess > worst) worst = excess;
  }
  return worst;
}

std::vector<std::string> LevelStructure::invariant_violations() const {
  std::vector<std::string> out;
  if (guard_exceeded(e_pending_.size(), e_active_.size())) {
    out.push_back("pending guard: |E_p|=" + std::to_string(e_pending_.size()) +
                  " over slack*" + std::to_string(e_active_.size()));
  }
  for (std::size_t i = 0; i <= l_; ++i) {
    if (guard_exceeded(d_at_least_[i].size(), e_at_least_[i].size())) {
      out.push_back("deletion guard at level " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i <= l_; ++i) {
    if (!(level_weight(i) < beta_cap_) && !f_[i].empty()) {
      out.push_back("weight cap breached at level " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i + 1 <= l_; ++i) {
    for (const Edge& e : e_at_least_[i + 1]) {
      if (!e_at_least_[i].count(e)) {
        out.push_back("containment: E>=(i+1) not within E>=(i) at level " + std::to_string(i));
        break;
      }
      if (f_[i].count(e)) {
        out.push_back("containment: E>=(i+1) intersects F(i) at level " + std::to_string(i));
        break;
      }
    }
  }
  return out;
}

std::string LevelStructure::dump_levels() const {
  std::ostringstream os;
  os << "lambda=" << lambda_.str() << " beta=" << beta_cap_.str() << " L=" << l_
     << " active=" << e_active_.size() << " pending=" << e_pending_.size() << '\n';
  for (std::size_t i = 0; i <= l_; ++i) {
    os << "level " << i << ": h=" << level_weight(i).str() << " |E>=|=" << e_at_least_[i].size()
       << " |F|=" << f_[i].size() << " |D>=|=" << d_at_least_[i].size() << '\n';
  }
  return os.str();
}

}  // namespace dynmatch
