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

#include "dynmatch/matcher.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "dynmatch/work.hpp"

namespace dynmatch {

namespace {

// Blossom contraction through orig[] pointers (disjoint-set flavoured BFS).
// Deliberately a different formulation from the oracle's Edmonds variant.
class ContractionMatcher {
 public:
  explicit ContractionMatcher(const DynamicGraph& g)
      : n_(static_cast<int>(g.n())),
        adj_(n_),
        match_(n_, -1),
        parent_(n_, -1),
        orig_(n_),
        state_(n_, -1),
        visit_stamp_(n_, -1) {
    for (VertexId u = 0; u < g.n(); ++u) {
      const auto nb = g.neighbors(u);
      adj_[u].assign(nb.begin(), nb.end());
    }
  }

  std::vector<int> solve() {
    for (int u = 0; u < n_; ++u) {
      if (match_[u] != -1) continue;
      for (int v : adj_[u]) {
        if (match_[v] == -1) {
          match_[u] = v;
          match_[v] = u;
          break;
        }
      }
    }
    for (int u = 0; u < n_; ++u) {
      if (match_[u] == -1) bfs(u);
    }
    return match_;
  }

 private:
  void augment(int u) {
    while (u != -1) {
      const int pv = parent_[u];
      const int next = match_[pv];
      match_[u] = pv;
      match_[pv] = u;
      u = next;
    }
  }

  int lca(int u, int v) {
    ++timer_;
    for (;;) {
      if (u != -1) {
        if (visit_stamp_[u] == timer_) return u;
        visit_stamp_[u] = timer_;
        u = match_[u] == -1 ? -1 : orig_[parent_[match_[u]]];
      }
      std::swap(u, v);
    }
  }

  void contract(int v, int w, int a) {
    while (orig_[v] != a) {
      parent_[v] = w;
      w = match_[v];
      if (state_[w] == 1) {
        state_[w] = 0;
        queue_.push(w);
      }
      orig_[v] = a;
      orig_[w] = a;
      v = parent_[w];
    }
  }

  bool bfs(int root) {
    std::fill(state_.begin(), state_.end(), -1);
    std::iota(orig_.begin(), orig_.end(), 0);
    queue_ = {};
    queue_.push(root);
    state_[root] = 0;
    while (!queue_.empty()) {
      const int v = queue_.front();
      queue_.pop();
      for (int x : adj_[v]) {
        work::add();
        if (state_[x] == -1) {
          parent_[x] = v;
          state_[x] = 1;
          if (match_[x] == -1) {
            augment(x);
            return true;
          }
          state_[match_[x]] = 0;
          queue_.push(match_[x]);
        } else if (state_[x] == 0 && orig_[v] != orig_[x]) {
          const int a = lca(orig_[v], orig_[x]);
          contract(x, v, a);
          contract(v, x, a);
        }
      }
    }
    return false;
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_;
  std::vector<int> parent_;
  std::vector<int> orig_;
  std::vector<int> state_;  // -1 unvisited, 0 even, 1 odd
  std::vector<int> visit_stamp_;
  int timer_ = 0;
  std::queue<int> queue_;
};

}  // namespace

Matching static_approx_matching(const DynamicGraph& h, Ratio eps) {
  (void)eps;  // the rebuild augments past every eps-dependent path length
  ContractionMatcher solver(h);
  const auto mate = solver.solve();
  std::set<Edge> edges;
  for (VertexId v = 0; v < h.n(); ++v) {
    if (mate[v] != -1 && static_cast<VertexId>(mate[v]) > v) {
      edges.insert(Edge(v, static_cast<VertexId>(mate[v])));
    }
  }
  return Matching(std::move(edges));
}

LazyMatcher::LazyMatcher(const DynamicGraph& host, Ratio eps) : eps_(eps) { rebuild(host); }

long long LazyMatcher::threshold() const {
  const long long t = (eps_ * Ratio(static_cast<long long>(last_size_))).floor();
  return std::max<long long>(1, t);
}

void LazyMatcher::rebuild(const DynamicGraph& host) {
  const Matching next = static_approx_matching(host, eps_);
  for (const Edge& e : matching_.edges()) {
    if (!next.contains(e)) ++recourse_;
  }
  for (const Edge& e : next.edges()) {
    if (!matching_.contains(e)) ++recourse_;
  }
  matching_ = next;
  last_size_ = matching_.size();
  updates_since_rebuild_ = 0;
  ++rebuild_count_;
  rebuilt_last_op_ = true;
}

void LazyMatcher::apply(const DynamicGraph& host, const UpdateEvent& ev) {
  rebuilt_last_op_ = false;
  if (ev.kind == UpdateKind::kDelete && matching_.contains(ev.edge)) {
    matching_.remove(ev.edge);
    ++recourse_;
  }
  ++updates_since_rebuild_;
  if (updates_since_rebuild_ > threshold()) {
    rebuild(host);
  }
}

namespace testing_support {

namespace {

bool extend(const DynamicGraph& g, const std::vector<int>& mate, std::vector<bool>& on_path,
            VertexId v, std::size_t edges_left) {
  // v is reached over an unmatched edge; if it is free the path augments.
  if (mate[v] == -1) return true;
  if (edges_left < 2) return false;
  const VertexId w = static_cast<VertexId>(mate[v]);
  if (on_path[w]) return false;
  on_path[v] = true;
  on_path[w] = true;
  for (VertexId x : g.neighbors(w)) {
    if (on_path[x] || static_cast<int>(x) == mate[w]) continue;
    if (extend(g, mate, on_path, x, edges_left - 2)) {
      on_path[v] = on_path[w] = false;
      return true;
    }
  }
  on_path[v] = false;
  on_path[w] = false;
  return false;
}

}  // namespace

bool has_augmenting_path_upto(const DynamicGraph& g, const Matching& m, std::size_t max_len) {
  std::vector<int> mate(g.n(), -1);
  for (const Edge& e : m.edges()) {
    mate[e.u] = static_cast<int>(e.v);
    mate[e.v] = static_cast<int>(e.u);
  }
  if (max_len == 0) return false;
  std::vector<bool> on_path(g.n(), false);
  for (VertexId v = 0; v < g.n(); ++v) {
    if (mate[v] != -1) continue;
    on_path[v] = true;
    for (VertexId x : g.neighbors(v)) {
      if (on_path[x]) continue;
      if (extend(g, mate, on_path, x, max_len - 1)) return true;
    }
    on_path[v] = false;
  }
  return false;
}

}  // namespace testing_support

}  // namespace dynmatch
