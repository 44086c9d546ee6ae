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

#include "dynmatch/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include "dynmatch/work.hpp"

namespace dynmatch {

namespace {

// Edmonds' maximum matching, BFS alternating forest with blossom contraction
// through base[] pointers. Follows the classical array formulation.
class Blossom {
 public:
  explicit Blossom(const DynamicGraph& g) : n_(g.n()), adj_(n_), match_(n_, -1) {
    for (VertexId u = 0; u < n_; ++u) {
      const auto nb = g.neighbors(u);
      adj_[u].assign(nb.begin(), nb.end());
    }
  }

  std::vector<int> solve() {
    greedy_init();
    for (int v = 0; v < static_cast<int>(n_); ++v) {
      if (match_[v] == -1) {
        const int leaf = find_path(v);
        if (leaf != -1) augment(leaf);
      }
    }
    return match_;
  }

 private:
  void greedy_init() {
    for (VertexId u = 0; u < n_; ++u) {
      if (match_[u] != -1) continue;
      for (int v : adj_[u]) {
        if (match_[v] == -1) {
          match_[u] = v;
          match_[v] = u;
          break;
        }
      }
    }
  }

  int lca(int a, int b) {
    std::vector<bool> seen(n_, false);
    for (;;) {
      a = base_[a];
      seen[a] = true;
      if (match_[a] == -1) break;
      a = parent_[match_[a]];
    }
    for (;;) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = true;
      in_blossom_[base_[match_[v]]] = true;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  int find_path(int root) {
    parent_.assign(n_, -1);
    used_.assign(n_, false);
    base_.resize(n_);
    std::iota(base_.begin(), base_.end(), 0);
    used_[root] = true;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int to : adj_[v]) {
        work::add();
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
          const int cur_base = lca(v, to);
          in_blossom_.assign(n_, false);
          mark_path(v, cur_base, to);
          mark_path(to, cur_base, v);
          for (int i = 0; i < static_cast<int>(n_); ++i) {
            if (in_blossom_[base_[i]]) {
              base_[i] = cur_base;
              if (!used_[i]) {
                used_[i] = true;
                q.push(i);
              }
            }
          }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (match_[to] == -1) return to;
          used_[match_[to]] = true;
          q.push(match_[to]);
        }
      }
    }
    return -1;
  }

  void augment(int v) {
    while (v != -1) {
      const int pv = parent_[v];
      const int next = match_[pv];
      match_[v] = pv;
      match_[pv] = v;
      v = next;
    }
  }

  std::size_t n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_;
  std::vector<int> parent_;
  std::vector<int> base_;
  std::vector<bool> used_;
  std::vector<bool> in_blossom_;
};

}  // namespace

Matching max_matching_exact(const DynamicGraph& g) {
  Blossom solver(g);
  const auto mate = solver.solve();
  std::set<Edge> edges;
  for (VertexId v = 0; v < g.n(); ++v) {
    if (mate[v] != -1 && static_cast<VertexId>(mate[v]) > v) {
      edges.insert(Edge(v, static_cast<VertexId>(mate[v])));
    }
  }
  return Matching(std::move(edges));
}

std::size_t mu_exact(const DynamicGraph& g) { return max_matching_exact(g).size(); }

bool check_matching(const DynamicGraph& g, const Matching& m) {
  std::vector<bool> touched(g.n(), false);
  for (const Edge& e : m.edges()) {
    if (e.v >= g.n()) return false;
    if (!g.has_edge(e)) return false;
    if (touched[e.u] || touched[e.v]) return false;
    touched[e.u] = touched[e.v] = true;
  }
  return true;
}

ApproxCertificate certify_approx(const DynamicGraph& g, const Matching& m, Ratio alpha,
                                 Ratio delta) {
  ApproxCertificate cert;
  cert.mu_exact = mu_exact(g);
  cert.matching_size = m.size();
  cert.alpha = alpha;
  cert.delta = delta;
  cert.satisfied = Ratio(static_cast<long long>(cert.matching_size)) * alpha +
                       delta * Ratio(static_cast<long long>(g.n())) >=
                   Ratio(static_cast<long long>(cert.mu_exact));
  return cert;
}

std::string EdcsReport::to_text() const {
  std::ostringstream os;
  os << (valid() ? "valid" : "invalid") << " witness_size=" << witness_size
     << " violations=" << violations.size() << '\n';
  for (const auto& v : violations) {
    switch (v.clause) {
      case EdcsViolation::Clause::kWitnessSize:
        os << "a ";
        break;
      case EdcsViolation::Clause::kDegreeCap:
        os << "b ";
        break;
      case EdcsViolation::Clause::kExternalDegree:
        os << "c ";
        break;
      case EdcsViolation::Clause::kNotSubgraph:
        os << "s ";
        break;
    }
    if (v.edge) os << v.edge->u << ' ' << v.edge->v << ' ';
    os << v.detail << '\n';
  }
  return os.str();
}

EdcsReport check_damaged_edcs(const DynamicGraph& g, const std::vector<Edge>& h, Ratio beta,
                              Ratio lambda, Ratio delta,
                              const std::optional<std::vector<VertexId>>& witness,
                              const EdcsCheckOptions& opts) {
  std::vector<VertexId> damaged;
  if (witness) {
    damaged = *witness;
  } else if (opts.allow_greedy_witness) {
    damaged = greedy_witness(g, h, beta, lambda);
  } else {
    throw GraphError(GraphErrorCode::kParseError,
                     "damaged-EDCS check: no witness supplied and fallback search disabled");
  }

  EdcsReport report;
  report.witness_size = damaged.size();

  std::vector<bool> in_witness(g.n(), false);
  for (VertexId v : damaged) in_witness[v] = true;

  std::vector<std::size_t> deg_h(g.n(), 0);
  std::vector<bool> seen_in_h;
  std::set<Edge> h_set(h.begin(), h.end());
  for (const Edge& e : h_set) {
    ++deg_h[e.u];
    ++deg_h[e.v];
    work::add();
    if (!g.has_edge(e)) {
      report.violations.push_back(
          {EdcsViolation::Clause::kNotSubgraph, e, "H edge absent from G"});
    }
  }

  const Ratio n_ratio(static_cast<long long>(g.n()));
  if (Ratio(static_cast<long long>(damaged.size())) > delta * n_ratio) {
    report.violations.push_back({EdcsViolation::Clause::kWitnessSize, std::nullopt,
                                 "witness size " + std::to_string(damaged.size()) + " > delta*n = " +
                                     (delta * n_ratio).str()});
  }

  std::size_t reported = report.violations.size();
  for (const Edge& e : h_set) {
    const Ratio deg(static_cast<long long>(deg_h[e.u] + deg_h[e.v]));
    if (deg > beta && reported < opts.max_violations) {
      report.violations.push_back({EdcsViolation::Clause::kDegreeCap, e,
                                   "deg_H=" + deg.str() + " > beta=" + beta.str()});
      ++reported;
    }
  }

  const Ratio lower = beta * (Ratio(1) - lambda);
  g.for_each_edge([&](const Edge& e) {
    if (h_set.count(e)) return;
    if (in_witness[e.u] || in_witness[e.v]) return;
    const Ratio deg(static_cast<long long>(deg_h[e.u] + deg_h[e.v]));
    if (deg < lower) {
      if (report.violations.size() < opts.max_violations) {
        report.violations.push_back({EdcsViolation::Clause::kExternalDegree, e,
                                     "deg_H=" + deg.str() + " < beta*(1-lambda)=" + lower.str()});
      } else {
        // Past the cap we still need validity to flip; record a sentinel once.
        report.violations.push_back({EdcsViolation::Clause::kExternalDegree, e, "..."});
      }
    }
  });
  return report;
}

std::vector<VertexId> greedy_witness(const DynamicGraph& g, const std::vector<Edge>& h,
                                     Ratio beta, Ratio lambda) {
  std::set<Edge> h_set(h.begin(), h.end());
  std::vector<std::size_t> deg_h(g.n(), 0);
  for (const Edge& e : h_set) {
    ++deg_h[e.u];
    ++deg_h[e.v];
  }
  const Ratio lower = beta * (Ratio(1) - lambda);
  std::vector<Edge> violating;
  g.for_each_edge([&](const Edge& e) {
    if (h_set.count(e)) return;
    if (Ratio(static_cast<long long>(deg_h[e.u] + deg_h[e.v])) < lower) violating.push_back(e);
  });

  std::vector<VertexId> witness;
  std::vector<bool> damaged(g.n(), false);
  for (;;) {
    std::vector<std::size_t> hits(g.n(), 0);
    std::size_t open = 0;
    for (const Edge& e : violating) {
      if (damaged[e.u] || damaged[e.v]) continue;
      ++hits[e.u];
      ++hits[e.v];
      ++open;
    }
    if (open == 0) break;
    const auto best = std::max_element(hits.begin(), hits.end());
    const VertexId pick = static_cast<VertexId>(best - hits.begin());
    damaged[pick] = true;
    witness.push_back(pick);
  }
  return witness;
}

bool check_matching_preserving(const DynamicGraph& g, const PartitioningFamily& family,
                               const Matching& planted, Ratio eps) {
  const Ratio target = (Ratio(1) - eps) * Ratio(static_cast<long long>(planted.size()));
  for (const auto& p : family.members) {
    const ConcatenatedGraph cg = concatenate(g, p);
    const std::size_t mu = mu_exact(cg.simple_view());
    if (Ratio(static_cast<long long>(mu)) >= target) return true;
  }
  return false;
}

}  // namespace dynmatch
