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

#include "dynmatch/gen.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "dynmatch/rng.hpp"

namespace dynmatch {

StreamKind stream_kind_from_name(const std::string& name) {
  if (name == "erdos-renyi-dynamic") return StreamKind::kErdosRenyiDynamic;
  if (name == "sliding-window") return StreamKind::kSlidingWindow;
  if (name == "planted-matching-adversarial") return StreamKind::kPlantedMatchingAdversarial;
  throw std::invalid_argument("unknown stream kind: " + name);
}

namespace {

// Uniform absent edge, or nothing if the attempt budget runs out (dense or
// degree-capped corners).
bool sample_new_edge(Rng& rng, std::size_t n, const std::set<Edge>& live,
                     std::size_t degree_cap, const std::vector<std::size_t>& deg, Edge* out) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const VertexId u = static_cast<VertexId>(rng.below(n));
    const VertexId v = static_cast<VertexId>(rng.below(n));
    if (u == v) continue;
    const Edge e(u, v);
    if (live.count(e)) continue;
    if (degree_cap > 0 && (deg[e.u] >= degree_cap || deg[e.v] >= degree_cap)) continue;
    *out = e;
    return true;
  }
  return false;
}

}  // namespace

std::vector<UpdateEvent> generate_stream(StreamKind kind, std::size_t n, std::size_t steps,
                                         std::uint64_t seed, const GenOptions& opts) {
  if (n < 2) throw std::invalid_argument("stream generation needs n >= 2");
  Rng rng(seed);
  std::vector<UpdateEvent> events;
  events.reserve(steps);
  std::set<Edge> live;
  std::vector<std::size_t> deg(n, 0);
  std::deque<Edge> fifo;

  auto push_insert = [&](const Edge& e) {
    live.insert(e);
    ++deg[e.u];
    ++deg[e.v];
    fifo.push_back(e);
    events.push_back({UpdateKind::kInsert, e});
  };
  auto push_delete = [&](const Edge& e) {
    live.erase(e);
    --deg[e.u];
    --deg[e.v];
    events.push_back({UpdateKind::kDelete, e});
  };

  switch (kind) {
    case StreamKind::kErdosRenyiDynamic: {
      while (events.size() < steps) {
        const bool insert = live.empty() || rng.chance(1, 2);
        Edge e(0, 1);
        if (insert && sample_new_edge(rng, n, live, opts.degree_cap, deg, &e)) {
          push_insert(e);
        } else if (!live.empty()) {
          auto it = live.begin();
          std::advance(it, static_cast<long>(rng.below(live.size())));
          push_delete(*it);
        } else {
          break;  // nothing to do on an empty degree-saturated graph
        }
      }
      break;
    }
    case StreamKind::kSlidingWindow: {
      const std::size_t window = opts.window == 0 ? 2 * n : opts.window;
      while (events.size() < steps) {
        if (live.size() >= window) {
          while (!fifo.empty() && !live.count(fifo.front())) fifo.pop_front();
          if (fifo.empty()) break;
          push_delete(fifo.front());
          fifo.pop_front();
        } else {
          Edge e(0, 1);
          if (!sample_new_edge(rng, n, live, opts.degree_cap, deg, &e)) break;
          push_insert(e);
        }
      }
      break;
    }
    case StreamKind::kPlantedMatchingAdversarial: {
      // Plant a perfect matching inside one random vertex subset (one "part"
      // of a hypothetical random partitioning), then add noise around it.
      const std::size_t part_size = std::max<std::size_t>(4, n / 8) & ~std::size_t{1};
      std::vector<VertexId> vertices(n);
      for (std::size_t v = 0; v < n; ++v) vertices[v] = static_cast<VertexId>(v);
      rng.shuffle(vertices);
      for (std::size_t i = 0; i + 1 < part_size && events.size() < steps; i += 2) {
        push_insert(Edge(vertices[i], vertices[i + 1]));
      }
      while (events.size() < steps) {
        const bool insert = live.empty() || rng.chance(2, 3);
        Edge e(0, 1);
        if (insert && sample_new_edge(rng, n, live, opts.degree_cap, deg, &e)) {
          push_insert(e);
        } else if (!live.empty()) {
          auto it = live.begin();
          std::advance(it, static_cast<long>(rng.below(live.size())));
          push_delete(*it);
        } else {
          break;
        }
      }
      break;
    }
  }
  return events;
}

DynamicGraph random_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  DynamicGraph g(n);
  Rng rng(seed);
  std::set<Edge> live;
  std::vector<std::size_t> deg(n, 0);
  while (g.edge_count() < m) {
    Edge e(0, 1);
    if (!sample_new_edge(rng, n, live, 0, deg, &e)) break;
    live.insert(e);
    g.insert_edge(e);
  }
  return g;
}

std::vector<Edge> random_planted_matching(std::size_t n, std::size_t size, std::uint64_t seed) {
  if (2 * size > n) throw std::invalid_argument("planted matching does not fit");
  std::vector<VertexId> vertices(n);
  for (std::size_t v = 0; v < n; ++v) vertices[v] = static_cast<VertexId>(v);
  Rng rng(seed);
  rng.shuffle(vertices);
  std::vector<Edge> planted;
  for (std::size_t i = 0; i < size; ++i) {
    planted.emplace_back(vertices[2 * i], vertices[2 * i + 1]);
  }
  std::sort(planted.begin(), planted.end());
  return planted;
}

}  // namespace dynmatch
