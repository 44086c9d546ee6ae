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

#include "dynmatch/partition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dynmatch/rng.hpp"
#include "dynmatch/work.hpp"

namespace dynmatch {

Partitioning Partitioning::identity(std::size_t n) {
  Partitioning p;
  p.part_of.resize(n);
  for (std::size_t v = 0; v < n; ++v) p.part_of[v] = static_cast<PartId>(v);
  p.part_count = static_cast<PartId>(n);
  return p;
}

Partitioning Partitioning::single_part(std::size_t n) {
  Partitioning p;
  p.part_of.assign(n, 0);
  p.part_count = n == 0 ? 0 : 1;
  return p;
}

std::size_t random_family_default_size(std::size_t n, Ratio eps, double constant) {
  const double ln_n = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  const double eps_d = eps.to_double();
  return static_cast<std::size_t>(std::ceil(constant * ln_n / (eps_d * eps_d)));
}

std::size_t random_family_part_count(std::size_t k, Ratio eps) {
  // d = ceil(4*(2k)/eps), exact in rational arithmetic.
  const Ratio d = Ratio(8 * static_cast<long long>(k)) / eps;
  return static_cast<std::size_t>(d.ceil());
}

PartitioningFamily gen_random_family(std::size_t n, std::size_t k, Ratio eps,
                                     std::optional<std::size_t> l_override, std::uint64_t seed) {
  PartitioningFamily family;
  family.kind = FamilyKind::kRandom;
  family.k = k;
  family.eps = eps;
  const std::size_t l = l_override ? *l_override : random_family_default_size(n, eps);
  const std::size_t d = std::max<std::size_t>(1, random_family_part_count(k, eps));
  Rng rng(seed);
  family.members.reserve(l);
  for (std::size_t j = 0; j < l; ++j) {
    Partitioning p;
    p.part_count = static_cast<PartId>(d);
    p.part_of.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      p.part_of[v] = static_cast<PartId>(rng.below(d));
    }
    family.members.push_back(std::move(p));
  }
  return family;
}

void BipartiteExpander::validate() const {
  if (neighbors.size() != n_left) {
    throw GraphError(GraphErrorCode::kParseError, "expander: row count != n_left");
  }
  for (const auto& row : neighbors) {
    if (row.size() != d) {
      throw GraphError(GraphErrorCode::kParseError, "expander: vertex is not left-regular");
    }
    for (VertexId r : row) {
      if (r >= n_right) {
        throw GraphError(GraphErrorCode::kRangeError, "expander: right vertex out of range");
      }
    }
  }
}

BipartiteExpander read_expander(const std::string& text) {
  std::istringstream is(text);
  BipartiteExpander exp;
  if (!(is >> exp.n_left >> exp.n_right >> exp.d)) {
    throw GraphError(GraphErrorCode::kParseError, "expander: bad header");
  }
  exp.neighbors.assign(exp.n_left, {});
  for (std::size_t v = 0; v < exp.n_left; ++v) {
    exp.neighbors[v].resize(exp.d);
    for (std::size_t i = 0; i < exp.d; ++i) {
      long long id = 0;
      if (!(is >> id) || id < 0) {
        throw GraphError(GraphErrorCode::kParseError, "expander: bad neighbor id");
      }
      exp.neighbors[v][i] = static_cast<VertexId>(id);
    }
  }
  exp.validate();
  return exp;
}

std::string write_expander(const BipartiteExpander& exp) {
  std::ostringstream os;
  os << exp.n_left << ' ' << exp.n_right << ' ' << exp.d << '\n';
  for (const auto& row : exp.neighbors) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
    os << '\n';
  }
  return os.str();
}

BipartiteExpander sample_left_regular(std::size_t n_left, std::size_t n_right, std::size_t d,
                                      std::uint64_t seed) {
  if (d > n_right) {
    throw GraphError(GraphErrorCode::kRangeError, "expander: d > n_right");
  }
  BipartiteExpander exp;
  exp.n_left = n_left;
  exp.n_right = n_right;
  exp.d = d;
  exp.neighbors.assign(n_left, {});
  Rng rng(seed);
  for (std::size_t v = 0; v < n_left; ++v) {
    auto& row = exp.neighbors[v];
    while (row.size() < d) {
      const VertexId r = static_cast<VertexId>(rng.below(n_right));
      if (std::find(row.begin(), row.end(), r) == row.end()) row.push_back(r);
    }
  }
  return exp;
}

namespace {

// Enumerates non-empty subsets of size <= k in lexicographic order keeping a
// running OR of neighbor masks. Right side must fit in 64 bits per word.
bool expand_subsets(const std::vector<std::vector<std::uint64_t>>& masks, std::size_t k,
                    Ratio one_minus_eps_d, std::size_t next, std::size_t taken,
                    std::vector<std::uint64_t>& acc, std::uint64_t& budget) {
  const std::size_t n = masks.size();
  for (std::size_t v = next; v < n; ++v) {
    if (budget == 0) {
      throw GraphError(GraphErrorCode::kRangeError, "verify_expander: enumeration budget exceeded");
    }
    --budget;
    std::vector<std::uint64_t> merged(acc.size());
    std::size_t popcnt = 0;
    for (std::size_t w = 0; w < acc.size(); ++w) {
      merged[w] = acc[w] | masks[v][w];
      popcnt += static_cast<std::size_t>(__builtin_popcountll(merged[w]));
    }
    work::add();
    // |N(S)| >= (1-eps)*d*|S| for S = current subset plus v.
    if (Ratio(static_cast<long long>(popcnt)) <
        one_minus_eps_d * Ratio(static_cast<long long>(taken + 1))) {
      return false;
    }
    if (taken + 1 < k) {
      std::swap(acc, merged);
      if (!expand_subsets(masks, k, one_minus_eps_d, v + 1, taken + 1, acc, budget)) return false;
      std::swap(acc, merged);
    }
  }
  return true;
}

}  // namespace

bool verify_expander(const BipartiteExpander& exp, std::size_t k, Ratio eps,
                     std::uint64_t subset_budget) {
  exp.validate();
  const std::size_t words = (exp.n_right + 63) / 64;
  std::vector<std::vector<std::uint64_t>> masks(exp.n_left,
                                                std::vector<std::uint64_t>(words, 0));
  for (std::size_t v = 0; v < exp.n_left; ++v) {
    for (VertexId r : exp.neighbors[v]) masks[v][r / 64] |= 1ULL << (r % 64);
  }
  const Ratio target = (Ratio(1) - eps) * Ratio(static_cast<long long>(exp.d));
  std::vector<std::uint64_t> acc(words, 0);
  std::uint64_t budget = subset_budget;
  return expand_subsets(masks, k, target, 0, 0, acc, budget);
}

PartitioningFamily family_from_expander(const BipartiteExpander& exp, std::size_t k, Ratio eps) {
  exp.validate();
  PartitioningFamily family;
  family.kind = FamilyKind::kExpanderDerived;
  family.k = k;
  family.eps = eps;
  family.members.reserve(exp.d);
  for (std::size_t i = 0; i < exp.d; ++i) {
    Partitioning p;
    p.part_count = static_cast<PartId>(exp.n_right);
    p.part_of.resize(exp.n_left);
    for (std::size_t v = 0; v < exp.n_left; ++v) {
      p.part_of[v] = exp.neighbors[v][i];
    }
    family.members.push_back(std::move(p));
  }
  return family;
}

ConcatenatedGraph::ConcatenatedGraph(const DynamicGraph& base, Partitioning partitioning)
    : partitioning_(std::move(partitioning)), simple_view_(partitioning_.part_count) {
  base.for_each_edge([&](const Edge& e) {
    const auto pe = project(e);
    if (!pe) return;
    auto [it, fresh] = multiplicity_.try_emplace(*pe, 0);
    if (++it->second == 1) simple_view_.insert_edge(*pe);
    ++inter_part_edges_;
  });
}

std::optional<Edge> ConcatenatedGraph::project(const Edge& base_edge) const {
  const PartId pu = partitioning_.part_of[base_edge.u];
  const PartId pv = partitioning_.part_of[base_edge.v];
  if (pu == pv) return std::nullopt;
  return Edge(pu, pv);
}

std::size_t ConcatenatedGraph::multiplicity(const Edge& part_edge) const {
  const auto it = multiplicity_.find(part_edge);
  return it == multiplicity_.end() ? 0 : it->second;
}

std::optional<UpdateEvent> ConcatenatedGraph::maintain(const UpdateEvent& base_event) {
  const auto pe = project(base_event.edge);
  work::add();
  if (!pe) return std::nullopt;
  if (base_event.kind == UpdateKind::kInsert) {
    ++inter_part_edges_;
    auto [it, fresh] = multiplicity_.try_emplace(*pe, 0);
    if (++it->second == 1) {
      simple_view_.insert_edge(*pe);
      return UpdateEvent{UpdateKind::kInsert, *pe};
    }
    return std::nullopt;
  }
  --inter_part_edges_;
  const auto it = multiplicity_.find(*pe);
  if (it == multiplicity_.end() || it->second == 0) {
    throw GraphError(GraphErrorCode::kMissingEdge, "concatenation out of sync with base");
  }
  if (--it->second == 0) {
    multiplicity_.erase(it);
    simple_view_.delete_edge(*pe);
    return UpdateEvent{UpdateKind::kDelete, *pe};
  }
  return std::nullopt;
}

ConcatenatedGraph concatenate(const DynamicGraph& base, const Partitioning& p) {
  return ConcatenatedGraph(base, p);
}

}  // namespace dynmatch
