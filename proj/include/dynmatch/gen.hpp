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

#ifndef DYNMATCH_GEN_HPP_
#define DYNMATCH_GEN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dynmatch/graph.hpp"

namespace dynmatch {

enum class StreamKind {
  kErdosRenyiDynamic,       // random inserts/deletes over live set
  kSlidingWindow,           // inserts until the window fills, then deletes the oldest
  kPlantedMatchingAdversarial,  // perfect matching inside one random part, then noise
};

StreamKind stream_kind_from_name(const std::string& name);

struct GenOptions {
  std::size_t window = 0;  // sliding-window size; 0 means 2n
  // maximum degree for degree-capped streams; 0 = uncapped
  std::size_t degree_cap = 0;
};

std::vector<UpdateEvent> generate_stream(StreamKind kind, std::size_t n, std::size_t steps,
                                         std::uint64_t seed, const GenOptions& opts = {});

// Random graph with exactly m edges (used by test fixtures).
DynamicGraph random_graph(std::size_t n, std::size_t m, std::uint64_t seed);

// Disjoint random matching of the given size planted on [0, n).
std::vector<Edge> random_planted_matching(std::size_t n, std::size_t size, std::uint64_t seed);

}  // namespace dynmatch

#endif  // DYNMATCH_GEN_HPP_
