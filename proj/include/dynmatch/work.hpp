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

#ifndef DYNMATCH_WORK_HPP_
#define DYNMATCH_WORK_HPP_

#include <cstdint>

namespace dynmatch {
namespace work {

// Single instrumentation facade. One work unit = one adjacency mutation,
// one degree read, or one set-membership test inside library code.
// Harness overhead is never counted.

inline std::uint64_t& counter() {
  thread_local std::uint64_t units = 0;
  return units;
}

inline void add(std::uint64_t n = 1) { counter() += n; }

inline std::uint64_t count() { return counter(); }

inline void reset() { counter() = 0; }

// Work recorded since construction.
class Scope {
 public:
  Scope() : start_(count()) {}
  std::uint64_t elapsed() const { return count() - start_; }

 private:
  std::uint64_t start_;
};

}  // namespace work
}  // namespace dynmatch

#endif  // DYNMATCH_WORK_HPP_
