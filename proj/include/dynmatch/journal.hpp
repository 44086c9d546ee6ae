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

#ifndef DYNMATCH_JOURNAL_HPP_
#define DYNMATCH_JOURNAL_HPP_

#include <set>
#include <variant>
#include <vector>

#include "dynmatch/graph.hpp"
#include "dynmatch/work.hpp"

namespace dynmatch {

class Matching;

// Per-batch undo journal: every state mutation of a batch-revertible
// algorithm is logged with its inverse. revert(j) undoes the last j batches
// in time proportional to the work they performed.
class UndoLog {
 public:
  struct IntSlot {
    long long* p;
    long long old;
  };
  struct VecIntSlot {
    std::vector<long long>* v;
    std::size_t i;
    long long old;
  };
  struct SetInsert {  // undone by erase
    std::set<Edge>* s;
    Edge e;
  };
  struct SetErase {  // undone by insert
    std::set<Edge>* s;
    Edge e;
  };
  struct GraphApply {
    DynamicGraph* g;
    UpdateEvent inverse;
  };
  struct VidVecSet {
    std::vector<VertexId>* p;
    std::vector<VertexId> old;
  };
  using Entry = std::variant<IntSlot, VecIntSlot, SetInsert, SetErase, GraphApply, VidVecSet>;

  void mark() { marks_.push_back(entries_.size()); }

  std::size_t depth() const { return marks_.size(); }
  std::size_t size() const { return entries_.size(); }

  void set_int(long long& slot, long long value) {
    entries_.push_back(IntSlot{&slot, slot});
    slot = value;
  }

  void set_vec_int(std::vector<long long>& vec, std::size_t i, long long value) {
    entries_.push_back(VecIntSlot{&vec, i, vec[i]});
    vec[i] = value;
  }

  // Returns false if e was already present (no mutation, nothing logged).
  bool set_insert(std::set<Edge>& s, const Edge& e) {
    if (!s.insert(e).second) return false;
    entries_.push_back(SetInsert{&s, e});
    return true;
  }

  bool set_erase(std::set<Edge>& s, const Edge& e) {
    if (s.erase(e) == 0) return false;
    entries_.push_back(SetErase{&s, e});
    return true;
  }

  void set_clear(std::set<Edge>& s) {
    for (const Edge& e : s) entries_.push_back(SetErase{&s, e});
    s.clear();
  }

  void graph_apply(DynamicGraph& g, const UpdateEvent& ev) {
    g.apply(ev);
    entries_.push_back(GraphApply{&g, ev.inverse()});
  }

  void set_vid_vec(std::vector<VertexId>& slot, std::vector<VertexId> value) {
    entries_.push_back(VidVecSet{&slot, slot});
    slot = std::move(value);
  }

  // Undo the last `batches` marks worth of entries, newest first.
  void revert(std::size_t batches) {
    if (batches == 0) return;
    if (batches > marks_.size()) batches = marks_.size();
    const std::size_t target = marks_[marks_.size() - batches];
    while (entries_.size() > target) {
      undo_one(entries_.back());
      entries_.pop_back();
      work::add();
    }
    marks_.resize(marks_.size() - batches);
  }

 private:
  static void undo_one(Entry& entry) {
    std::visit(
        [](auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, IntSlot>) {
            *e.p = e.old;
          } else if constexpr (std::is_same_v<T, VecIntSlot>) {
            (*e.v)[e.i] = e.old;
          } else if constexpr (std::is_same_v<T, SetInsert>) {
            e.s->erase(e.e);
          } else if constexpr (std::is_same_v<T, SetErase>) {
            e.s->insert(e.e);
          } else if constexpr (std::is_same_v<T, GraphApply>) {
            e.g->apply(e.inverse);
          } else if constexpr (std::is_same_v<T, VidVecSet>) {
            *e.p = e.old;
          }
        },
        entry);
  }

  std::vector<Entry> entries_;
  std::vector<std::size_t> marks_;
};

}  // namespace dynmatch

#endif  // DYNMATCH_JOURNAL_HPP_
