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

#include "dynmatch/scheduler.hpp"

#include <gtest/gtest.h>

#include "dynmatch/edcs_batch.hpp"
#include "dynmatch/gen.hpp"
#include "dynmatch/journal.hpp"

namespace dynmatch {
namespace {

// Journaled dummy whose output hashes both the event sequence and the batch
// structure, so replay equality certifies journal-exact reverts.
class JournaledDummy {
 public:
  using Output = long long;

  void begin_batch() {
    log_.mark();
    log_.set_int(depth_, depth_ + 1);
    log_.set_int(digest_, mix(digest_, 0x6261746368 + depth_));
  }

  void process(const UpdateEvent& ev) {
    const long long code = (static_cast<long long>(ev.edge.u) << 24) ^
                           (static_cast<long long>(ev.edge.v) << 4) ^
                           (ev.kind == UpdateKind::kInsert ? 1 : 2);
    log_.set_int(digest_, mix(digest_, code * (depth_ + 1)));
  }

  void revert_batches(std::size_t count) { log_.revert(count); }

  Output output() const { return digest_; }
  long long depth() const { return depth_; }

 private:
  static long long mix(long long h, long long v) {
    return h * 1000003LL + v * 2654435761LL + 17;
  }

  UndoLog log_;
  long long digest_ = 0x243f6a88;
  long long depth_ = 0;
};

template <class Alg, class Factory>
void exhaustive_check(std::size_t k, Factory make) {
  std::vector<Alg> instances;
  for (std::size_t i = 0; i < k; ++i) instances.push_back(make());
  BatchScheduler<Alg> sched(k, std::move(instances));
  const auto events =
      generate_stream(StreamKind::kErdosRenyiDynamic, 12, sched.step_cap(), 1234 + k);
  ASSERT_EQ(events.size(), sched.step_cap());

  for (std::uint64_t step = 0; step < sched.step_cap(); ++step) {
    const auto fresh = sched.step(events[step]);
    // Fresh set non-empty at every step.
    ASSERT_FALSE(fresh.empty()) << "step " << step;
    // Batch sizes within (j+1)*k^j at every level j.
    for (std::size_t i = 0; i < k; ++i) {
      for (const auto& b : sched.batches(i)) {
        std::uint64_t bound = b.level + 1;
        for (int j = 0; j < b.level; ++j) bound *= k;
        ASSERT_LE(b.end - b.begin, bound)
            << "step " << step << " instance " << i << " level " << b.level;
      }
    }
    // Every fresh output equals a straight-line replay over the batch stack.
    for (const auto& f : fresh) {
      const auto replay_output =
          sched.replay(f.instance, make, [](const Alg& a) { return a.output(); });
      ASSERT_EQ(f.output, replay_output) << "step " << step << " instance " << f.instance;
      // The stack must cover the prefix exactly.
      std::size_t covered = 0;
      for (const auto& b : sched.batches(f.instance)) {
        ASSERT_EQ(b.begin, covered);
        covered = b.end;
      }
      ASSERT_EQ(covered, step + 1);
    }
  }
}

TEST(Scheduler, InitBasics) {
  auto make = [] { return JournaledDummy{}; };
  std::vector<JournaledDummy> two{make(), make()};
  BatchScheduler<JournaledDummy> s2(2, std::move(two));
  EXPECT_EQ(s2.step_cap(), 4u);
  std::vector<JournaledDummy> three{make(), make(), make()};
  BatchScheduler<JournaledDummy> s3(3, std::move(three));
  EXPECT_EQ(s3.step_cap(), 27u);
  std::vector<JournaledDummy> four{make(), make(), make(), make()};
  BatchScheduler<JournaledDummy> s4(4, std::move(four));
  EXPECT_EQ(s4.step_cap(), 256u);
}

TEST(Scheduler, TriggerRuleExamples) {
  std::vector<JournaledDummy> three(3);
  BatchScheduler<JournaledDummy> sched(3, std::move(three));
  // lambda=9 is base-3 "100": digit 1 followed by two zeros, single '1'.
  const auto trig = sched.trigger(9, 1);
  EXPECT_TRUE(trig.fires);
  EXPECT_EQ(trig.gamma, 2u);
  // lambda=4 is "011": most-significant two digits "01" lack 2 -> fresh.
  EXPECT_TRUE(sched.is_fresh(4, 2));
  EXPECT_FALSE(sched.trigger(4, 2).fires);
  // "110" has two 1-digits: no trigger for instance 1.
  EXPECT_FALSE(sched.trigger(12, 1).fires);
}

TEST(Scheduler, ExhaustiveDummyK2) { exhaustive_check<JournaledDummy>(2, [] { return JournaledDummy{}; }); }

TEST(Scheduler, ExhaustiveDummyK3) { exhaustive_check<JournaledDummy>(3, [] { return JournaledDummy{}; }); }

TEST(Scheduler, StepCapEnforced) {
  std::vector<JournaledDummy> two(2);
  BatchScheduler<JournaledDummy> sched(2, std::move(two));
  const auto events = generate_stream(StreamKind::kErdosRenyiDynamic, 8, 4, 5);
  for (const auto& ev : events) sched.step(ev);
  EXPECT_THROW(sched.step(events[0]), SchedulerError);
}

TEST(Scheduler, EdcsInstanceReplayExact) {
  // The journaled EDCS+matcher pipeline reverts exactly: full state digests
  // match a straight-line replay whenever the instance is fresh.
  const std::size_t n = 32;
  EdcsParams params;
  params.beta = Ratio(32);
  params.lambda = Ratio(1, 4);
  params.delta = Ratio(1, 2);
  const std::size_t k = 3;
  auto make = [&] {
    return EdcsMatchingInstance(n, params, static_cast<int>(k), Ratio(1, 4), true);
  };
  std::vector<EdcsMatchingInstance> instances;
  for (std::size_t i = 0; i < k; ++i) instances.push_back(make());
  BatchScheduler<EdcsMatchingInstance> sched(k, std::move(instances));
  const auto events = generate_stream(StreamKind::kSlidingWindow, n, sched.step_cap(), 99);
  for (std::uint64_t step = 0; step < events.size(); ++step) {
    const auto fresh = sched.step(events[step]);
    ASSERT_FALSE(fresh.empty());
    for (const auto& f : fresh) {
      const auto digest = sched.replay(f.instance, make, [](const EdcsMatchingInstance& a) {
        return a.state_digest();
      });
      ASSERT_EQ(sched.instance(f.instance).state_digest(), digest) << "step " << step;
    }
  }
}

TEST(Scheduler, UnionOfOutputsHasBoundedDegree) {
  const std::size_t n = 32;
  EdcsParams params;
  params.beta = Ratio(32);
  params.lambda = Ratio(1, 4);
  params.delta = Ratio(1, 2);
  const std::size_t k = 3;
  std::vector<EdcsMatchingInstance> instances;
  for (std::size_t i = 0; i < k; ++i) {
    instances.emplace_back(n, params, static_cast<int>(k), Ratio(1, 4), true);
  }
  BatchScheduler<EdcsMatchingInstance> sched(k, std::move(instances));
  const auto events = generate_stream(StreamKind::kErdosRenyiDynamic, n, 27, 3);
  DynamicGraph g(n);
  for (const auto& ev : events) {
    g.apply(ev);
    sched.step(ev);
    std::vector<std::size_t> deg(n, 0);
    for (std::size_t i = 0; i < k; ++i) {
      for (const Edge& e : sched.instance(i).output().edges()) {
        ++deg[e.u];
        ++deg[e.v];
      }
    }
    for (std::size_t v = 0; v < n; ++v) ASSERT_LE(deg[v], k);
  }
}

TEST(SchedulerArity, SmallestFeasibleK) {
  EXPECT_EQ(scheduler_arity(1), 2u);
  EXPECT_EQ(scheduler_arity(4), 2u);
  EXPECT_EQ(scheduler_arity(5), 3u);
  EXPECT_EQ(scheduler_arity(27), 3u);
  EXPECT_EQ(scheduler_arity(28), 4u);
  EXPECT_EQ(scheduler_arity(3000), 5u);
}

}  // namespace
}  // namespace dynmatch
