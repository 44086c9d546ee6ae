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

#include <gtest/gtest.h>

#include <cmath>

#include "dynmatch/gen.hpp"
#include "dynmatch/oracle.hpp"

namespace dynmatch {
namespace {

ReductionConfig desk_config(std::uint64_t seed) {
  ReductionConfig cfg;
  cfg.alpha = Ratio(3, 2);
  cfg.eps = Ratio(1, 2);
  cfg.c_override = 4;
  cfg.family_size = 2;
  cfg.inner_beta = Ratio(8);
  cfg.inner_lambda = Ratio(1, 4);
  cfg.inner_delta = Ratio(1, 4);
  cfg.inner_matcher_eps = Ratio(1, 4);
  cfg.top_matcher_eps = Ratio(1, 4);
  cfg.seed = seed;
  return cfg;
}

TEST(ReductionConfig, VerbatimDefaults) {
  ReductionConfig cfg;
  cfg.alpha = Ratio(3, 2);
  cfg.eps = Ratio(1, 2);
  // C = ceil(8 / (eps/(8*alpha))) = ceil(8*8*alpha/eps) = 192
  EXPECT_EQ(cfg.parts_multiplier(), 192);
  EXPECT_EQ(cfg.effective_inner_delta(), Ratio(1, 2) / Ratio(8 * 192));
  EXPECT_EQ(cfg.effective_top_eps(), Ratio(1, 24));
}

TEST(Reduction, LevelCountFormula) {
  // ceil(log_{1+eps/(8 alpha)}(n)) via the while-loop semantics.
  const Ratio alpha(3, 2);
  const Ratio eps(1, 2);
  const double ratio = 1.0 + (eps / (Ratio(8) * alpha)).to_double();
  for (std::size_t n : {8u, 32u, 64u}) {
    const std::size_t expect =
        static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(n)) / std::log(ratio))) +
        (std::pow(ratio, std::ceil(std::log(n) / std::log(ratio))) == n ? 1 : 0);
    const std::size_t got = reduction_level_count(n, alpha, eps);
    EXPECT_NEAR(static_cast<double>(got), static_cast<double>(expect), 1.0) << "n=" << n;
  }
  AlphaEpsReduction red(16, desk_config(1));
  EXPECT_EQ(red.level_count(), reduction_level_count(16, Ratio(3, 2), Ratio(1, 2)));
  EXPECT_EQ(red.cell_count(), red.level_count() * 2);
}

TEST(Reduction, EmptyGraphEmptyMatching) {
  AlphaEpsReduction red(16, desk_config(2));
  EXPECT_EQ(red.matching().size(), 0u);
}

TEST(Reduction, PerfectMatchingEndToEnd) {
  // G = perfect matching on n=32; final |M*|*(alpha+eps) >= mu(G).
  const std::size_t n = 32;
  AlphaEpsReduction red(n, desk_config(3));
  const auto planted = random_planted_matching(n, n / 2, 77);
  for (const Edge& e : planted) red.apply(UpdateEvent{UpdateKind::kInsert, e});
  const std::size_t mu = mu_exact(red.base());
  ASSERT_EQ(mu, n / 2);
  const Matching m = red.matching();
  EXPECT_TRUE(check_matching(red.base(), m));
  EXPECT_GE(m.size() * 2, mu);  // (alpha+eps) = 2
}

TEST(Reduction, PullbackStaysValidUnderChurn) {
  const std::size_t n = 24;
  AlphaEpsReduction red(n, desk_config(4));
  const auto events = generate_stream(StreamKind::kErdosRenyiDynamic, n, 250, 5);
  for (const auto& ev : events) {
    red.apply(ev);
    ASSERT_TRUE(check_matching(red.base(), red.matching()));
  }
}

TEST(Reduction, HostDegreeBoundedByCells) {
  const std::size_t n = 24;
  AlphaEpsReduction red(n, desk_config(6));
  const auto events = generate_stream(StreamKind::kErdosRenyiDynamic, n, 200, 9);
  for (const auto& ev : events) red.apply(ev);
  EXPECT_LE(red.host().max_degree(), red.cell_count());
}

}  // namespace
}  // namespace dynmatch
