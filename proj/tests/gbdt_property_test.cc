// Copyright 2026 The FedBoost Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fedboost/gbdt/gbdt.h"
#include "support/compare.h"
#include "support/exact_tree.h"

namespace fedboost::gbdt {
namespace {

class ExactOracle : public ::testing::TestWithParam<int> {};

TEST_P(ExactOracle, HistogramTrainerMatchesBruteForce) {
  const auto in = testing::MakeExactInstance(1000 + GetParam());
  const Ensemble hist = TrainEnsemble(Dataset{in.x, in.y}, testing::HistogramParams(in));
  const Ensemble exact = testing::ExactEnsemble(in.x, in.y, in.params);
  const auto d = testing::CompareEnsembles(hist, exact);
  EXPECT_TRUE(d.same_structure) << d.first_mismatch;
  EXPECT_LE(d.max_weight_diff, 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Instances, ExactOracle, ::testing::Range(0, 100));

TEST(BinProperties, EdgesIncreaseAndEveryBinIsOccupied) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> n_d(1, 400), v_d(2, 64), card_d(1, 500);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = n_d(rng), bins = v_d(rng), card = card_d(rng);
    std::uniform_int_distribution<int> level(0, card - 1);
    std::vector<double> values(n);
    for (double& v : values) v = level(rng) * 0.1 - 3.0;
    const BinEdges e = BuildBins(values, bins);
    ASSERT_GE(e.bin_count(), 1);
    ASSERT_LE(e.bin_count(), bins);
    for (std::size_t i = 1; i < e.edges.size(); ++i) ASSERT_LT(e.edges[i - 1], e.edges[i]);
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    EXPECT_EQ(e.edges.front(), *lo - 1.0);
    EXPECT_EQ(e.edges.back(), *hi);
    std::vector<int> count(e.bin_count(), 0);
    for (double v : values) ++count[AssignBin(v, e)];
    for (int c : count) EXPECT_GT(c, 0);
    // Bin sizes never exceed the ideal share by more than one value's
    // multiplicity.
    std::map<double, int> mult;
    for (double v : values) ++mult[v];
    int max_mult = 0;
    for (const auto& [v, m] : mult) max_mult = std::max(max_mult, m);
    const int share = (n + bins - 1) / bins;
    for (int c : count) EXPECT_LE(c, share + max_mult);
  }
}

TEST(TreeProperties, TraversalAgreesWithTrainingMembership) {
  for (int seed = 0; seed < 20; ++seed) {
    const auto in = testing::MakeExactInstance(5000 + seed);
    TrainParams p = testing::HistogramParams(in);
    p.n_bins = 8;
    const Ensemble e = TrainEnsemble(Dataset{in.x, in.y}, p);
    for (const Tree& t : e.trees) {
      std::set<SampleId> seen;
      for (const TreeNode& n : t.nodes()) {
        if (n.kind != NodeKind::kLeaf) continue;
        for (SampleId s : n.samples) {
          EXPECT_EQ(t.LeafIndex(in.x.row(s)), n.index);
          EXPECT_TRUE(seen.insert(s).second);
        }
      }
      EXPECT_EQ(seen.size(), in.x.rows());
    }
  }
}

TEST(TreeProperties, ChildrenPartitionParent) {
  const auto in = testing::MakeExactInstance(42);
  const Ensemble e = TrainEnsemble(Dataset{in.x, in.y}, testing::HistogramParams(in));
  for (const Tree& t : e.trees) {
    for (const TreeNode& n : t.nodes()) {
      if (n.kind != NodeKind::kSplit) continue;
      const TreeNode* l = t.Find(2 * n.index);
      const TreeNode* r = t.Find(2 * n.index + 1);
      ASSERT_NE(l, nullptr);
      ASSERT_NE(r, nullptr);
      std::set<SampleId> u(l->samples.begin(), l->samples.end());
      for (SampleId s : r->samples) EXPECT_TRUE(u.insert(s).second);
      EXPECT_EQ(u, std::set<SampleId>(n.samples.begin(), n.samples.end()));
    }
  }
}

TEST(SplitProperties, ChosenGainIsMaximal) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> bins_d(2, 20), feats_d(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const int f = feats_d(rng), v = bins_d(rng);
    std::vector<double> g(v), h(v);
    for (int b = 0; b < v; ++b) {
      g[b] = nd(rng);
      h[b] = std::abs(nd(rng)) + 0.1;
    }
    std::vector<BinHistogram> hist;
    for (int k = 0; k < f; ++k) {
      // Same totals, different per-bin arrangement.
      std::vector<int> perm(v);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      BinHistogram bh{k, std::vector<double>(v), std::vector<double>(v)};
      for (int b = 0; b < v; ++b) {
        bh.grad[b] = g[perm[b]];
        bh.hess[b] = h[perm[b]];
      }
      hist.push_back(bh);
    }
    const double lambda = 0.5;
    const auto s = BestSplit(hist, lambda, 0.0);
    double best = 0.0;
    for (const auto& bh : hist) {
      double gl = 0, hl = 0;
      for (int e = 1; e < v; ++e) {
        gl += bh.grad[e - 1];
        hl += bh.hess[e - 1];
        best = std::max(best, SplitGain(gl, hl, bh.total_grad(), bh.total_hess(), lambda));
      }
    }
    if (s) {
      EXPECT_NEAR(s->gain, best, 1e-9);
    } else {
      EXPECT_LE(best, 1e-9);
    }
  }
}

}  // namespace
}  // namespace fedboost::gbdt
