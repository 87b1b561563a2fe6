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

#include "fedboost/gbdt/gbdt.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fedboost/error.h"

namespace fedboost::gbdt {
namespace {

BinnedFeatures OneColumn(std::vector<double> values, int n_bins) {
  const std::size_t n = values.size();
  return BinnedFeatures::Build(FeatureMatrix(n, 1, std::move(values)), n_bins);
}

TEST(ComputeGradients, SquaredLossResiduals) {
  std::vector<double> p1{0.5}, y1{0.5};
  EXPECT_EQ(ComputeGradients(p1, y1), (std::vector<GradientPair>{{0.0, 1.0}}));

  std::vector<double> p2{0.7}, y2{0.5};
  const auto g2 = ComputeGradients(p2, y2);
  ASSERT_EQ(g2.size(), 1u);
  EXPECT_NEAR(g2[0].g, 0.2, 1e-15);
  EXPECT_EQ(g2[0].h, 1.0);

  std::vector<double> p3{0.0, 1.0}, y3{1.0, 0.0};
  EXPECT_EQ(ComputeGradients(p3, y3),
            (std::vector<GradientPair>{{-1.0, 1.0}, {1.0, 1.0}}));
}

TEST(ComputeGradients, LengthMismatchThrows) {
  std::vector<double> p{1.0, 2.0}, y{1.0};
  EXPECT_THROW(ComputeGradients(p, y), ArgumentError);
}

TEST(BuildBins, MedianSplitOfFourValues) {
  std::vector<double> v{1, 2, 3, 4};
  const BinEdges e = BuildBins(v, 2);
  EXPECT_EQ(e.edges, (std::vector<double>{0, 2, 4}));
  std::vector<int> counts(e.bin_count(), 0);
  for (double x : v) ++counts[AssignBin(x, e)];
  EXPECT_EQ(std::accumulate(counts.begin(), counts.end(), 0), 4);
  EXPECT_EQ(counts, (std::vector<int>{2, 2}));
}

TEST(BuildBins, ConstantFeatureCollapsesToOneBin) {
  std::vector<double> v{5, 5, 5, 5};
  const BinEdges e = BuildBins(v, 4);
  EXPECT_EQ(e.edges, (std::vector<double>{4, 5}));
  EXPECT_EQ(e.bin_count(), 1);
}

TEST(BuildBins, HundredValuesGiveTenEqualBins) {
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);
  std::shuffle(v.begin(), v.end(), std::mt19937(3));
  const BinEdges e = BuildBins(v, 10);
  ASSERT_EQ(e.bin_count(), 10);
  // Oracle: after sorting, rank r (0-based) belongs to bin r / 10.
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t r = 0; r < sorted.size(); ++r)
    EXPECT_EQ(AssignBin(sorted[r], e), static_cast<int>(r / 10)) << sorted[r];
}

TEST(BuildBins, FewDistinctValuesEachGetABin) {
  std::vector<double> v{3, 1, 3, 2, 1, 3};
  const BinEdges e = BuildBins(v, 8);
  EXPECT_EQ(e.edges, (std::vector<double>{0, 1, 2, 3}));
}

TEST(BuildBins, RejectsFewerThanTwoBins) {
  std::vector<double> v{1, 2};
  EXPECT_THROW(BuildBins(v, 1), ArgumentError);
}

TEST(BuildBins, FromCountsMatchesRawValues) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pick(0, 40);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(300);
    for (double& x : v) x = pick(rng) * 0.25;
    const auto counts = CountDistinct(v);
    for (int bins : {2, 5, 16, 64})
      EXPECT_EQ(BuildBinsFromCounts(counts, bins), BuildBins(v, bins));
  }
}

TEST(AssignBin, RightInclusiveWithClamping) {
  const BinEdges e{0, {0, 1, 2}};
  EXPECT_EQ(AssignBin(1.0, e), 0);
  EXPECT_EQ(AssignBin(1.5, e), 1);
  EXPECT_EQ(AssignBin(99.0, e), 1);
  EXPECT_EQ(AssignBin(-5.0, e), 0);
  EXPECT_EQ(AssignBin(0.5, e), 0);
}

TEST(AggregateHistogram, SingleSample) {
  // Values 1 and 2 make bins {1}, {2}; sample 0 sits in bin 1.
  const BinnedFeatures b = OneColumn({2.0, 1.0}, 4);
  std::vector<GradientPair> g{{2.0, 1.0}, {0.0, 1.0}};
  std::vector<SampleId> node{0};
  const auto h = AggregateHistogram(node, b, g);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0].grad, (std::vector<double>{0.0, 2.0}));
  EXPECT_EQ(h[0].hess, (std::vector<double>{0.0, 1.0}));
}

TEST(AggregateHistogram, EmptyNodeIsAllZero) {
  const BinnedFeatures b = OneColumn({1, 2, 3}, 4);
  std::vector<GradientPair> g(3, {1.0, 1.0});
  const auto h = AggregateHistogram({}, b, g);
  for (double x : h[0].grad) EXPECT_EQ(x, 0.0);
  for (double x : h[0].hess) EXPECT_EQ(x, 0.0);
}

TEST(AggregateHistogram, MatchesDirectSummation) {
  const BinnedFeatures b = OneColumn({1, 1, 2, 2}, 2);
  std::vector<GradientPair> g(4, {1.0, 1.0});
  std::vector<SampleId> node{0, 1, 2, 3};
  const auto h = AggregateHistogram(node, b, g);
  EXPECT_EQ(h[0].grad, (std::vector<double>{2.0, 2.0}));

  std::mt19937 rng(5);
  std::normal_distribution<double> nd;
  std::vector<double> values(200);
  for (double& x : values) x = nd(rng);
  const BinnedFeatures b2 = OneColumn(values, 16);
  std::vector<GradientPair> g2(200);
  for (auto& p : g2) p = {nd(rng), 1.0};
  std::vector<SampleId> subset;
  for (SampleId s = 0; s < 200; s += 3) subset.push_back(s);
  const auto h2 = AggregateHistogram(subset, b2, g2);
  std::vector<double> expect(b2.edges(0).bin_count(), 0.0);
  for (SampleId s : subset) expect[AssignBin(values[s], b2.edges(0))] += g2[s].g;
  for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_NEAR(h2[0].grad[i], expect[i], 1e-12);
}

TEST(AggregateHistogram, UnknownSampleThrows) {
  const BinnedFeatures b = OneColumn({1, 2}, 2);
  std::vector<GradientPair> g(2, {1.0, 1.0});
  std::vector<SampleId> node{7};
  EXPECT_THROW(AggregateHistogram(node, b, g), ArgumentError);
}

TEST(BestSplit, HandEvaluatedGain) {
  std::vector<BinHistogram> h{{0, {-2, 3}, {1, 1}}, {1, {0.5, 0.5}, {1, 1}}};
  const auto s = BestSplit(h, 1.0, 0.0);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->feature, 0);
  EXPECT_EQ(s->edge_index, 1);
  EXPECT_NEAR(s->gain, 4.0 / 2 + 9.0 / 2 - 1.0 / 3, 1e-12);
  EXPECT_NEAR(s->gain, 6.1667, 1e-4);
}

TEST(BestSplit, SymmetricSplitHasZeroGain) {
  EXPECT_EQ(SplitGain(1.0, 2.0, 2.0, 4.0, 0.0), 0.0);
  std::vector<BinHistogram> h{{0, {1, 1}, {2, 2}}};
  EXPECT_FALSE(BestSplit(h, 0.0, 0.0).has_value());
}

TEST(BestSplit, SingleBinHasNoCandidate) {
  std::vector<BinHistogram> h{{0, {3.0}, {2.0}}};
  EXPECT_FALSE(BestSplit(h, 1.0, 0.0).has_value());
}

TEST(BestSplit, GainAtOrBelowMinGainIsNone) {
  std::vector<BinHistogram> h{{0, {-2, 3}, {1, 1}}};
  const double gain = 4.0 / 2 + 9.0 / 2 - 1.0 / 3;
  EXPECT_FALSE(BestSplit(h, 1.0, gain).has_value());
  EXPECT_TRUE(BestSplit(h, 1.0, gain - 0.01).has_value());
}

TEST(BestSplit, TiesGoToSmallerFeatureThenEdge) {
  std::vector<BinHistogram> h{{1, {-1, 1, 0}, {1, 1, 1}},
                              {0, {-1, 0, 1}, {1, 1, 1}},
                              {2, {-1, 1, 0}, {1, 1, 1}}};
  // Feature 0: edge 1 and edge 2 give gains G_l=-1 (H 1) and G_l=-1 (H 2).
  // Feature 1 edge 1 equals feature 0 edge 1 exactly.
  const auto s = BestSplit(h, 1.0, 0.0);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->feature, 0);
  EXPECT_EQ(s->edge_index, 1);

  std::vector<BinHistogram> mirrored{{0, {1, -2, 1}, {1, 1, 1}}};
  // Edges 1 and 2 are mirror images with equal gain.
  const auto m = BestSplit(mirrored, 1.0, 0.0);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->edge_index, 1);
}

TEST(BestSplit, InconsistentTotalsThrow) {
  std::vector<BinHistogram> h{{0, {1, 1}, {1, 1}}, {1, {5, 1}, {1, 1}}};
  EXPECT_THROW(BestSplit(h, 1.0, 0.0), ConsistencyError);
}

TEST(ResolveThreshold, UsesInteriorEdge) {
  SplitDecision d{0, 2, 0.0, 1.0};
  ResolveThreshold(d, BinEdges{0, {0, 1, 2, 3}});
  EXPECT_EQ(d.threshold, 2.0);
  SplitDecision bad{0, 3, 0.0, 1.0};
  EXPECT_THROW(ResolveThreshold(bad, BinEdges{0, {0, 1, 2, 3}}), ArgumentError);
}

TEST(LeafValue, HandEvaluated) {
  EXPECT_EQ(LeafValue(0.0, 5.0, 0.3, 1.0), 0.0);
  EXPECT_NEAR(LeafValue(10.0, 5.0, 0.3, 1.0), -0.5, 1e-15);
  EXPECT_NEAR(LeafValue(-4.0, 3.0, 1.0, 1.0), 1.0, 1e-15);
}

TEST(LeafValue, NonPositiveDenominatorThrows) {
  EXPECT_THROW(LeafValue(1.0, 0.0, 0.3, 0.0), ArgumentError);
  EXPECT_THROW(LeafValue(1.0, -2.0, 0.3, 1.0), ArgumentError);
  EXPECT_EQ(LeafWeightOrZero(1.0, 0.0, 0.3, 0.0), 0.0);
}

TEST(TrainTree, ZeroGradientsGiveSingleZeroLeaf) {
  const BinnedFeatures b = OneColumn({1, 2, 3, 4}, 4);
  std::vector<GradientPair> g(4, {0.0, 1.0});
  TrainParams p;
  const Tree t = TrainTree(b, g, p);
  ASSERT_EQ(t.nodes().size(), 1u);
  EXPECT_EQ(t.nodes()[0].kind, NodeKind::kLeaf);
  EXPECT_EQ(*t.nodes()[0].weight, 0.0);
}

TEST(TrainTree, TwoSeparableSamples) {
  const BinnedFeatures b = OneColumn({0.0, 1.0}, 4);
  std::vector<GradientPair> g{{-1.0, 1.0}, {1.0, 1.0}};
  TrainParams p;
  p.max_depth = 2;
  p.eta = 0.3;
  p.lambda = 1.0;
  const Tree t = TrainTree(b, g, p);
  ASSERT_EQ(t.nodes().size(), 3u);
  EXPECT_EQ(t.nodes()[0].kind, NodeKind::kSplit);
  EXPECT_EQ(t.nodes()[0].split->threshold, 0.0);
  EXPECT_NEAR(*t.Find(2)->weight, -0.3 * -1.0 / 2.0, 1e-15);
  EXPECT_NEAR(*t.Find(3)->weight, -0.3 * 1.0 / 2.0, 1e-15);
}

TEST(TrainTree, DepthOneIsSingleLeaf) {
  const BinnedFeatures b = OneColumn({0, 1, 2, 3}, 4);
  std::vector<GradientPair> g{{-3, 1}, {-1, 1}, {1, 1}, {3, 1}};
  TrainParams p;
  p.max_depth = 1;
  EXPECT_EQ(TrainTree(b, g, p).nodes().size(), 1u);
}

TEST(TrainTree, RespectsDepthLimit) {
  std::mt19937 rng(9);
  std::normal_distribution<double> nd;
  std::vector<double> x(300);
  for (double& v : x) v = nd(rng);
  const BinnedFeatures b = OneColumn(x, 32);
  std::vector<GradientPair> g(300);
  for (auto& p : g) p = {nd(rng), 1.0};
  TrainParams p;
  p.max_depth = 3;
  const Tree tree = TrainTree(b, g, p);
  for (const TreeNode& n : tree.nodes()) {
    EXPECT_LE(NodeDepth(n.index), 3);
    if (NodeDepth(n.index) == 3) { EXPECT_EQ(n.kind, NodeKind::kLeaf); }
  }
}

TEST(TrainEnsemble, ZeroTreesPredictZero) {
  Dataset d{FeatureMatrix(3, 1, {1, 2, 3}), {5, 6, 7}};
  TrainParams p;
  p.n_trees = 0;
  const Ensemble e = TrainEnsemble(d, p);
  for (double y : PredictAll(e, d.features)) EXPECT_EQ(y, 0.0);
}

TEST(TrainEnsemble, ConstantLabelsWithoutShrinkageFitExactly) {
  Dataset d{FeatureMatrix(4, 1, {1, 2, 3, 4}), {1, 1, 1, 1}};
  TrainParams p;
  p.n_trees = 1;
  p.eta = 1.0;
  p.lambda = 0.0;
  const Ensemble e = TrainEnsemble(d, p);
  ASSERT_EQ(e.trees[0].nodes().size(), 1u);
  EXPECT_DOUBLE_EQ(*e.trees[0].nodes()[0].weight, 1.0);
  for (double y : PredictAll(e, d.features)) EXPECT_DOUBLE_EQ(y, 1.0);
}

TEST(TrainEnsemble, TrainingMseNeverIncreases) {
  std::mt19937 rng(2026);
  std::normal_distribution<double> nd;
  const std::size_t n = 100;
  FeatureMatrix x(n, 3);
  std::vector<double> y(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < 3; ++c) x(r, c) = nd(rng);
    y[r] = std::sin(x(r, 0)) + x(r, 1) * x(r, 2) + 0.1 * nd(rng);
  }
  for (double eta : {0.1, 0.3, 1.0}) {
    for (double lambda : {0.0, 1.0}) {
      TrainParams p;
      p.eta = eta;
      p.lambda = lambda;
      p.n_trees = 20;
      const Ensemble e = TrainEnsemble(Dataset{x, y}, p);
      double prev = 0.0;
      for (double v : y) prev += v * v;
      prev /= n;
      Ensemble partial = e;
      for (std::size_t s = 1; s <= e.trees.size(); ++s) {
        partial.trees.assign(e.trees.begin(), e.trees.begin() + s);
        double mse = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          const double d = Predict(partial, x.row(r)) - y[r];
          mse += d * d;
        }
        mse /= n;
        EXPECT_LE(mse, prev + 1e-12) << "eta " << eta << " lambda " << lambda << " S " << s;
        prev = mse;
      }
    }
  }
}

TEST(TrainEnsemble, Deterministic) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u;
  FeatureMatrix x(80, 2);
  std::vector<double> y(80);
  for (std::size_t r = 0; r < 80; ++r) {
    x(r, 0) = u(rng);
    x(r, 1) = u(rng);
    y[r] = x(r, 0) - 2 * x(r, 1);
  }
  TrainParams p;
  const Ensemble a = TrainEnsemble(Dataset{x, y}, p);
  const Ensemble b = TrainEnsemble(Dataset{x, y}, p);
  EXPECT_EQ(PredictAll(a, x), PredictAll(b, x));
}

TEST(Predict, EmptyEnsembleIsZero) {
  Ensemble e;
  std::vector<double> s{1.0};
  EXPECT_EQ(Predict(e, s), 0.0);
}

TEST(Predict, TreesAreAdditive) {
  TreeNode leaf1;
  leaf1.weight = 0.25;
  TreeNode leaf2;
  leaf2.weight = -1.5;
  Ensemble one;
  one.trees.push_back(Tree({leaf1}));
  std::vector<double> s{3.0};
  EXPECT_EQ(Predict(one, s), 0.25);
  Ensemble two = one;
  two.trees.push_back(Tree({leaf2}));
  EXPECT_EQ(Predict(two, s), 0.25 + -1.5);
}

TEST(Predict, GoesLeftOnThresholdEquality) {
  TreeNode root;
  root.kind = NodeKind::kSplit;
  root.split = SplitDecision{0, 1, 2.0, 1.0};
  TreeNode l;
  l.index = 2;
  l.weight = -1.0;
  TreeNode r;
  r.index = 3;
  r.weight = 1.0;
  const Tree t({root, l, r});
  std::vector<double> at{2.0}, above{2.0000001};
  EXPECT_EQ(t.Predict(at), -1.0);
  EXPECT_EQ(t.Predict(above), 1.0);
  std::vector<double> none;
  EXPECT_THROW(t.Predict(none), ArgumentError);
}

TEST(TrainParams, ValidateNamesField) {
  TrainParams p;
  p.eta = 0.0;
  try {
    p.Validate();
    FAIL();
  } catch (const ArgumentError& e) {
    EXPECT_NE(std::string(e.what()).find("eta"), std::string::npos);
  }
  p = TrainParams{};
  p.n_bins = 1;
  EXPECT_THROW(p.Validate(), ArgumentError);
}

}  // namespace
}  // namespace fedboost::gbdt
