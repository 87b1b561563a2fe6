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

// Centralized gradient-boosted regression trees with histogram (approximate)
// split finding under squared loss. The federated trainer reuses the split and
// leaf arithmetic here, and tests use the centralized trainer as the reference
// model a federated run must reproduce.

#ifndef FEDBOOST_GBDT_GBDT_H_
#define FEDBOOST_GBDT_GBDT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fedboost::gbdt {

using SampleId = std::uint32_t;
using BinIndex = std::uint16_t;

// First and second derivative of the loss for one sample.
struct GradientPair {
  double g = 0.0;
  double h = 0.0;

  friend bool operator==(const GradientPair&, const GradientPair&) = default;
};

// Bin b covers the half-open interval (edges[b], edges[b + 1]]. Bin indices
// are 0-based; an edge index e in [1, bin_count() - 1] is an interior split
// candidate sending bins [0, e) left.
struct BinEdges {
  int feature = 0;
  std::vector<double> edges;

  int bin_count() const { return static_cast<int>(edges.size()) - 1; }
  friend bool operator==(const BinEdges&, const BinEdges&) = default;
};

// Per-bin gradient sums for one feature over one node's samples.
struct BinHistogram {
  int feature = 0;
  std::vector<double> grad;
  std::vector<double> hess;

  double total_grad() const;
  double total_hess() const;
};

struct SplitDecision {
  int feature = 0;
  int edge_index = 0;
  // Quiet NaN until resolved against the feature's edges by its owner.
  double threshold = 0.0;
  double gain = 0.0;
};

struct TrainParams {
  double eta = 0.3;
  double lambda = 1.0;
  int n_trees = 10;
  // Total layers including the leaf layer; max_depth - 1 layers can split.
  int max_depth = 4;
  int n_bins = 32;
  double min_gain = 0.0;

  // Throws ArgumentError naming the first violated field.
  void Validate() const;
  friend bool operator==(const TrainParams&, const TrainParams&) = default;
};

// Row-major dense feature matrix.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols);
  FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const {
    return values_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return values_[r * cols_ + c];
  }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }
  std::vector<double> column(std::size_t c) const;
  void AppendRow(std::span<const double> row);

  // Concatenates columns of `left` and `right` (same row count).
  static FeatureMatrix HorizontalConcat(const FeatureMatrix& left,
                                        const FeatureMatrix& right);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

struct Dataset {
  FeatureMatrix features;
  std::vector<double> labels;
};

// A distinct feature value together with its multiplicity.
struct ValueCount {
  double value = 0.0;
  std::uint64_t count = 0;
};

// Per-feature bin edges plus the bin of every (row, feature) cell.
class BinnedFeatures {
 public:
  BinnedFeatures() = default;

  // Builds equal-frequency edges per column, then bins every cell.
  static BinnedFeatures Build(const FeatureMatrix& features, int n_bins);
  // Bins every cell against edges built elsewhere (one entry per column).
  static BinnedFeatures Apply(const FeatureMatrix& features,
                              std::vector<BinEdges> edges);

  std::size_t rows() const { return rows_; }
  std::size_t features() const { return edges_.size(); }
  const BinEdges& edges(std::size_t feature) const { return edges_[feature]; }
  const std::vector<BinEdges>& all_edges() const { return edges_; }
  BinIndex bin(std::size_t row, std::size_t feature) const {
    return bins_[feature * rows_ + row];
  }
  std::span<const BinIndex> column(std::size_t feature) const {
    return {bins_.data() + feature * rows_, rows_};
  }

 private:
  std::size_t rows_ = 0;
  std::vector<BinEdges> edges_;
  std::vector<BinIndex> bins_;  // column-major
};

enum class NodeKind { kSplit, kLeaf };

// Nodes are numbered breadth-first: root 1, children of i are 2i and 2i + 1.
struct TreeNode {
  int index = 1;
  NodeKind kind = NodeKind::kLeaf;
  std::optional<SplitDecision> split;
  std::optional<double> weight;
  std::vector<SampleId> samples;
};

class Tree {
 public:
  Tree() = default;
  explicit Tree(std::vector<TreeNode> nodes);

  // Nodes sorted by index.
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode* Find(int index) const;
  void Add(TreeNode node);

  // Output of the leaf reached by `sample`. Goes left iff value <= threshold.
  double Predict(std::span<const double> sample) const;
  // Index of the leaf reached by `sample`.
  int LeafIndex(std::span<const double> sample) const;

 private:
  std::vector<TreeNode> nodes_;
};

struct Ensemble {
  double base_score = 0.0;
  std::vector<Tree> trees;
  TrainParams params;
};

inline int NodeDepth(int index) {
  int depth = 0;
  while (index > 0) {
    index >>= 1;
    ++depth;
  }
  return depth;
}

// g = prediction - label, h = 1 for L = (prediction - label)^2 / 2.
std::vector<GradientPair> ComputeGradients(std::span<const double> predictions,
                                           std::span<const double> labels);

// Equal-frequency bin edges over `values`: edges[0] = min - 1, last = max.
// When the feature has at most `n_bins` distinct values every distinct value
// becomes an edge; otherwise interior edges sit at the ceil(j * n / n_bins)-th
// smallest value and duplicate quantiles collapse.
BinEdges BuildBins(std::span<const double> values, int n_bins);
// Same rule over a sorted list of distinct values with multiplicities.
BinEdges BuildBinsFromCounts(std::span<const ValueCount> sorted_counts,
                             int n_bins);
// Sorted distinct values of `values` with multiplicities.
std::vector<ValueCount> CountDistinct(std::span<const double> values);

// 0-based bin containing `value`; clamps outside [edges.front, edges.back].
int AssignBin(double value, const BinEdges& edges);

// Sums gradients of `node_samples` into per-bin buckets for every feature.
std::vector<BinHistogram> AggregateHistogram(
    std::span<const SampleId> node_samples, const BinnedFeatures& binned,
    std::span<const GradientPair> gradients);

// Best split over all features and interior edges by the regularized gain
//   G_l^2 / (H_l + lambda) + G_r^2 / (H_r + lambda) - G^2 / (H + lambda).
// Returns nullopt when no candidate exceeds `min_gain`. Ties go to the smaller
// feature index, then the smaller edge index. The returned threshold is NaN;
// callers holding the edges resolve it with ResolveThreshold.
std::optional<SplitDecision> BestSplit(std::span<const BinHistogram> histograms,
                                       double lambda, double min_gain);
void ResolveThreshold(SplitDecision& decision, const BinEdges& edges);

double SplitGain(double grad_left, double hess_left, double grad_total,
                 double hess_total, double lambda);

// w* = -eta * G / (H + lambda).
double LeafValue(double grad, double hess, double eta, double lambda);
// LeafValue, or 0 for a node with H + lambda <= 0 (an empty node when
// lambda = 0).
double LeafWeightOrZero(double grad, double hess, double eta, double lambda);

// Gains closer than this are ties. Scaled by the parent score G^2 / (H + lambda)
// so summation-order noise in the histograms never reorders candidates.
double GainTolerance(double grad_total, double hess_total, double lambda);
inline bool GainExceeds(double candidate, double incumbent, double tolerance) {
  return candidate > incumbent + tolerance;
}

// Grows one tree breadth-first over `root_samples` (all rows when empty).
Tree TrainTree(const BinnedFeatures& binned,
               std::span<const GradientPair> gradients,
               const TrainParams& params,
               std::span<const SampleId> root_samples = {});

Ensemble TrainEnsemble(const Dataset& dataset, const TrainParams& params);
// Trains on pre-binned features (bins computed once, reused by every tree).
Ensemble TrainEnsemble(const BinnedFeatures& binned,
                       std::span<const double> labels,
                       const TrainParams& params);

double Predict(const Ensemble& ensemble, std::span<const double> sample);
std::vector<double> PredictAll(const Ensemble& ensemble,
                               const FeatureMatrix& features);

}  // namespace fedboost::gbdt

#endif  // FEDBOOST_GBDT_GBDT_H_
