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
#include <deque>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "fedboost/error.h"

namespace fedboost::gbdt {

double BinHistogram::total_grad() const {
  return std::accumulate(grad.begin(), grad.end(), 0.0);
}

double BinHistogram::total_hess() const {
  return std::accumulate(hess.begin(), hess.end(), 0.0);
}

void TrainParams::Validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) throw ArgumentError("params.eta must be in (0, 1]");
  if (!(lambda >= 0.0)) throw ArgumentError("params.lambda must be >= 0");
  if (n_trees < 0) throw ArgumentError("params.n_trees must be >= 0");
  if (max_depth < 1) throw ArgumentError("params.max_depth must be >= 1");
  if (n_bins < 2 || n_bins > std::numeric_limits<BinIndex>::max())
    throw ArgumentError("params.n_bins must be in [2, 65535]");
  if (!(min_gain >= 0.0)) throw ArgumentError("params.min_gain must be >= 0");
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols,
                             std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows * cols)
    throw ArgumentError("feature matrix size does not match rows * cols");
}

std::vector<double> FeatureMatrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void FeatureMatrix::AppendRow(std::span<const double> row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw ArgumentError("row width does not match matrix");
  values_.insert(values_.end(), row.begin(), row.end());
  ++rows_;
}

FeatureMatrix FeatureMatrix::HorizontalConcat(const FeatureMatrix& left,
                                              const FeatureMatrix& right) {
  if (left.cols() == 0) return right;
  if (right.cols() == 0) return left;
  if (left.rows() != right.rows())
    throw ArgumentError("cannot concatenate matrices with different row counts");
  FeatureMatrix out(left.rows(), left.cols() + right.cols());
  for (std::size_t r = 0; r < left.rows(); ++r) {
    for (std::size_t c = 0; c < left.cols(); ++c) out(r, c) = left(r, c);
    for (std::size_t c = 0; c < right.cols(); ++c)
      out(r, left.cols() + c) = right(r, c);
  }
  return out;
}

BinnedFeatures BinnedFeatures::Build(const FeatureMatrix& features, int n_bins) {
  std::vector<BinEdges> edges;
  edges.reserve(features.cols());
  for (std::size_t c = 0; c < features.cols(); ++c) {
    BinEdges e = BuildBins(features.column(c), n_bins);
    e.feature = static_cast<int>(c);
    edges.push_back(std::move(e));
  }
  return Apply(features, std::move(edges));
}

BinnedFeatures BinnedFeatures::Apply(const FeatureMatrix& features,
                                     std::vector<BinEdges> edges) {
  if (edges.size() != features.cols())
    throw ArgumentError("need one set of bin edges per feature column");
  BinnedFeatures out;
  out.rows_ = features.rows();
  out.edges_ = std::move(edges);
  out.bins_.resize(features.rows() * features.cols());
  for (std::size_t c = 0; c < features.cols(); ++c) {
    for (std::size_t r = 0; r < features.rows(); ++r) {
      out.bins_[c * out.rows_ + r] =
          static_cast<BinIndex>(AssignBin(features(r, c), out.edges_[c]));
    }
  }
  return out;
}

Tree::Tree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end(),
            [](const TreeNode& a, const TreeNode& b) { return a.index < b.index; });
}

const TreeNode* Tree::Find(int index) const {
  auto it = std::lower_bound(
      nodes_.begin(), nodes_.end(), index,
      [](const TreeNode& n, int i) { return n.index < i; });
  if (it == nodes_.end() || it->index != index) return nullptr;
  return &*it;
}

void Tree::Add(TreeNode node) {
  auto it = std::lower_bound(
      nodes_.begin(), nodes_.end(), node.index,
      [](const TreeNode& n, int i) { return n.index < i; });
  if (it != nodes_.end() && it->index == node.index)
    throw ArgumentError("duplicate tree node " + std::to_string(node.index));
  nodes_.insert(it, std::move(node));
}

int Tree::LeafIndex(std::span<const double> sample) const {
  int index = 1;
  for (;;) {
    const TreeNode* node = Find(index);
    if (node == nullptr)
      throw ModelError("tree has no node " + std::to_string(index));
    if (node->kind == NodeKind::kLeaf) return index;
    const SplitDecision& s = *node->split;
    if (s.feature < 0 || static_cast<std::size_t>(s.feature) >= sample.size())
      throw ArgumentError("sample is missing feature " + std::to_string(s.feature));
    index = sample[s.feature] <= s.threshold ? 2 * index : 2 * index + 1;
  }
}

double Tree::Predict(std::span<const double> sample) const {
  if (nodes_.empty()) return 0.0;
  return Find(LeafIndex(sample))->weight.value_or(0.0);
}

std::vector<GradientPair> ComputeGradients(std::span<const double> predictions,
                                           std::span<const double> labels) {
  if (predictions.size() != labels.size())
    throw ArgumentError("predictions and labels differ in length");
  if (predictions.empty()) throw ArgumentError("no samples to differentiate");
  std::vector<GradientPair> out(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i)
    out[i] = {predictions[i] - labels[i], 1.0};
  return out;
}

std::vector<ValueCount> CountDistinct(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<ValueCount> out;
  for (double v : sorted) {
    if (std::isnan(v)) throw ArgumentError("cannot bin NaN feature values");
    if (!out.empty() && out.back().value == v) {
      ++out.back().count;
    } else {
      out.push_back({v, 1});
    }
  }
  return out;
}

BinEdges BuildBinsFromCounts(std::span<const ValueCount> sorted_counts,
                             int n_bins) {
  if (n_bins < 2) throw ArgumentError("need at least 2 bins");
  if (sorted_counts.empty()) throw ArgumentError("cannot bin an empty feature");
  const double lo = sorted_counts.front().value;
  const double hi = sorted_counts.back().value;

  BinEdges out;
  const double below = lo - 1.0;
  out.edges.push_back(below < lo ? below
                                 : std::nextafter(lo, -std::numeric_limits<double>::infinity()));
  if (sorted_counts.size() <= static_cast<std::size_t>(n_bins)) {
    for (const ValueCount& vc : sorted_counts) out.edges.push_back(vc.value);
    return out;
  }

  std::uint64_t total = 0;
  for (const ValueCount& vc : sorted_counts) total += vc.count;
  const auto v = static_cast<std::uint64_t>(n_bins);
  std::size_t pos = 0;
  std::uint64_t seen = sorted_counts[0].count;
  for (std::uint64_t j = 1; j < v; ++j) {
    const std::uint64_t rank = (j * total + v - 1) / v;  // 1-based
    while (seen < rank) seen += sorted_counts[++pos].count;
    const double q = sorted_counts[pos].value;
    if (q < hi && q > out.edges.back()) out.edges.push_back(q);
  }
  out.edges.push_back(hi);
  return out;
}

BinEdges BuildBins(std::span<const double> values, int n_bins) {
  if (n_bins < 2) throw ArgumentError("need at least 2 bins");
  if (values.empty()) throw ArgumentError("cannot bin an empty feature");
  const std::vector<ValueCount> counts = CountDistinct(values);
  return BuildBinsFromCounts(counts, n_bins);
}

int AssignBin(double value, const BinEdges& edges) {
  const int bins = edges.bin_count();
  auto first = edges.edges.begin() + 1;
  auto it = std::lower_bound(first, edges.edges.end(), value);
  if (it == edges.edges.end()) return bins - 1;
  return static_cast<int>(it - first);
}

std::vector<BinHistogram> AggregateHistogram(
    std::span<const SampleId> node_samples, const BinnedFeatures& binned,
    std::span<const GradientPair> gradients) {
  if (gradients.size() != binned.rows())
    throw ArgumentError("gradient count does not match binned rows");
  for (SampleId s : node_samples) {
    if (s >= binned.rows())
      throw ArgumentError("unknown sample id " + std::to_string(s));
  }
  std::vector<BinHistogram> out(binned.features());
  for (std::size_t f = 0; f < binned.features(); ++f) {
    BinHistogram& h = out[f];
    h.feature = binned.edges(f).feature;
    const auto v = static_cast<std::size_t>(binned.edges(f).bin_count());
    h.grad.assign(v, 0.0);
    h.hess.assign(v, 0.0);
    std::span<const BinIndex> col = binned.column(f);
    for (SampleId s : node_samples) {
      h.grad[col[s]] += gradients[s].g;
      h.hess[col[s]] += gradients[s].h;
    }
  }
  return out;
}

double SplitGain(double grad_left, double hess_left, double grad_total,
                 double hess_total, double lambda) {
  const double gr = grad_total - grad_left;
  const double hr = hess_total - hess_left;
  return grad_left * grad_left / (hess_left + lambda) + gr * gr / (hr + lambda) -
         grad_total * grad_total / (hess_total + lambda);
}

double LeafValue(double grad, double hess, double eta, double lambda) {
  if (!(hess + lambda > 0.0))
    throw ArgumentError("leaf value undefined: H + lambda <= 0");
  const double w = -eta * grad / (hess + lambda);
  return w == 0.0 ? 0.0 : w;
}

double LeafWeightOrZero(double grad, double hess, double eta, double lambda) {
  if (!(hess + lambda > 0.0)) return 0.0;
  return LeafValue(grad, hess, eta, lambda);
}

double GainTolerance(double grad_total, double hess_total, double lambda) {
  const double denom = hess_total + lambda;
  const double parent = denom > 0.0 ? grad_total * grad_total / denom : 0.0;
  return 1e-10 * (1.0 + std::abs(parent));
}

std::optional<SplitDecision> BestSplit(std::span<const BinHistogram> histograms,
                                       double lambda, double min_gain) {
  if (histograms.empty()) return std::nullopt;
  const double g0 = histograms.front().total_grad();
  const double h0 = histograms.front().total_hess();
  for (const BinHistogram& h : histograms) {
    const double g = h.total_grad();
    const double hh = h.total_hess();
    if (std::abs(g - g0) > 1e-6 * std::max(1.0, std::abs(g0)) ||
        std::abs(hh - h0) > 1e-6 * std::max(1.0, std::abs(h0))) {
      throw ConsistencyError("histogram totals disagree across features (feature " +
                             std::to_string(h.feature) + ")");
    }
  }

  const double tol = GainTolerance(g0, h0, lambda);
  std::vector<const BinHistogram*> order;
  for (const BinHistogram& h : histograms) order.push_back(&h);
  std::stable_sort(order.begin(), order.end(),
                   [](auto* a, auto* b) { return a->feature < b->feature; });

  std::optional<SplitDecision> best;
  for (const BinHistogram* hp : order) {
    const BinHistogram& h = *hp;
    const double g_total = h.total_grad();
    const double h_total = h.total_hess();
    double gl = 0.0;
    double hl = 0.0;
    const std::size_t bins = h.grad.size();
    for (std::size_t e = 1; e < bins; ++e) {
      gl += h.grad[e - 1];
      hl += h.hess[e - 1];
      const double hr = h_total - hl;
      if (!(hl + lambda > 0.0) || !(hr + lambda > 0.0)) continue;
      const double gain = SplitGain(gl, hl, g_total, h_total, lambda);
      if (!best || GainExceeds(gain, best->gain, tol)) {
        best = SplitDecision{h.feature, static_cast<int>(e),
                             std::numeric_limits<double>::quiet_NaN(), gain};
      }
    }
  }
  if (!best || !GainExceeds(best->gain, min_gain, tol))
    return std::nullopt;
  return best;
}

void ResolveThreshold(SplitDecision& decision, const BinEdges& edges) {
  if (decision.edge_index < 1 || decision.edge_index >= edges.bin_count())
    throw ArgumentError("edge index " + std::to_string(decision.edge_index) +
                        " is not an interior edge");
  decision.threshold = edges.edges[decision.edge_index];
}

namespace {

double LeafWeightOf(std::span<const SampleId> samples,
                    std::span<const GradientPair> gradients,
                    const TrainParams& params) {
  double g = 0.0;
  double h = 0.0;
  for (SampleId s : samples) {
    g += gradients[s].g;
    h += gradients[s].h;
  }
  return LeafWeightOrZero(g, h, params.eta, params.lambda);
}

}  // namespace

Tree TrainTree(const BinnedFeatures& binned,
               std::span<const GradientPair> gradients,
               const TrainParams& params,
               std::span<const SampleId> root_samples) {
  std::vector<SampleId> root;
  if (root_samples.empty()) {
    root.resize(binned.rows());
    std::iota(root.begin(), root.end(), SampleId{0});
  } else {
    root.assign(root_samples.begin(), root_samples.end());
  }

  Tree tree;
  std::deque<std::pair<int, std::vector<SampleId>>> queue;
  queue.emplace_back(1, std::move(root));
  while (!queue.empty()) {
    auto [index, samples] = std::move(queue.front());
    queue.pop_front();

    TreeNode node;
    node.index = index;
    std::optional<SplitDecision> split;
    if (NodeDepth(index) < params.max_depth && !samples.empty()) {
      const auto hist = AggregateHistogram(samples, binned, gradients);
      split = BestSplit(hist, params.lambda, params.min_gain);
    }
    if (!split) {
      node.kind = NodeKind::kLeaf;
      node.weight = LeafWeightOf(samples, gradients, params);
      node.samples = std::move(samples);
      tree.Add(std::move(node));
      continue;
    }

    ResolveThreshold(*split, binned.edges(split->feature));
    std::vector<SampleId> left;
    std::vector<SampleId> right;
    std::span<const BinIndex> col = binned.column(split->feature);
    for (SampleId s : samples) {
      (col[s] < split->edge_index ? left : right).push_back(s);
    }
    node.kind = NodeKind::kSplit;
    node.split = split;
    node.samples = std::move(samples);
    tree.Add(std::move(node));
    queue.emplace_back(2 * index, std::move(left));
    queue.emplace_back(2 * index + 1, std::move(right));
  }
  return tree;
}

Ensemble TrainEnsemble(const BinnedFeatures& binned,
                       std::span<const double> labels,
                       const TrainParams& params) {
  params.Validate();
  if (labels.size() != binned.rows())
    throw ArgumentError("label count does not match feature rows");
  Ensemble ensemble;
  ensemble.params = params;
  std::vector<double> predictions(labels.size(), ensemble.base_score);
  for (int s = 0; s < params.n_trees; ++s) {
    const auto gradients = ComputeGradients(predictions, labels);
    Tree tree = TrainTree(binned, gradients, params);
    for (const TreeNode& node : tree.nodes()) {
      if (node.kind != NodeKind::kLeaf) continue;
      for (SampleId id : node.samples) predictions[id] += *node.weight;
    }
    ensemble.trees.push_back(std::move(tree));
  }
  return ensemble;
}

Ensemble TrainEnsemble(const Dataset& dataset, const TrainParams& params) {
  params.Validate();
  if (dataset.features.rows() == 0) {
    Ensemble empty;
    empty.params = params;
    if (params.n_trees > 0) throw ArgumentError("cannot train on an empty dataset");
    return empty;
  }
  const BinnedFeatures binned = BinnedFeatures::Build(dataset.features, params.n_bins);
  return TrainEnsemble(binned, dataset.labels, params);
}

double Predict(const Ensemble& ensemble, std::span<const double> sample) {
  double out = ensemble.base_score;
  for (const Tree& tree : ensemble.trees) out += tree.Predict(sample);
  return out;
}

std::vector<double> PredictAll(const Ensemble& ensemble,
                               const FeatureMatrix& features) {
  std::vector<double> out(features.rows());
  for (std::size_t r = 0; r < features.rows(); ++r)
    out[r] = Predict(ensemble, features.row(r));
  return out;
}

}  // namespace fedboost::gbdt
