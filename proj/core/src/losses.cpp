#include "lgg/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lgg/analysis.hpp"
#include "lgg/error.hpp"

namespace lgg {

LayerFeatureSet::LayerFeatureSet(std::vector<FeatureMatrix> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw_invalid_input("layer feature set needs at least one layer");
  for (const auto& layer : layers_) {
    if (layer.rows() != layers_.front().rows()) {
      throw_invalid_input("all layers must share the batch size");
    }
  }
}

AffinityTarget::AffinityTarget(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> pairs)
    : n_(n), pairs_(std::move(pairs)) {
  for (const auto& [i, j] : pairs_) {
    if (i >= n_ || j >= n_) throw_invalid_input("affinity pair index out of range");
    if (i == j) throw_invalid_input("affinity pairs must join distinct samples");
  }
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

AffinityTarget AffinityTarget::same_class(const LabelVector& labels) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (i != j && labels[i] == labels[j]) pairs.emplace_back(i, j);
    }
  }
  return AffinityTarget(labels.size(), std::move(pairs));
}

Eigen::MatrixXd AffinityTarget::matrix() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [i, j] : pairs_) t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  return t;
}

double graph_smoothness_loss(const FeatureMatrix& outputs, const LabelVector& labels, double alpha,
                             std::size_t k, Metric metric) {
  if (labels.size() != static_cast<std::size_t>(outputs.rows())) {
    throw_invalid_input("graph_smoothness_loss: label count does not match outputs");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw_invalid_parameter("graph_smoothness_loss requires alpha > 0");
  }
  const SparseGraph graph = knn_graph(outputs, k, RbfSimilarity{alpha, metric}, Symmetrize::Union);
  double inter = 0.0;
  for (const auto& e : graph.edges()) {
    if (labels[e.i] != labels[e.j]) inter += e.w;
  }
  return 2.0 * inter;
}

Eigen::MatrixXd normalized_cosine_adjacency(const FeatureMatrix& features) {
  Eigen::MatrixXd a = pairwise_cosine(features.values()).cwiseMax(0.0);
  a.diagonal().setZero();
  Eigen::VectorXd inv = a.rowwise().sum();
  for (Eigen::Index i = 0; i < inv.size(); ++i) inv[i] = inv[i] > 0.0 ? 1.0 / std::sqrt(inv[i]) : 0.0;
  return inv.asDiagonal() * a * inv.asDiagonal();
}

double gkd_loss(const LayerFeatureSet& teacher, const LayerFeatureSet& student, bool task_specific,
                const std::optional<LabelVector>& labels) {
  if (teacher.num_layers() != student.num_layers()) {
    throw_invalid_input("gkd_loss: teacher and student have different layer counts");
  }
  if (teacher.batch_size() != student.batch_size()) {
    throw_invalid_input("gkd_loss: teacher and student have different batch sizes");
  }
  if (task_specific && !labels) {
    throw_invalid_parameter("gkd_loss: task-specific graphs require labels");
  }
  if (labels && static_cast<Eigen::Index>(labels->size()) != teacher.batch_size()) {
    throw_invalid_input("gkd_loss: label count does not match the batch size");
  }

  Eigen::MatrixXd keep;
  if (task_specific) {
    const auto b = teacher.batch_size();
    keep = Eigen::MatrixXd::Ones(b, b);
    for (Eigen::Index i = 0; i < b; ++i) {
      for (Eigen::Index j = 0; j < b; ++j) {
        if ((*labels)[static_cast<std::size_t>(i)] == (*labels)[static_cast<std::size_t>(j)]) {
          keep(i, j) = 0.0;
        }
      }
    }
  }

  double total = 0.0;
  for (std::size_t l = 0; l < teacher.num_layers(); ++l) {
    Eigen::MatrixXd diff =
        normalized_cosine_adjacency(student[l]) - normalized_cosine_adjacency(teacher[l]);
    if (task_specific) diff = diff.cwiseProduct(keep);
    total += diff.squaredNorm();
  }
  return total;
}

double combined_distill_loss(double task_loss, double kd_loss, double lambda_kd) {
  if (!(lambda_kd >= 0.0)) throw_invalid_parameter("lambda_kd must be >= 0");
  return task_loss + lambda_kd * kd_loss;
}

AffinityResult affinity_loss(const FeatureMatrix& features, const AffinityTarget& target,
                             AffinitySimilarity similarity) {
  const Eigen::Index n = features.rows();
  if (n < 2) throw_invalid_input("affinity_loss needs at least two samples");
  if (static_cast<Eigen::Index>(target.size()) != n) {
    throw_invalid_input("affinity_loss: target size does not match the batch");
  }
  const Eigen::MatrixXd& x = features.values();
  Eigen::MatrixXd a = similarity == AffinitySimilarity::Cosine
                          ? pairwise_cosine(x)
                          : Eigen::MatrixXd(x * x.transpose() /
                                            std::sqrt(static_cast<double>(x.cols())));

  const Eigen::MatrixXd t = target.matrix();
  AffinityResult result;
  result.softmax = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double peak = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) peak = std::max(peak, a(i, j));
    }
    // row mass accumulated in the same order as the row total, so a row
    // fully covered by S contributes exactly 1
    double total = 0.0;
    double on_target = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double e = std::exp(a(i, j) - peak);
      result.softmax(i, j) = e;
      total += e;
      if (t(i, j) != 0.0) on_target += e;
    }
    result.softmax.row(i) /= total;
    result.mass += on_target / total;
  }
  result.loss = 1.0 - result.mass / static_cast<double>(n);
  return result;
}

double smoothness_gap_regularizer(const std::vector<SparseGraph>& layer_graphs,
                                  const LabelVector& labels) {
  if (layer_graphs.size() < 2) {
    throw_invalid_parameter("smoothness_gap_regularizer needs at least two layer graphs");
  }
  double total = 0.0;
  for (std::size_t l = 0; l + 1 < layer_graphs.size(); ++l) {
    total += smoothness_gap(layer_graphs[l], layer_graphs[l + 1], labels);
  }
  return total;
}

}  // namespace lgg
