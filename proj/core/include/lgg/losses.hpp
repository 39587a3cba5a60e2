#pragma once

// Batch-level graph losses and regularizers. Forward values only.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lgg/graph.hpp"
#include "lgg/types.hpp"

namespace lgg {

/// Intermediate representations of one batch after each considered layer.
class LayerFeatureSet {
 public:
  explicit LayerFeatureSet(std::vector<FeatureMatrix> layers);

  std::size_t num_layers() const noexcept { return layers_.size(); }
  Eigen::Index batch_size() const noexcept { return layers_.front().rows(); }
  const FeatureMatrix& operator[](std::size_t l) const { return layers_[l]; }
  const std::vector<FeatureMatrix>& layers() const noexcept { return layers_; }

 private:
  std::vector<FeatureMatrix> layers_;
};

/// Set S of meaningful ordered pairs (i, j), i != j, over a batch of n.
class AffinityTarget {
 public:
  AffinityTarget(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> pairs);

  /// All ordered pairs of distinct samples sharing a label.
  static AffinityTarget same_class(const LabelVector& labels);

  std::size_t size() const noexcept { return n_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const noexcept { return pairs_; }
  Eigen::MatrixXd matrix() const;

 private:
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

/// Sum over classes of s_c^T L s_c on the top-k RBF graph of the outputs,
/// i.e. twice the total weight of retained edges joining different classes.
double graph_smoothness_loss(const FeatureMatrix& outputs, const LabelVector& labels, double alpha,
                             std::size_t k, Metric metric = Metric::Euclidean);

/// D^{-1/2} A D^{-1/2} of the complete cosine graph over the rows.
Eigen::MatrixXd normalized_cosine_adjacency(const FeatureMatrix& features);

/// Sum over layers of ||A_student - A_teacher||_F^2 on normalized cosine
/// graphs. With task_specific, same-class entries are zeroed in both
/// matrices after normalization.
double gkd_loss(const LayerFeatureSet& teacher, const LayerFeatureSet& student,
                bool task_specific = false,
                const std::optional<LabelVector>& labels = std::nullopt);

/// task + lambda_kd * kd.
double combined_distill_loss(double task_loss, double kd_loss, double lambda_kd);

enum class AffinitySimilarity { ScaledDot, Cosine };

struct AffinityResult {
  double loss = 0.0;  // 1 - mass / n
  double mass = 0.0;  // sum of softmax(A) over S
  Eigen::MatrixXd softmax;
};

/// Row-wise softmax of the pairwise affinities (diagonal excluded) and its
/// mass on the target pairs.
AffinityResult affinity_loss(const FeatureMatrix& features, const AffinityTarget& target,
                             AffinitySimilarity similarity = AffinitySimilarity::Cosine);

/// Sum of smoothness gaps over consecutive layer graphs.
double smoothness_gap_regularizer(const std::vector<SparseGraph>& layer_graphs,
                                  const LabelVector& labels);

/// Peer feature maps (p pixels x d channels each) and the attention layer a.
struct PeerBank {
  std::vector<Eigen::MatrixXd> peers;
  Eigen::VectorXd attention_weights;  // length 2d, applied to [x_p ; x_q]
  double attention_bias = 0.0;
  double leaky_slope = 0.01;

  void validate() const;
};

struct PeerRegularization {
  Eigen::MatrixXd output;              // p x d
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> neighbors;  // (peer, pixel)
  std::vector<Eigen::VectorXd> coefficients;  // attention weights per pixel, sum 1
};

/// Replaces each pixel by the attention-weighted combination of its K most
/// cosine-similar pixels across all peer maps. Ties go to the lower
/// (peer, pixel) index.
PeerRegularization peer_regularize(const Eigen::MatrixXd& input_map, const PeerBank& bank,
                                   std::size_t k);

}  // namespace lgg
