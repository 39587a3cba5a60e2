#pragma once

// Semi-supervised machinery: feature diffusion over a k-NN graph and label
// propagation with pseudo-labels, certainty weights and class balancing.

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "lgg/graph.hpp"
#include "lgg/types.hpp"

namespace lgg {

/// Labels for a subset of n samples.
class PartialLabels {
 public:
  PartialLabels(std::size_t n, std::vector<std::size_t> labeled_indices,
                std::vector<std::size_t> labels, std::size_t num_classes);

  std::size_t size() const noexcept { return n_; }
  std::size_t num_labeled() const noexcept { return indices_.size(); }
  std::size_t num_classes() const noexcept { return num_classes_; }
  std::span<const std::size_t> labeled_indices() const noexcept { return indices_; }
  std::span<const std::size_t> labels() const noexcept { return labels_; }

  /// Label of sample i, or -1 when unlabeled.
  long long label_of(std::size_t i) const { return lookup_[i]; }
  bool is_labeled(std::size_t i) const { return lookup_[i] >= 0; }

  /// n x c one-hot matrix, rows of unlabeled samples zero.
  Eigen::MatrixXd label_matrix() const;

 private:
  std::size_t n_;
  std::vector<std::size_t> indices_;
  std::vector<std::size_t> labels_;
  std::size_t num_classes_;
  std::vector<long long> lookup_;
};

struct PseudoLabelResult {
  Eigen::MatrixXd z;                      // diffused label matrix, n x c
  std::vector<std::size_t> pseudo_labels; // ground truth for labeled rows
  Eigen::VectorXd omega;                  // certainty in [0, 1]
  Eigen::VectorXd zeta;                   // 1 / class size, 0 for empty classes
  std::vector<std::size_t> unreached;     // unlabeled rows with no positive mass
  std::vector<std::size_t> empty_classes; // classes with no assigned sample
  std::vector<std::size_t> unlabeled_classes;  // classes without a labeled sample
  std::size_t iterations = 0;             // 0 for the closed form
};

struct ClosedForm {};
struct Iterative {
  std::size_t max_iter = 10000;
  double tol = 1e-9;
};
using PropagationMethod = std::variant<ClosedForm, Iterative>;

/// Cosine k-NN graph over all rows, normalized adjacency E, then
/// (alpha I + E)^m F. Throws invalid-parameter when k >= n.
FeatureMatrix transfer_sgc(const FeatureMatrix& features, std::size_t k, double alpha,
                           std::size_t m);

/// Z = (I - alpha E)^{-1} Y with E the normalized adjacency of `graph`.
///
/// Requires 0 < alpha * rho(E) < 1 (rho from a power-iteration estimate,
/// and exactly 1 for any graph with an edge),
/// otherwise invalid-parameter. A failed or non-finite solve raises
/// numerical-failure; the iterative method raises numerical-failure when it
/// does not reach `tol` within `max_iter` steps.
PseudoLabelResult propagate_labels(const SparseGraph& graph, const PartialLabels& labels,
                                   double alpha, const PropagationMethod& method = ClosedForm{});

/// 1 - H(p) / log(c) for the row normalized to a distribution p; 0 for rows
/// summing to <= 0. With a single class every positive row scores 1.
double certainty_weight(const Eigen::Ref<const Eigen::RowVectorXd>& row);

/// sum_{labeled} zeta[y_i] l_i + sum_{unlabeled} omega_i zeta[yhat_i] l_i.
double weighted_loss_combine(std::span<const double> per_sample_losses,
                             const PartialLabels& labels, const PseudoLabelResult& pseudo);

}  // namespace lgg
