#include "lgg/denoise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SparseCholesky>

#include "lgg/error.hpp"
#include "lgg/spectral.hpp"

namespace lgg {

PartialLabels::PartialLabels(std::size_t n, std::vector<std::size_t> labeled_indices,
                             std::vector<std::size_t> labels, std::size_t num_classes)
    : n_(n),
      indices_(std::move(labeled_indices)),
      labels_(std::move(labels)),
      num_classes_(num_classes),
      lookup_(n, -1) {
  if (num_classes_ < 1) throw_invalid_parameter("partial labels need at least one class");
  if (indices_.size() != labels_.size()) {
    throw_invalid_input("labeled_indices and labels differ in length");
  }
  if (indices_.empty() || indices_.size() > n_) {
    throw_invalid_input("partial labels need between 1 and n labeled samples");
  }
  for (std::size_t t = 0; t < indices_.size(); ++t) {
    const auto i = indices_[t];
    if (i >= n_) throw_invalid_input("labeled index " + std::to_string(i) + " out of range");
    if (lookup_[i] >= 0) throw_invalid_input("labeled index " + std::to_string(i) + " repeated");
    if (labels_[t] >= num_classes_) {
      throw_invalid_input("label " + std::to_string(labels_[t]) + " is not below num_classes");
    }
    lookup_[i] = static_cast<long long>(labels_[t]);
  }
}

Eigen::MatrixXd PartialLabels::label_matrix() const {
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_),
                                            static_cast<Eigen::Index>(num_classes_));
  for (std::size_t t = 0; t < indices_.size(); ++t) {
    y(static_cast<Eigen::Index>(indices_[t]), static_cast<Eigen::Index>(labels_[t])) = 1.0;
  }
  return y;
}

FeatureMatrix transfer_sgc(const FeatureMatrix& features, std::size_t k, double alpha,
                           std::size_t m) {
  const auto n = static_cast<std::size_t>(features.rows());
  if (k == 0 || k >= n) {
    throw_invalid_parameter("transfer_sgc requires 1 <= k < n");
  }
  if (m == 0) return features;
  const SparseGraph graph = knn_graph(features, k, CosineSimilarity{}, Symmetrize::Union);
  return sgc_diffuse(features, graph, alpha, m);
}

double certainty_weight(const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  const double total = row.sum();
  if (!(total > 0.0)) return 0.0;
  const auto c = row.size();
  if (c == 1) return 1.0;
  // a uniform row has entropy log c exactly
  if (row.minCoeff() == row.maxCoeff()) return 0.0;
  double entropy = 0.0;
  for (Eigen::Index j = 0; j < c; ++j) {
    const double p = std::max(0.0, row[j]) / total;
    if (p > 0.0) entropy -= p * std::log(p);
  }
  return std::clamp(1.0 - entropy / std::log(static_cast<double>(c)), 0.0, 1.0);
}

PseudoLabelResult propagate_labels(const SparseGraph& graph, const PartialLabels& labels,
                                   double alpha, const PropagationMethod& method) {
  if (labels.size() != graph.num_vertices()) {
    throw_invalid_input("propagate_labels: label count does not match the graph");
  }
  const SparseMatrix e = normalized_adjacency(graph);
  // E has eigenvalue exactly 1 (eigenvector D^1/2 1) whenever an edge exists
  const double rho = std::max(estimate_spectral_radius(e), graph.num_edges() > 0 ? 1.0 : 0.0);
  if (!(alpha > 0.0) || !std::isfinite(alpha) || alpha * rho >= 1.0) {
    throw_invalid_parameter("propagate_labels requires 0 < alpha < 1/rho(E) (alpha=" +
                            std::to_string(alpha) + ", rho=" + std::to_string(rho) + ")");
  }

  const Eigen::MatrixXd y = labels.label_matrix();
  const auto n = static_cast<Eigen::Index>(labels.size());
  const auto c = static_cast<Eigen::Index>(labels.num_classes());

  PseudoLabelResult result;
  if (const auto* iter = std::get_if<Iterative>(&method)) {
    Eigen::MatrixXd z = y;
    bool converged = false;
    for (std::size_t t = 1; t <= iter->max_iter; ++t) {
      Eigen::MatrixXd next = alpha * (e * z) + y;
      const double change = (next - z).cwiseAbs().maxCoeff();
      z = std::move(next);
      result.iterations = t;
      if (change < iter->tol) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw_numerical_failure("label propagation did not converge in " +
                              std::to_string(iter->max_iter) + " iterations");
    }
    result.z = std::move(z);
  } else {
    SparseMatrix system(n, n);
    system.setIdentity();
    system -= alpha * e;
    // alpha * rho < 1 makes the system symmetric positive definite
    Eigen::SimplicialLDLT<SparseMatrix> solver;
    solver.compute(system);
    if (solver.info() != Eigen::Success) {
      throw_numerical_failure("label propagation: (I - alpha E) is singular");
    }
    result.z = solver.solve(y);
    if (solver.info() != Eigen::Success || !result.z.allFinite()) {
      throw_numerical_failure("label propagation: linear solve failed");
    }
  }

  result.pseudo_labels.resize(static_cast<std::size_t>(n));
  result.omega.resize(n);
  std::vector<std::size_t> counts(static_cast<std::size_t>(c), 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto row = result.z.row(i);
    const auto idx = static_cast<std::size_t>(i);
    result.omega[i] = certainty_weight(row);
    if (labels.is_labeled(idx)) {
      result.pseudo_labels[idx] = static_cast<std::size_t>(labels.label_of(idx));
    } else {
      Eigen::Index best = 0;
      for (Eigen::Index j = 1; j < c; ++j) {
        if (row[j] > row[best]) best = j;
      }
      result.pseudo_labels[idx] = static_cast<std::size_t>(best);
      if (!(row.sum() > 0.0)) {
        result.unreached.push_back(idx);
        continue;
      }
    }
    ++counts[result.pseudo_labels[idx]];
  }

  result.zeta = Eigen::VectorXd::Zero(c);
  std::vector<bool> has_labeled(static_cast<std::size_t>(c), false);
  for (auto l : labels.labels()) has_labeled[l] = true;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] > 0) {
      result.zeta[static_cast<Eigen::Index>(j)] = 1.0 / static_cast<double>(counts[j]);
    } else {
      result.empty_classes.push_back(j);
    }
    if (!has_labeled[j]) result.unlabeled_classes.push_back(j);
  }
  return result;
}

double weighted_loss_combine(std::span<const double> per_sample_losses,
                             const PartialLabels& labels, const PseudoLabelResult& pseudo) {
  const std::size_t n = labels.size();
  if (per_sample_losses.size() != n || pseudo.pseudo_labels.size() != n ||
      static_cast<std::size_t>(pseudo.omega.size()) != n) {
    throw_invalid_input("weighted_loss_combine: length mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double loss = per_sample_losses[i];
    if (!std::isfinite(loss)) throw_invalid_input("weighted_loss_combine: non-finite loss");
    if (labels.is_labeled(i)) {
      total += pseudo.zeta[static_cast<Eigen::Index>(labels.label_of(i))] * loss;
    } else {
      const auto cls = static_cast<Eigen::Index>(pseudo.pseudo_labels[i]);
      total += pseudo.omega[static_cast<Eigen::Index>(i)] * pseudo.zeta[cls] * loss;
    }
  }
  return total;
}

}  // namespace lgg
