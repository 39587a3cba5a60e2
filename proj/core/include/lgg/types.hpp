#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace lgg {

/// Real-valued signals supported on the vertices of a graph, one column per
/// channel. Row count must match the vertex count of the graph it is used with.
using GraphSignal = Eigen::MatrixXd;

bool all_finite(const Eigen::MatrixXd& m) noexcept;

/// n samples x d features of finite embedding coordinates (n, d >= 1).
class FeatureMatrix {
 public:
  explicit FeatureMatrix(Eigen::MatrixXd values);

  Eigen::Index rows() const noexcept { return values_.rows(); }
  Eigen::Index cols() const noexcept { return values_.cols(); }
  const Eigen::MatrixXd& values() const noexcept { return values_; }

 private:
  Eigen::MatrixXd values_;
};

/// Class index per sample, every index in [0, num_classes).
class LabelVector {
 public:
  LabelVector(std::vector<std::size_t> labels, std::size_t num_classes);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t num_classes() const noexcept { return num_classes_; }
  std::size_t operator[](std::size_t i) const { return labels_[i]; }
  std::span<const std::size_t> labels() const noexcept { return labels_; }

  /// Binary indicator signal of class c.
  Eigen::VectorXd indicator(std::size_t c) const;
  /// Number of samples carrying each class.
  std::vector<std::size_t> class_counts() const;

 private:
  std::vector<std::size_t> labels_;
  std::size_t num_classes_;
};

}  // namespace lgg
