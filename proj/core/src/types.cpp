#include "lgg/types.hpp"

#include <string>

#include "lgg/error.hpp"

namespace lgg {

bool all_finite(const Eigen::MatrixXd& m) noexcept {
  return m.allFinite();
}

FeatureMatrix::FeatureMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw_invalid_input("feature matrix must have at least one row and one column");
  }
  if (!values_.allFinite()) {
    throw_invalid_input("feature matrix contains non-finite values");
  }
}

LabelVector::LabelVector(std::vector<std::size_t> labels, std::size_t num_classes)
    : labels_(std::move(labels)), num_classes_(num_classes) {
  if (num_classes_ < 1) {
    throw_invalid_parameter("label vector needs at least one class");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] >= num_classes_) {
      throw_invalid_input("label " + std::to_string(labels_[i]) + " at index " +
                          std::to_string(i) + " is not below num_classes " +
                          std::to_string(num_classes_));
    }
  }
}

Eigen::VectorXd LabelVector::indicator(std::size_t c) const {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(labels_.size()));
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == c) s[static_cast<Eigen::Index>(i)] = 1.0;
  }
  return s;
}

std::vector<std::size_t> LabelVector::class_counts() const {
  std::vector<std::size_t> counts(num_classes_, 0);
  for (auto l : labels_) ++counts[l];
  return counts;
}

}  // namespace lgg
