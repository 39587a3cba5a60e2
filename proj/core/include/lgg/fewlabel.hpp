#pragma once

// Synthetic few-label benchmark: Gaussian blobs, nearest-class-mean
// classification on raw versus graph-diffused features.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace lgg {

struct BlobsConfig {
  std::size_t dim = 20;
  std::size_t classes = 2;
  double separation = 2.0;  // distance between any two class means
  double stddev = 1.0;      // isotropic per-coordinate standard deviation
  std::size_t unlabeled_per_class = 100;
  double offset = 0.0;  // added to every coordinate of every mean

  void validate() const;
};

struct FewLabelParams {
  std::size_t shots = 1;  // labeled samples per class
  std::size_t k = 10;
  double alpha = 0.5;
  std::size_t m = 2;
};

struct FewLabelSample {
  Eigen::MatrixXd features;          // rows grouped by class: shots labeled, then unlabeled
  std::vector<std::size_t> labels;   // true class per row
  std::vector<bool> labeled;
};

/// Class means on a centered regular simplex (pairwise distance `separation`).
Eigen::MatrixXd blob_means(const BlobsConfig& config);

FewLabelSample generate_blobs(const BlobsConfig& config, std::size_t shots, std::uint64_t seed);

/// Accuracy over the unlabeled rows of a nearest-class-mean classifier fit
/// on the labeled rows. Ties go to the lower class.
double nearest_class_mean_accuracy(const Eigen::MatrixXd& features,
                                   const std::vector<std::size_t>& labels,
                                   const std::vector<bool>& labeled, std::size_t classes);

struct FewLabelTrial {
  double raw_accuracy = 0.0;
  double diffused_accuracy = 0.0;
};

struct FewLabelSummary {
  std::vector<FewLabelTrial> trials;
  double mean_raw = 0.0;
  double std_raw = 0.0;
  double mean_diffused = 0.0;
  double std_diffused = 0.0;

  double gain() const noexcept { return mean_diffused - mean_raw; }
};

/// Runs `trials` independent draws; trial t uses a generator seeded from
/// (seed, t), so results do not depend on evaluation order.
FewLabelSummary run_fewlabel_benchmark(const BlobsConfig& config, const FewLabelParams& params,
                                       std::size_t trials, std::uint64_t seed);

}  // namespace lgg
