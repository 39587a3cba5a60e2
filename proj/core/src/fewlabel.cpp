#include "lgg/fewlabel.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "lgg/denoise.hpp"
#include "lgg/error.hpp"
#include "lgg/types.hpp"

namespace lgg {

void BlobsConfig::validate() const {
  if (classes < 2) throw_invalid_parameter("blobs need at least two classes");
  if (dim < classes) throw_invalid_parameter("blobs need dim >= classes");
  if (!(separation >= 0.0) || !(stddev > 0.0) || !std::isfinite(offset)) {
    throw_invalid_parameter("blobs need separation >= 0, stddev > 0 and a finite offset");
  }
  if (unlabeled_per_class < 1) throw_invalid_parameter("blobs need unlabeled samples");
}

Eigen::MatrixXd blob_means(const BlobsConfig& config) {
  config.validate();
  const auto c = static_cast<Eigen::Index>(config.classes);
  Eigen::MatrixXd means = Eigen::MatrixXd::Zero(c, static_cast<Eigen::Index>(config.dim));
  const double scale = config.separation / std::sqrt(2.0);
  for (Eigen::Index k = 0; k < c; ++k) {
    for (Eigen::Index j = 0; j < c; ++j) {
      means(k, j) = scale * ((j == k ? 1.0 : 0.0) - 1.0 / static_cast<double>(c));
    }
  }
  means.array() += config.offset;
  return means;
}

FewLabelSample generate_blobs(const BlobsConfig& config, std::size_t shots, std::uint64_t seed) {
  if (shots < 1) throw_invalid_parameter("few-label benchmark needs at least one shot");
  const Eigen::MatrixXd means = blob_means(config);
  const std::size_t per_class = shots + config.unlabeled_per_class;
  const auto n = static_cast<Eigen::Index>(per_class * config.classes);
  const auto d = static_cast<Eigen::Index>(config.dim);

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 gen(seq);
  std::normal_distribution<double> noise(0.0, config.stddev);

  FewLabelSample sample;
  sample.features.resize(n, d);
  sample.labels.reserve(static_cast<std::size_t>(n));
  sample.labeled.reserve(static_cast<std::size_t>(n));
  Eigen::Index row = 0;
  for (std::size_t c = 0; c < config.classes; ++c) {
    for (std::size_t s = 0; s < per_class; ++s, ++row) {
      for (Eigen::Index j = 0; j < d; ++j) {
        sample.features(row, j) = means(static_cast<Eigen::Index>(c), j) + noise(gen);
      }
      sample.labels.push_back(c);
      sample.labeled.push_back(s < shots);
    }
  }
  return sample;
}

double nearest_class_mean_accuracy(const Eigen::MatrixXd& features,
                                   const std::vector<std::size_t>& labels,
                                   const std::vector<bool>& labeled, std::size_t classes) {
  const auto c = static_cast<Eigen::Index>(classes);
  Eigen::MatrixXd centroids = Eigen::MatrixXd::Zero(c, features.cols());
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(c);
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    if (!labeled[static_cast<std::size_t>(i)]) continue;
    const auto k = static_cast<Eigen::Index>(labels[static_cast<std::size_t>(i)]);
    centroids.row(k) += features.row(i);
    counts[k] += 1.0;
  }
  for (Eigen::Index k = 0; k < c; ++k) {
    if (counts[k] == 0.0) throw_invalid_input("nearest class mean: class without labeled sample");
    centroids.row(k) /= counts[k];
  }
  std::size_t correct = 0;
  std::size_t total = 0;
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    if (labeled[static_cast<std::size_t>(i)]) continue;
    Eigen::Index best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < c; ++k) {
      const double dist = (features.row(i) - centroids.row(k)).squaredNorm();
      if (dist < best_dist) {
        best_dist = dist;
        best = k;
      }
    }
    correct += static_cast<std::size_t>(best) == labels[static_cast<std::size_t>(i)];
    ++total;
  }
  return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
}

FewLabelSummary run_fewlabel_benchmark(const BlobsConfig& config, const FewLabelParams& params,
                                       std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw_invalid_parameter("few-label benchmark needs at least one trial");
  FewLabelSummary summary;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = seed * 0x9E3779B97F4A7C15ULL + t;
    const FewLabelSample sample = generate_blobs(config, params.shots, trial_seed);
    const FeatureMatrix diffused =
        transfer_sgc(FeatureMatrix(sample.features), params.k, params.alpha, params.m);
    FewLabelTrial trial;
    trial.raw_accuracy = nearest_class_mean_accuracy(sample.features, sample.labels,
                                                     sample.labeled, config.classes);
    trial.diffused_accuracy = nearest_class_mean_accuracy(diffused.values(), sample.labels,
                                                          sample.labeled, config.classes);
    summary.trials.push_back(trial);
  }
  const auto count = static_cast<double>(trials);
  for (const auto& t : summary.trials) {
    summary.mean_raw += t.raw_accuracy / count;
    summary.mean_diffused += t.diffused_accuracy / count;
  }
  for (const auto& t : summary.trials) {
    summary.std_raw += (t.raw_accuracy - summary.mean_raw) * (t.raw_accuracy - summary.mean_raw);
    summary.std_diffused += (t.diffused_accuracy - summary.mean_diffused) *
                            (t.diffused_accuracy - summary.mean_diffused);
  }
  summary.std_raw = std::sqrt(summary.std_raw / count);
  summary.std_diffused = std::sqrt(summary.std_diffused / count);
  return summary;
}

}  // namespace lgg
