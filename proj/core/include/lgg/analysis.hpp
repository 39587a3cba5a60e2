#pragma once

// Smoothness diagnostics for signals and labels on latent geometry graphs.
//
// Smoothness is the Laplacian quadratic form s^T L s. Expanded over edges it
// reads sum_{i<j} A_ij (s_i - s_j)^2: each undirected edge counted once,
// which is half of the double sum over ordered pairs.

#include <cstddef>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "lgg/graph.hpp"
#include "lgg/spectral.hpp"
#include "lgg/types.hpp"

namespace lgg {

/// s^T L s computed over the edge list. Throws invalid-input on size mismatch.
double smoothness(const SparseGraph& graph, const Eigen::VectorXd& signal);

/// sum_i lambda_i * s_hat_i^2.
double spectral_smoothness(const LaplacianSpectrum& spectrum, const Eigen::VectorXd& signal);

struct SmoothnessReport {
  Eigen::VectorXd per_class;       // s_c^T L s_c for each class c
  double total_raw = 0.0;          // sum of per_class
  double normalized = 0.0;         // total_raw / (M^2 C (C - 1)), 0 when C == 1
  std::size_t samples_per_class = 0;  // M
  std::size_t num_classes = 0;        // C
  bool unbalanced = false;            // class counts differ; M = round(n / C)
};

/// Label smoothness of a labeling on a graph. Every class must occur at
/// least once (invalid-input otherwise).
SmoothnessReport label_smoothness(const SparseGraph& graph, const LabelVector& labels);

/// sum_c |sigma_after(s_c) - sigma_before(s_c)|.
double smoothness_gap(const SparseGraph& before, const SparseGraph& after,
                      const LabelVector& labels);

struct LaplacianHighPass {};
struct SpectralComplementHighPass {
  double tau = 0.5;  // response 1 - simoncelli_tau(lambda)
};
using HighPass = std::variant<LaplacianHighPass, SpectralComplementHighPass>;

struct InfluenceScores {
  Eigen::VectorXd scores;
  std::string filter_used;
};

/// |H s| per vertex for a high-pass filter H: the normalized Laplacian or
/// the exact complement of a Simoncelli low-pass.
InfluenceScores margin_influence(const SparseGraph& graph, const Eigen::VectorXd& signal,
                                 const HighPass& highpass = LaplacianHighPass{});

}  // namespace lgg
