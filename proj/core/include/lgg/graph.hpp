#pragma once

// Similarity graphs over feature matrices: construction, degree and
// Laplacian operators, top-k sparsification.

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "lgg/types.hpp"

namespace lgg {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Undirected weighted edge, stored once with i < j.
struct Edge {
  std::size_t i;
  std::size_t j;
  double w;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Symmetric, nonnegative, loop-free weighted graph over n vertices.
///
/// Each undirected edge is stored once. The constructor canonicalizes
/// endpoint order, sorts edges lexicographically and drops zero weights, so
/// two graphs with the same adjacency compare equal.
class SparseGraph {
 public:
  explicit SparseGraph(std::size_t n, std::vector<Edge> edges = {});

  /// Builds a graph from the strict upper triangle of a dense adjacency.
  /// Rejects asymmetric matrices (tolerance 1e-12 relative) and nonzero diagonals.
  static SparseGraph from_dense(const Eigen::MatrixXd& adjacency);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Full symmetric adjacency A (both triangles).
  const SparseMatrix& adjacency() const noexcept { return adjacency_; }
  Eigen::MatrixXd dense_adjacency() const { return Eigen::MatrixXd(adjacency_); }

  /// Same topology with every weight multiplied by factor >= 0.
  SparseGraph scaled(double factor) const;

  friend bool operator==(const SparseGraph& a, const SparseGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  SparseMatrix adjacency_;
};

enum class Metric { Euclidean, CosineDistance };

/// Cosine similarity, negative values clamped to 0, zero rows similar to nothing.
struct CosineSimilarity {};

/// exp(-alpha * dist(x_i, x_j)).
struct RbfSimilarity {
  double alpha = 1.0;
  Metric metric = Metric::Euclidean;
};

using SimilarityKind = std::variant<CosineSimilarity, RbfSimilarity>;

enum class Symmetrize {
  Union,         // keep (i, j) if either endpoint selected it, weight once
  AddTranspose,  // A + A^T: mutually selected edges get their weight doubled
};

/// Pairwise cosine similarities with the diagonal set to the self-similarity
/// (1 for nonzero rows, 0 for zero rows). Negative values are kept.
Eigen::MatrixXd pairwise_cosine(const Eigen::MatrixXd& rows);

/// Pairwise distances under the given metric.
Eigen::MatrixXd pairwise_distance(const Eigen::MatrixXd& rows, Metric metric);

/// Dense similarity matrix for the given kind. Diagonal is zero, cosine
/// values are clamped at zero.
Eigen::MatrixXd similarity_matrix(const FeatureMatrix& features, const SimilarityKind& kind);

/// Exact k-nearest-neighbor similarity graph. Each vertex selects its k most
/// similar other vertices (ties to the lower index); the selections are then
/// symmetrized. Throws invalid-parameter when k == 0 or k >= n.
SparseGraph knn_graph(const FeatureMatrix& features, std::size_t k,
                      const SimilarityKind& kind, Symmetrize mode = Symmetrize::Union);

/// Per-vertex top-k retention over the existing edges of a graph, followed by
/// symmetrization. Vertices with at most k edges keep all of them.
SparseGraph threshold_topk(const SparseGraph& graph, std::size_t k, Symmetrize mode);

/// d_i = sum_j A_ij.
Eigen::VectorXd degrees(const SparseGraph& graph);

/// L = D - A.
SparseMatrix combinatorial_laplacian(const SparseGraph& graph);

/// D^{-1/2} L D^{-1/2}, with zero-degree vertices mapped to zero rows/columns.
SparseMatrix normalized_laplacian(const SparseGraph& graph);

/// E = D^{-1/2} A D^{-1/2}, with the same zero-degree convention.
SparseMatrix normalized_adjacency(const SparseGraph& graph);

/// Parameters of the composite visual-localization adjacency.
struct VblParams {
  double gamma = 1.0;         // GPS distance decay, 1/m
  double dist_max = 1.0;      // GPS cutoff, m
  std::vector<double> betas;  // beta_k for frame gaps k = 1..k_max
  double alpha_sim = 0.0;     // weight of the gated cosine term

  void validate() const;
};

/// A = A_dist + A_seq + A_sim over images with local-frame GPS positions
/// (n x 2, meters), frame indices and descriptor features.
SparseGraph vbl_adjacency(const Eigen::MatrixXd& gps, std::span<const long long> frame_index,
                          const FeatureMatrix& features, const VblParams& params);

}  // namespace lgg
