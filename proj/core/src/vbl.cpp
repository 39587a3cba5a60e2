#include <cmath>
#include <cstdlib>
#include <string>

#include "lgg/error.hpp"
#include "lgg/graph.hpp"

namespace lgg {

void VblParams::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw_invalid_parameter("vbl gamma must be > 0");
  if (!(dist_max > 0.0) || !std::isfinite(dist_max)) {
    throw_invalid_parameter("vbl dist_max must be > 0");
  }
  if (!(alpha_sim >= 0.0) || !std::isfinite(alpha_sim)) {
    throw_invalid_parameter("vbl alpha_sim must be >= 0");
  }
  for (double b : betas) {
    if (!(b >= 0.0) || !std::isfinite(b)) throw_invalid_parameter("vbl betas must be >= 0");
  }
}

SparseGraph vbl_adjacency(const Eigen::MatrixXd& gps, std::span<const long long> frame_index,
                          const FeatureMatrix& features, const VblParams& params) {
  params.validate();
  const Eigen::Index n = features.rows();
  if (gps.rows() != n || gps.cols() != 2) {
    throw_invalid_input("gps must be an n x 2 matrix matching the feature rows");
  }
  if (static_cast<Eigen::Index>(frame_index.size()) != n) {
    throw_invalid_input("frame_index length must match the feature rows");
  }
  if (!gps.allFinite()) throw_invalid_input("gps contains non-finite values");
  for (auto f : frame_index) {
    if (f < 0) throw_invalid_input("frame indices must be nonnegative");
  }

  const Eigen::MatrixXd cosine = pairwise_cosine(features.values());
  const auto k_max = static_cast<long long>(params.betas.size());

  std::vector<Edge> edges;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dist = (gps.row(i) - gps.row(j)).norm();
      const double a_dist = dist < params.dist_max ? std::exp(-params.gamma * dist) : 0.0;

      const long long gap = std::llabs(frame_index[static_cast<std::size_t>(i)] -
                                       frame_index[static_cast<std::size_t>(j)]);
      const double a_seq =
          gap >= 1 && gap <= k_max ? params.betas[static_cast<std::size_t>(gap - 1)] : 0.0;

      const bool gate = a_dist > 0.0 || a_seq > 0.0;
      const double a_sim = gate ? params.alpha_sim * std::max(0.0, cosine(i, j)) : 0.0;

      const double w = a_dist + a_seq + a_sim;
      if (w > 0.0) {
        edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), w});
      }
    }
  }
  return SparseGraph(static_cast<std::size_t>(n), std::move(edges));
}

}  // namespace lgg
