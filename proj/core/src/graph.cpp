#include "lgg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lgg/error.hpp"

namespace lgg {

namespace {

SparseMatrix build_symmetric(std::size_t n, std::span<const Edge> edges) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    const auto i = static_cast<Eigen::Index>(e.i);
    const auto j = static_cast<Eigen::Index>(e.j);
    triplets.emplace_back(i, j, e.w);
    triplets.emplace_back(j, i, e.w);
  }
  const auto size = static_cast<Eigen::Index>(n);
  SparseMatrix m(size, size);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

Eigen::VectorXd inverse_sqrt_degrees(const SparseGraph& graph) {
  Eigen::VectorXd d = degrees(graph);
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    d[i] = d[i] > 0.0 ? 1.0 / std::sqrt(d[i]) : 0.0;
  }
  return d;
}

// Symmetrizes per-vertex neighbor selections. weight(i, j) gives the
// similarity of the pair; selected[i] lists the neighbors chosen by i.
template <typename WeightFn>
SparseGraph symmetrize(std::size_t n, const std::vector<std::vector<std::size_t>>& selected,
                       WeightFn weight, Symmetrize mode) {
  std::vector<Edge> edges;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (auto j : selected[i]) pairs.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t p = 0; p < pairs.size();) {
    std::size_t q = p;
    while (q < pairs.size() && pairs[q] == pairs[p]) ++q;
    const auto [i, j] = pairs[p];
    const double w = weight(i, j);
    const double times = mode == Symmetrize::AddTranspose ? static_cast<double>(q - p) : 1.0;
    if (w > 0.0) edges.push_back({i, j, times * w});
    p = q;
  }
  return SparseGraph(n, std::move(edges));
}

}  // namespace

SparseGraph::SparseGraph(std::size_t n, std::vector<Edge> edges) : n_(n) {
  for (auto& e : edges) {
    if (e.i >= n_ || e.j >= n_) {
      throw_invalid_input("edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                          ") out of range for " + std::to_string(n_) + " vertices");
    }
    if (e.i == e.j) {
      throw_invalid_input("self-loop at vertex " + std::to_string(e.i));
    }
    if (!std::isfinite(e.w) || e.w < 0.0) {
      throw_invalid_input("edge weights must be finite and nonnegative");
    }
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::erase_if(edges, [](const Edge& e) { return e.w == 0.0; });
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (std::size_t k = 1; k < edges.size(); ++k) {
    if (edges[k].i == edges[k - 1].i && edges[k].j == edges[k - 1].j) {
      throw_invalid_input("duplicate edge (" + std::to_string(edges[k].i) + ", " +
                          std::to_string(edges[k].j) + ")");
    }
  }
  edges_ = std::move(edges);
  adjacency_ = build_symmetric(n_, edges_);
}

SparseGraph SparseGraph::from_dense(const Eigen::MatrixXd& adjacency) {
  if (adjacency.rows() != adjacency.cols()) {
    throw_invalid_input("adjacency matrix must be square");
  }
  const double scale = std::max(1.0, adjacency.cwiseAbs().maxCoeff());
  const auto n = static_cast<std::size_t>(adjacency.rows());
  std::vector<Edge> edges;
  for (Eigen::Index i = 0; i < adjacency.rows(); ++i) {
    if (adjacency(i, i) != 0.0) throw_invalid_input("adjacency diagonal must be zero");
    for (Eigen::Index j = i + 1; j < adjacency.cols(); ++j) {
      if (std::abs(adjacency(i, j) - adjacency(j, i)) > 1e-12 * scale) {
        throw_invalid_input("adjacency matrix is not symmetric");
      }
      if (adjacency(i, j) != 0.0) {
        edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), adjacency(i, j)});
      }
    }
  }
  return SparseGraph(n, std::move(edges));
}

SparseGraph SparseGraph::scaled(double factor) const {
  if (!std::isfinite(factor) || factor < 0.0) {
    throw_invalid_parameter("scale factor must be finite and nonnegative");
  }
  std::vector<Edge> edges = edges_;
  for (auto& e : edges) e.w *= factor;
  return SparseGraph(n_, std::move(edges));
}

Eigen::MatrixXd pairwise_cosine(const Eigen::MatrixXd& rows) {
  const Eigen::MatrixXd gram = rows * rows.transpose();
  const Eigen::Index n = gram.rows();
  Eigen::MatrixXd sim = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double si = gram(i, i);
      const double sj = gram(j, j);
      if (si <= 0.0 || sj <= 0.0) continue;
      // sqrt(s * s) == s exactly, so identical rows score exactly 1
      double denom = std::sqrt(si * sj);
      if (!std::isfinite(denom) || denom == 0.0) denom = std::sqrt(si) * std::sqrt(sj);
      sim(i, j) = std::clamp(gram(i, j) / denom, -1.0, 1.0);
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) sim(i, i) = gram(i, i) > 0.0 ? 1.0 : 0.0;
  return sim;
}

Eigen::MatrixXd pairwise_distance(const Eigen::MatrixXd& rows, Metric metric) {
  const Eigen::Index n = rows.rows();
  if (metric == Metric::CosineDistance) {
    Eigen::MatrixXd dist = Eigen::MatrixXd::Ones(n, n) - pairwise_cosine(rows);
    dist.diagonal().setZero();
    return dist;
  }
  Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (rows.row(i) - rows.row(j)).norm();
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }
  return dist;
}

Eigen::MatrixXd similarity_matrix(const FeatureMatrix& features, const SimilarityKind& kind) {
  Eigen::MatrixXd sim = std::visit(
      [&](const auto& k) -> Eigen::MatrixXd {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, CosineSimilarity>) {
          return pairwise_cosine(features.values()).cwiseMax(0.0);
        } else {
          if (!std::isfinite(k.alpha) || k.alpha < 0.0) {
            throw_invalid_parameter("rbf alpha must be finite and nonnegative");
          }
          return (-k.alpha * pairwise_distance(features.values(), k.metric)).array().exp().matrix();
        }
      },
      kind);
  sim.diagonal().setZero();
  return sim;
}

SparseGraph knn_graph(const FeatureMatrix& features, std::size_t k, const SimilarityKind& kind,
                      Symmetrize mode) {
  const auto n = static_cast<std::size_t>(features.rows());
  if (k == 0 || k >= n) {
    throw_invalid_parameter("knn_graph requires 1 <= k < n (k=" + std::to_string(k) +
                            ", n=" + std::to_string(n) + ")");
  }
  const Eigen::MatrixXd sim = similarity_matrix(features, kind);

  std::vector<std::vector<std::size_t>> selected(n);
  std::vector<std::size_t> order(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t pos = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) order[pos++] = j;
    }
    const auto row = static_cast<Eigen::Index>(i);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) {
                        const double sa = sim(row, static_cast<Eigen::Index>(a));
                        const double sb = sim(row, static_cast<Eigen::Index>(b));
                        return sa != sb ? sa > sb : a < b;
                      });
    selected[i].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return symmetrize(
      n, selected,
      [&](std::size_t i, std::size_t j) {
        return sim(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      },
      mode);
}

SparseGraph threshold_topk(const SparseGraph& graph, std::size_t k, Symmetrize mode) {
  if (k == 0) throw_invalid_parameter("threshold_topk requires k >= 1");
  const std::size_t n = graph.num_vertices();
  std::vector<std::vector<std::pair<double, std::size_t>>> neighbors(n);
  for (const auto& e : graph.edges()) {
    neighbors[e.i].emplace_back(e.w, e.j);
    neighbors[e.j].emplace_back(e.w, e.i);
  }
  std::vector<std::vector<std::size_t>> selected(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& nb = neighbors[i];
    std::sort(nb.begin(), nb.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    const std::size_t keep = std::min(k, nb.size());
    for (std::size_t t = 0; t < keep; ++t) selected[i].push_back(nb[t].second);
  }
  const SparseMatrix& adj = graph.adjacency();
  return symmetrize(
      n, selected,
      [&](std::size_t i, std::size_t j) {
        return adj.coeff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      },
      mode);
}

Eigen::VectorXd degrees(const SparseGraph& graph) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(graph.num_vertices()));
  for (const auto& e : graph.edges()) {
    d[static_cast<Eigen::Index>(e.i)] += e.w;
    d[static_cast<Eigen::Index>(e.j)] += e.w;
  }
  return d;
}

SparseMatrix combinatorial_laplacian(const SparseGraph& graph) {
  const Eigen::VectorXd d = degrees(graph);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(graph.num_edges() * 2 + graph.num_vertices());
  for (Eigen::Index i = 0; i < d.size(); ++i) triplets.emplace_back(i, i, d[i]);
  for (const auto& e : graph.edges()) {
    const auto i = static_cast<Eigen::Index>(e.i);
    const auto j = static_cast<Eigen::Index>(e.j);
    triplets.emplace_back(i, j, -e.w);
    triplets.emplace_back(j, i, -e.w);
  }
  SparseMatrix l(d.size(), d.size());
  l.setFromTriplets(triplets.begin(), triplets.end());
  l.makeCompressed();
  return l;
}

SparseMatrix normalized_laplacian(const SparseGraph& graph) {
  const Eigen::VectorXd inv = inverse_sqrt_degrees(graph);
  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index i = 0; i < inv.size(); ++i) {
    if (inv[i] > 0.0) triplets.emplace_back(i, i, 1.0);
  }
  for (const auto& e : graph.edges()) {
    const auto i = static_cast<Eigen::Index>(e.i);
    const auto j = static_cast<Eigen::Index>(e.j);
    const double v = -e.w * inv[i] * inv[j];
    triplets.emplace_back(i, j, v);
    triplets.emplace_back(j, i, v);
  }
  SparseMatrix l(inv.size(), inv.size());
  l.setFromTriplets(triplets.begin(), triplets.end());
  l.makeCompressed();
  return l;
}

SparseMatrix normalized_adjacency(const SparseGraph& graph) {
  const Eigen::VectorXd inv = inverse_sqrt_degrees(graph);
  std::vector<Eigen::Triplet<double>> triplets;
  for (const auto& e : graph.edges()) {
    const auto i = static_cast<Eigen::Index>(e.i);
    const auto j = static_cast<Eigen::Index>(e.j);
    const double v = e.w * inv[i] * inv[j];
    triplets.emplace_back(i, j, v);
    triplets.emplace_back(j, i, v);
  }
  SparseMatrix m(inv.size(), inv.size());
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

}  // namespace lgg
