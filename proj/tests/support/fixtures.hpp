#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "lgg/graph.hpp"

namespace lgg::testing {

/// Erdos-Renyi graph with U(0, 1) weights on the kept edges.
inline SparseGraph random_graph(std::size_t n, double p, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (unit(gen) < p) {
        const double w = unit(gen);
        if (w > 0.0) edges.push_back({i, j, w});
      }
    }
  }
  return SparseGraph(n, std::move(edges));
}

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(gen);
  return m;
}

inline SparseGraph triangle() { return SparseGraph(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}); }

inline SparseGraph unit_edge() { return SparseGraph(2, {{0, 1, 1.0}}); }

/// Cycle on n vertices with unit weights (2-regular).
inline SparseGraph cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return SparseGraph(n, std::move(edges));
}

/// Path 0 - 1 - ... - (n-1) with unit weights.
inline SparseGraph path(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return SparseGraph(n, std::move(edges));
}

/// Two unit-weight cliques on {0..size-1} and {size..2size-1} joined by the
/// edge (size-1, size).
inline SparseGraph bridged_cliques(std::size_t size) {
  std::vector<Edge> edges;
  for (std::size_t offset : {std::size_t{0}, size}) {
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = i + 1; j < size; ++j) edges.push_back({offset + i, offset + j, 1.0});
    }
  }
  edges.push_back({size - 1, size, 1.0});
  return SparseGraph(2 * size, std::move(edges));
}

/// Dense D - A, computed from the edge list without the library Laplacian.
inline Eigen::MatrixXd dense_laplacian(const SparseGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    const auto i = static_cast<Eigen::Index>(e.i);
    const auto j = static_cast<Eigen::Index>(e.j);
    l(i, i) += e.w;
    l(j, j) += e.w;
    l(i, j) -= e.w;
    l(j, i) -= e.w;
  }
  return l;
}

/// Dense D^-1/2 A D^-1/2 with zero rows for isolated vertices.
inline Eigen::MatrixXd dense_normalized_adjacency(const SparseGraph& g) {
  const Eigen::MatrixXd a = g.dense_adjacency();
  const Eigen::VectorXd d = a.rowwise().sum();
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (d[i] > 0 && d[j] > 0) e(i, j) = a(i, j) / std::sqrt(d[i] * d[j]);
    }
  }
  return e;
}

}  // namespace lgg::testing
