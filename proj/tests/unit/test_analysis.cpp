#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "lgg/analysis.hpp"
#include "lgg/error.hpp"

using namespace lgg;
using namespace lgg::testing;

namespace {

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::InvalidInput;
}

// sum_i sum_j A_ij (s_i - s_j)^2 over the full symmetric adjacency
double double_sum(const SparseGraph& g, const Eigen::VectorXd& s) {
  const Eigen::MatrixXd a = g.dense_adjacency();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) acc += a(i, j) * (s[i] - s[j]) * (s[i] - s[j]);
  }
  return acc;
}

double brute_quadratic(const SparseGraph& g, const Eigen::VectorXd& s) {
  return s.dot(dense_laplacian(g) * s);
}

LabelVector labels_of(std::vector<std::size_t> v, std::size_t c) { return LabelVector(std::move(v), c); }

}  // namespace

TEST_CASE("smoothness examples") {
  CHECK(smoothness(triangle(), Eigen::VectorXd::Constant(3, 4.2)) == 0.0);
  CHECK(smoothness(unit_edge(), Eigen::Vector2d(1, 0)) == 1.0);
  CHECK(smoothness(path(3), Eigen::Vector3d(0, 1, 0)) == 2.0);
  CHECK(kind_of([] { smoothness(path(3), Eigen::Vector2d(0, 1)); }) == ErrorKind::InvalidInput);
}

TEST_CASE("smoothness triple identity on random graphs") {
  std::mt19937_64 gen(50);
  std::uniform_int_distribution<std::size_t> size(2, 32);
  for (int t = 0; t < 50; ++t) {
    const SparseGraph g = random_graph(size(gen), 0.3, gen);
    const Eigen::VectorXd s = random_matrix(static_cast<Eigen::Index>(g.num_vertices()), 1, gen);
    const double quad = brute_quadratic(g, s);
    const double tol = 1e-8 * (1.0 + std::abs(quad));
    CHECK(std::abs(smoothness(g, s) - quad) <= tol);
    CHECK(std::abs(spectral_smoothness(laplacian_spectrum(g), s) - quad) <= tol);
    // the symmetric double sum counts each undirected edge twice
    CHECK(std::abs(0.5 * double_sum(g, s) - quad) <= tol);
  }
}

TEST_CASE("label_smoothness examples") {
  SUBCASE("two disjoint cliques labeled by membership") {
    const SparseGraph g(6, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {3, 4, 1}, {3, 5, 1}, {4, 5, 1}});
    const SmoothnessReport r = label_smoothness(g, labels_of({0, 0, 0, 1, 1, 1}, 2));
    CHECK(r.normalized == 0.0);
    CHECK(r.total_raw == 0.0);
    CHECK(r.samples_per_class == 3);
    CHECK(r.num_classes == 2);
    CHECK_FALSE(r.unbalanced);
  }
  SUBCASE("single inter-class unit edge, C = 2, M = 2") {
    const SparseGraph g(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
    const LabelVector labels = labels_of({0, 0, 1, 1}, 2);
    const SmoothnessReport r = label_smoothness(g, labels);
    double brute = 0.0;
    for (std::size_t c = 0; c < 2; ++c) brute += brute_quadratic(g, labels.indicator(c));
    CHECK(brute == 2.0);
    CHECK(r.total_raw == brute);
    CHECK(r.per_class[0] == 1.0);
    CHECK(r.per_class[1] == 1.0);
    CHECK(r.normalized == doctest::Approx(brute / (4.0 * 2.0 * 1.0)));
  }
  SUBCASE("complete graph on two singleton classes") {
    const SmoothnessReport r = label_smoothness(unit_edge(), labels_of({0, 1}, 2));
    CHECK(r.per_class[0] == 1.0);
    CHECK(r.per_class[1] == 1.0);
  }
  SUBCASE("missing class") {
    CHECK(kind_of([] { label_smoothness(triangle(), labels_of({0, 0, 2}, 3)); }) ==
          ErrorKind::InvalidInput);
  }
  SUBCASE("unbalanced classes") {
    const SmoothnessReport r = label_smoothness(path(5), labels_of({0, 0, 0, 1, 1}, 2));
    CHECK(r.unbalanced);
    CHECK(r.samples_per_class == 3);  // round(5 / 2)
  }
  SUBCASE("single class") {
    const SmoothnessReport r = label_smoothness(triangle(), labels_of({0, 0, 0}, 1));
    CHECK(r.normalized == 0.0);
  }
}

TEST_CASE("label_smoothness properties on random graphs") {
  std::mt19937_64 gen(60);
  for (int t = 0; t < 40; ++t) {
    const std::size_t classes = 2 + static_cast<std::size_t>(t % 3);
    const std::size_t n = classes * 6;
    const SparseGraph g = random_graph(n, 0.25, gen);
    std::vector<std::size_t> raw(n);
    for (std::size_t i = 0; i < n; ++i) raw[i] = i % classes;
    std::shuffle(raw.begin(), raw.end(), gen);
    const LabelVector labels(raw, classes);
    const SmoothnessReport r = label_smoothness(g, labels);

    CHECK(std::abs(r.total_raw - r.per_class.sum()) <= 1e-10);
    CHECK(r.per_class.minCoeff() >= -1e-12);
    double inter = 0.0;
    bool any_inter = false;
    for (const auto& e : g.edges()) {
      if (labels[e.i] != labels[e.j]) {
        inter += e.w;
        any_inter = true;
      }
    }
    CHECK(std::abs(r.total_raw - 2.0 * inter) <= 1e-12 * (1.0 + inter));
    CHECK((r.total_raw == 0.0) == !any_inter);

    // relabel by a cyclic shift of class ids
    std::vector<std::size_t> shifted(n);
    for (std::size_t i = 0; i < n; ++i) shifted[i] = (raw[i] + 1) % classes;
    const SmoothnessReport p = label_smoothness(g, LabelVector(shifted, classes));
    CHECK(p.normalized == doctest::Approx(r.normalized).epsilon(1e-14));
  }
}

TEST_CASE("label_smoothness is zero exactly without inter-class edges") {
  const SparseGraph g(5, {{0, 1, 0.3}, {2, 3, 0.7}, {3, 4, 0.1}});
  CHECK(label_smoothness(g, labels_of({0, 0, 1, 1, 1}, 2)).total_raw == 0.0);
  CHECK(label_smoothness(g, labels_of({0, 1, 1, 1, 1}, 2)).total_raw > 0.0);
}

TEST_CASE("smoothness_gap") {
  std::mt19937_64 gen(70);
  const SparseGraph g = random_graph(12, 0.4, gen);
  std::vector<std::size_t> raw(12);
  for (std::size_t i = 0; i < 12; ++i) raw[i] = i % 3;
  const LabelVector labels(raw, 3);

  CHECK(smoothness_gap(g, g, labels) == 0.0);
  const SmoothnessReport before = label_smoothness(g, labels);
  CHECK(smoothness_gap(g, g.scaled(2.0), labels) == doctest::Approx(before.total_raw).epsilon(1e-12));
  CHECK(smoothness_gap(g, SparseGraph(12), labels) == doctest::Approx(before.total_raw).epsilon(1e-12));
  CHECK(kind_of([&] { smoothness_gap(g, SparseGraph(11), labels); }) == ErrorKind::InvalidInput);

  const SparseGraph one(4, {{1, 2, 1.0}});
  CHECK(smoothness_gap(one, SparseGraph(4), labels_of({0, 0, 1, 1}, 2)) == 2.0);
}

TEST_CASE("margin_influence") {
  SUBCASE("constant signal on a regular graph") {
    const InfluenceScores s = margin_influence(cycle(9), Eigen::VectorXd::Constant(9, 3.0));
    CHECK(s.scores.maxCoeff() <= 1e-10);
    const InfluenceScores c =
        margin_influence(cycle(9), Eigen::VectorXd::Constant(9, 3.0), SpectralComplementHighPass{0.5});
    CHECK(c.scores.maxCoeff() <= 1e-10);
  }
  SUBCASE("bridge endpoints dominate") {
    const SparseGraph g = bridged_cliques(4);
    Eigen::VectorXd s = Eigen::VectorXd::Zero(8);
    s.head(4).setOnes();
    const InfluenceScores r = margin_influence(g, s);
    // dense oracle: (I - E) s
    const Eigen::VectorXd oracle =
        ((Eigen::MatrixXd::Identity(8, 8) - dense_normalized_adjacency(g)) * s).cwiseAbs();
    CHECK((r.scores - oracle).cwiseAbs().maxCoeff() <= 1e-14);
    for (Eigen::Index i = 0; i < 8; ++i) {
      if (i == 3 || i == 4) continue;
      CHECK(r.scores[3] > r.scores[i]);
      CHECK(r.scores[4] > r.scores[i]);
    }
  }
  SUBCASE("zero signal") {
    CHECK(margin_influence(path(5), Eigen::VectorXd::Zero(5)).scores.isZero(0.0));
  }
  SUBCASE("homogeneity") {
    std::mt19937_64 gen(80);
    const SparseGraph g = random_graph(15, 0.3, gen);
    const Eigen::VectorXd s = random_matrix(15, 1, gen);
    const InfluenceScores base = margin_influence(g, s);
    // powers of two scale without rounding
    for (double alpha : {2.0, -0.5, -8.0, 0.0}) {
      CHECK(margin_influence(g, alpha * s).scores == std::abs(alpha) * base.scores);
    }
    for (double alpha : {-1.3, 0.7, 12.5}) {
      const Eigen::VectorXd scaled = margin_influence(g, alpha * s).scores;
      CHECK((scaled - std::abs(alpha) * base.scores).cwiseAbs().maxCoeff() <=
            1e-12 * (1.0 + std::abs(alpha) * base.scores.maxCoeff()));
    }
  }
  SUBCASE("dimension mismatch") {
    CHECK(kind_of([] { margin_influence(path(4), Eigen::VectorXd::Zero(5)); }) ==
          ErrorKind::InvalidInput);
  }
}
