#include "lgg/analysis.hpp"

#include <cmath>
#include <sstream>

#include "lgg/error.hpp"

namespace lgg {

namespace {

void check_size(const SparseGraph& graph, const Eigen::VectorXd& signal, const char* what) {
  if (static_cast<std::size_t>(signal.size()) != graph.num_vertices()) {
    throw_invalid_input(std::string(what) + ": signal length " + std::to_string(signal.size()) +
                        " does not match " + std::to_string(graph.num_vertices()) + " vertices");
  }
}

void check_labels(const SparseGraph& graph, const LabelVector& labels) {
  if (labels.size() != graph.num_vertices()) {
    throw_invalid_input("label count " + std::to_string(labels.size()) + " does not match " +
                        std::to_string(graph.num_vertices()) + " vertices");
  }
}

}  // namespace

double smoothness(const SparseGraph& graph, const Eigen::VectorXd& signal) {
  check_size(graph, signal, "smoothness");
  double acc = 0.0;
  for (const auto& e : graph.edges()) {
    const double diff = signal[static_cast<Eigen::Index>(e.i)] - signal[static_cast<Eigen::Index>(e.j)];
    acc += e.w * diff * diff;
  }
  return acc;
}

double spectral_smoothness(const LaplacianSpectrum& spectrum, const Eigen::VectorXd& signal) {
  const Eigen::VectorXd coeffs = gft(spectrum, signal);
  return spectrum.eigenvalues.dot(coeffs.cwiseAbs2());
}

SmoothnessReport label_smoothness(const SparseGraph& graph, const LabelVector& labels) {
  check_labels(graph, labels);
  const std::size_t c = labels.num_classes();
  const auto counts = labels.class_counts();
  for (std::size_t k = 0; k < c; ++k) {
    if (counts[k] == 0) {
      throw_invalid_input("label_smoothness: class " + std::to_string(k) + " has no samples");
    }
  }

  SmoothnessReport report;
  report.num_classes = c;
  report.per_class = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(c));
  // an edge between classes a != b contributes w to both s_a^T L s_a and s_b^T L s_b
  for (const auto& e : graph.edges()) {
    const auto a = labels[e.i];
    const auto b = labels[e.j];
    if (a != b) {
      report.per_class[static_cast<Eigen::Index>(a)] += e.w;
      report.per_class[static_cast<Eigen::Index>(b)] += e.w;
    }
  }
  report.total_raw = report.per_class.sum();

  const std::size_t n = labels.size();
  report.unbalanced = n % c != 0;
  for (auto count : counts) report.unbalanced = report.unbalanced || count != counts[0];
  report.samples_per_class = static_cast<std::size_t>(
      std::llround(static_cast<double>(n) / static_cast<double>(c)));

  const double m = static_cast<double>(report.samples_per_class);
  const double denom = m * m * static_cast<double>(c) * static_cast<double>(c - 1);
  report.normalized = denom > 0.0 ? report.total_raw / denom : 0.0;
  return report;
}

double smoothness_gap(const SparseGraph& before, const SparseGraph& after,
                      const LabelVector& labels) {
  if (before.num_vertices() != after.num_vertices()) {
    throw_invalid_input("smoothness_gap: graphs have different vertex counts");
  }
  check_labels(before, labels);
  double gap = 0.0;
  for (std::size_t c = 0; c < labels.num_classes(); ++c) {
    const Eigen::VectorXd s = labels.indicator(c);
    gap += std::abs(smoothness(after, s) - smoothness(before, s));
  }
  return gap;
}

InfluenceScores margin_influence(const SparseGraph& graph, const Eigen::VectorXd& signal,
                                 const HighPass& highpass) {
  check_size(graph, signal, "margin_influence");
  if (!signal.allFinite()) throw_invalid_input("margin_influence: non-finite signal");

  InfluenceScores out;
  if (std::holds_alternative<LaplacianHighPass>(highpass)) {
    out.scores = (normalized_laplacian(graph) * signal).cwiseAbs();
    out.filter_used = "laplacian-normalized";
    return out;
  }

  const double tau = std::get<SpectralComplementHighPass>(highpass).tau;
  if (!(tau > 0.0 && tau <= 1.0)) throw_invalid_parameter("spectral complement tau must lie in (0, 1]");
  const SparseMatrix laplacian = combinatorial_laplacian(graph);
  const double lambda_ref = estimate_lambda_max(laplacian);
  const LaplacianSpectrum spectrum = eigendecompose(Eigen::MatrixXd(laplacian));
  Eigen::VectorXd gains(spectrum.size());
  for (Eigen::Index i = 0; i < gains.size(); ++i) {
    gains[i] = 1.0 - evaluate_response(Simoncelli{tau}, spectrum.eigenvalues[i], lambda_ref);
  }
  Eigen::VectorXd filtered = igft(spectrum, gains.asDiagonal() * gft(spectrum, signal));
  out.scores = filtered.cwiseAbs();
  std::ostringstream name;
  name << "spectral-complement(tau=" << tau << ")";
  out.filter_used = name.str();
  return out;
}

}  // namespace lgg
