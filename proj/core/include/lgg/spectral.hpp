#pragma once

// Graph Fourier transform and graph filters.
//
// Three filter families are supported:
//   * a spectral table: one gain per Laplacian eigenvalue, applied exactly;
//   * a spectral response h(lambda): applied exactly through the
//     eigendecomposition or approximately with a Chebyshev expansion;
//   * a diffusion operator S applied m times, no eigendecomposition needed.
//
// Spectral filters act on the combinatorial Laplacian L = D - A.

#include <cstddef>
#include <functional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "lgg/graph.hpp"
#include "lgg/types.hpp"

namespace lgg {

/// Ascending eigenvalues and orthonormal eigenvectors (columns) of a
/// symmetric matrix. Each eigenvector is signed so that its entry of largest
/// magnitude is positive (first such entry on ties).
struct LaplacianSpectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  Eigen::Index size() const noexcept { return eigenvalues.size(); }
};

/// Dense symmetric eigendecomposition. Throws invalid-input when the matrix
/// is not square or not symmetric within 1e-10 (relative to its largest entry).
LaplacianSpectrum eigendecompose(const Eigen::MatrixXd& laplacian);

/// Spectrum of the combinatorial Laplacian of a graph.
LaplacianSpectrum laplacian_spectrum(const SparseGraph& graph);

/// Spectral coefficients F^T s, one column per channel.
GraphSignal gft(const LaplacianSpectrum& spectrum, const GraphSignal& signal);

/// Inverse transform F s_hat.
GraphSignal igft(const LaplacianSpectrum& spectrum, const GraphSignal& coeffs);

// ---------------------------------------------------------------------------
// Filter specifications

/// Piecewise low-pass: 1 below tau/2 * lambda_max, a log-cosine roll-off up
/// to tau * lambda_max, 0 above. tau in (0, 1].
struct Simoncelli {
  double tau = 0.5;
};

/// exp(-scale * lambda / lambda_max).
struct Heat {
  double scale = 1.0;
};

/// sum_k coeffs[k] * lambda^k, on the raw (unnormalized) eigenvalue.
struct CustomPolynomial {
  std::vector<double> coeffs;
};

using SpectralResponse = std::variant<Simoncelli, Heat, CustomPolynomial>;

/// Evaluates a response at lambda given the reference lambda_max.
double evaluate_response(const SpectralResponse& response, double lambda, double lambda_max);

struct SpectralTable {
  Eigen::VectorXd gains;  // one gain per eigenvalue, ascending order
};

struct ResponseFilter {
  SpectralResponse shape;
};

enum class DiffusionOperator {
  Combinatorial,        // (I - a L)^m
  Normalized,           // (I - a L_norm)^m
  AdjacencyNormalized,  // (a I + E)^m
};

struct DiffusionFilter {
  double a = 0.0;
  std::size_t m = 1;
  DiffusionOperator op = DiffusionOperator::Normalized;
};

using FilterSpec = std::variant<SpectralTable, ResponseFilter, DiffusionFilter>;

struct ExactMethod {};
struct ChebyshevMethod {
  std::size_t order = 30;
};
using FilterMethod = std::variant<ExactMethod, ChebyshevMethod>;

void validate(const FilterSpec& spec);

/// Upper estimate of the largest eigenvalue of a symmetric PSD operator,
/// from min(n, iterations) Lanczos steps on a fixed start vector.
///
/// Returns max(1.01 * theta, theta + residual) for the top Ritz value theta
/// and its residual norm, capped by the Gershgorin bound.
double estimate_lambda_max(const SparseMatrix& op, std::size_t iterations = 50);

/// Spectral radius estimate of a symmetric operator (norm growth of the
/// power iteration, robust to +/- rho pairs).
double estimate_spectral_radius(const SparseMatrix& op, std::size_t iterations = 50);

/// Chebyshev coefficients c_0..c_order of h on [0, upper], interpolating at
/// order + 1 Chebyshev nodes. The expansion is c_0/2 T_0 + sum c_k T_k.
std::vector<double> chebyshev_coefficients(const std::function<double(double)>& h,
                                           double upper, std::size_t order);

/// Applies a filter to a (multi-channel) signal on a graph.
///
/// Spectral-response filters are normalized by estimate_lambda_max(L) in
/// both methods, so the exact and Chebyshev paths realize the same response.
/// Throws invalid-parameter for a Chebyshev method on anything but a
/// spectral response, and invalid-input on dimension mismatch.
GraphSignal apply_filter(const SparseGraph& graph, const FilterSpec& spec,
                         const GraphSignal& signal, const FilterMethod& method = ExactMethod{});

/// (I - a L_norm)^m s by m sparse products; m = 0 is the identity.
GraphSignal vbl_lowpass(const SparseGraph& graph, double a, std::size_t m,
                        const GraphSignal& signal);

/// (alpha I + E)^m F with E the normalized adjacency.
FeatureMatrix sgc_diffuse(const FeatureMatrix& features, const SparseGraph& graph, double alpha,
                          std::size_t m);

}  // namespace lgg
