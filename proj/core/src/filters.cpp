#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "lgg/error.hpp"
#include "lgg/spectral.hpp"

namespace lgg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// Fixed, platform-independent start vector for power iterations.
Eigen::VectorXd start_vector(Eigen::Index n) {
  std::mt19937_64 gen(0x6c67673031ULL);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v[i] = static_cast<double>(gen() >> 11) * 0x1.0p-53 + 0.5;
  }
  return v.normalized();
}

double gershgorin_bound(const SparseMatrix& op) {
  Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(op.rows());
  for (Eigen::Index k = 0; k < op.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(op, k); it; ++it) {
      row_sums[it.row()] += std::abs(it.value());
    }
  }
  return row_sums.size() ? row_sums.maxCoeff() : 0.0;
}

void check_rows(const SparseGraph& graph, const GraphSignal& signal, const char* what) {
  if (static_cast<std::size_t>(signal.rows()) != graph.num_vertices()) {
    throw_invalid_input(std::string(what) + ": signal has " + std::to_string(signal.rows()) +
                        " rows, graph has " + std::to_string(graph.num_vertices()) +
                        " vertices");
  }
  if (!signal.allFinite()) throw_invalid_input(std::string(what) + ": non-finite signal");
}

GraphSignal chebyshev_apply(const SparseMatrix& laplacian, const std::vector<double>& coeffs,
                            double upper, const GraphSignal& signal) {
  if (upper <= 0.0) {
    // zero operator: every frequency is 0 and T_k(-1) = (-1)^k
    double h0 = 0.5 * coeffs[0];
    for (std::size_t k = 1; k < coeffs.size(); ++k) h0 += coeffs[k] * (k % 2 ? -1.0 : 1.0);
    return h0 * signal;
  }
  const double half = upper / 2.0;
  // shifted operator (L - half I) / half maps [0, upper] onto [-1, 1]
  auto shifted = [&](const GraphSignal& x) -> GraphSignal {
    return (laplacian * x - half * x) / half;
  };
  GraphSignal t_prev = signal;
  GraphSignal out = 0.5 * coeffs[0] * t_prev;
  if (coeffs.size() == 1) return out;
  GraphSignal t_curr = shifted(signal);
  out += coeffs[1] * t_curr;
  for (std::size_t k = 2; k < coeffs.size(); ++k) {
    GraphSignal t_next = 2.0 * shifted(t_curr) - t_prev;
    out += coeffs[k] * t_next;
    t_prev = std::move(t_curr);
    t_curr = std::move(t_next);
  }
  return out;
}

GraphSignal apply_diffusion(const SparseGraph& graph, const DiffusionFilter& f,
                            const GraphSignal& signal) {
  SparseMatrix step;
  const auto n = static_cast<Eigen::Index>(graph.num_vertices());
  SparseMatrix identity(n, n);
  identity.setIdentity();
  switch (f.op) {
    case DiffusionOperator::Combinatorial:
      step = identity - f.a * combinatorial_laplacian(graph);
      break;
    case DiffusionOperator::Normalized:
      step = identity - f.a * normalized_laplacian(graph);
      break;
    case DiffusionOperator::AdjacencyNormalized:
      step = f.a * identity + normalized_adjacency(graph);
      break;
  }
  GraphSignal out = signal;
  for (std::size_t t = 0; t < f.m; ++t) out = step * out;
  return out;
}

}  // namespace

double evaluate_response(const SpectralResponse& response, double lambda, double lambda_max) {
  const double ratio = lambda_max > 0.0 ? lambda / lambda_max : 0.0;
  return std::visit(
      overloaded{
          [&](const Simoncelli& s) {
            if (ratio <= s.tau / 2.0) return 1.0;
            if (ratio <= s.tau) {
              return std::cos(std::numbers::pi / 2.0 * std::log(2.0 * ratio / s.tau) /
                              std::numbers::ln2);
            }
            return 0.0;
          },
          [&](const Heat& h) { return std::exp(-h.scale * ratio); },
          [&](const CustomPolynomial& p) {
            double acc = 0.0;
            for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * lambda + *it;
            return acc;
          },
      },
      response);
}

void validate(const FilterSpec& spec) {
  std::visit(overloaded{
                 [](const SpectralTable& t) {
                   if (!t.gains.allFinite()) throw_invalid_parameter("spectral table: non-finite gains");
                 },
                 [](const ResponseFilter& r) {
                   std::visit(overloaded{
                                  [](const Simoncelli& s) {
                                    if (!(s.tau > 0.0 && s.tau <= 1.0)) {
                                      throw_invalid_parameter("simoncelli tau must lie in (0, 1]");
                                    }
                                  },
                                  [](const Heat& h) {
                                    if (!std::isfinite(h.scale)) {
                                      throw_invalid_parameter("heat scale must be finite");
                                    }
                                  },
                                  [](const CustomPolynomial& p) {
                                    if (p.coeffs.empty()) {
                                      throw_invalid_parameter("custom polynomial needs coefficients");
                                    }
                                    for (double c : p.coeffs) {
                                      if (!std::isfinite(c)) {
                                        throw_invalid_parameter("custom polynomial: non-finite coefficient");
                                      }
                                    }
                                  },
                              },
                              r.shape);
                 },
                 [](const DiffusionFilter& d) {
                   if (!std::isfinite(d.a)) throw_invalid_parameter("diffusion a must be finite");
                 },
             },
             spec);
}

double estimate_lambda_max(const SparseMatrix& op, std::size_t iterations) {
  const Eigen::Index n = op.rows();
  if (n == 0 || op.nonZeros() == 0) return 0.0;
  const Eigen::Index steps = std::min<Eigen::Index>(n, std::max<std::size_t>(iterations, 1));

  // Lanczos with full reorthogonalization: basis Q, tridiagonal (alpha, beta)
  Eigen::MatrixXd basis(n, steps);
  Eigen::VectorXd alpha(steps);
  Eigen::VectorXd beta(steps);
  basis.col(0) = start_vector(n);
  Eigen::Index built = 0;
  double last_beta = 0.0;
  for (Eigen::Index k = 0; k < steps; ++k) {
    Eigen::VectorXd w = op * basis.col(k);
    alpha[k] = basis.col(k).dot(w);
    for (int pass = 0; pass < 2; ++pass) {
      w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).transpose() * w);
    }
    built = k + 1;
    last_beta = w.norm();
    if (k + 1 == steps || last_beta <= 1e-12 * std::abs(alpha[k]) || last_beta == 0.0) break;
    beta[k] = last_beta;
    basis.col(k + 1) = w / last_beta;
  }

  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(built, built);
  for (Eigen::Index k = 0; k < built; ++k) {
    tri(k, k) = alpha[k];
    if (k + 1 < built) tri(k, k + 1) = tri(k + 1, k) = beta[k];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(tri);
  const double theta = ritz.eigenvalues()[built - 1];
  // residual norm of the top Ritz pair: beta_m |last component of its vector|
  const double residual = last_beta * std::abs(ritz.eigenvectors()(built - 1, built - 1));
  const double estimate = std::max(1.01 * theta, theta + residual);
  return std::min(estimate, gershgorin_bound(op));
}

double estimate_spectral_radius(const SparseMatrix& op, std::size_t iterations) {
  const Eigen::Index n = op.rows();
  if (n == 0 || op.nonZeros() == 0) return 0.0;
  Eigen::VectorXd v = start_vector(n);
  double ratio = 0.0;
  for (std::size_t it = 0; it < std::max<std::size_t>(iterations, 1); ++it) {
    Eigen::VectorXd w = op * v;
    ratio = w.norm();
    if (ratio == 0.0) break;
    v = w / ratio;
  }
  return ratio;
}

std::vector<double> chebyshev_coefficients(const std::function<double(double)>& h, double upper,
                                           std::size_t order) {
  const std::size_t nodes = order + 1;
  const double half = upper / 2.0;
  std::vector<double> samples(nodes);
  std::vector<double> theta(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    theta[j] = std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(nodes);
    samples[j] = h(half * std::cos(theta[j]) + half);
  }
  std::vector<double> coeffs(order + 1, 0.0);
  for (std::size_t k = 0; k <= order; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
      acc += samples[j] * std::cos(static_cast<double>(k) * theta[j]);
    }
    coeffs[k] = 2.0 * acc / static_cast<double>(nodes);
  }
  return coeffs;
}

GraphSignal apply_filter(const SparseGraph& graph, const FilterSpec& spec,
                         const GraphSignal& signal, const FilterMethod& method) {
  validate(spec);
  check_rows(graph, signal, "apply_filter");
  const bool chebyshev = std::holds_alternative<ChebyshevMethod>(method);

  if (const auto* diffusion = std::get_if<DiffusionFilter>(&spec)) {
    if (chebyshev) throw_invalid_parameter("chebyshev method requires a spectral-response filter");
    return apply_diffusion(graph, *diffusion, signal);
  }

  if (const auto* table = std::get_if<SpectralTable>(&spec)) {
    if (chebyshev) throw_invalid_parameter("chebyshev method requires a spectral-response filter");
    if (static_cast<std::size_t>(table->gains.size()) != graph.num_vertices()) {
      throw_invalid_parameter("spectral table needs one gain per vertex");
    }
    const LaplacianSpectrum spectrum = laplacian_spectrum(graph);
    return igft(spectrum, table->gains.asDiagonal() * gft(spectrum, signal));
  }

  const auto& response = std::get<ResponseFilter>(spec).shape;
  const SparseMatrix laplacian = combinatorial_laplacian(graph);
  const double lambda_ref = estimate_lambda_max(laplacian);

  if (const auto* cheb = std::get_if<ChebyshevMethod>(&method)) {
    const auto coeffs = chebyshev_coefficients(
        [&](double lambda) { return evaluate_response(response, lambda, lambda_ref); },
        lambda_ref, cheb->order);
    return chebyshev_apply(laplacian, coeffs, lambda_ref, signal);
  }

  const LaplacianSpectrum spectrum = eigendecompose(Eigen::MatrixXd(laplacian));
  Eigen::VectorXd gains(spectrum.size());
  for (Eigen::Index i = 0; i < gains.size(); ++i) {
    gains[i] = evaluate_response(response, spectrum.eigenvalues[i], lambda_ref);
  }
  return igft(spectrum, gains.asDiagonal() * gft(spectrum, signal));
}

GraphSignal vbl_lowpass(const SparseGraph& graph, double a, std::size_t m,
                        const GraphSignal& signal) {
  check_rows(graph, signal, "vbl_lowpass");
  if (m == 0) return signal;
  if (!std::isfinite(a)) throw_invalid_parameter("vbl_lowpass: a must be finite");
  return apply_diffusion(graph, DiffusionFilter{a, m, DiffusionOperator::Normalized}, signal);
}

FeatureMatrix sgc_diffuse(const FeatureMatrix& features, const SparseGraph& graph, double alpha,
                          std::size_t m) {
  check_rows(graph, features.values(), "sgc_diffuse");
  if (m == 0) return features;
  if (!std::isfinite(alpha)) throw_invalid_parameter("sgc_diffuse: alpha must be finite");
  return FeatureMatrix(apply_diffusion(
      graph, DiffusionFilter{alpha, m, DiffusionOperator::AdjacencyNormalized}, features.values()));
}

}  // namespace lgg
