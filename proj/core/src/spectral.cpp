#include "lgg/spectral.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "lgg/error.hpp"

namespace lgg {

LaplacianSpectrum eigendecompose(const Eigen::MatrixXd& laplacian) {
  if (laplacian.rows() != laplacian.cols()) {
    throw_invalid_input("eigendecompose requires a square matrix");
  }
  if (!laplacian.allFinite()) throw_invalid_input("eigendecompose: non-finite entries");
  const Eigen::Index n = laplacian.rows();
  if (n == 0) return {};

  const double scale = std::max(1.0, laplacian.cwiseAbs().maxCoeff());
  const double asym = (laplacian - laplacian.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    throw_invalid_input("eigendecompose: matrix is not symmetric (max |L - L^T| = " +
                        std::to_string(asym) + ")");
  }

  const Eigen::MatrixXd sym = 0.5 * (laplacian + laplacian.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw_numerical_failure("eigendecompose: symmetric eigensolver did not converge");
  }

  LaplacianSpectrum spectrum{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index c = 0; c < n; ++c) {
    auto col = spectrum.eigenvectors.col(c);
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < n; ++r) {
      // strict comparison with a relative margin keeps the first of near-equal entries
      if (std::abs(col[r]) > best * (1.0 + 1e-12)) {
        best = std::abs(col[r]);
        arg = r;
      }
    }
    if (col[arg] < 0.0) col *= -1.0;
  }
  return spectrum;
}

LaplacianSpectrum laplacian_spectrum(const SparseGraph& graph) {
  return eigendecompose(Eigen::MatrixXd(combinatorial_laplacian(graph)));
}

GraphSignal gft(const LaplacianSpectrum& spectrum, const GraphSignal& signal) {
  if (signal.rows() != spectrum.size()) {
    throw_invalid_input("gft: signal has " + std::to_string(signal.rows()) +
                        " rows, spectrum has " + std::to_string(spectrum.size()));
  }
  return spectrum.eigenvectors.transpose() * signal;
}

GraphSignal igft(const LaplacianSpectrum& spectrum, const GraphSignal& coeffs) {
  if (coeffs.rows() != spectrum.size()) {
    throw_invalid_input("igft: coefficients have " + std::to_string(coeffs.rows()) +
                        " rows, spectrum has " + std::to_string(spectrum.size()));
  }
  return spectrum.eigenvectors * coeffs;
}

}  // namespace lgg
