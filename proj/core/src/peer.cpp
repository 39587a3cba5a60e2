#include <algorithm>
#include <cmath>
#include <string>

#include "lgg/error.hpp"
#include "lgg/losses.hpp"

namespace lgg {

namespace {

struct Candidate {
  double similarity;
  std::size_t peer;
  std::size_t pixel;
};

Eigen::MatrixXd unit_rows(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd out = m;
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    const double norm = out.row(r).norm();
    if (norm > 0.0) {
      out.row(r) /= norm;
    } else {
      out.row(r).setZero();
    }
  }
  return out;
}

double leaky_relu(double v, double slope) { return v >= 0.0 ? v : slope * v; }

}  // namespace

void PeerBank::validate() const {
  if (peers.empty()) throw_invalid_input("peer bank is empty");
  const auto p = peers.front().rows();
  const auto d = peers.front().cols();
  if (p < 1 || d < 1) throw_invalid_input("peer maps must be non-empty");
  for (const auto& m : peers) {
    if (m.rows() != p || m.cols() != d) throw_invalid_input("peer maps must share shape");
    if (!m.allFinite()) throw_invalid_input("peer map contains non-finite values");
  }
  if (attention_weights.size() != 2 * d) {
    throw_invalid_input("attention weights must have length 2d = " + std::to_string(2 * d));
  }
  if (!attention_weights.allFinite() || !std::isfinite(attention_bias) ||
      !std::isfinite(leaky_slope)) {
    throw_invalid_parameter("attention parameters must be finite");
  }
}

PeerRegularization peer_regularize(const Eigen::MatrixXd& input_map, const PeerBank& bank,
                                   std::size_t k) {
  bank.validate();
  const Eigen::Index d = bank.peers.front().cols();
  const auto pixels_per_peer = static_cast<std::size_t>(bank.peers.front().rows());
  const std::size_t candidates = bank.peers.size() * pixels_per_peer;
  if (input_map.cols() != d) throw_invalid_input("input map channel count differs from peers");
  if (input_map.rows() < 1 || !input_map.allFinite()) {
    throw_invalid_input("input map must be non-empty and finite");
  }
  if (k == 0 || k > candidates) {
    throw_invalid_parameter("peer_regularize requires 1 <= K <= " + std::to_string(candidates));
  }

  std::vector<Eigen::MatrixXd> unit_peers;
  unit_peers.reserve(bank.peers.size());
  for (const auto& m : bank.peers) unit_peers.push_back(unit_rows(m));
  const Eigen::MatrixXd unit_input = unit_rows(input_map);

  const auto w_self = bank.attention_weights.head(d);
  const auto w_peer = bank.attention_weights.tail(d);

  PeerRegularization result;
  result.output = Eigen::MatrixXd::Zero(input_map.rows(), d);
  result.neighbors.resize(static_cast<std::size_t>(input_map.rows()));
  result.coefficients.resize(static_cast<std::size_t>(input_map.rows()));

  std::vector<Candidate> pool(candidates);
  const auto by_rank = [](const Candidate& a, const Candidate& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    if (a.peer != b.peer) return a.peer < b.peer;
    return a.pixel < b.pixel;
  };

  for (Eigen::Index p = 0; p < input_map.rows(); ++p) {
    const auto query = unit_input.row(p);
    std::size_t c = 0;
    for (std::size_t j = 0; j < unit_peers.size(); ++j) {
      const Eigen::VectorXd sims = unit_peers[j] * query.transpose();
      for (std::size_t q = 0; q < pixels_per_peer; ++q) {
        pool[c++] = {sims[static_cast<Eigen::Index>(q)], j, q};
      }
    }
    std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k), pool.end(),
                      by_rank);

    const double self_term = w_self.dot(input_map.row(p).transpose()) + bank.attention_bias;
    Eigen::VectorXd scores(static_cast<Eigen::Index>(k));
    for (std::size_t t = 0; t < k; ++t) {
      const auto& peer_pixel = bank.peers[pool[t].peer].row(static_cast<Eigen::Index>(pool[t].pixel));
      scores[static_cast<Eigen::Index>(t)] = self_term + w_peer.dot(peer_pixel.transpose());
    }
    // shifting every score by the max leaves the normalized ratios unchanged
    const double peak = scores.maxCoeff();
    Eigen::VectorXd coeffs(static_cast<Eigen::Index>(k));
    for (Eigen::Index t = 0; t < coeffs.size(); ++t) {
      coeffs[t] = leaky_relu(std::exp(scores[t] - peak), bank.leaky_slope);
    }
    coeffs /= coeffs.sum();

    auto& nb = result.neighbors[static_cast<std::size_t>(p)];
    for (std::size_t t = 0; t < k; ++t) {
      const auto& peer_pixel = bank.peers[pool[t].peer].row(static_cast<Eigen::Index>(pool[t].pixel));
      result.output.row(p) += coeffs[static_cast<Eigen::Index>(t)] * peer_pixel;
      nb.emplace_back(pool[t].peer, pool[t].pixel);
    }
    result.coefficients[static_cast<std::size_t>(p)] = std::move(coeffs);
  }
  return result;
}

}  // namespace lgg
