// Acceptance checks: one PASS/FAIL line per criterion.
//
// Usage: lgg_acceptance [--known-unattainable N]...
// The exit status counts failing criteria, excluding those named with
// --known-unattainable (they still print FAIL).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "io.hpp"
#include "lgg/lgg.hpp"
#include "process.hpp"

using namespace lgg;
using namespace lgg::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0 means no limit
  std::function<Outcome()> check;
};

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// ---------------------------------------------------------------------------

Outcome smoothness_identity() {
  std::mt19937_64 gen(1001);
  std::uniform_int_distribution<std::size_t> size(2, 32);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = size(gen);
    const SparseGraph g = random_graph(n, 0.3, gen);
    const Eigen::VectorXd s = random_matrix(static_cast<Eigen::Index>(n), 1, gen).col(0);
    const double quadratic = smoothness(g, s);
    const double spectral = spectral_smoothness(laplacian_spectrum(g), s);
    double edge_sum = 0.0;  // sum over i < j
    for (const auto& e : g.edges()) {
      const double d = s[static_cast<Eigen::Index>(e.i)] - s[static_cast<Eigen::Index>(e.j)];
      edge_sum += e.w * d * d;
    }
    worst = std::max({worst, relative_gap(quadratic, spectral), relative_gap(quadratic, edge_sum),
                      relative_gap(spectral, edge_sum)});
  }
  return {worst <= 1e-8, fmt("max relative gap %.3e (tol 1e-8)", worst)};
}

Outcome gft_roundtrip() {
  std::mt19937_64 gen(1002);
  std::uniform_int_distribution<std::size_t> size(1, 64);
  std::uniform_real_distribution<double> density(0.05, 0.9);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = size(gen);
    const SparseGraph g = random_graph(n, density(gen), gen);
    const GraphSignal s = random_matrix(static_cast<Eigen::Index>(n), 1, gen);
    const LaplacianSpectrum spectrum = laplacian_spectrum(g);
    worst = std::max(worst, (igft(spectrum, gft(spectrum, s)) - s).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-10, fmt("max |igft(gft(s)) - s| %.3e (tol 1e-10)", worst)};
}

Outcome chebyshev_fidelity() {
  std::mt19937_64 gen(1003);
  const FilterSpec spec = ResponseFilter{Simoncelli{0.5}};
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const SparseGraph g = random_graph(64, 0.3, gen);
    const GraphSignal s = random_matrix(64, 1, gen);
    const GraphSignal exact = apply_filter(g, spec, s, ExactMethod{});
    const GraphSignal approx = apply_filter(g, spec, s, ChebyshevMethod{50});
    worst = std::max(worst, (approx - exact).norm() / exact.norm());
  }
  return {worst <= 1e-3, fmt("max relative L2 error %.3e (tol 1e-3)", worst)};
}

Outcome propagation_cross_oracle() {
  std::mt19937_64 gen(1004);
  std::uniform_int_distribution<std::size_t> size(10, 60);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = size(gen);
    const SparseGraph g = random_graph(n, 0.3, gen);
    const std::size_t classes = 3;
    std::vector<std::size_t> indices(n);
    for (std::size_t i = 0; i < n; ++i) indices[i] = i;
    std::shuffle(indices.begin(), indices.end(), gen);
    indices.resize(6);
    std::vector<std::size_t> labels(6);
    for (std::size_t i = 0; i < 6; ++i) labels[i] = i % classes;
    const PartialLabels partial(n, indices, labels, classes);
    const double rho = estimate_spectral_radius(normalized_adjacency(g));
    const double alpha = 0.5 / rho;
    const auto closed = propagate_labels(g, partial, alpha, ClosedForm{});
    const auto iterative = propagate_labels(g, partial, alpha, Iterative{10000, 1e-9});
    worst = std::max(worst, (closed.z - iterative.z).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-6, fmt("max entry difference %.3e (tol 1e-6)", worst)};
}

Outcome path_denoising() {
  const std::size_t n = 100;
  const SparseGraph g = path(n);
  Eigen::VectorXd clean(n);
  for (std::size_t i = 0; i < n; ++i) {
    clean[static_cast<Eigen::Index>(i)] = std::sin(std::numbers::pi * static_cast<double>(i) / (n - 1.0));
  }
  std::mt19937_64 gen(1005);
  std::normal_distribution<double> noise(0.0, 0.5);
  Eigen::VectorXd noisy = clean;
  for (Eigen::Index i = 0; i < noisy.size(); ++i) noisy[i] += noise(gen);
  const GraphSignal filtered = apply_filter(g, ResponseFilter{Simoncelli{0.01}}, noisy, ExactMethod{});
  const double s_clean = smoothness(g, clean);
  const double s_noisy = smoothness(g, noisy);
  const double s_filtered = smoothness(g, filtered.col(0));
  const bool pass = s_noisy >= 100.0 * s_clean && s_filtered <= 2.0 * s_clean;
  return {pass, fmt("smoothness clean %.4g, noisy %.4g (%.0fx), filtered %.4g (%.2fx)", s_clean,
                    s_noisy, s_noisy / s_clean, s_filtered, s_filtered / s_clean)};
}

Outcome fewlabel_gain() {
  const BlobsConfig config;  // d=20, 2 classes 2 apart, unit covariance, 100 unlabeled
  FewLabelParams one;
  one.shots = 1;
  FewLabelParams five = one;
  five.shots = 5;
  const FewLabelSummary a = run_fewlabel_benchmark(config, one, 50, 2024);
  const FewLabelSummary b = run_fewlabel_benchmark(config, five, 50, 2024);
  const bool pass = a.gain() >= 0.05 && a.gain() > b.gain();
  return {pass, fmt("1-shot %.4f -> %.4f (gain %+.4f), 5-shot %.4f -> %.4f (gain %+.4f)",
                    a.mean_raw, a.mean_diffused, a.gain(), b.mean_raw, b.mean_diffused, b.gain())};
}

Outcome exactness() {
  std::mt19937_64 gen(1007);
  std::vector<std::string> failures;

  // label smoothness vanishes exactly when no edge joins two classes
  for (int t = 0; t < 50; ++t) {
    const SparseGraph g = random_graph(12, 0.25, gen);
    std::vector<std::size_t> raw(12);
    for (std::size_t i = 0; i < 12; ++i) raw[i] = (i * 7 + static_cast<std::size_t>(t)) % 3;
    const LabelVector labels(raw, 3);
    bool crossing = false;
    for (const auto& e : g.edges()) crossing = crossing || raw[e.i] != raw[e.j];
    if ((label_smoothness(g, labels).total_raw == 0.0) == crossing) {
      failures.push_back("label_smoothness");
      break;
    }
  }

  const FeatureMatrix x(random_matrix(9, 5, gen));
  const FeatureMatrix y(random_matrix(9, 3, gen));
  const LayerFeatureSet layers({x, y});
  if (gkd_loss(layers, layers) != 0.0) failures.push_back("gkd_loss");

  std::vector<std::pair<std::size_t, std::size_t>> all_pairs;
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < 9; ++j) {
      if (i != j) all_pairs.emplace_back(i, j);
    }
  }
  if (affinity_loss(x, AffinityTarget(9, all_pairs)).loss != 0.0) failures.push_back("affinity_loss");

  PeerBank bank;
  bank.peers = {random_matrix(16, 4, gen), random_matrix(16, 4, gen), random_matrix(16, 4, gen)};
  bank.attention_weights = random_matrix(8, 1, gen).col(0);
  bank.attention_bias = 0.3;
  const PeerRegularization peer = peer_regularize(random_matrix(16, 4, gen), bank, 5);
  double worst_sum = 0.0;
  for (const auto& c : peer.coefficients) worst_sum = std::max(worst_sum, std::abs(c.sum() - 1.0));
  if (worst_sum > 1e-10) failures.push_back("peer coefficients");

  const SparseGraph layer = random_graph(9, 0.4, gen);
  const LabelVector labels({0, 1, 2, 0, 1, 2, 0, 1, 2}, 3);
  if (smoothness_gap_regularizer({layer, layer, layer}, labels) != 0.0) {
    failures.push_back("smoothness_gap_regularizer");
  }

  std::string detail = failures.empty() ? "all five invariants exact" : "failed:";
  for (const auto& f : failures) detail += " " + f;
  return {failures.empty(), detail + fmt(" (peer sum deviation %.1e)", worst_sum)};
}

Outcome margin_bridge() {
  const std::size_t size = 6;
  const SparseGraph g = bridged_cliques(size);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(2 * size);
  s.head(size).setOnes();
  const Eigen::VectorXd scores = margin_influence(g, s).scores;

  // oracle: |L_norm s| from a dense build
  const Eigen::MatrixXd a = g.dense_adjacency();
  const Eigen::VectorXd d = a.rowwise().sum();
  const Eigen::VectorXd inv_sqrt = d.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd l_norm = Eigen::MatrixXd::Identity(2 * size, 2 * size) -
                                 inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
  const Eigen::VectorXd oracle = (l_norm * s).cwiseAbs();
  const double gap = (scores - oracle).cwiseAbs().maxCoeff();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(scores.size()));
  for (Eigen::Index i = 0; i < scores.size(); ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return scores[i] > scores[j]; });
  const std::set<Eigen::Index> top{order[0], order[1]};
  const std::set<Eigen::Index> bridge{static_cast<Eigen::Index>(size - 1), static_cast<Eigen::Index>(size)};
  const bool strict = scores[order[1]] > scores[order[2]];
  return {top == bridge && strict && gap <= 1e-12,
          fmt("top-2 {%ld, %ld}, third score %.3g, oracle gap %.1e", static_cast<long>(order[0]),
              static_cast<long>(order[1]), scores[order[2]], gap)};
}

Outcome cli_determinism(const std::string& lgg_path) {
  std::vector<std::string> failures;
  const auto dir = scratch_dir("lgg_acceptance_cli");
  const auto q = [](const std::filesystem::path& p) { return "'" + p.string() + "'"; };
  const std::string lgg = q(lgg_path);

  // bit-exact MatrixFile roundtrip, in memory and through the CLI
  std::mt19937_64 gen(1009);
  Eigen::MatrixXd m = random_matrix(30, 4, gen);
  m(0, 0) = -0.0;
  m(1, 1) = std::numeric_limits<double>::denorm_min();
  m(2, 2) = std::numeric_limits<double>::max();
  const auto encoded = io::encode_matrix(m);
  if (io::encode_matrix(io::decode_matrix(encoded, "mem")) != encoded) failures.push_back("decode");
  io::write_matrix(dir / "m.bin", m);
  std::string features;
  for (int i = 0; i < 30; ++i) features += std::to_string(i % 5) + "," + std::to_string(i % 7) + "\n";
  write_file(dir / "f.csv", features);
  const auto identity = run_process(lgg + " filter " + q(dir / "m.bin") + " --features " + q(dir / "f.csv") +
                                    " --k 3 --filter diffusion --m 0 --out " + q(dir / "out.bin"));
  if (identity.exit_code != 0 || read_file(dir / "out.bin") != read_file(dir / "m.bin")) {
    failures.push_back("cli roundtrip");
  }

  // repeated invocations
  std::string first;
  for (int run = 0; run < 3; ++run) {
    const auto g = run_process(lgg + " graph " + q(dir / "f.csv") + " --k 3 --out " + q(dir / "g.csv"));
    const auto f = run_process(lgg + " filter " + q(dir / "m.bin") + " --features " + q(dir / "f.csv") +
                               " --k 3 --method chebyshev --order 20 --out " + q(dir / "s.bin"));
    const std::string all = g.output + f.output + read_file(dir / "g.csv") + read_file(dir / "s.bin");
    if (g.exit_code != 0 || f.exit_code != 0) failures.push_back("run failed");
    if (run == 0) first = all;
    if (all != first) failures.push_back("nondeterministic output");
  }

  // documented exit codes
  write_file(dir / "bad_magic.bin", std::string("LGX1\x01\0\0\0\x01\0\0\0\0\0\0\0\0\0\0\0", 20));
  auto truncated = encoded;
  truncated.resize(truncated.size() - 3);
  write_file(dir / "truncated.bin", std::string(truncated.begin(), truncated.end()));
  write_file(dir / "ragged.csv", "1,2\n3\n");
  for (const char* name : {"bad_magic.bin", "truncated.bin", "ragged.csv", "absent.csv"}) {
    const auto r = run_process(lgg + " graph " + q(dir / name) + " --k 1 --out " + q(dir / "x.csv"));
    if (r.exit_code != 2 || r.output.find("\"exit_code\":2") == std::string::npos) {
      failures.push_back(std::string("exit code on ") + name);
    }
  }
  if (run_process(lgg + " graph " + q(dir / "f.csv") + " --k 0 --out " + q(dir / "x.csv")).exit_code != 3) {
    failures.push_back("exit code on k=0");
  }
  if (run_process(lgg + " frobnicate").exit_code != 3) failures.push_back("exit code on bad subcommand");

  std::filesystem::remove_all(dir);
  std::string detail = failures.empty() ? "roundtrip bit-exact, 3 runs identical, exit codes 2/3 honored"
                                        : "failed:";
  for (const auto& f : failures) detail += " [" + f + "]";
  return {failures.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known_unattainable;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--known-unattainable" && i + 1 < argc) {
      known_unattainable.insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--known-unattainable N]...\n", argv[0]);
      return 64;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "smoothness triple identity", 5.0, smoothness_identity},
      {2, "gft roundtrip", 5.0, gft_roundtrip},
      {3, "chebyshev fidelity", 10.0, chebyshev_fidelity},
      {4, "label propagation cross-oracle", 5.0, propagation_cross_oracle},
      {5, "path-graph denoising", 2.0, path_denoising},
      {6, "few-label synthetic gain", 30.0, fewlabel_gain},
      {7, "exactness invariants", 0.0, exactness},
      {8, "margin bridge endpoints", 1.0, margin_bridge},
      {9, "cli determinism and format", 0.0, [] { return cli_determinism(LGG_CLI_PATH); }},
  };

  int failing = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit_s == 0.0 || elapsed < c.time_limit_s;
    const bool pass = outcome.pass && in_time;
    std::string timing = fmt("%.3fs", elapsed);
    if (c.time_limit_s > 0.0) timing += fmt(" < %.0fs", c.time_limit_s);
    const bool excused = !pass && known_unattainable.count(c.id) > 0;
    std::printf("[%s] %d. %s: %s (%s%s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), timing.c_str(), in_time ? "" : ", over time limit",
                excused ? " [known unattainable]" : "");
    if (!pass && !excused) ++failing;
  }
  return failing;
}
