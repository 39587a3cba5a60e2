#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "report.hpp"

namespace lgg::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kParameterError = 3,
  kNumericalFailure = 4,
};

struct GraphOptions {
  std::size_t k = 10;
  std::string similarity = "cosine";  // cosine | rbf
  double alpha = 1.0;                 // rbf scale
  std::string metric = "euclidean";   // rbf distance: euclidean | cosine
  std::string symmetrize = "union";   // union | add-transpose
};

struct GraphCommand {
  std::string features;
  GraphOptions graph;
  std::string out;
};

struct SmoothnessCommand {
  std::string features;
  std::string labels;
  GraphOptions graph;
};

struct FilterCommand {
  std::string signal;
  std::string graph_path;     // edge list, or empty
  std::string features_path;  // features for a k-NN graph, or empty
  GraphOptions graph;
  std::string filter = "simoncelli";  // simoncelli | heat | diffusion | table
  double tau = 0.5;
  double scale = 1.0;
  double a = 0.5;
  std::size_t m = 1;
  std::string op = "normalized";  // combinatorial | normalized | adjacency-normalized
  std::string table;
  std::string method = "exact";  // exact | chebyshev
  std::size_t order = 30;
  std::string out;
};

struct DenoiseCommand {
  std::string features;
  std::string labels;
  std::size_t k = 10;
  double alpha = 0.5;
  std::size_t m = 2;
  bool propagate = false;
  double label_alpha = 0.9;
  std::string propagation = "closed-form";  // closed-form | iterative
  std::optional<std::size_t> classes;
  std::string out;
  std::string pseudo_out;
};

struct LossesCommand {
  std::string kind;  // smoothness-loss | gkd | affinity | reg-gap | peer
  std::string features;
  std::string labels;
  double alpha = 1.0;
  std::size_t k = 10;
  std::string metric = "euclidean";
  std::vector<std::string> teacher;
  std::vector<std::string> student;
  bool task_specific = false;
  std::optional<double> task_loss;
  double lambda = 1.0;
  std::string pairs;
  std::string similarity = "cosine";  // affinity: cosine | scaled-dot
  std::vector<std::string> layers;
  std::size_t layer_k = 0;  // reg-gap: 0 = complete cosine graphs
  std::vector<std::string> peers;
  std::string weights;
  double slope = 0.01;
  std::string out;
};

struct BenchCommand {
  std::uint64_t seed = 0;
  std::size_t trials = 50;
  std::size_t shots = 1;
  std::string blobs_config;  // JSON file or inline JSON object
  std::size_t k = 10;
  double alpha = 0.5;
  std::size_t m = 2;
};

RunReport run_graph(const GraphCommand& cmd);
RunReport run_smoothness(const SmoothnessCommand& cmd);
RunReport run_filter(const FilterCommand& cmd);
RunReport run_denoise(const DenoiseCommand& cmd);
RunReport run_losses(const LossesCommand& cmd);
RunReport run_bench_fewlabel(const BenchCommand& cmd);

/// Runs a command, printing its report (exit 0) or a JSON error object with
/// the matching exit code: 2 input, 3 parameter, 4 numerical failure.
int run_guarded(const std::function<RunReport()>& command, std::ostream& out);

}  // namespace lgg::cli
