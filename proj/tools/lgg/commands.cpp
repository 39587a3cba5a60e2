#include "commands.hpp"

#include <fstream>
#include <sstream>

#include "io.hpp"
#include "lgg/lgg.hpp"

namespace lgg::cli {

namespace {

using nlohmann::json;

json to_json_array(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Symmetrize parse_symmetrize(const std::string& s) {
  if (s == "union") return Symmetrize::Union;
  if (s == "add-transpose") return Symmetrize::AddTranspose;
  throw_invalid_parameter("unknown symmetrize mode \"" + s + "\"");
}

Metric parse_metric(const std::string& s) {
  if (s == "euclidean") return Metric::Euclidean;
  if (s == "cosine" || s == "cosine-distance") return Metric::CosineDistance;
  throw_invalid_parameter("unknown metric \"" + s + "\"");
}

SimilarityKind parse_similarity(const GraphOptions& g) {
  if (g.similarity == "cosine") return CosineSimilarity{};
  if (g.similarity == "rbf") return RbfSimilarity{g.alpha, parse_metric(g.metric)};
  throw_invalid_parameter("unknown similarity \"" + g.similarity + "\"");
}

void describe_graph(const GraphOptions& g, json& params) {
  params["k"] = g.k;
  params["similarity"] = g.similarity;
  params["symmetrize"] = g.symmetrize;
  if (g.similarity == "rbf") {
    params["alpha"] = g.alpha;
    params["metric"] = g.metric;
  }
}

SparseGraph build_knn(const FeatureMatrix& features, const GraphOptions& g) {
  return knn_graph(features, g.k, parse_similarity(g), parse_symmetrize(g.symmetrize));
}

FeatureMatrix load_features(const std::string& path) {
  Eigen::MatrixXd m = io::read_matrix(path);
  if (!m.allFinite()) throw io::InputError(path, "matrix contains non-finite values");
  if (m.rows() < 1 || m.cols() < 1) throw io::InputError(path, "matrix is empty");
  return FeatureMatrix(std::move(m));
}

LabelVector load_labels(const std::string& path, Eigen::Index expected) {
  LabelVector labels = io::read_labels(path);
  if (static_cast<Eigen::Index>(labels.size()) != expected) {
    throw io::InputError(path, "holds " + std::to_string(labels.size()) + " labels, expected " +
                                   std::to_string(expected));
  }
  return labels;
}

std::vector<FeatureMatrix> load_layers(const std::vector<std::string>& paths) {
  std::vector<FeatureMatrix> layers;
  for (const auto& p : paths) layers.push_back(load_features(p));
  return layers;
}

json error_object(const std::string& kind, const std::string& message, int code) {
  json err = json::object();
  err["kind"] = kind;
  err["message"] = message;
  json root = json::object();
  root["error"] = err;
  root["exit_code"] = code;
  return root;
}

}  // namespace

RunReport run_graph(const GraphCommand& cmd) {
  if (cmd.out.empty()) throw_invalid_parameter("graph: --out is required");
  const FeatureMatrix features = load_features(cmd.features);
  const SparseGraph graph = build_knn(features, cmd.graph);
  io::write_text(cmd.out, io::format_edge_list(graph));

  RunReport report;
  report.command = "graph";
  describe_graph(cmd.graph, report.parameters);
  report.parameters["features"] = cmd.features;
  report.parameters["out"] = cmd.out;
  report.metrics["vertices"] = graph.num_vertices();
  report.metrics["edges"] = graph.num_edges();
  double total = 0.0;
  for (const auto& e : graph.edges()) total += e.w;
  report.metrics["total_weight"] = total;
  return report;
}

RunReport run_smoothness(const SmoothnessCommand& cmd) {
  const FeatureMatrix features = load_features(cmd.features);
  const LabelVector labels = load_labels(cmd.labels, features.rows());
  const SparseGraph graph = build_knn(features, cmd.graph);
  const SmoothnessReport s = label_smoothness(graph, labels);

  RunReport report;
  report.command = "smoothness";
  describe_graph(cmd.graph, report.parameters);
  report.parameters["graph"] = "knn";
  report.parameters["features"] = cmd.features;
  report.parameters["labels"] = cmd.labels;
  report.metrics["per_class"] = to_json_array(s.per_class);
  report.metrics["total_raw"] = s.total_raw;
  report.metrics["normalized"] = s.normalized;
  report.metrics["M"] = s.samples_per_class;
  report.metrics["C"] = s.num_classes;
  if (s.unbalanced) report.warnings.push_back("unbalanced-classes");
  return report;
}

RunReport run_filter(const FilterCommand& cmd) {
  if (cmd.out.empty()) throw_invalid_parameter("filter: --out is required");
  const Eigen::MatrixXd signal = io::read_matrix(cmd.signal);
  if (!signal.allFinite()) throw io::InputError(cmd.signal, "signal contains non-finite values");

  RunReport report;
  report.command = "filter";
  report.parameters["signal"] = cmd.signal;

  std::optional<SparseGraph> graph;
  if (!cmd.graph_path.empty() == !cmd.features_path.empty()) {
    throw_invalid_parameter("filter: give exactly one of --graph or --features");
  }
  if (!cmd.graph_path.empty()) {
    graph = io::read_edge_list(cmd.graph_path, static_cast<std::size_t>(signal.rows()));
    report.parameters["graph"] = cmd.graph_path;
  } else {
    const FeatureMatrix features = load_features(cmd.features_path);
    if (features.rows() != signal.rows()) {
      throw io::InputError(cmd.features_path, "row count differs from the signal");
    }
    graph = build_knn(features, cmd.graph);
    report.parameters["features"] = cmd.features_path;
    describe_graph(cmd.graph, report.parameters);
  }

  FilterSpec spec;
  report.parameters["filter"] = cmd.filter;
  if (cmd.filter == "simoncelli") {
    spec = ResponseFilter{Simoncelli{cmd.tau}};
    report.parameters["tau"] = cmd.tau;
  } else if (cmd.filter == "heat") {
    spec = ResponseFilter{Heat{cmd.scale}};
    report.parameters["scale"] = cmd.scale;
  } else if (cmd.filter == "diffusion") {
    DiffusionOperator op{};
    if (cmd.op == "combinatorial") {
      op = DiffusionOperator::Combinatorial;
    } else if (cmd.op == "normalized") {
      op = DiffusionOperator::Normalized;
    } else if (cmd.op == "adjacency-normalized") {
      op = DiffusionOperator::AdjacencyNormalized;
    } else {
      throw_invalid_parameter("unknown diffusion operator \"" + cmd.op + "\"");
    }
    spec = DiffusionFilter{cmd.a, cmd.m, op};
    report.parameters["a"] = cmd.a;
    report.parameters["m"] = cmd.m;
    report.parameters["operator"] = cmd.op;
  } else if (cmd.filter == "table") {
    if (cmd.table.empty()) throw_invalid_parameter("filter table: --table is required");
    const Eigen::MatrixXd gains = io::read_matrix(cmd.table);
    spec = SpectralTable{Eigen::Map<const Eigen::VectorXd>(gains.data(), gains.size())};
    report.parameters["table"] = cmd.table;
  } else {
    throw_invalid_parameter("unknown filter \"" + cmd.filter + "\"");
  }

  FilterMethod method;
  if (cmd.method == "exact") {
    method = ExactMethod{};
  } else if (cmd.method == "chebyshev") {
    method = ChebyshevMethod{cmd.order};
    report.parameters["order"] = cmd.order;
  } else {
    throw_invalid_parameter("unknown method \"" + cmd.method + "\"");
  }
  report.parameters["method"] = cmd.method;

  const Eigen::MatrixXd filtered = apply_filter(*graph, spec, signal, method);
  io::write_matrix(cmd.out, filtered);
  report.parameters["out"] = cmd.out;

  Eigen::VectorXd before(signal.cols());
  Eigen::VectorXd after(signal.cols());
  for (Eigen::Index c = 0; c < signal.cols(); ++c) {
    before[c] = smoothness(*graph, signal.col(c));
    after[c] = smoothness(*graph, filtered.col(c));
  }
  report.metrics["smoothness_before"] = to_json_array(before);
  report.metrics["smoothness_after"] = to_json_array(after);
  report.metrics["smoothness_before_total"] = before.sum();
  report.metrics["smoothness_after_total"] = after.sum();
  return report;
}

RunReport run_denoise(const DenoiseCommand& cmd) {
  const FeatureMatrix features = load_features(cmd.features);
  const auto n = static_cast<std::size_t>(features.rows());
  const PartialLabels labels = io::read_partial_labels(cmd.labels, n, cmd.classes);

  RunReport report;
  report.command = "denoise";
  report.parameters["features"] = cmd.features;
  report.parameters["labels"] = cmd.labels;
  report.parameters["k"] = cmd.k;
  report.parameters["alpha"] = cmd.alpha;
  report.parameters["m"] = cmd.m;
  report.parameters["propagate"] = cmd.propagate;
  report.metrics["samples"] = n;
  report.metrics["labeled"] = labels.num_labeled();

  const FeatureMatrix diffused = transfer_sgc(features, cmd.k, cmd.alpha, cmd.m);
  if (!cmd.out.empty()) {
    io::write_matrix(cmd.out, diffused.values());
    report.parameters["out"] = cmd.out;
  }

  if (cmd.propagate) {
    if (cmd.pseudo_out.empty()) throw_invalid_parameter("denoise: --propagate needs --pseudo-out");
    PropagationMethod method;
    if (cmd.propagation == "closed-form") {
      method = ClosedForm{};
    } else if (cmd.propagation == "iterative") {
      method = Iterative{};
    } else {
      throw_invalid_parameter("unknown propagation method \"" + cmd.propagation + "\"");
    }
    const SparseGraph graph =
        knn_graph(diffused, cmd.k, CosineSimilarity{}, Symmetrize::AddTranspose);
    const PseudoLabelResult result = propagate_labels(graph, labels, cmd.label_alpha, method);
    io::write_text(cmd.pseudo_out, io::format_pseudo_labels(result));

    report.parameters["label_alpha"] = cmd.label_alpha;
    report.parameters["propagation"] = cmd.propagation;
    report.parameters["pseudo_out"] = cmd.pseudo_out;
    report.parameters["omega"] = "1 - normalized entropy of the row-normalized z";
    report.metrics["zeta"] = to_json_array(result.zeta);
    report.metrics["mean_omega"] = result.omega.mean();
    report.metrics["unreached"] = result.unreached.size();
    if (!result.unreached.empty()) report.warnings.push_back("unreached-samples");
    if (!result.empty_classes.empty()) report.warnings.push_back("empty-classes");
    if (!result.unlabeled_classes.empty()) report.warnings.push_back("classes-without-labels");
  }
  return report;
}

RunReport run_losses(const LossesCommand& cmd) {
  RunReport report;
  report.command = "losses " + cmd.kind;
  auto& params = report.parameters;

  if (cmd.kind == "smoothness-loss") {
    const FeatureMatrix outputs = load_features(cmd.features);
    const LabelVector labels = load_labels(cmd.labels, outputs.rows());
    params["alpha"] = cmd.alpha;
    params["k"] = cmd.k;
    params["metric"] = cmd.metric;
    report.metrics["loss"] =
        graph_smoothness_loss(outputs, labels, cmd.alpha, cmd.k, parse_metric(cmd.metric));
  } else if (cmd.kind == "gkd") {
    const LayerFeatureSet teacher(load_layers(cmd.teacher));
    const LayerFeatureSet student(load_layers(cmd.student));
    std::optional<LabelVector> labels;
    if (!cmd.labels.empty()) labels = load_labels(cmd.labels, teacher.batch_size());
    params["task_specific"] = cmd.task_specific;
    params["layers"] = teacher.num_layers();
    const double kd = gkd_loss(teacher, student, cmd.task_specific, labels);
    report.metrics["gkd"] = kd;
    if (cmd.task_loss) {
      params["lambda_kd"] = cmd.lambda;
      report.metrics["total"] = combined_distill_loss(*cmd.task_loss, kd, cmd.lambda);
    }
  } else if (cmd.kind == "affinity") {
    const FeatureMatrix features = load_features(cmd.features);
    const auto n = static_cast<std::size_t>(features.rows());
    std::optional<AffinityTarget> target;
    if (!cmd.pairs.empty() == !cmd.labels.empty()) {
      throw_invalid_parameter("affinity: give exactly one of --pairs or --labels");
    }
    if (!cmd.pairs.empty()) {
      target = AffinityTarget(n, io::read_pairs(cmd.pairs));
    } else {
      target = AffinityTarget::same_class(load_labels(cmd.labels, features.rows()));
    }
    AffinitySimilarity sim{};
    if (cmd.similarity == "cosine") {
      sim = AffinitySimilarity::Cosine;
    } else if (cmd.similarity == "scaled-dot") {
      sim = AffinitySimilarity::ScaledDot;
    } else {
      throw_invalid_parameter("unknown affinity similarity \"" + cmd.similarity + "\"");
    }
    params["similarity"] = cmd.similarity;
    const AffinityResult r = affinity_loss(features, *target, sim);
    report.metrics["loss"] = r.loss;
    report.metrics["mass"] = r.mass;
    report.metrics["pairs"] = target->pairs().size();
    if (cmd.task_loss) {
      params["lambda"] = cmd.lambda;
      report.metrics["total"] = *cmd.task_loss + cmd.lambda * r.loss;
    }
  } else if (cmd.kind == "reg-gap") {
    const std::vector<FeatureMatrix> layers = load_layers(cmd.layers);
    if (layers.empty()) throw_invalid_parameter("reg-gap: --layers is required");
    const LabelVector labels = load_labels(cmd.labels, layers.front().rows());
    std::vector<SparseGraph> graphs;
    for (const auto& layer : layers) {
      if (layer.rows() != layers.front().rows()) {
        throw_invalid_input("reg-gap: layers have different row counts");
      }
      if (cmd.layer_k == 0) {
        graphs.push_back(SparseGraph::from_dense(similarity_matrix(layer, CosineSimilarity{})));
      } else {
        graphs.push_back(knn_graph(layer, cmd.layer_k, CosineSimilarity{}));
      }
    }
    params["graph"] = cmd.layer_k == 0 ? "complete-cosine" : "knn-cosine";
    params["k"] = cmd.layer_k;
    report.metrics["regularizer"] = smoothness_gap_regularizer(graphs, labels);
    json gaps = json::array();
    for (std::size_t l = 0; l + 1 < graphs.size(); ++l) {
      gaps.push_back(smoothness_gap(graphs[l], graphs[l + 1], labels));
    }
    report.metrics["gaps"] = gaps;
  } else if (cmd.kind == "peer") {
    if (cmd.out.empty()) throw_invalid_parameter("peer: --out is required");
    const Eigen::MatrixXd input = io::read_matrix(cmd.features);
    PeerBank bank;
    for (const auto& p : cmd.peers) bank.peers.push_back(io::read_matrix(p));
    const Eigen::MatrixXd w = io::read_matrix(cmd.weights);
    if (w.size() < 1) throw io::InputError(cmd.weights, "missing attention parameters");
    const Eigen::VectorXd flat = Eigen::Map<const Eigen::VectorXd>(w.data(), w.size());
    bank.attention_weights = flat.head(flat.size() - 1);
    bank.attention_bias = flat[flat.size() - 1];
    bank.leaky_slope = cmd.slope;
    params["K"] = cmd.k;
    params["peers"] = cmd.peers.size();
    params["slope"] = cmd.slope;
    const PeerRegularization r = peer_regularize(input, bank, cmd.k);
    io::write_matrix(cmd.out, r.output);
    params["out"] = cmd.out;
    double worst = 0.0;
    for (const auto& c : r.coefficients) worst = std::max(worst, std::abs(c.sum() - 1.0));
    report.metrics["max_coefficient_sum_error"] = worst;
    report.metrics["pixels"] = r.output.rows();
  } else {
    throw_invalid_parameter("unknown losses subcommand \"" + cmd.kind + "\"");
  }
  return report;
}

RunReport run_bench_fewlabel(const BenchCommand& cmd) {
  BlobsConfig config;
  if (!cmd.blobs_config.empty()) {
    json j;
    try {
      if (cmd.blobs_config.front() == '{') {
        j = json::parse(cmd.blobs_config);
      } else {
        std::ifstream in(cmd.blobs_config);
        if (!in) throw io::InputError(cmd.blobs_config, "cannot open file");
        j = json::parse(in);
      }
      config.dim = j.value("dim", config.dim);
      config.classes = j.value("classes", config.classes);
      config.separation = j.value("separation", config.separation);
      config.stddev = j.value("stddev", config.stddev);
      config.unlabeled_per_class = j.value("unlabeled_per_class", config.unlabeled_per_class);
      config.offset = j.value("offset", config.offset);
    } catch (const json::exception& e) {
      throw io::InputError(cmd.blobs_config, std::string("invalid blobs config: ") + e.what());
    }
  }
  const FewLabelParams params{cmd.shots, cmd.k, cmd.alpha, cmd.m};
  const FewLabelSummary s = run_fewlabel_benchmark(config, params, cmd.trials, cmd.seed);

  RunReport report;
  report.command = "bench-fewlabel";
  auto& p = report.parameters;
  p["seed"] = cmd.seed;
  p["trials"] = cmd.trials;
  p["shots"] = cmd.shots;
  p["k"] = cmd.k;
  p["alpha"] = cmd.alpha;
  p["m"] = cmd.m;
  p["classifier"] = "nearest-class-mean";
  p["blobs"] = json{{"dim", config.dim},
                    {"classes", config.classes},
                    {"separation", config.separation},
                    {"stddev", config.stddev},
                    {"unlabeled_per_class", config.unlabeled_per_class},
                    {"offset", config.offset}};
  report.metrics["mean_raw"] = s.mean_raw;
  report.metrics["std_raw"] = s.std_raw;
  report.metrics["mean_diffused"] = s.mean_diffused;
  report.metrics["std_diffused"] = s.std_diffused;
  report.metrics["gain"] = s.gain();
  return report;
}

int run_guarded(const std::function<RunReport()>& command, std::ostream& out) {
  try {
    const RunReport report = command();
    out << serialize(report) << '\n';
    return kSuccess;
  } catch (const io::InputError& e) {
    json root = error_object("input-error", e.detail(), kInputError);
    root["error"]["path"] = e.path();
    if (e.offset()) root["error"]["offset"] = *e.offset();
    out << dump_json(root) << '\n';
    return kInputError;
  } catch (const Error& e) {
    const int code = e.kind() == ErrorKind::InvalidInput       ? kInputError
                     : e.kind() == ErrorKind::InvalidParameter ? kParameterError
                                                               : kNumericalFailure;
    out << dump_json(error_object(std::string(to_string(e.kind())), e.what(), code)) << '\n';
    return code;
  }
}

}  // namespace lgg::cli
