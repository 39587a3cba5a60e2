#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "lgg/version.hpp"

namespace {

using namespace lgg::cli;

void add_graph_options(CLI::App* app, GraphOptions& g) {
  app->add_option("--k", g.k, "neighbors per vertex")->capture_default_str();
  app->add_option("--similarity", g.similarity, "cosine | rbf")->capture_default_str();
  app->add_option("--alpha", g.alpha, "rbf scale")->capture_default_str();
  app->add_option("--metric", g.metric, "rbf distance: euclidean | cosine")->capture_default_str();
  app->add_option("--symmetrize", g.symmetrize, "union | add-transpose")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latent geometry graph toolkit"};
  app.set_version_flag("--version", std::string(lgg::kVersion));
  app.require_subcommand(1);

  GraphCommand graph_cmd;
  auto* graph = app.add_subcommand("graph", "build a k-NN similarity graph");
  graph->add_option("features", graph_cmd.features, "feature matrix")->required();
  add_graph_options(graph, graph_cmd.graph);
  graph->add_option("--out", graph_cmd.out, "edge-list CSV output")->required();

  SmoothnessCommand smooth_cmd;
  auto* smooth = app.add_subcommand("smoothness", "label-signal smoothness on a k-NN graph");
  smooth->add_option("features", smooth_cmd.features, "feature matrix")->required();
  smooth->add_option("labels", smooth_cmd.labels, "single-column labels")->required();
  add_graph_options(smooth, smooth_cmd.graph);

  FilterCommand filter_cmd;
  auto* filter = app.add_subcommand("filter", "apply a graph filter to a signal");
  filter->add_option("signal", filter_cmd.signal, "signal matrix, one row per vertex")->required();
  filter->add_option("--graph", filter_cmd.graph_path, "edge-list CSV");
  filter->add_option("--features", filter_cmd.features_path, "features for a k-NN graph");
  add_graph_options(filter, filter_cmd.graph);
  filter->add_option("--filter", filter_cmd.filter, "simoncelli | heat | diffusion | table")
      ->capture_default_str();
  filter->add_option("--tau", filter_cmd.tau)->capture_default_str();
  filter->add_option("--scale", filter_cmd.scale, "heat scale")->capture_default_str();
  filter->add_option("--a", filter_cmd.a, "diffusion step")->capture_default_str();
  filter->add_option("--m", filter_cmd.m, "diffusion steps")->capture_default_str();
  filter->add_option("--operator", filter_cmd.op,
                     "combinatorial | normalized | adjacency-normalized")
      ->capture_default_str();
  filter->add_option("--table", filter_cmd.table, "per-frequency gains");
  filter->add_option("--method", filter_cmd.method, "exact | chebyshev")->capture_default_str();
  filter->add_option("--order", filter_cmd.order, "chebyshev order")->capture_default_str();
  filter->add_option("--out", filter_cmd.out, "filtered matrix output")->required();

  DenoiseCommand denoise_cmd;
  auto* denoise = app.add_subcommand("denoise", "graph-diffuse features and propagate labels");
  denoise->add_option("features", denoise_cmd.features, "feature matrix")->required();
  denoise->add_option("labels", denoise_cmd.labels, "partial labels `index,class`")->required();
  denoise->add_option("--k", denoise_cmd.k)->capture_default_str();
  denoise->add_option("--alpha", denoise_cmd.alpha, "self-loop weight")->capture_default_str();
  denoise->add_option("--m", denoise_cmd.m, "diffusion steps")->capture_default_str();
  denoise->add_flag("--propagate", denoise_cmd.propagate, "run label propagation");
  denoise->add_option("--label-alpha", denoise_cmd.label_alpha, "propagation alpha")
      ->capture_default_str();
  denoise->add_option("--propagation", denoise_cmd.propagation, "closed-form | iterative")
      ->capture_default_str();
  denoise->add_option("--classes", denoise_cmd.classes, "number of classes");
  denoise->add_option("--out", denoise_cmd.out, "diffused feature output");
  denoise->add_option("--pseudo-out", denoise_cmd.pseudo_out, "pseudo-label CSV output");

  LossesCommand loss_cmd;
  auto* losses = app.add_subcommand("losses", "evaluate a graph-based loss");
  losses->require_subcommand(1);

  auto* sl = losses->add_subcommand("smoothness-loss", "label smoothness of network outputs");
  sl->add_option("features", loss_cmd.features, "outputs matrix")->required();
  sl->add_option("labels", loss_cmd.labels, "single-column labels")->required();
  sl->add_option("--alpha", loss_cmd.alpha)->capture_default_str();
  sl->add_option("--k", loss_cmd.k)->capture_default_str();
  sl->add_option("--metric", loss_cmd.metric, "euclidean | cosine")->capture_default_str();

  auto* gkd = losses->add_subcommand("gkd", "graph knowledge distillation loss");
  gkd->add_option("--teacher", loss_cmd.teacher, "teacher layer matrices")->required();
  gkd->add_option("--student", loss_cmd.student, "student layer matrices")->required();
  gkd->add_option("--labels", loss_cmd.labels, "single-column labels");
  gkd->add_flag("--task-specific", loss_cmd.task_specific, "keep same-class edges only");
  gkd->add_option("--task-loss", loss_cmd.task_loss);
  gkd->add_option("--lambda", loss_cmd.lambda)->capture_default_str();

  auto* aff = losses->add_subcommand("affinity", "attention affinity loss");
  aff->add_option("features", loss_cmd.features, "feature matrix")->required();
  aff->add_option("--pairs", loss_cmd.pairs, "pair list `i,j`");
  aff->add_option("--labels", loss_cmd.labels, "same-class pairs from labels");
  aff->add_option("--similarity", loss_cmd.similarity, "cosine | scaled-dot")
      ->capture_default_str();
  aff->add_option("--task-loss", loss_cmd.task_loss);
  aff->add_option("--lambda", loss_cmd.lambda)->capture_default_str();

  auto* gap = losses->add_subcommand("reg-gap", "smoothness-gap regularizer across layers");
  gap->add_option("--layers", loss_cmd.layers, "layer matrices in order")->required();
  gap->add_option("--labels", loss_cmd.labels, "single-column labels")->required();
  gap->add_option("--k", loss_cmd.layer_k, "k-NN per layer; 0 uses complete graphs")
      ->capture_default_str();

  auto* peer = losses->add_subcommand("peer", "peer regularization of a feature map");
  peer->add_option("features", loss_cmd.features, "input map, pixels x channels")->required();
  peer->add_option("--peers", loss_cmd.peers, "peer maps")->required();
  peer->add_option("--weights", loss_cmd.weights, "2d attention weights then the bias")
      ->required();
  peer->add_option("--k", loss_cmd.k)->capture_default_str();
  peer->add_option("--slope", loss_cmd.slope, "leaky ReLU slope")->capture_default_str();
  peer->add_option("--out", loss_cmd.out, "regularized map output")->required();

  BenchCommand bench_cmd;
  auto* bench = app.add_subcommand("bench-fewlabel", "few-label accuracy on synthetic blobs");
  bench->add_option("--seed", bench_cmd.seed)->capture_default_str();
  bench->add_option("--trials", bench_cmd.trials)->capture_default_str();
  bench->add_option("--shots", bench_cmd.shots)->capture_default_str();
  bench->add_option("--blobs-config", bench_cmd.blobs_config, "JSON file or inline object");
  bench->add_option("--k", bench_cmd.k)->capture_default_str();
  bench->add_option("--alpha", bench_cmd.alpha)->capture_default_str();
  bench->add_option("--m", bench_cmd.m)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParameterError;
  }

  std::function<RunReport()> run;
  if (*graph) {
    run = [&] { return run_graph(graph_cmd); };
  } else if (*smooth) {
    run = [&] { return run_smoothness(smooth_cmd); };
  } else if (*filter) {
    run = [&] { return run_filter(filter_cmd); };
  } else if (*denoise) {
    run = [&] { return run_denoise(denoise_cmd); };
  } else if (*losses) {
    loss_cmd.kind = losses->get_subcommands().front()->get_name();
    run = [&] { return run_losses(loss_cmd); };
  } else {
    run = [&] { return run_bench_fewlabel(bench_cmd); };
  }
  return run_guarded(run, std::cout);
}
