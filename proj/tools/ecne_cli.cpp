// Command-line front end: embed (edge embeddings for a graph), linkpred
// (path-based link prediction), eval (edge classification / clustering),
// inspect (graph and line-graph statistics, debug dumps).

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecne/ecne.hpp"

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string input_stem(const std::string& path) {
  return fs::path(path).stem().string();
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ecne::RunConfig cfg;
std::string config_path;
std::string eval_task;
std::string node_emb_path;
std::string combine_op_name = "average";
std::string emb_path_override;
std::string dump_centrality_path;
std::string dump_linegraph_path;
double train_frac = 0.0;  // 0 = sweep 0.1 .. 0.9

// Flag values are staged here and only override the config file when the
// flag was actually given.
void attach_common_flags(CLI::App* cmd, bool with_lp_flags) {
  cmd->add_option("--config", config_path, "flat key=value config file");
  cmd->add_option("--input", cfg.input, "edge-list file");
  cmd->add_option("--mode", cfg.mode, "ecne | ecne-d");
  cmd->add_option("--dim", cfg.dim, "embedding width (fixed mode)");
  cmd->add_option("--walks", cfg.walks, "walks per line-node");
  cmd->add_option("--walk-len", cfg.walk_len, "max walk length");
  cmd->add_option("--window", cfg.window, "skip-gram window");
  cmd->add_option("--neg", cfg.neg, "negative samples per pair");
  cmd->add_option("--sg-epochs", cfg.sg_epochs, "skip-gram epochs");
  cmd->add_option("--seed", cfg.seed, "base RNG seed");
  cmd->add_option("--threads", cfg.threads,
                  "worker threads (ECNE_THREADS as fallback)");
  cmd->add_option("--out", cfg.out_dir, "output directory");
  if (with_lp_flags) {
    cmd->add_option("--agg", cfg.agg, "aggregator: avg | max | lstm");
    cmd->add_option(
        "--lengths",
        [](const std::vector<std::string>& vals) {
          cfg.lengths = ecne::detail::parse_lengths(vals.back());
          return true;
        },
        "comma-separated path lengths");
    cmd->add_option("--max-paths", cfg.max_paths, "path cap per length");
    cmd->add_option("--lr", cfg.lr, "optimizer learning rate");
    cmd->add_option("--epochs", cfg.epochs, "max training epochs");
    cmd->add_option("--hidden", cfg.hidden, "hidden width");
    cmd->add_option("--batch", cfg.batch, "mini-batch size");
    cmd->add_option("--split", cfg.split, "train fraction (0 = auto)");
    cmd->add_option("--runs", cfg.runs, "independent runs to average");
  }
}

// Config file first, then re-apply any explicitly given flags on top.
void finalize_config(CLI::App* cmd) {
  if (const char* env = std::getenv("ECNE_THREADS");
      env && cmd->count("--threads") == 0)
    cfg.threads = std::atoi(env);
  if (!config_path.empty()) {
    ecne::RunConfig from_file = cfg;
    ecne::load_config_file(from_file, config_path);
    // flags win over file values
    auto keep = [&](const char* flag, auto member) {
      if (cmd->get_option_no_throw(flag) && cmd->count(flag))
        from_file.*member = cfg.*member;
    };
    keep("--input", &ecne::RunConfig::input);
    keep("--mode", &ecne::RunConfig::mode);
    keep("--dim", &ecne::RunConfig::dim);
    keep("--walks", &ecne::RunConfig::walks);
    keep("--walk-len", &ecne::RunConfig::walk_len);
    keep("--window", &ecne::RunConfig::window);
    keep("--neg", &ecne::RunConfig::neg);
    keep("--sg-epochs", &ecne::RunConfig::sg_epochs);
    keep("--seed", &ecne::RunConfig::seed);
    keep("--threads", &ecne::RunConfig::threads);
    keep("--out", &ecne::RunConfig::out_dir);
    keep("--agg", &ecne::RunConfig::agg);
    keep("--lengths", &ecne::RunConfig::lengths);
    keep("--max-paths", &ecne::RunConfig::max_paths);
    keep("--lr", &ecne::RunConfig::lr);
    keep("--epochs", &ecne::RunConfig::epochs);
    keep("--hidden", &ecne::RunConfig::hidden);
    keep("--batch", &ecne::RunConfig::batch);
    keep("--split", &ecne::RunConfig::split);
    keep("--runs", &ecne::RunConfig::runs);
    cfg = from_file;
  }
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (cfg.input.empty()) throw UsageError("no input file given (--input)");
  if (!fs::exists(cfg.input))
    throw UsageError("input file does not exist: " + cfg.input);
}

ecne::PipelineOptions pipeline_options() {
  ecne::PipelineOptions opt;
  opt.mode = cfg.dimension_mode();
  opt.d_fixed = cfg.dim;
  opt.clamp_epsilon = cfg.clamp_epsilon;
  opt.walk.walks_per_node = cfg.walks;
  opt.walk.max_walk_length = cfg.walk_len;
  opt.walk.window = cfg.window;
  opt.walk.negative_samples = cfg.neg;
  opt.walk.epochs = cfg.sg_epochs;
  opt.walk.lr_start = cfg.sg_lr_start;
  opt.walk.lr_end = cfg.sg_lr_end;
  opt.walk.seed = cfg.seed;
  opt.walk.threads = cfg.threads;
  return opt;
}

int cmd_embed() {
  auto t0 = Clock::now();
  ecne::Graph g = ecne::load_edge_list(cfg.input);
  double load_ms = ms_since(t0);

  fs::create_directories(cfg.out_dir);
  const std::string stem = input_stem(cfg.input);
  const std::string base = (fs::path(cfg.out_dir) / stem).string();

  t0 = Clock::now();
  ecne::PipelineResult res = ecne::ecne_pipeline(g, pipeline_options());
  double pipeline_ms = ms_since(t0);

  ecne::save_embeddings(res.embeddings, ecne::edge_names(g), base + ".emb");
  ecne::save_remap_table(g, base + ".remap.tsv");

  nlohmann::json manifest;
  manifest["config_digest"] = hex64(ecne::config_digest(cfg));
  manifest["seed"] = cfg.seed;
  manifest["input"] = cfg.input;
  manifest["nodes"] = g.node_count();
  manifest["edges"] = g.edge_count();
  manifest["line_nodes"] = res.line_nodes;
  manifest["line_edges"] = res.line_edges;
  manifest["dim"] = res.dim;
  manifest["mode"] = cfg.mode;
  manifest["dropped_self_loops"] = g.dropped_self_loops();
  manifest["collapsed_duplicates"] = g.collapsed_duplicates();
  manifest["timings_ms"] = {{"load", load_ms}, {"pipeline", pipeline_ms}};
  std::ofstream mf(base + ".manifest.json");
  mf << manifest.dump(2) << '\n';

  std::cout << "embed: " << g.node_count() << " nodes, " << g.edge_count()
            << " edges -> " << res.line_nodes << " line-nodes, "
            << res.line_edges << " line-edges, d=" << res.dim << "\n"
            << "wrote " << base << ".emb\n";
  return 0;
}

int cmd_linkpred() {
  ecne::Graph g = ecne::load_edge_list(cfg.input);
  fs::create_directories(cfg.out_dir);
  const std::string stem = input_stem(cfg.input);
  const std::string base = (fs::path(cfg.out_dir) / stem).string();
  const auto kind = ecne::aggregator_from_name(cfg.agg);

  std::vector<double> aucs;
  for (std::size_t run = 0; run < cfg.runs; ++run) {
    const std::uint64_t run_seed = cfg.seed + run;

    ecne::DatasetOptions dopt;
    dopt.lengths = cfg.lengths;
    dopt.max_paths = cfg.max_paths;
    dopt.split_ratio = cfg.split;
    dopt.seed = run_seed;
    dopt.threads = cfg.threads;
    ecne::LinkDataset ds = ecne::build_dataset(g, dopt);

    auto popt = pipeline_options();
    popt.walk.seed = run_seed;
    ecne::PipelineResult emb = ecne::ecne_pipeline(ds.train_graph, popt);

    typename ecne::LinkModel<float>::Config mcfg;
    mcfg.kind = kind;
    mcfg.lengths = cfg.lengths;
    mcfg.embed_dim = emb.dim;
    mcfg.hidden = cfg.hidden;
    mcfg.seed = run_seed;
    ecne::LinkModel<float> model(mcfg);

    ecne::TrainOptions topt;
    topt.lr = cfg.lr;
    topt.max_epochs = cfg.epochs;
    topt.patience = cfg.patience;
    topt.batch_size = cfg.batch;
    topt.seed = run_seed;
    ecne::TrainHistory hist =
        ecne::train_link_model(model, ds, emb.embeddings, topt);

    auto scored = ecne::score_examples(model, ds.test, emb.embeddings);
    double run_auc = ecne::auc(scored);
    aucs.push_back(run_auc);

    const std::string run_tag = ".run" + std::to_string(run + 1);
    std::vector<std::tuple<ecne::NodeId, ecne::NodeId, int, double>> rows;
    for (std::size_t i = 0; i < ds.test.size(); ++i)
      rows.emplace_back(ds.test[i].u, ds.test[i].v, ds.test[i].label,
                        scored[i].first);
    ecne::save_predictions(g, rows, base + run_tag + ".pred.tsv");
    ecne::save_checkpoint(model.tensors(), base + run_tag + ".ckpt.json",
                          {{"aggregator", cfg.agg},
                           {"seed", std::to_string(run_seed)}});

    std::uint64_t neg_digest = 1469598103934665603ULL;
    auto digest_pair = [&](ecne::NodeId a, ecne::NodeId b) {
      for (std::uint64_t x : {static_cast<std::uint64_t>(a),
                              static_cast<std::uint64_t>(b)}) {
        neg_digest ^= x;
        neg_digest *= 1099511628211ULL;
      }
    };
    std::size_t train_neg = 0, test_neg = 0;
    for (const auto& ex : ds.train)
      if (!ex.label) {
        ++train_neg;
        digest_pair(ex.u, ex.v);
      }
    for (const auto& ex : ds.test)
      if (!ex.label) {
        ++test_neg;
        digest_pair(ex.u, ex.v);
      }
    nlohmann::json dm;
    dm["split_ratio"] = ds.split_ratio;
    dm["seed"] = run_seed;
    dm["train_examples"] = ds.train.size();
    dm["test_examples"] = ds.test.size();
    dm["train_negatives"] = train_neg;
    dm["test_negatives"] = test_neg;
    dm["negative_digest"] = hex64(neg_digest);
    std::ofstream(base + run_tag + ".dataset.json") << dm.dump(2) << '\n';

    std::cout << "run " << (run + 1) << "/" << cfg.runs << ": AUC=" << run_auc
              << " (epochs=" << hist.epochs.size()
              << ", best=" << hist.best_epoch << ")\n";
  }

  std::string method = (cfg.mode == "ecne-d" ? "ECNED-LP-" : "ECNE-LP-");
  for (char c : cfg.agg) method += static_cast<char>(std::toupper(c));
  auto report = ecne::aggregate_runs("linkpred", "AUC", aucs);
  std::ofstream rf(base + ".report.tsv", std::ios::app);
  ecne::append_metric_rows(rf, stem, method, {report});
  std::cout << method << " AUC=" << report.value << " +- " << report.stddev
            << " over " << report.runs << " runs\n";
  return 0;
}

ecne::EmbeddingMatrix eval_edge_embeddings(const ecne::Graph& g) {
  if (!node_emb_path.empty()) {
    // indirect baseline: combine endpoint node vectors
    auto named = ecne::load_embeddings(node_emb_path);
    std::map<std::string, std::size_t> row_of;
    for (std::size_t i = 0; i < named.names.size(); ++i)
      row_of[named.names[i]] = i;
    auto op = ecne::combine_op_from_name(combine_op_name);
    ecne::EmbeddingMatrix out(g.edge_count(), named.matrix.dim);
    for (ecne::EdgeId e = 0; e < g.edge_count(); ++e) {
      const auto& [u, v] = g.endpoints(e);
      auto fu = row_of.find(g.label(u));
      auto fv = row_of.find(g.label(v));
      if (fu == row_of.end() || fv == row_of.end())
        throw std::runtime_error("node embedding missing for edge " +
                                 g.edge_name(e));
      auto vec = ecne::combine_node_embeddings(
          named.matrix, static_cast<ecne::NodeId>(fu->second),
          static_cast<ecne::NodeId>(fv->second), op);
      std::copy(vec.begin(), vec.end(), out.row(e));
    }
    return out;
  }
  if (!emb_path_override.empty()) {
    auto named = ecne::load_embeddings(emb_path_override);
    // rows must line up with canonical edge ids
    auto expect = ecne::edge_names(g);
    if (named.names != expect)
      throw std::runtime_error(
          "embedding file rows do not match this graph's edges");
    return std::move(named.matrix);
  }
  return ecne::ecne_pipeline(g, pipeline_options()).embeddings;
}

int cmd_eval() {
  if (eval_task != "classify" && eval_task != "cluster")
    throw UsageError("unknown eval task '" + eval_task +
                     "' (expected classify or cluster)");
  ecne::Graph g = ecne::load_edge_list(cfg.input);
  fs::create_directories(cfg.out_dir);
  const std::string stem = input_stem(cfg.input);
  const std::string base = (fs::path(cfg.out_dir) / stem).string();

  std::string method;
  if (!node_emb_path.empty())
    method = "combine-" + combine_op_name;
  else
    method = cfg.mode == "ecne-d" ? "ECNED" : "ECNE";

  auto part = ecne::detect_communities(g);
  auto labels = ecne::label_edges(g, part);
  std::cout << "communities: " << part.count
            << " (modularity " << part.modularity << "), labeled edges "
            << labels.labeled << "/" << g.edge_count() << "\n";

  ecne::EmbeddingMatrix emb = eval_edge_embeddings(g);

  std::vector<ecne::MetricReport> rows;
  if (eval_task == "classify") {
    std::vector<double> fracs;
    if (train_frac > 0.0)
      fracs.push_back(train_frac);
    else
      for (int p = 1; p <= 9; ++p) fracs.push_back(p / 10.0);
    for (double f : fracs) {
      std::vector<double> micro, macro;
      for (std::size_t run = 0; run < cfg.runs; ++run) {
        auto res = ecne::classify_edges(emb, labels, f, cfg.seed + run);
        micro.push_back(res.f1.micro);
        macro.push_back(res.f1.macro);
      }
      std::string task = "classify@" + std::to_string(static_cast<int>(f * 100));
      rows.push_back(ecne::aggregate_runs(task, "micro-F1", micro));
      rows.push_back(ecne::aggregate_runs(task, "macro-F1", macro));
    }
  } else {
    std::vector<std::size_t> ids;
    std::vector<long long> truth;
    for (std::size_t e = 0; e < labels.label.size(); ++e)
      if (labels.label[e] >= 0) {
        ids.push_back(e);
        truth.push_back(labels.label[e]);
      }
    std::vector<double> nmis;
    for (std::size_t run = 0; run < cfg.runs; ++run) {
      auto clus = ecne::cluster_edges(emb, ids, part.count, cfg.seed + run);
      nmis.push_back(ecne::nmi(clus.assignment, truth));
    }
    rows.push_back(ecne::aggregate_runs("cluster", "NMI", nmis));
  }

  std::ofstream rf(base + ".report.tsv", std::ios::app);
  ecne::append_metric_rows(rf, stem, method, rows);
  for (const auto& r : rows)
    std::cout << r.task << " " << r.metric << " = " << r.value << " +- "
              << r.stddev << "\n";
  return 0;
}

int cmd_inspect() {
  ecne::Graph g = ecne::load_edge_list(cfg.input);
  auto comps = ecne::connected_components(g);
  std::size_t dmin = g.node_count() ? g.degree(0) : 0, dmax = 0, dsum = 0;
  for (ecne::NodeId v = 0; v < g.node_count(); ++v) {
    dmin = std::min(dmin, g.degree(v));
    dmax = std::max(dmax, g.degree(v));
    dsum += g.degree(v);
  }
  auto [vl, el] = ecne::size_estimate(g);
  std::cout << "nodes: " << g.node_count() << "\nedges: " << g.edge_count()
            << "\ncomponents: " << comps.count << "\ndegree min/avg/max: "
            << dmin << "/"
            << (g.node_count() ? static_cast<double>(dsum) / g.node_count() : 0)
            << "/" << dmax << "\nline graph: " << vl << " nodes, " << el
            << " edges\nself-loops dropped: " << g.dropped_self_loops()
            << "\nduplicates collapsed: " << g.collapsed_duplicates() << "\n";

  if (!dump_centrality_path.empty() || !dump_linegraph_path.empty()) {
    ecne::CfbOptions copt;
    copt.threads = cfg.threads;
    auto cb = ecne::current_flow_betweenness(g, copt);
    if (!dump_centrality_path.empty())
      ecne::save_centrality(cb, dump_centrality_path);
    if (!dump_linegraph_path.empty()) {
      auto lg = ecne::build_line_graph(g);
      ecne::weight_edges(lg, g, ecne::clamp(cb, cfg.clamp_epsilon));
      ecne::save_line_graph(lg, g, dump_linegraph_path);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edge-centric network embeddings and path-based link prediction"};
  app.require_subcommand(1);

  auto* embed = app.add_subcommand("embed", "compute edge embeddings");
  attach_common_flags(embed, false);
  embed->add_option("--sg-lr-start", cfg.sg_lr_start, "initial skip-gram lr");
  embed->add_option("--sg-lr-end", cfg.sg_lr_end, "final skip-gram lr");
  embed->add_option("--clamp-epsilon", cfg.clamp_epsilon,
                    "centrality clamp floor");

  auto* linkpred = app.add_subcommand("linkpred", "train a link predictor");
  attach_common_flags(linkpred, true);

  auto* evalc = app.add_subcommand("eval", "edge classification / clustering");
  attach_common_flags(evalc, false);
  evalc->add_option("--task", eval_task, "classify | cluster")->required();
  evalc->add_option("--train-frac", train_frac,
                    "labeled fraction (0 = sweep 10%..90%)");
  evalc->add_option("--runs", cfg.runs, "independent runs to average");
  evalc->add_option("--emb", emb_path_override,
                    "reuse an existing edge-embedding file");
  evalc->add_option("--node-emb", node_emb_path,
                    "node embeddings for the indirect baseline");
  evalc->add_option("--combine-op", combine_op_name,
                    "average | hadamard | weighted-l1 | weighted-l2");

  auto* inspect = app.add_subcommand("inspect", "graph statistics and dumps");
  attach_common_flags(inspect, false);
  inspect->add_option("--dump-centrality", dump_centrality_path,
                      "write node_id\\tcb TSV");
  inspect->add_option("--dump-linegraph", dump_linegraph_path,
                      "write weighted line-graph TSV");

  CLI::App* picked = nullptr;
  try {
    app.parse(argc, argv);
    picked = app.get_subcommands().front();
    finalize_config(picked);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (picked == embed) return cmd_embed();
    if (picked == linkpred) return cmd_linkpred();
    if (picked == evalc) return cmd_eval();
    return cmd_inspect();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
