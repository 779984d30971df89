#include <filesystem>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphband/harness.hpp"

namespace graphband {

namespace {

void add_experiment_flags(CLI::App* cmd, ExperimentConfig& cfg) {
  cmd->add_option("--T", cfg.T, "time horizon");
  cmd->add_option("--repeats", cfg.repeats, "independent repeats per configuration");
  cmd->add_option("--d", cfg.d, "context/action dimension");
  cmd->add_option("--class-size", cfg.class_size, "function class size");
  cmd->add_option("--actions", cfg.action_count, "action set size");
  cmd->add_option("--graph", cfg.graph_kind, "complete|clique_group|star|random|pool");
  cmd->add_option("--cliques", cfg.cliques, "clique count for clique_group");
  cmd->add_option("--dense-factor", cfg.dense_factor, "edge budget factor for random graphs");
  cmd->add_option("--edges", cfg.edge_list_path, "edge-list file for pool graphs");
  cmd->add_option("--pool-dir", cfg.pool_dir, "persisted pool directory");
  cmd->add_option("--pool-size", cfg.pool_size, "subgraphs per pool");
  cmd->add_option("--subgraph-size", cfg.subgraph_size, "nodes per pooled subgraph");
  cmd->add_option("--policy", cfg.policy, "adacbg|adacbgfull|falcon|regcbg");
  cmd->add_option("--eta", cfg.eta, "exploration tuning parameter");
  cmd->add_option("--delta", cfg.delta, "confidence parameter");
  cmd->add_flag("--no-lp", [&cfg](size_t) { cfg.use_lp = false; }, "skip the sampling-LP refinement");
  cmd->add_option("--sigma", cfg.noise_sigma, "reward noise std");
  cmd->add_option("--seed", cfg.master_seed, "master seed");
  cmd->add_option("--out", cfg.output_dir, "output directory for CSV files");
}

void print_config(const ExperimentConfig& cfg) {
  std::cout << "config: T=" << cfg.T << " repeats=" << cfg.repeats << " d=" << cfg.d
            << " class_size=" << cfg.class_size << " actions=" << cfg.action_count
            << " graph=" << cfg.graph_kind;
  if (cfg.graph_kind == "clique_group") std::cout << " cliques=" << cfg.cliques;
  if (cfg.graph_kind == "random") std::cout << " dense_factor=" << cfg.dense_factor;
  if (cfg.graph_kind == "pool") {
    if (!cfg.pool_dir.empty())
      std::cout << " pool_dir=" << cfg.pool_dir;
    else
      std::cout << " edges=" << cfg.edge_list_path << " pool_size=" << cfg.pool_size
                << " subgraph_size=" << cfg.subgraph_size;
  }
  std::cout << " policy=" << cfg.policy << " eta=" << cfg.eta << " delta=" << cfg.delta
            << " use_lp=" << (cfg.use_lp ? "true" : "false") << " sigma=" << cfg.noise_sigma
            << " out=" << cfg.output_dir << "\n"
            << "master seed: " << cfg.master_seed << "\n";
}

std::vector<std::string> write_curves(const ExperimentConfig& cfg, const AggregateCurves& curves) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  const PolicyKind kind = parse_policy(cfg.policy);
  std::vector<std::string> paths;
  const std::pair<const char*, const std::vector<double>*> series[] = {
      {"mean", &curves.mean}, {"upper", &curves.upper}, {"lower", &curves.lower}};
  for (const auto& [which, data] : series) {
    const std::string path =
        (fs::path(cfg.output_dir) / csv_name(kind, which, cfg.graph_kind, cfg.repeats, cfg.action_count))
            .string();
    write_csv(*data, path);
    paths.push_back(path);
  }
  return paths;
}

int do_run(ExperimentConfig cfg) {
  validate(cfg);
  print_config(cfg);
  const AggregateCurves curves = run_experiment(cfg);
  const auto paths = write_curves(cfg, curves);
  const double std_final = curves.upper.back() - curves.mean.back();
  std::cout << "final cumulative regret: mean " << curves.mean.back() << " (std " << std_final << ")\n";
  for (const auto& p : paths) std::cout << "wrote " << p << "\n";
  return 0;
}

int do_sweep(ExperimentConfig cfg, std::vector<int> sweep) {
  if (sweep.empty()) sweep = {20, 40, 60, 80, 100};
  struct Row {
    int actions;
    double mean, sd;
  };
  std::vector<Row> rows;
  for (int k : sweep) {
    cfg.action_count = k;
    validate(cfg);
    print_config(cfg);
    const AggregateCurves curves = run_experiment(cfg);
    write_curves(cfg, curves);
    rows.push_back({k, curves.mean.back(), curves.upper.back() - curves.mean.back()});
  }
  std::cout << "\nactions  final regret mean(std)\n";
  for (const auto& row : rows)
    std::cout << std::setw(7) << row.actions << "  " << std::fixed << std::setprecision(2) << row.mean
              << " (" << row.sd << ")\n";
  std::cout.unsetf(std::ios::fixed);
  bool monotone = true;
  for (size_t i = 1; i < rows.size(); ++i)
    if (rows[i].mean > rows[i - 1].mean) monotone = false;
  std::cout << (monotone ? "note: mean regret non-increasing in the action count\n"
                         : "note: mean regret not monotone in the action count (trend is statistical)\n");
  return 0;
}

int do_pool(const std::string& edges, int pool_size, int subgraph_size, const std::string& out_dir,
            uint64_t seed) {
  Rng rng(derive_seed(seed, ~uint64_t{0}));
  const GraphSource source = build_pool(load_edge_list(edges), pool_size, subgraph_size, rng);
  save_pool(source, out_dir);
  std::cout << "wrote " << source.pool.size() << " subgraphs of size " << subgraph_size << " to "
            << out_dir << "\n";
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"contextual bandit simulation with graph feedback"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string config_path;

  // the config file seeds the defaults, explicit flags win; applied before
  // the full parse so CLI11 only overwrites what was actually supplied
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      config_path = argv[i + 1];
      break;
    }
  }
  try {
    if (!config_path.empty()) apply_config_file(config_path, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  CLI::App* run = app.add_subcommand("run", "run one experiment and write regret CSVs");
  run->add_option("--config", config_path, "flat key = value config file");
  add_experiment_flags(run, cfg);

  CLI::App* sweep = app.add_subcommand("sweep", "action-count sweep with a summary table");
  sweep->add_option("--config", config_path, "flat key = value config file");
  add_experiment_flags(sweep, cfg);
  std::vector<int> sweep_actions;
  sweep->add_option("--sweep-actions", sweep_actions, "action counts to sweep (default 20..100)");

  CLI::App* pool = app.add_subcommand("pool", "sample and persist a connected-subgraph pool");
  std::string pool_edges, pool_out = "pool";
  int pool_size = 100, subgraph_size = 100;
  uint64_t pool_seed = 1;
  pool->add_option("--edges", pool_edges, "edge-list file")->required();
  pool->add_option("--pool-size", pool_size, "number of subgraphs");
  pool->add_option("--subgraph-size", subgraph_size, "nodes per subgraph");
  pool->add_option("--out", pool_out, "output directory");
  pool->add_option("--seed", pool_seed, "sampling seed");

  CLI::App* selftest = app.add_subcommand("selftest", "run the property suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (run->parsed()) return do_run(cfg);
    if (sweep->parsed()) return do_sweep(cfg, sweep_actions);
    if (pool->parsed()) return do_pool(pool_edges, pool_size, subgraph_size, pool_out, pool_seed);
    if (selftest->parsed()) return run_selftest(std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace graphband
