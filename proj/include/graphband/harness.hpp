#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "graphband/env.hpp"

namespace graphband {

struct ExperimentConfig {
  long T = 2048;
  int repeats = 40;
  int d = 10;
  int class_size = 50;
  int action_count = 50;

  std::string graph_kind = "clique_group";  // complete | clique_group | star | random | pool
  int cliques = 5;
  double dense_factor = 0.1;
  std::string edge_list_path;  // pool built from this when pool_dir is empty
  std::string pool_dir;        // persisted pool to load
  int pool_size = 100;
  int subgraph_size = 100;

  std::string policy = "adacbg";  // adacbg | adacbgfull | falcon | regcbg
  double eta = 1.0;
  double delta = 0.1;
  bool use_lp = true;
  double noise_sigma = 1.0;
  uint64_t master_seed = 1;
  std::string output_dir = ".";
};

void validate(const ExperimentConfig& cfg);  // throws std::runtime_error

PolicyKind parse_policy(const std::string& name);
GraphKind parse_graph_kind(const std::string& name);
std::string policy_tag(PolicyKind kind);  // csv prefix: ada / adafull / org / ind

// Resolves the configured graph family, loading or sampling a pool when
// needed (pool sampling is seeded from the master seed).
GraphSource make_graph_source(const ExperimentConfig& cfg);

struct AggregateCurves {
  std::vector<double> mean;
  std::vector<double> upper;  // mean + one population std
  std::vector<double> lower;  // mean - one population std
};

AggregateCurves aggregate(const std::vector<std::vector<double>>& traces);

// Fresh instance per repeat (seed derived from master seed and repeat
// index), episodes in a worker pool capped by GRAPHBAND_THREADS, aggregation
// ordered by repeat index so the thread count never changes the output.
AggregateCurves run_experiment(const ExperimentConfig& cfg);

// Header-free "t,value" rows, t = 1..len, shortest round-trip doubles.
void write_csv(const std::vector<double>& series, const std::string& path);

std::string csv_name(PolicyKind kind, const std::string& which, const std::string& gtype,
                     int repeats, int action_count);

// Flat "key = value" file; '#' lines are comments. Unknown keys are errors.
void apply_config_file(const std::string& path, ExperimentConfig& cfg);

// Property suites runnable from the CLI: exploration-set combinatorics
// against the brute-force independence oracle, simplex against vertex
// enumeration, and the per-round optimization inequalities on live runs.
// Returns 0 when every suite passes.
int run_selftest(std::ostream& out);

int cli_main(int argc, const char* const* argv);

}  // namespace graphband
