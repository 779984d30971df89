#include "graphband/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace graphband {

void validate(const ExperimentConfig& cfg) {
  auto fail = [](const std::string& msg) { throw std::runtime_error("config: " + msg); };
  if (cfg.T < 1) fail("T must be >= 1");
  if (cfg.repeats < 1) fail("repeats must be >= 1");
  if (cfg.d < 1) fail("d must be >= 1");
  if (cfg.class_size < 1) fail("class_size must be >= 1");
  if (cfg.action_count < 1) fail("actions must be >= 1");
  if (cfg.delta <= 0.0 || cfg.delta >= 1.0) fail("delta must be in (0,1)");
  if (cfg.eta <= 0.0) fail("eta must be > 0");
  if (cfg.noise_sigma < 0.0) fail("sigma must be >= 0");
  parse_policy(cfg.policy);
  const GraphKind kind = parse_graph_kind(cfg.graph_kind);
  switch (kind) {
    case GraphKind::clique_group:
      if (cfg.cliques < 1 || cfg.cliques > cfg.action_count) fail("cliques must be in [1, actions]");
      break;
    case GraphKind::star:
      if (cfg.action_count < 2) fail("star graphs need at least 2 actions");
      break;
    case GraphKind::random:
      if (cfg.dense_factor < 0.0) fail("dense_factor must be >= 0");
      break;
    case GraphKind::pool:
      if (cfg.pool_dir.empty() && cfg.edge_list_path.empty()) fail("pool graphs need pool_dir or edges");
      if (cfg.pool_dir.empty()) {
        if (cfg.pool_size < 1) fail("pool_size must be >= 1");
        if (cfg.subgraph_size != cfg.action_count) fail("subgraph_size must equal actions");
      }
      break;
    case GraphKind::complete:
      break;
  }
}

PolicyKind parse_policy(const std::string& name) {
  if (name == "adacbg") return PolicyKind::AdaCBG;
  if (name == "adacbgfull") return PolicyKind::AdaCBGFull;
  if (name == "falcon") return PolicyKind::FALCON;
  if (name == "regcbg") return PolicyKind::RegCBGOffline;
  throw std::runtime_error("config: unknown policy '" + name + "'");
}

GraphKind parse_graph_kind(const std::string& name) {
  if (name == "complete") return GraphKind::complete;
  if (name == "clique_group") return GraphKind::clique_group;
  if (name == "star") return GraphKind::star;
  if (name == "random") return GraphKind::random;
  if (name == "pool") return GraphKind::pool;
  throw std::runtime_error("config: unknown graph kind '" + name + "'");
}

std::string policy_tag(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::AdaCBG:
      return "ada";
    case PolicyKind::AdaCBGFull:
      return "adafull";
    case PolicyKind::FALCON:
      return "org";
    case PolicyKind::RegCBGOffline:
      return "ind";
  }
  return "unknown";
}

namespace {

constexpr uint64_t kPoolStream = ~uint64_t{0};

}  // namespace

GraphSource make_graph_source(const ExperimentConfig& cfg) {
  const GraphKind kind = parse_graph_kind(cfg.graph_kind);
  if (kind == GraphKind::pool) {
    if (!cfg.pool_dir.empty()) return load_pool(cfg.pool_dir);
    Rng pool_rng(derive_seed(cfg.master_seed, kPoolStream));
    return build_pool(load_edge_list(cfg.edge_list_path), cfg.pool_size, cfg.subgraph_size, pool_rng);
  }
  GraphSource source;
  source.kind = kind;
  source.cliques = cfg.cliques;
  source.dense_factor = cfg.dense_factor;
  source.resample_each_round = true;
  return source;
}

AggregateCurves aggregate(const std::vector<std::vector<double>>& traces) {
  if (traces.empty()) throw std::invalid_argument("aggregate: no traces");
  const size_t T = traces[0].size();
  for (const auto& tr : traces)
    if (tr.size() != T) throw std::invalid_argument("aggregate: trace length mismatch");

  AggregateCurves out;
  out.mean.resize(T);
  out.upper.resize(T);
  out.lower.resize(T);
  const double R = static_cast<double>(traces.size());
  for (size_t t = 0; t < T; ++t) {
    double mean = 0.0;
    for (const auto& tr : traces) mean += tr[t];
    mean /= R;
    double var = 0.0;
    for (const auto& tr : traces) var += (tr[t] - mean) * (tr[t] - mean);
    const double sd = std::sqrt(var / R);  // population std, one-sigma band
    out.mean[t] = mean;
    out.upper[t] = mean + sd;
    out.lower[t] = mean - sd;
  }
  return out;
}

namespace {

int thread_budget() {
  if (const char* env = std::getenv("GRAPHBAND_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

AggregateCurves run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const PolicyKind kind = parse_policy(cfg.policy);
  const GraphSource source = make_graph_source(cfg);
  const RunParams rp{cfg.eta, cfg.delta, cfg.use_lp};

  std::vector<std::vector<double>> traces(cfg.repeats);
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (int r; (r = next.fetch_add(1)) < cfg.repeats;) {
      try {
        Rng rng(derive_seed(cfg.master_seed, static_cast<uint64_t>(r)));
        Instance inst = gen_instance(cfg.d, cfg.class_size, cfg.action_count, rng);
        inst.noise_sigma = cfg.noise_sigma;
        traces[r] = run_episode(inst, source, kind, cfg.T, rp, rng).cumulative;
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int workers = std::min(thread_budget(), cfg.repeats);
  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (int i = 0; i + 1 < workers; ++i) threads.emplace_back(worker);
  worker();
  for (auto& th : threads) th.join();
  if (first_error) std::rethrow_exception(first_error);

  return aggregate(traces);
}

void write_csv(const std::vector<double>& series, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  char buf[64];
  for (size_t i = 0; i < series.size(); ++i) {
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), series[i]);
    if (ec != std::errc{}) throw std::runtime_error("write_csv: value formatting failed");
    out << (i + 1) << ',';
    out.write(buf, end - buf);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

std::string csv_name(PolicyKind kind, const std::string& which, const std::string& gtype,
                     int repeats, int action_count) {
  std::ostringstream name;
  name << policy_tag(kind) << '_' << which << "_regret_gtype_" << gtype << "_repeat_" << repeats
       << "_K_" << action_count << ".csv";
  return name.str();
}

void apply_config_file(const std::string& path, ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: missing '=' at line " + std::to_string(line_no) + " of " + path);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto bad_value = [&] {
      throw std::runtime_error("config: bad value for '" + key + "' at line " + std::to_string(line_no));
    };
    auto as_long = [&] {
      try {
        return std::stol(value);
      } catch (...) {
        bad_value();
        return 0L;
      }
    };
    auto as_double = [&] {
      try {
        return std::stod(value);
      } catch (...) {
        bad_value();
        return 0.0;
      }
    };
    if (key == "T") cfg.T = as_long();
    else if (key == "repeats") cfg.repeats = static_cast<int>(as_long());
    else if (key == "d") cfg.d = static_cast<int>(as_long());
    else if (key == "class_size") cfg.class_size = static_cast<int>(as_long());
    else if (key == "actions") cfg.action_count = static_cast<int>(as_long());
    else if (key == "graph") cfg.graph_kind = value;
    else if (key == "cliques") cfg.cliques = static_cast<int>(as_long());
    else if (key == "dense_factor") cfg.dense_factor = as_double();
    else if (key == "edges") cfg.edge_list_path = value;
    else if (key == "pool_dir") cfg.pool_dir = value;
    else if (key == "pool_size") cfg.pool_size = static_cast<int>(as_long());
    else if (key == "subgraph_size") cfg.subgraph_size = static_cast<int>(as_long());
    else if (key == "policy") cfg.policy = value;
    else if (key == "eta") cfg.eta = as_double();
    else if (key == "delta") cfg.delta = as_double();
    else if (key == "use_lp") cfg.use_lp = (value == "true" || value == "1");
    else if (key == "sigma") cfg.noise_sigma = as_double();
    else if (key == "seed") cfg.master_seed = static_cast<uint64_t>(std::stoull(value));
    else if (key == "out") cfg.output_dir = value;
    else throw std::runtime_error("config: unknown key '" + key + "' at line " + std::to_string(line_no));
  }
}

}  // namespace graphband
