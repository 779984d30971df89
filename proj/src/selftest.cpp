#include <algorithm>
#include <cmath>
#include <ostream>

#include "graphband/harness.hpp"

namespace graphband {

namespace {

bool exploration_set_suite(std::ostream& out) {
  Rng rng(20240817);
  std::uniform_int_distribution<int> size_dist(2, 12);
  std::uniform_real_distribution<double> gap_dist(0.0, 2.0);
  std::uniform_real_distribution<double> density(0.0, 0.4);

  long failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size_dist(rng);
    const FeedbackGraph g = gen_random(n, density(rng), rng);
    std::vector<double> gaps(n);
    for (double& v : gaps) v = gap_dist(rng);

    std::vector<int> candidates;
    for (int a = 0; a < n; ++a)
      if (rng() % 4 != 0) candidates.push_back(a);
    if (candidates.empty()) candidates.push_back(0);

    const std::vector<int> s = greedy_exploration_set(g, candidates, gaps);

    bool ok = !s.empty() && static_cast<int>(s.size()) <= independence_number_bruteforce(g);
    for (size_t i = 0; ok && i < s.size(); ++i)
      for (size_t j = 0; ok && j < s.size(); ++j)
        if (i != j && g.edge(s[i], s[j])) ok = false;
    for (int c : candidates) {
      if (!ok) break;
      if (std::find(s.begin(), s.end(), c) != s.end()) continue;
      bool dominated = false;
      for (int member : s)
        if (g.edge(member, c) && gaps[member] <= gaps[c]) dominated = true;
      if (!dominated) ok = false;
    }
    if (!ok) ++failures;
  }
  out << (failures == 0 ? "PASS" : "FAIL") << " exploration-set suite (200 random graphs)\n";
  return failures == 0;
}

bool sampling_lp_suite(std::ostream& out) {
  Rng rng(777001);
  std::uniform_int_distribution<int> size_dist(2, 6);
  std::uniform_real_distribution<double> gap_dist(0.0, 1.5);
  std::uniform_real_distribution<double> mass(0.0, 1.0);
  std::uniform_real_distribution<double> density(0.0, 0.5);

  long failures = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = size_dist(rng);
    const FeedbackGraph g = gen_random(n, density(rng), rng);

    std::vector<double> gaps(n), p_tilde(n);
    const int ahat = static_cast<int>(rng() % n);
    double total = 0.0;
    for (int a = 0; a < n; ++a) {
      gaps[a] = a == ahat ? 0.0 : gap_dist(rng);
      p_tilde[a] = mass(rng);
      total += p_tilde[a];
    }
    for (double& v : p_tilde) v /= total;

    const DenseLP lp = build_sampling_lp(g, gaps, p_tilde, ahat);
    const LPSolution simplex = simplex_solve(lp);
    const LPSolution oracle = vertex_enumerate_oracle(lp);

    double baseline_obj = 0.0;
    for (int a = 0; a < n; ++a) baseline_obj += p_tilde[a] * gaps[a];

    const bool ok = simplex.status == LPStatus::optimal && oracle.status == LPStatus::optimal &&
                    std::abs(simplex.objective - oracle.objective) <= 1e-8 &&
                    simplex.objective <= baseline_obj + 1e-9;
    if (!ok) ++failures;
  }
  out << (failures == 0 ? "PASS" : "FAIL") << " sampling-LP suite (500 instances vs enumeration)\n";
  return failures == 0;
}

struct IopCounters {
  long triples = 0;
  long violations = 0;
};

void run_iop_episode(const ExperimentConfig& cfg, uint64_t stream, IopCounters& counters) {
  const GraphSource source = make_graph_source(cfg);
  Rng rng(derive_seed(cfg.master_seed, stream));
  Instance inst = gen_instance(cfg.d, cfg.class_size, cfg.action_count, rng);

  EpisodeHooks hooks;
  hooks.on_round = [&](const RoundRecord& rec, const ActionDistribution& dist, const EpochState& state) {
    if (dist.gamma <= 0.0) return;
    ++counters.triples;

    std::vector<double> vals(inst.actions.size());
    for (size_t a = 0; a < inst.actions.size(); ++a)
      vals[a] = eval(inst.cls.members[state.fhat], rec.x, inst.actions[a]);
    const int ahat = static_cast<int>(std::max_element(vals.begin(), vals.end()) - vals.begin());

    std::vector<int> cand = candidate_actions(inst.cls, state.conf.member_indices, rec.x, inst.actions);
    if (!std::binary_search(cand.begin(), cand.end(), ahat))
      cand.insert(std::lower_bound(cand.begin(), cand.end(), ahat), ahat);

    const double s_size = static_cast<double>(dist.exploration_set.size());
    double expected_gap = 0.0;
    for (size_t a = 0; a < dist.p.size(); ++a) expected_gap += dist.p[a] * (vals[ahat] - vals[a]);
    bool ok = expected_gap <= (s_size - 1.0) / dist.gamma + 1e-9;

    for (int b : cand) {
      const double bound = s_size + dist.gamma * (vals[ahat] - vals[b]);
      if (dist.q[b] <= 0.0 || 1.0 / dist.q[b] > bound + 1e-6) ok = false;
    }
    if (!ok) ++counters.violations;
  };

  run_episode(inst, source, PolicyKind::AdaCBG, cfg.T, {cfg.eta, cfg.delta, cfg.use_lp}, rng, &hooks);
}

bool iop_suite(std::ostream& out) {
  IopCounters counters;
  ExperimentConfig cfg;
  cfg.d = 5;
  cfg.class_size = 20;
  cfg.action_count = 10;
  cfg.T = 256;
  cfg.master_seed = 99;

  const char* kinds[] = {"star", "clique_group", "random"};
  uint64_t stream = 0;
  for (const char* kind : kinds) {
    cfg.graph_kind = kind;
    cfg.cliques = 3;
    cfg.dense_factor = 0.15;
    for (int rep = 0; rep < 4; ++rep) run_iop_episode(cfg, stream++, counters);
  }

  const bool ok = counters.violations == 0 && counters.triples >= 1000;
  out << (ok ? "PASS" : "FAIL") << " optimization-inequality suite (" << counters.triples
      << " rounds checked, " << counters.violations << " violations)\n";
  return ok;
}

}  // namespace

int run_selftest(std::ostream& out) {
  bool ok = true;
  ok &= exploration_set_suite(out);
  ok &= sampling_lp_suite(out);
  ok &= iop_suite(out);
  out << (ok ? "selftest: all suites passed\n" : "selftest: FAILURES\n");
  return ok ? 0 : 1;
}

}  // namespace graphband
