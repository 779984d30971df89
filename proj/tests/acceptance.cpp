// Acceptance suite: one test case per criterion, each printing a pass/fail
// line with the measured values. Heavy experiment results are cached and
// shared across criteria.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "graphband/harness.hpp"

using namespace graphband;

namespace {

ExperimentConfig paper_clique_config(int actions) {
  ExperimentConfig cfg;
  cfg.T = 2048;  // 2^11
  cfg.repeats = 40;
  cfg.d = 10;
  cfg.class_size = 50;
  cfg.action_count = actions;
  cfg.graph_kind = "clique_group";
  cfg.cliques = 5;
  cfg.policy = "adacbg";
  cfg.eta = 1.0;
  cfg.delta = 0.1;
  cfg.noise_sigma = 1.0;
  cfg.master_seed = 2024;
  return cfg;
}

struct FinalStats {
  double mean = 0.0;
  double sd = 0.0;
};

FinalStats final_stats(const AggregateCurves& curves) {
  return {curves.mean.back(), curves.upper.back() - curves.mean.back()};
}

const FinalStats& clique_stats(int actions) {
  static FinalStats cache20, cache100;
  static bool have20 = false, have100 = false;
  FinalStats& slot = actions == 20 ? cache20 : cache100;
  bool& have = actions == 20 ? have20 : have100;
  if (!have) {
    slot = final_stats(run_experiment(paper_clique_config(actions)));
    have = true;
  }
  return slot;
}

struct StarResults {
  FinalStats ada, regcb, falcon;
};

const StarResults& star_results() {
  static StarResults cache;
  static bool have = false;
  if (!have) {
    ExperimentConfig cfg;
    cfg.T = 4096;  // 2^12
    cfg.repeats = 40;
    cfg.d = 10;
    cfg.class_size = 50;
    cfg.action_count = 50;
    cfg.graph_kind = "star";
    cfg.eta = 1.0;
    cfg.delta = 0.1;
    cfg.master_seed = 7;
    cfg.policy = "adacbg";
    cache.ada = final_stats(run_experiment(cfg));
    cfg.policy = "regcbg";
    cache.regcb = final_stats(run_experiment(cfg));
    cfg.policy = "falcon";
    cache.falcon = final_stats(run_experiment(cfg));
    have = true;
  }
  return cache;
}

}  // namespace

TEST_CASE("criterion 1: clique-group scaling in the action count") {
  const FinalStats small = clique_stats(20);
  const FinalStats large = clique_stats(100);

  const bool ordering = large.mean <= small.mean;
  const bool band = small.mean >= 120.0 && small.mean <= 650.0 && large.mean >= 120.0 &&
                    large.mean <= 650.0;

  std::printf("criterion 1: %s — |A|=20 mean %.2f (std %.2f), |A|=100 mean %.2f (std %.2f); "
              "(a) ordering %s, (b) band [120,650] %s\n",
              ordering && band ? "PASS" : "FAIL", small.mean, small.sd, large.mean, large.sd,
              ordering ? "PASS" : "FAIL", band ? "PASS" : "FAIL");

  CHECK(ordering);
  CHECK(band);
}

TEST_CASE("criterion 2: policy ordering on star graphs") {
  const StarResults r = star_results();
  const double pooled = std::sqrt((r.ada.sd * r.ada.sd + r.falcon.sd * r.falcon.sd) / 2.0);
  const bool ordering = r.ada.mean < r.regcb.mean && r.regcb.mean < r.falcon.mean;
  const bool separated = r.falcon.mean - r.ada.mean >= pooled;

  std::printf("criterion 2: %s — final means ada %.2f < regcb %.2f < falcon %.2f, "
              "ada/falcon separation %.2f vs pooled std %.2f\n",
              ordering && separated ? "PASS" : "FAIL", r.ada.mean, r.regcb.mean, r.falcon.mean,
              r.falcon.mean - r.ada.mean, pooled);

  CHECK(ordering);
  CHECK(separated);
}

TEST_CASE("criterion 3: singleton class gives exactly zero regret") {
  long nonzero = 0, rounds = 0;
  for (const char* kind : {"star", "clique_group", "random"}) {
    for (uint64_t seed : {1ull, 2ull, 3ull}) {
      GraphSource source;
      source.kind = parse_graph_kind(kind);
      source.cliques = 4;
      source.dense_factor = 0.2;
      Rng rng(derive_seed(seed, 0));
      const Instance inst = gen_instance(10, 1, 16, rng);
      const RegretTrace trace = run_episode(inst, source, PolicyKind::AdaCBG, 256, {}, rng);
      for (double c : trace.cumulative) {
        ++rounds;
        if (c != 0.0) ++nonzero;
      }
    }
  }
  std::printf("criterion 3: %s — %ld/%ld rounds at exactly zero cumulative regret\n",
              nonzero == 0 ? "PASS" : "FAIL", rounds - nonzero, rounds);
  CHECK(nonzero == 0);
}

TEST_CASE("criterion 4: the truth stays in the confidence set") {
  GraphSource source;
  source.kind = GraphKind::clique_group;
  source.cliques = 5;

  long pairs = 0, retained = 0;
  for (uint64_t run = 0; run < 40; ++run) {
    Rng rng(derive_seed(505, run));
    const Instance inst = gen_instance(10, 50, 20, rng);
    EpisodeHooks hooks;
    hooks.on_epoch = [&](const EpochState& s) {
      ++pairs;
      if (s.conf.contains(inst.fstar)) ++retained;
    };
    run_episode(inst, source, PolicyKind::AdaCBG, 2048, {1.0, 0.1, true}, rng, &hooks);
  }
  const double fraction = static_cast<double>(retained) / static_cast<double>(pairs);
  const bool ok = fraction >= 0.9;
  std::printf("criterion 4: %s — f* retained in %ld/%ld (run, epoch) pairs (%.4f >= 0.9)\n",
              ok ? "PASS" : "FAIL", retained, pairs, fraction);
  CHECK(ok);
}

TEST_CASE("criterion 5: per-round optimization inequalities") {
  long triples = 0, violations1 = 0, violations2 = 0;

  auto run_checked = [&](const Instance& inst, const GraphSource& source, bool use_lp, long T,
                         Rng& rng) {
    EpisodeHooks hooks;
    hooks.on_round = [&](const RoundRecord& rec, const ActionDistribution& dist,
                         const EpochState& state) {
      if (dist.gamma <= 0.0) return;
      ++triples;

      Vec vals(inst.actions.size());
      for (size_t a = 0; a < inst.actions.size(); ++a)
        vals[a] = eval(inst.cls.members[state.fhat], rec.x, inst.actions[a]);
      const int ahat = static_cast<int>(std::max_element(vals.begin(), vals.end()) - vals.begin());
      std::vector<int> cand =
          candidate_actions(inst.cls, state.conf.member_indices, rec.x, inst.actions);
      if (!std::binary_search(cand.begin(), cand.end(), ahat))
        cand.insert(std::lower_bound(cand.begin(), cand.end(), ahat), ahat);

      const double s_size = static_cast<double>(dist.exploration_set.size());
      double expected_gap = 0.0;
      for (size_t a = 0; a < dist.p.size(); ++a) expected_gap += dist.p[a] * (vals[ahat] - vals[a]);
      if (expected_gap > (s_size - 1.0) / dist.gamma + 1e-9) ++violations1;

      for (int b : cand) {
        const double bound = s_size + dist.gamma * (vals[ahat] - vals[b]);
        if (dist.q[b] <= 0.0 || 1.0 / dist.q[b] > bound + 1e-6) {
          ++violations2;
          break;
        }
      }
    };
    run_episode(inst, source, PolicyKind::AdaCBG, T, {1.0, 0.1, use_lp}, rng, &hooks);
  };

  // small mixed-family instances, both with and without the LP refinement
  for (const char* kind : {"star", "clique_group", "random"}) {
    for (uint64_t rep = 0; rep < 8; ++rep) {
      GraphSource source;
      source.kind = parse_graph_kind(kind);
      source.cliques = 4;
      source.dense_factor = 0.15;
      Rng rng(derive_seed(909, rep * 131 + static_cast<uint64_t>(kind[0])));
      const Instance inst = gen_instance(5, 20, 12, rng);
      run_checked(inst, source, rep % 2 == 0, 512, rng);
    }
  }
  // full-size five-clique instances
  for (uint64_t rep = 0; rep < 4; ++rep) {
    GraphSource source;
    source.kind = GraphKind::clique_group;
    source.cliques = 5;
    Rng rng(derive_seed(910, rep));
    const Instance inst = gen_instance(10, 50, 20, rng);
    run_checked(inst, source, true, 512, rng);
  }

  const bool ok = triples >= 10000 && violations1 == 0 && violations2 == 0;
  std::printf("criterion 5: %s — %ld gamma>0 triples, %ld regret-bound violations, "
              "%ld observation-bound violations\n",
              ok ? "PASS" : "FAIL", triples, violations1, violations2);
  CHECK(triples >= 10000);
  CHECK(violations1 == 0);
  CHECK(violations2 == 0);
}

TEST_CASE("criterion 6: combinatorial oracles") {
  // greedy exploration sets against the brute-force independence number
  Rng rng(606);
  std::uniform_int_distribution<int> size_dist(2, 12);
  std::uniform_real_distribution<double> gap_dist(0.0, 3.0);
  std::uniform_real_distribution<double> density(0.0, 0.4);
  long greedy_failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size_dist(rng);
    const FeedbackGraph g = gen_random(n, density(rng), rng);
    std::vector<double> gaps(n);
    for (double& v : gaps) v = gap_dist(rng);
    std::vector<int> candidates;
    for (int a = 0; a < n; ++a)
      if (rng() % 3 != 0) candidates.push_back(a);
    if (candidates.empty()) candidates.push_back(0);

    const std::vector<int> s = greedy_exploration_set(g, candidates, gaps);
    bool ok = static_cast<int>(s.size()) <= independence_number_bruteforce(g);
    for (int u : s)
      for (int v : s)
        if (u != v && g.edge(u, v)) ok = false;
    for (int c : candidates) {
      if (std::find(s.begin(), s.end(), c) != s.end()) continue;
      bool dominated = false;
      for (int member : s)
        if (g.edge(member, c) && gaps[member] <= gaps[c]) dominated = true;
      if (!dominated) ok = false;
    }
    if (!ok) ++greedy_failures;
  }

  // sampling LPs against vertex enumeration and the feasible baseline
  std::uniform_int_distribution<int> lp_size(2, 6);
  std::uniform_real_distribution<double> mass(0.0, 1.0);
  long lp_failures = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = lp_size(rng);
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
    double baseline = 0.0;
    for (int a = 0; a < n; ++a) baseline += p_tilde[a] * gaps[a];

    if (simplex.status != LPStatus::optimal || oracle.status != LPStatus::optimal ||
        std::abs(simplex.objective - oracle.objective) > 1e-8 ||
        simplex.objective > baseline + 1e-9)
      ++lp_failures;
  }

  const bool ok = greedy_failures == 0 && lp_failures == 0;
  std::printf("criterion 6: %s — 200 exploration-set checks (%ld failures), "
              "500 LP-vs-enumeration checks (%ld failures)\n",
              ok ? "PASS" : "FAIL", greedy_failures, lp_failures);
  CHECK(greedy_failures == 0);
  CHECK(lp_failures == 0);
}

TEST_CASE("criterion 7: byte-identical csv output") {
  namespace fs = std::filesystem;
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
  };

  ExperimentConfig cfg = paper_clique_config(10);
  cfg.T = 256;
  cfg.repeats = 4;
  cfg.master_seed = 4242;

  bool identical = true;
  std::vector<std::string> first;
  for (int invocation = 0; invocation < 2; ++invocation) {
    setenv("GRAPHBAND_THREADS", invocation == 0 ? "1" : "3", 1);
    const AggregateCurves curves = run_experiment(cfg);
    const std::string dir = "/tmp/graphband_acc7_" + std::to_string(invocation);
    fs::create_directories(dir);
    const std::pair<const char*, const std::vector<double>*> series[] = {
        {"mean", &curves.mean}, {"upper", &curves.upper}, {"lower", &curves.lower}};
    std::vector<std::string> contents;
    for (const auto& [which, data] : series) {
      const std::string path =
          dir + "/" + csv_name(PolicyKind::AdaCBG, which, cfg.graph_kind, cfg.repeats, 10);
      write_csv(*data, path);
      contents.push_back(slurp(path));
    }
    if (invocation == 0)
      first = contents;
    else
      identical = contents == first;
  }
  unsetenv("GRAPHBAND_THREADS");

  std::printf("criterion 7: %s — two invocations, three csv series compared byte for byte\n",
              identical ? "PASS" : "FAIL");
  CHECK(identical);
}

TEST_CASE("criterion 8: asymptotic rates covered qualitatively") {
  // Asymptotic rate guarantees are not measurable at this scale; their
  // scaling content is evidenced by criterion 1 (regret tracks the
  // independence number, not |A|) and criterion 2 (graph-aware policies
  // dominate), plus the property suites.
  const FinalStats small = clique_stats(20);
  const FinalStats large = clique_stats(100);
  const StarResults r = star_results();
  const bool ok = large.mean <= small.mean && r.ada.mean < r.falcon.mean;
  std::printf("criterion 8: %s — qualitative coverage: regret flat-to-decreasing in |A| "
              "(%.2f -> %.2f at fixed alpha=5) and graph-aware < graph-blind (%.2f < %.2f)\n",
              ok ? "PASS" : "FAIL", small.mean, large.mean, r.ada.mean, r.falcon.mean);
  CHECK(ok);
}
