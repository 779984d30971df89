#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "graphband/funcspace.hpp"
#include "graphband/graph.hpp"
#include "graphband/policy.hpp"

namespace graphband {

struct Instance {
  FunctionClass cls;
  int fstar = 0;
  ActionSet actions;
  int d = 0;
  double noise_sigma = 1.0;
};

// Random bilinear instance: normal class, uniform true function, actions
// uniform on [-1, 1]^d, unit noise.
Instance gen_instance(int d, int class_size, int action_count, Rng& rng);

Vec sample_context(int d, Rng& rng);

// Rewards of every arm the played arm observes, with fresh independent
// noise per revealed pair.
std::vector<std::pair<int, double>> observe(const Instance& inst, const Vec& x,
                                            const FeedbackGraph& g, int played, Rng& rng);

// Mean-reward shortfall of the played arm against the best arm; never uses
// realized noise.
double instant_regret(const Instance& inst, const Vec& x, int played);

struct RoundRecord {
  long t = 0;
  Vec x;
  int a_t = 0;
  std::vector<std::pair<int, double>> observed;
  double instant_regret = 0.0;
  const FeedbackGraph* graph = nullptr;
};

struct RegretTrace {
  std::vector<double> cumulative;  // per round
  long lp_fallbacks = 0;
};

struct EpisodeHooks {
  std::function<void(const RoundRecord&, const ActionDistribution&, const EpochState&)> on_round;
  std::function<void(const EpochState&)> on_epoch;
};

struct RunParams {
  double eta = 1.0;
  double delta = 0.1;
  bool use_lp = true;
};

// Full T-round interaction: per-round graph and context draws, policy
// distribution, sampled action, graph-mediated observations into the running
// loss statistics, epoch transitions at the doubling boundaries.
RegretTrace run_episode(const Instance& inst, const GraphSource& source, PolicyKind kind, long T,
                        const RunParams& rp, Rng& rng, const EpisodeHooks* hooks = nullptr);

}  // namespace graphband
