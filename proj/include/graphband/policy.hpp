#pragma once

#include <vector>

#include "graphband/funcspace.hpp"
#include "graphband/graph.hpp"
#include "graphband/lp.hpp"

namespace graphband {

struct AlgoParams {
  long T = 0;
  double eta = 1.0;
  double delta = 0.1;
  bool use_lp = true;
  int class_size = 0;
  int action_count = 0;
};

// Doubling schedule: tau_m = 2^m (tau_0 = 0) with the split point halfway
// through each epoch; the final epoch is truncated at T.
struct EpochSpan {
  long tau_prev = 0;
  long t_m = 0;
  long tau_m = 0;
};

std::vector<EpochSpan> epoch_schedule(long T);

// Everything the decision rule carries between epoch boundaries.
struct EpochState {
  int m = 0;
  long tau_prev = 0;   // tau_{m-1}
  long tau_prev2 = 0;  // tau_{m-2}
  long t_split = 0;    // t_{m-1}
  int fhat = 0;
  ConfidenceSet conf;
  double beta = 0.0;
  double mu = 0.0;
  double mu_prev = 0.0;
  double lambda = 1.0;
  // disagreement frequency of this epoch's sample-split window; feeds the
  // next epoch's lambda denominator
  double prev_disagreement = 0.0;
};

// Loss statistics and context history the epoch transition reads. The two
// loss vectors use different prefixes on purpose: the fit uses everything
// through tau_{m-1}, the confidence set only through t_{m-1}.
struct EpochHistory {
  const std::vector<Vec>* contexts = nullptr;  // x_1 .. x_{tau_{m-1}}, index t-1
  const Vec* losses_now = nullptr;             // through tau_{m-1}
  const Vec* losses_at_split = nullptr;        // through t_{m-1}
};

EpochState begin_epoch(const EpochHistory& history, const FunctionClass& cls,
                       const ActionSet& actions, const AlgoParams& params,
                       const EpochState* prev);

// lambda_m sqrt(eta |S_t| (tau_{m-1} - tau_{m-2}) / (2 ln(2 |A| |F| T^2 / delta)));
// zero throughout the first epoch.
double gamma_t(const EpochState& state, int s_size, const AlgoParams& params);

struct ActionDistribution {
  Vec p;                             // sampling probabilities
  Vec q;                             // observation probabilities
  std::vector<int> exploration_set;  // S_t
  double gamma = 0.0;
  bool lp_fallback = false;
};

// Smoothed inverse-gap weights over the exploration set; the empirical best
// arm absorbs the residual mass.
Vec baseline_probs(const Vec& fhat_values, const std::vector<int>& exploration_set, double gamma);

ActionDistribution action_distribution_adacbg(const EpochState& state, const Vec& x,
                                              const FeedbackGraph& g, const ActionSet& actions,
                                              const FunctionClass& cls, const AlgoParams& params);

// Remark variant: inverse gap weighting over the whole action set with the
// epoch-level gamma_m (no instance scale factor, no graph in the sampling).
ActionDistribution action_distribution_full_igw(const EpochState& state, const Vec& x,
                                                const ActionSet& actions, const FunctionClass& cls,
                                                const AlgoParams& params);

// Same sampling rule as the full-set variant; the graph feedback only ever
// enters through the logged observations.
ActionDistribution action_distribution_falcon(const EpochState& state, const Vec& x,
                                              const ActionSet& actions, const FunctionClass& cls,
                                              const AlgoParams& params);

// Ablated pipeline: exploration set in index order instead of gap order,
// lambda pinned to 1, no LP refinement.
ActionDistribution action_distribution_regcbg(const EpochState& state, const Vec& x,
                                              const FeedbackGraph& g, const ActionSet& actions,
                                              const FunctionClass& cls, const AlgoParams& params);

enum class PolicyKind { AdaCBG, AdaCBGFull, FALCON, RegCBGOffline };

ActionDistribution action_distribution(PolicyKind kind, const EpochState& state, const Vec& x,
                                       const FeedbackGraph& g, const ActionSet& actions,
                                       const FunctionClass& cls, const AlgoParams& params);

int sample_action(const ActionDistribution& dist, Rng& rng);

}  // namespace graphband
