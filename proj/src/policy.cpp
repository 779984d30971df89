#include "graphband/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphband {

namespace {

long raw_tau(int m) { return m <= 0 ? 0 : 1L << m; }

}  // namespace

std::vector<EpochSpan> epoch_schedule(long T) {
  if (T < 1) throw std::invalid_argument("epoch_schedule: T must be >= 1");
  std::vector<EpochSpan> spans;
  long tau_prev = 0;
  for (int m = 1; tau_prev < T; ++m) {
    const long tau_m = std::min(raw_tau(m), T);
    const long t_m = std::min((raw_tau(m) + raw_tau(m - 1)) / 2, T);
    spans.push_back({tau_prev, t_m, tau_m});
    tau_prev = tau_m;
  }
  return spans;
}

namespace {

int argmax_index(const Vec& values) {
  int best = 0;
  for (size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = static_cast<int>(i);
  return best;
}

int argmin_index(const Vec& values) {
  int best = 0;
  for (size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[best]) best = static_cast<int>(i);
  return best;
}

Vec fhat_values(const EpochState& state, const FunctionClass& cls, const Vec& x,
                const ActionSet& actions) {
  Vec vals(actions.size());
  for (size_t a = 0; a < actions.size(); ++a) vals[a] = eval(cls.members[state.fhat], x, actions[a]);
  return vals;
}

double gamma_with_lambda(const EpochState& state, int s_size, const AlgoParams& p, double lambda) {
  if (state.m <= 1) return 0.0;
  const double log_term = std::log(2.0 / p.delta * p.action_count * p.class_size *
                                   static_cast<double>(p.T) * static_cast<double>(p.T));
  return lambda * std::sqrt(p.eta * s_size * static_cast<double>(state.tau_prev - state.tau_prev2) /
                            (2.0 * log_term));
}

Vec observation_probs(const FeedbackGraph& g, const Vec& p) {
  Vec q(p.size(), 0.0);
  for (int a = 0; a < g.n; ++a)
    for (int j = 0; j < g.n; ++j)
      if (g.edge(j, a)) q[a] += p[j];
  return q;
}

// candidate set with the empirical best forced in; ahat can be missing
// because the fit and the confidence set use different data prefixes
std::vector<int> forced_candidates(const EpochState& state, const FunctionClass& cls, const Vec& x,
                                   const ActionSet& actions, int ahat) {
  std::vector<int> cand = candidate_actions(cls, state.conf.member_indices, x, actions);
  const auto pos = std::lower_bound(cand.begin(), cand.end(), ahat);
  if (pos == cand.end() || *pos != ahat) cand.insert(pos, ahat);
  return cand;
}

ActionDistribution point_mass(int a, const FeedbackGraph& g, double gamma) {
  ActionDistribution dist;
  dist.p.assign(g.n, 0.0);
  dist.q.assign(g.n, 0.0);
  dist.p[a] = 1.0;
  for (int b = 0; b < g.n; ++b)
    if (g.edge(a, b)) dist.q[b] = 1.0;
  dist.exploration_set = {a};
  dist.gamma = gamma;
  return dist;
}

}  // namespace

EpochState begin_epoch(const EpochHistory& history, const FunctionClass& cls,
                       const ActionSet& actions, const AlgoParams& params,
                       const EpochState* prev) {
  const int m = prev ? prev->m + 1 : 1;
  EpochState s;
  s.m = m;
  s.tau_prev = std::min(raw_tau(m - 1), params.T);
  s.tau_prev2 = std::min(raw_tau(m - 2), params.T);
  s.t_split = m == 1 ? 0 : std::min((raw_tau(m - 1) + raw_tau(m - 2)) / 2, params.T);
  s.beta = beta_m(params.T, m, cls.size(), params.action_count, params.delta);
  s.mu = mu_m(m, params.T, params.delta);
  s.mu_prev = prev ? prev->mu : 0.0;

  s.fhat = argmin_index(*history.losses_now);

  const Vec& split_losses = *history.losses_at_split;
  const double best = *std::min_element(split_losses.begin(), split_losses.end());
  s.conf.beta = s.beta;
  for (int i = 0; i < cls.size(); ++i)
    if (split_losses[i] <= best + s.beta) s.conf.member_indices.push_back(i);

  if (m == 1) {
    s.lambda = 1.0;
    s.prev_disagreement = 0.0;
    return s;
  }

  // D_m ~ unif(x_{t_{m-1}+1}, ..., x_{tau_{m-1}}): the second half of the
  // previous epoch, scored against the fresh confidence set
  const long lo = s.t_split;    // 0-based index of round t_{m-1}+1
  const long hi = s.tau_prev;   // exclusive
  if (lo >= hi) {
    // empty split window (truncated final epoch): keep the previous scale
    s.lambda = prev->lambda;
    s.prev_disagreement = prev->prev_disagreement;
    return s;
  }
  long disagreements = 0;
  for (long i = lo; i < hi; ++i)
    if (members_disagree_at(cls, s.conf.member_indices, (*history.contexts)[i], actions)) ++disagreements;
  const double d_m = static_cast<double>(disagreements) / static_cast<double>(hi - lo);
  s.lambda = (d_m + s.mu) / std::sqrt(prev->prev_disagreement + prev->mu);
  s.prev_disagreement = d_m;
  return s;
}

double gamma_t(const EpochState& state, int s_size, const AlgoParams& params) {
  return gamma_with_lambda(state, s_size, params, state.lambda);
}

Vec baseline_probs(const Vec& fhat_values, const std::vector<int>& exploration_set, double gamma) {
  const int ahat = argmax_index(fhat_values);
  if (std::find(exploration_set.begin(), exploration_set.end(), ahat) == exploration_set.end())
    throw std::logic_error("baseline_probs: best empirical arm not in the exploration set");
  Vec p(fhat_values.size(), 0.0);
  const double s_size = static_cast<double>(exploration_set.size());
  double rest = 0.0;
  for (int a : exploration_set) {
    if (a == ahat) continue;
    p[a] = 1.0 / (s_size + gamma * (fhat_values[ahat] - fhat_values[a]));
    rest += p[a];
  }
  p[ahat] = 1.0 - rest;
  return p;
}

ActionDistribution action_distribution_adacbg(const EpochState& state, const Vec& x,
                                              const FeedbackGraph& g, const ActionSet& actions,
                                              const FunctionClass& cls, const AlgoParams& params) {
  const Vec vals = fhat_values(state, cls, x, actions);
  const int ahat = argmax_index(vals);
  const std::vector<int> cand = forced_candidates(state, cls, x, actions, ahat);
  if (cand.size() == 1) return point_mass(cand[0], g, gamma_t(state, 1, params));

  Vec gaps(vals.size());
  for (size_t a = 0; a < vals.size(); ++a) gaps[a] = vals[ahat] - vals[a];

  ActionDistribution dist;
  dist.exploration_set = greedy_exploration_set(g, cand, gaps);
  dist.gamma = gamma_t(state, static_cast<int>(dist.exploration_set.size()), params);
  dist.p = baseline_probs(vals, dist.exploration_set, dist.gamma);
  if (params.use_lp) {
    const LPSolution sol = simplex_solve(build_sampling_lp(g, gaps, dist.p, ahat));
    if (sol.status == LPStatus::optimal)
      dist.p = sol.x;
    else
      dist.lp_fallback = true;  // the baseline is always feasible
  }
  dist.q = observation_probs(g, dist.p);
  return dist;
}

ActionDistribution action_distribution_full_igw(const EpochState& state, const Vec& x,
                                                const ActionSet& actions, const FunctionClass& cls,
                                                const AlgoParams& params) {
  const Vec vals = fhat_values(state, cls, x, actions);
  const int ahat = argmax_index(vals);
  const double n = static_cast<double>(actions.size());
  const double log_term = std::log(2.0 / params.delta * params.action_count * params.class_size *
                                   static_cast<double>(params.T) * static_cast<double>(params.T));
  const double gamma_m =
      std::sqrt(params.eta * n * static_cast<double>(state.tau_prev) / (2.0 * log_term));

  ActionDistribution dist;
  dist.gamma = gamma_m;
  dist.p.assign(actions.size(), 0.0);
  double rest = 0.0;
  for (size_t a = 0; a < actions.size(); ++a) {
    if (static_cast<int>(a) == ahat) continue;
    dist.p[a] = 1.0 / (n + gamma_m * (vals[ahat] - vals[a]));
    rest += dist.p[a];
  }
  dist.p[ahat] = 1.0 - rest;
  dist.q = dist.p;  // sampling ignores the graph; self-loop floor only
  dist.exploration_set.resize(actions.size());
  for (size_t a = 0; a < actions.size(); ++a) dist.exploration_set[a] = static_cast<int>(a);
  return dist;
}

ActionDistribution action_distribution_falcon(const EpochState& state, const Vec& x,
                                              const ActionSet& actions, const FunctionClass& cls,
                                              const AlgoParams& params) {
  return action_distribution_full_igw(state, x, actions, cls, params);
}

ActionDistribution action_distribution_regcbg(const EpochState& state, const Vec& x,
                                              const FeedbackGraph& g, const ActionSet& actions,
                                              const FunctionClass& cls, const AlgoParams& params) {
  const Vec vals = fhat_values(state, cls, x, actions);
  const int ahat = argmax_index(vals);
  const std::vector<int> cand = forced_candidates(state, cls, x, actions, ahat);
  if (cand.size() == 1) return point_mass(cand[0], g, gamma_with_lambda(state, 1, params, 1.0));

  // index-ordered greedy, except the empirical best still goes first so the
  // baseline stays well defined
  Vec order(vals.size(), 1.0);
  order[ahat] = 0.0;

  ActionDistribution dist;
  dist.exploration_set = greedy_exploration_set(g, cand, order);
  dist.gamma = gamma_with_lambda(state, static_cast<int>(dist.exploration_set.size()), params, 1.0);
  dist.p = baseline_probs(vals, dist.exploration_set, dist.gamma);
  dist.q = observation_probs(g, dist.p);
  return dist;
}

ActionDistribution action_distribution(PolicyKind kind, const EpochState& state, const Vec& x,
                                       const FeedbackGraph& g, const ActionSet& actions,
                                       const FunctionClass& cls, const AlgoParams& params) {
  switch (kind) {
    case PolicyKind::AdaCBG:
      return action_distribution_adacbg(state, x, g, actions, cls, params);
    case PolicyKind::AdaCBGFull:
      return action_distribution_full_igw(state, x, actions, cls, params);
    case PolicyKind::FALCON:
      return action_distribution_falcon(state, x, actions, cls, params);
    case PolicyKind::RegCBGOffline:
      return action_distribution_regcbg(state, x, g, actions, cls, params);
  }
  throw std::logic_error("action_distribution: unknown policy kind");
}

int sample_action(const ActionDistribution& dist, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  double cum = 0.0;
  int last_positive = -1;
  for (size_t a = 0; a < dist.p.size(); ++a) {
    if (dist.p[a] <= 0.0) continue;
    last_positive = static_cast<int>(a);
    cum += dist.p[a];
    if (u < cum) return last_positive;
  }
  if (last_positive < 0) throw std::logic_error("sample_action: empty distribution");
  return last_positive;
}

}  // namespace graphband
