#include "graphband/env.hpp"

#include <algorithm>
#include <stdexcept>

namespace graphband {

Instance gen_instance(int d, int class_size, int action_count, Rng& rng) {
  if (d < 1 || class_size < 1 || action_count < 1)
    throw std::invalid_argument("gen_instance: all counts must be >= 1");
  Instance inst;
  inst.d = d;
  auto [cls, fstar] = gen_function_class(d, class_size, rng);
  inst.cls = std::move(cls);
  inst.fstar = fstar;
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  inst.actions.resize(action_count);
  for (auto& a : inst.actions) {
    a.resize(d);
    for (double& c : a) c = box(rng);
  }
  return inst;
}

Vec sample_context(int d, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec x(d);
  for (double& c : x) c = gauss(rng);
  return x;
}

std::vector<std::pair<int, double>> observe(const Instance& inst, const Vec& x,
                                            const FeedbackGraph& g, int played, Rng& rng) {
  const BilinearFunction& fstar = inst.cls.members[inst.fstar];
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::pair<int, double>> out;
  for (int a = 0; a < g.n; ++a)
    if (g.edge(played, a)) out.emplace_back(a, eval(fstar, x, inst.actions[a]) + inst.noise_sigma * gauss(rng));
  return out;
}

double instant_regret(const Instance& inst, const Vec& x, int played) {
  const BilinearFunction& fstar = inst.cls.members[inst.fstar];
  double best = eval(fstar, x, inst.actions[0]);
  for (size_t a = 1; a < inst.actions.size(); ++a) best = std::max(best, eval(fstar, x, inst.actions[a]));
  return best - eval(fstar, x, inst.actions[played]);
}

RegretTrace run_episode(const Instance& inst, const GraphSource& source, PolicyKind kind, long T,
                        const RunParams& rp, Rng& rng, const EpisodeHooks* hooks) {
  const int n_actions = static_cast<int>(inst.actions.size());
  const AlgoParams params{T, rp.eta, rp.delta, rp.use_lp, inst.cls.size(), n_actions};
  const std::vector<EpochSpan> schedule = epoch_schedule(T);

  LossAccumulator acc(inst.cls, inst.actions);
  Vec split_snapshot(inst.cls.size(), 0.0);
  std::vector<Vec> contexts;
  contexts.reserve(T);

  FeedbackGraph fixed;
  if (!source.resample_each_round) fixed = source.make(n_actions, rng);

  EpochState state;
  size_t epoch_idx = 0;
  RegretTrace trace;
  trace.cumulative.reserve(T);
  double cum = 0.0;
  FeedbackGraph scratch;

  for (long t = 1; t <= T; ++t) {
    if (epoch_idx < schedule.size() && t == schedule[epoch_idx].tau_prev + 1) {
      const EpochHistory history{&contexts, &acc.losses(), &split_snapshot};
      state = begin_epoch(history, inst.cls, inst.actions, params, epoch_idx == 0 ? nullptr : &state);
      if (hooks && hooks->on_epoch) hooks->on_epoch(state);
      ++epoch_idx;
    }

    const FeedbackGraph* g = &fixed;
    if (source.resample_each_round) {
      scratch = source.make(n_actions, rng);
      g = &scratch;
    }
    if (g->n != n_actions)
      throw std::runtime_error("run_episode: graph node count does not match the action set");

    Vec x = sample_context(inst.d, rng);
    const ActionDistribution dist = action_distribution(kind, state, x, *g, inst.actions, inst.cls, params);
    const int a = sample_action(dist, rng);
    const auto observed = observe(inst, x, *g, a, rng);
    for (auto [ai, y] : observed) acc.add(x, ai, y);

    const double r = instant_regret(inst, x, a);
    cum += r;
    trace.cumulative.push_back(cum);
    if (dist.lp_fallback) ++trace.lp_fallbacks;
    contexts.push_back(std::move(x));

    if (hooks && hooks->on_round) {
      RoundRecord rec{t, contexts.back(), a, observed, r, g};
      hooks->on_round(rec, dist, state);
    }
    if (t == schedule[epoch_idx - 1].t_m) split_snapshot = acc.losses();
  }
  return trace;
}

}  // namespace graphband
