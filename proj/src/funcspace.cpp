#include "graphband/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace graphband {

double eval(const BilinearFunction& f, const Vec& x, const Vec& a) {
  double s = 0.0;
  for (size_t i = 0; i < f.x0.size(); ++i) s += (x[i] - f.x0[i]) * (a[i] - f.a0[i]);
  return s;
}

std::pair<FunctionClass, int> gen_function_class(int d, int size, Rng& rng) {
  if (size < 1) throw std::invalid_argument("gen_function_class: size must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  FunctionClass cls;
  cls.d = d;
  cls.members.resize(size);
  for (auto& f : cls.members) {
    f.x0.resize(d);
    f.a0.resize(d);
    for (double& c : f.x0) c = gauss(rng);
    for (double& c : f.a0) c = gauss(rng);
  }
  std::uniform_int_distribution<int> pick(0, size - 1);
  return {std::move(cls), pick(rng)};
}

double cumulative_sq_loss(const BilinearFunction& f, const ActionSet& actions,
                          const Dataset& data, size_t upto) {
  double total = 0.0;
  for (size_t n = 0; n < upto; ++n)
    for (auto [a, y] : data[n].observed) {
      const double r = eval(f, data[n].x, actions[a]) - y;
      total += r * r;
    }
  return total;
}

int oracle_fit(const FunctionClass& cls, const ActionSet& actions, const Dataset& data, size_t upto) {
  int best = 0;
  double best_loss = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cls.size(); ++i) {
    const double loss = cumulative_sq_loss(cls.members[i], actions, data, upto);
    if (loss < best_loss) {
      best_loss = loss;
      best = i;
    }
  }
  return best;
}

bool ConfidenceSet::contains(int idx) const {
  return std::binary_search(member_indices.begin(), member_indices.end(), idx);
}

ConfidenceSet confidence_set(const FunctionClass& cls, const ActionSet& actions,
                             const Dataset& data, size_t upto, double beta) {
  if (beta < 0) throw std::invalid_argument("confidence_set: beta must be >= 0");
  Vec losses(cls.size());
  for (int i = 0; i < cls.size(); ++i) losses[i] = cumulative_sq_loss(cls.members[i], actions, data, upto);
  const double best = *std::min_element(losses.begin(), losses.end());
  ConfidenceSet out;
  out.beta = beta;
  for (int i = 0; i < cls.size(); ++i)
    if (losses[i] <= best + beta) out.member_indices.push_back(i);
  return out;
}

int argmax_action(const BilinearFunction& f, const Vec& x, const ActionSet& actions) {
  int best = 0;
  double best_val = eval(f, x, actions[0]);
  for (size_t a = 1; a < actions.size(); ++a) {
    const double v = eval(f, x, actions[a]);
    if (v > best_val) {
      best_val = v;
      best = static_cast<int>(a);
    }
  }
  return best;
}

std::vector<int> candidate_actions(const FunctionClass& cls, const std::vector<int>& member_indices,
                                   const Vec& x, const ActionSet& actions) {
  std::vector<int> out;
  for (int idx : member_indices) out.push_back(argmax_action(cls.members[idx], x, actions));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool members_disagree_at(const FunctionClass& cls, const std::vector<int>& member_indices,
                         const Vec& x, const ActionSet& actions) {
  if (member_indices.empty()) return false;
  const int first = argmax_action(cls.members[member_indices[0]], x, actions);
  for (size_t i = 1; i < member_indices.size(); ++i)
    if (argmax_action(cls.members[member_indices[i]], x, actions) != first) return true;
  return false;
}

double beta_m(long T, int m, int class_size, int action_count, double delta) {
  const double log2T = std::log2(static_cast<double>(T));
  const double inner = 2.0 * class_size * action_count * action_count *
                       static_cast<double>(T) * static_cast<double>(T) / delta;
  return 16.0 * (log2T - m + 1) * std::log(inner);
}

double mu_m(int m, long T, double delta) {
  const double tau_m = std::pow(2.0, m);
  const double tau_prev = m >= 2 ? std::pow(2.0, m - 1) : 0.0;
  return 64.0 * std::log(4.0 / delta * std::log2(static_cast<double>(T))) / (tau_m - tau_prev);
}

void LossAccumulator::add(const Vec& x, int action_index, double reward) {
  const Vec& a = (*actions_)[action_index];
  for (size_t i = 0; i < loss_.size(); ++i) {
    const double r = eval(cls_->members[i], x, a) - reward;
    loss_[i] += r * r;
  }
}

}  // namespace graphband
