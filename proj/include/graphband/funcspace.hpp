#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "graphband/rng.hpp"

namespace graphband {

using Vec = std::vector<double>;
using ActionSet = std::vector<Vec>;

// f(x, a) = (x - x0) . (a - a0)
struct BilinearFunction {
  Vec x0;
  Vec a0;
};

double eval(const BilinearFunction& f, const Vec& x, const Vec& a);

struct FunctionClass {
  std::vector<BilinearFunction> members;
  int d = 0;

  int size() const { return static_cast<int>(members.size()); }
};

// size members with standard-normal x0, a0; the true function index is
// uniform over the class.
std::pair<FunctionClass, int> gen_function_class(int d, int size, Rng& rng);

// One round of logged feedback: the context plus every (action, reward)
// pair revealed by the feedback graph.
struct ObservationRecord {
  Vec x;
  std::vector<std::pair<int, double>> observed;
};

using Dataset = std::vector<ObservationRecord>;

double cumulative_sq_loss(const BilinearFunction& f, const ActionSet& actions,
                          const Dataset& data, size_t upto);

// Offline least-squares oracle: exhaustive argmin over the class, ties to
// the lowest index.
int oracle_fit(const FunctionClass& cls, const ActionSet& actions, const Dataset& data, size_t upto);

struct ConfidenceSet {
  std::vector<int> member_indices;  // ascending
  double beta = 0.0;

  bool contains(int idx) const;
  int size() const { return static_cast<int>(member_indices.size()); }
};

// Members whose cumulative loss on the prefix is within beta of the best.
ConfidenceSet confidence_set(const FunctionClass& cls, const ActionSet& actions,
                             const Dataset& data, size_t upto, double beta);

// Union over the given members of their greedy action at x (per-member ties
// to the lowest action index). Returned ascending and deduplicated.
std::vector<int> candidate_actions(const FunctionClass& cls, const std::vector<int>& member_indices,
                                   const Vec& x, const ActionSet& actions);

int argmax_action(const BilinearFunction& f, const Vec& x, const ActionSet& actions);

// True iff the members do not all share one greedy action at x
// (equivalently |candidate_actions| > 1); early-exits on first disagreement.
bool members_disagree_at(const FunctionClass& cls, const std::vector<int>& member_indices,
                         const Vec& x, const ActionSet& actions);

// Confidence radius: 16 (log2 T - m + 1) ln(2 |F| |A|^2 T^2 / delta).
double beta_m(long T, int m, int class_size, int action_count, double delta);

// Smoothing parameter: 64 ln(4 log2(T) / delta) / (tau_m - tau_{m-1}).
double mu_m(int m, long T, double delta);

// Running per-member cumulative squared loss, updated one observation at a
// time. Equivalent to cumulative_sq_loss over the same stream; keeps the
// per-round oracle cost at O(|F| |N_out|).
class LossAccumulator {
 public:
  LossAccumulator(const FunctionClass& cls, const ActionSet& actions)
      : cls_(&cls), actions_(&actions), loss_(cls.members.size(), 0.0) {}

  void add(const Vec& x, int action_index, double reward);
  const Vec& losses() const { return loss_; }

 private:
  const FunctionClass* cls_;
  const ActionSet* actions_;
  Vec loss_;
};

}  // namespace graphband
