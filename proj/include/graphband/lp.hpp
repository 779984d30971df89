#pragma once

#include <utility>
#include <vector>

#include "graphband/graph.hpp"

namespace graphband {

// min costs . x  subject to  geq rows, sum(x) = 1, x >= 0.
struct DenseLP {
  std::vector<double> costs;
  std::vector<std::pair<std::vector<double>, double>> geq_constraints;  // coeffs . x >= rhs
};

enum class LPStatus { optimal, infeasible, numerical_failure };

struct LPSolution {
  std::vector<double> x;
  double objective = 0.0;
  LPStatus status = LPStatus::numerical_failure;
};

struct SimplexLimits {
  int max_vars = 4096;
  double tol = 1e-9;
  int max_iters = 0;  // 0: 10 * (vars + constraints)
};

// Two-phase dense simplex with Bland's anti-cycling rule. Optimal solutions
// are verified against the constraints (1e-9), clamped at zero and
// renormalized before returning; hitting the iteration cap of
// 10 (vars + constraints) reports numerical_failure.
LPSolution simplex_solve(const DenseLP& lp, const SimplexLimits& limits = {});

// Observation-duty LP: minimize the one-step empirical regret sum_a p(a)
// gaps[a] subject to, for every b != ahat, the observation probability
// of b staying at or above the largest baseline mass among b's in-neighbors.
DenseLP build_sampling_lp(const FeedbackGraph& g, const std::vector<double>& gaps,
                          const std::vector<double>& p_tilde, int ahat);

// Test oracle: enumerates every basic solution (active-constraint subsets),
// keeps the feasible ones and returns the best. Refuses more than 6 vars.
LPSolution vertex_enumerate_oracle(const DenseLP& lp);

}  // namespace graphband
