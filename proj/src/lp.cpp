#include "graphband/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace graphband {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense tableau in equality form. Column layout: structural vars, one
// slack/surplus per inequality, artificials. Reduced costs live in `zrow`.
struct Tableau {
  int rows = 0, cols = 0;
  std::vector<double> a;     // rows x cols
  std::vector<double> rhs;   // rows
  std::vector<double> zrow;  // cols (reduced costs)
  double zval = 0.0;
  std::vector<int> basis;  // basic column per row

  double& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  void pivot(int pr, int pc) {
    const double p = at(pr, pc);
    for (int c = 0; c < cols; ++c) at(pr, c) /= p;
    rhs[pr] /= p;
    for (int r = 0; r < rows; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (int c = 0; c < cols; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
      rhs[r] -= f * rhs[pr];
    }
    const double f = zrow[pc];
    if (f != 0.0) {
      for (int c = 0; c < cols; ++c) zrow[c] -= f * at(pr, c);
      zrow[pc] = 0.0;
      zval -= f * rhs[pr];
    }
    basis[pr] = pc;
  }

  // Bland's rule: lowest-index entering column, leaving row by min ratio
  // with ties to the lowest basic index. Returns false on the iteration cap.
  bool run(int active_cols, double tol, int& budget) {
    while (true) {
      int enter = -1;
      for (int c = 0; c < active_cols; ++c)
        if (zrow[c] < -tol) {
          enter = c;
          break;
        }
      if (enter < 0) return true;
      if (--budget < 0) return false;

      int leave = -1;
      double best_ratio = kInf;
      for (int r = 0; r < rows; ++r) {
        const double coef = at(r, enter);
        if (coef <= tol) continue;
        const double ratio = rhs[r] / coef;
        if (ratio < best_ratio - tol || (leave >= 0 && ratio < best_ratio + tol && basis[r] < basis[leave])) {
          best_ratio = ratio;
          leave = r;
        }
      }
      if (leave < 0) return false;  // no admissible pivot: cannot certify optimality
      pivot(leave, enter);
    }
  }
};

}  // namespace

LPSolution simplex_solve(const DenseLP& lp, const SimplexLimits& limits) {
  const int n = static_cast<int>(lp.costs.size());
  if (n < 1 || n > limits.max_vars) throw std::invalid_argument("simplex_solve: variable count out of range");
  const int m_ineq = static_cast<int>(lp.geq_constraints.size());
  const int rows = m_ineq + 1;
  const double tol = limits.tol;

  Tableau t;
  t.rows = rows;
  t.cols = n + m_ineq + rows;  // structural + slack/surplus + artificial slots
  t.a.assign(static_cast<size_t>(t.rows) * t.cols, 0.0);
  t.rhs.assign(rows, 0.0);
  t.basis.assign(rows, -1);

  int n_art = 0;
  std::vector<int> art_col(rows, -1);
  for (int r = 0; r < m_ineq; ++r) {
    const auto& [coeffs, b] = lp.geq_constraints[r];
    if (static_cast<int>(coeffs.size()) != n) throw std::invalid_argument("simplex_solve: constraint size mismatch");
    const double sign = b < 0 ? -1.0 : 1.0;
    for (int c = 0; c < n; ++c) t.at(r, c) = sign * coeffs[c];
    t.at(r, n + r) = -sign;  // surplus
    t.rhs[r] = sign * b;
    if (sign < 0) {
      t.basis[r] = n + r;  // negated surplus acts as a slack
    } else {
      art_col[r] = n + m_ineq + n_art++;
      t.at(r, art_col[r]) = 1.0;
      t.basis[r] = art_col[r];
    }
  }
  const int eq_row = m_ineq;
  for (int c = 0; c < n; ++c) t.at(eq_row, c) = 1.0;
  t.rhs[eq_row] = 1.0;
  art_col[eq_row] = n + m_ineq + n_art++;
  t.at(eq_row, art_col[eq_row]) = 1.0;
  t.basis[eq_row] = art_col[eq_row];

  const int first_art = n + m_ineq;
  int budget = limits.max_iters > 0 ? limits.max_iters : 10 * (n + rows);

  LPSolution sol;
  sol.x.assign(n, 0.0);

  // phase 1: drive the artificials to zero
  t.zrow.assign(t.cols, 0.0);
  t.zval = 0.0;
  for (int r = 0; r < rows; ++r) {
    if (t.basis[r] < first_art) continue;
    for (int c = 0; c < first_art; ++c) t.zrow[c] -= t.at(r, c);
    t.zval -= t.rhs[r];
  }
  if (!t.run(first_art, tol, budget)) {
    sol.status = LPStatus::numerical_failure;
    return sol;
  }
  if (-t.zval > 1e-7) {
    sol.status = LPStatus::infeasible;
    return sol;
  }
  // pivot leftover zero-level artificials out of the basis where possible
  for (int r = 0; r < rows; ++r) {
    if (t.basis[r] < first_art) continue;
    int pc = -1;
    for (int c = 0; c < first_art; ++c)
      if (std::abs(t.at(r, c)) > tol) {
        pc = c;
        break;
      }
    if (pc >= 0) t.pivot(r, pc);
    // a fully zero row is redundant; its artificial stays basic at level 0
  }

  // phase 2: original objective, artificial columns excluded
  t.zrow.assign(t.cols, 0.0);
  t.zval = 0.0;
  for (int c = 0; c < n; ++c) t.zrow[c] = lp.costs[c];
  for (int r = 0; r < rows; ++r) {
    const int b = t.basis[r];
    const double cb = b < n ? lp.costs[b] : 0.0;
    if (cb == 0.0) continue;
    for (int c = 0; c < first_art; ++c) t.zrow[c] -= cb * t.at(r, c);
    t.zrow[b] = 0.0;
    t.zval -= cb * t.rhs[r];
  }
  if (!t.run(first_art, tol, budget)) {
    sol.status = LPStatus::numerical_failure;
    return sol;
  }

  for (int r = 0; r < rows; ++r)
    if (t.basis[r] < n) sol.x[t.basis[r]] = t.rhs[r];

  // validate, clamp tiny negatives, renormalize onto the simplex
  double total = 0.0;
  for (double& v : sol.x) {
    if (v < -1e-12) {
      sol.status = LPStatus::numerical_failure;
      return sol;
    }
    v = std::max(v, 0.0);
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9 || total <= 0.0) {
    sol.status = LPStatus::numerical_failure;
    return sol;
  }
  for (double& v : sol.x) v /= total;
  for (const auto& [coeffs, b] : lp.geq_constraints) {
    double lhs = 0.0;
    for (int c = 0; c < n; ++c) lhs += coeffs[c] * sol.x[c];
    if (lhs < b - 1e-9) {
      sol.status = LPStatus::numerical_failure;
      return sol;
    }
  }

  sol.objective = 0.0;
  for (int c = 0; c < n; ++c) sol.objective += lp.costs[c] * sol.x[c];
  sol.status = LPStatus::optimal;
  return sol;
}

DenseLP build_sampling_lp(const FeedbackGraph& g, const std::vector<double>& gaps,
                          const std::vector<double>& p_tilde, int ahat) {
  const int n = g.n;
  DenseLP lp;
  lp.costs = gaps;
  lp.geq_constraints.reserve(n - 1);
  for (int b = 0; b < n; ++b) {
    if (b == ahat) continue;
    std::vector<double> row(n, 0.0);
    double rhs = 0.0;
    for (int j = 0; j < n; ++j)
      if (g.edge(j, b)) {
        row[j] = 1.0;
        rhs = std::max(rhs, p_tilde[j]);
      }
    lp.geq_constraints.emplace_back(std::move(row), rhs);
  }
  return lp;
}

LPSolution vertex_enumerate_oracle(const DenseLP& lp) {
  const int n = static_cast<int>(lp.costs.size());
  if (n > 6) throw std::invalid_argument("vertex_enumerate_oracle: more than 6 variables");
  const int m_ineq = static_cast<int>(lp.geq_constraints.size());

  // candidate active constraints: each geq tight, each bound x_i = 0;
  // the equality sum(x) = 1 is always active
  const int pool = m_ineq + n;
  std::vector<int> subset;

  LPSolution best;
  best.objective = kInf;
  best.status = LPStatus::infeasible;

  std::vector<double> mat;  // n x (n+1) augmented system
  auto try_subset = [&]() {
    mat.assign(static_cast<size_t>(n) * (n + 1), 0.0);
    int r = 0;
    for (int c = 0; c < n; ++c) mat[static_cast<size_t>(r) * (n + 1) + c] = 1.0;
    mat[static_cast<size_t>(r) * (n + 1) + n] = 1.0;
    ++r;
    for (int pick : subset) {
      if (pick < m_ineq) {
        const auto& [coeffs, b] = lp.geq_constraints[pick];
        for (int c = 0; c < n; ++c) mat[static_cast<size_t>(r) * (n + 1) + c] = coeffs[c];
        mat[static_cast<size_t>(r) * (n + 1) + n] = b;
      } else {
        mat[static_cast<size_t>(r) * (n + 1) + (pick - m_ineq)] = 1.0;
        mat[static_cast<size_t>(r) * (n + 1) + n] = 0.0;
      }
      ++r;
    }

    // gaussian elimination with partial pivoting
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      double best_abs = 1e-10;
      for (int row = col; row < n; ++row) {
        const double v = std::abs(mat[static_cast<size_t>(row) * (n + 1) + col]);
        if (v > best_abs) {
          best_abs = v;
          piv = row;
        }
      }
      if (piv < 0) return;  // singular
      if (piv != col)
        for (int c = 0; c <= n; ++c)
          std::swap(mat[static_cast<size_t>(piv) * (n + 1) + c], mat[static_cast<size_t>(col) * (n + 1) + c]);
      const double p = mat[static_cast<size_t>(col) * (n + 1) + col];
      for (int row = 0; row < n; ++row) {
        if (row == col) continue;
        const double f = mat[static_cast<size_t>(row) * (n + 1) + col] / p;
        if (f == 0.0) continue;
        for (int c = col; c <= n; ++c)
          mat[static_cast<size_t>(row) * (n + 1) + c] -= f * mat[static_cast<size_t>(col) * (n + 1) + c];
      }
    }

    std::vector<double> x(n);
    for (int i = 0; i < n; ++i)
      x[i] = mat[static_cast<size_t>(i) * (n + 1) + n] / mat[static_cast<size_t>(i) * (n + 1) + i];

    for (double v : x)
      if (v < -1e-9) return;
    for (const auto& [coeffs, b] : lp.geq_constraints) {
      double lhs = 0.0;
      for (int c = 0; c < n; ++c) lhs += coeffs[c] * x[c];
      if (lhs < b - 1e-9) return;
    }

    double obj = 0.0;
    for (int c = 0; c < n; ++c) obj += lp.costs[c] * x[c];
    if (obj < best.objective) {
      best.objective = obj;
      best.x = x;
      best.status = LPStatus::optimal;
    }
  };

  // choose n-1 further active constraints to pin a vertex
  auto rec = [&](auto&& self, int from, int need) -> void {
    if (need == 0) {
      try_subset();
      return;
    }
    for (int i = from; i <= pool - need; ++i) {
      subset.push_back(i);
      self(self, i + 1, need - 1);
      subset.pop_back();
    }
  };
  rec(rec, 0, n - 1);

  if (best.status == LPStatus::optimal) {
    double total = 0.0;
    for (double& v : best.x) {
      v = std::max(v, 0.0);
      total += v;
    }
    for (double& v : best.x) v /= total;
  }
  return best;
}

}  // namespace graphband
