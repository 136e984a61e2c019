#include "cutsel/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cutsel {

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
    case LpStatus::IterationLimit: return "IterationLimit";
  }
  return "?";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;

// Dense tableau in standard form: rows over [structural | slack | artificial]
// columns plus a trailing rhs column, one extra cost row maintained by the
// same row operations. Flat row-major storage.
struct Dict {
  int m = 0;
  int stride = 0;       // total columns + 1 (rhs)
  int total_cols = 0;   // structural + slack + artificial
  int real_cols = 0;    // structural + slack
  std::vector<double> data;  // m * stride
  std::vector<double> cost;  // stride entries; cost[total_cols] = -z
  std::vector<int> basis;

  double* row(int i) { return data.data() + static_cast<std::size_t>(i) * stride; }
  const double* row(int i) const { return data.data() + static_cast<std::size_t>(i) * stride; }
  double rhs(int i) const { return row(i)[total_cols]; }
  double z() const { return -cost[total_cols]; }

  void pivot(int r, int q) {
    double* pr = row(r);
    const double inv = 1.0 / pr[q];
    for (int j = 0; j <= total_cols; ++j) pr[j] *= inv;
    pr[q] = 1.0;  // kill roundoff on the pivot column
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      double* pi = row(i);
      const double f = pi[q];
      if (f == 0.0) continue;
      for (int j = 0; j <= total_cols; ++j) pi[j] -= f * pr[j];
      pi[q] = 0.0;
    }
    const double fc = cost[q];
    if (fc != 0.0) {
      for (int j = 0; j <= total_cols; ++j) cost[j] -= fc * pr[j];
      cost[q] = 0.0;
    }
    basis[r] = q;
  }
};

enum class PivotOutcome { Optimal, Unbounded, Limit };

// True when row a scaled by 1/pa lexicographically precedes row b scaled by
// 1/pb over the first `cols` columns.
bool lex_smaller(const double* a, double pa, const double* b, double pb, int cols) {
  for (int j = 0; j < cols; ++j) {
    const double va = a[j] / pa;
    const double vb = b[j] / pb;
    if (va < vb - 1e-12) return true;
    if (va > vb + 1e-12) return false;
  }
  return false;
}

// Runs pivots until the cost row has no eligible entering column. `allowed`
// marks columns that may enter. Bland's rule cuts in after `bland_after`
// consecutive pivots without objective improvement.
PivotOutcome run_pivots(Dict& d, const std::vector<char>& allowed, int max_pivots,
                        int bland_after, int& pivot_count) {
  int stalled = 0;
  bool bland = false;
  double last_z = d.z();
  while (true) {
    int entering = -1;
    if (!bland) {
      double best = -kCostTol;
      for (int j = 0; j < d.total_cols; ++j) {
        if (allowed[j] && d.cost[j] < best) {
          best = d.cost[j];
          entering = j;
        }
      }
    } else {
      for (int j = 0; j < d.total_cols; ++j) {
        if (allowed[j] && d.cost[j] < -kCostTol) {
          entering = j;
          break;
        }
      }
    }
    if (entering < 0) return PivotOutcome::Optimal;

    // Lexicographic ratio test: ties on the rhs ratio are broken by
    // comparing the scaled rows column by column, which yields a unique
    // leaving row and is the classic anti-cycling companion of Gomory's
    // method.
    int leaving = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d.m; ++i) {
      const double a = d.row(i)[entering];
      if (a <= kPivotTol) continue;
      const double ratio = std::max(d.rhs(i), 0.0) / a;
      if (ratio < best_ratio - 1e-12) {
        best_ratio = ratio;
        leaving = i;
      } else if (ratio < best_ratio + 1e-12 && leaving >= 0 &&
                 lex_smaller(d.row(i), a, d.row(leaving), d.row(leaving)[entering],
                             d.total_cols)) {
        best_ratio = std::min(best_ratio, ratio);
        leaving = i;
      }
    }
    if (leaving < 0) return PivotOutcome::Unbounded;

    d.pivot(leaving, entering);
    if (++pivot_count >= max_pivots) return PivotOutcome::Limit;

    const double z = d.z();
    if (z < last_z - 1e-11) {
      stalled = 0;
      bland = false;
      last_z = z;
    } else if (!bland && ++stalled >= bland_after) {
      bland = true;
    }
  }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const Tolerances& tol, int max_pivots,
                    int bland_after_stall) {
  const int n = lp.num_vars();
  const int m = lp.num_rows();
  if (n < 1 || m < 1) throw std::invalid_argument("solve_lp: empty program");
  if (lp.rhs.size() != lp.rows.size())
    throw std::invalid_argument("solve_lp: rhs/rows length mismatch");
  for (const auto& row : lp.rows)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("solve_lp: row width mismatch");

  if (max_pivots <= 0) max_pivots = 50 * (n + m);
  if (bland_after_stall <= 0) bland_after_stall = 2 * (n + m) + 10;

  int n_art = 0;
  for (int i = 0; i < m; ++i)
    if (lp.rhs[i] < 0.0) ++n_art;

  Dict d;
  d.m = m;
  d.real_cols = n + m;
  d.total_cols = d.real_cols + n_art;
  d.stride = d.total_cols + 1;
  d.data.assign(static_cast<std::size_t>(m) * d.stride, 0.0);
  d.basis.assign(m, -1);

  int art = d.real_cols;
  for (int i = 0; i < m; ++i) {
    double* r = d.row(i);
    const double sign = lp.rhs[i] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) r[j] = sign * lp.rows[i][j];
    r[n + i] = sign;
    r[d.total_cols] = sign * lp.rhs[i];
    if (sign < 0.0) {
      r[art] = 1.0;
      d.basis[i] = art++;
    } else {
      d.basis[i] = n + i;
    }
  }

  LpSolution out;
  std::vector<char> allowed(d.total_cols, 1);
  for (int j = d.real_cols; j < d.total_cols; ++j) allowed[j] = 0;  // artificials never enter

  // Phase 1: minimize the sum of artificials.
  if (n_art > 0) {
    d.cost.assign(d.stride, 0.0);
    for (int j = d.real_cols; j < d.total_cols; ++j) d.cost[j] = 1.0;
    for (int i = 0; i < m; ++i) {
      if (d.basis[i] < d.real_cols) continue;
      const double* r = d.row(i);
      for (int j = 0; j <= d.total_cols; ++j) d.cost[j] -= r[j];
      d.cost[d.basis[i]] = 0.0;
    }
    const PivotOutcome p1 =
        run_pivots(d, allowed, max_pivots, bland_after_stall, out.pivots);
    if (p1 == PivotOutcome::Limit) return out;
    if (d.z() > tol.feasibility) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    // Drive leftover artificials out of the basis; rows with no real pivot
    // entry are redundant (0 = 0) and dropped.
    for (int i = 0; i < d.m;) {
      if (d.basis[i] < d.real_cols) {
        ++i;
        continue;
      }
      int q = -1;
      const double* r = d.row(i);
      for (int j = 0; j < d.real_cols; ++j) {
        if (std::abs(r[j]) > kPivotTol) {
          q = j;
          break;
        }
      }
      if (q >= 0) {
        d.pivot(i, q);
        ++i;
      } else {
        if (i != d.m - 1) {
          std::copy(d.row(d.m - 1), d.row(d.m - 1) + d.stride, d.row(i));
          d.basis[i] = d.basis[d.m - 1];
        }
        --d.m;
        d.data.resize(static_cast<std::size_t>(d.m) * d.stride);
        d.basis.resize(d.m);
      }
    }
  }

  // Phase 2: rebuild reduced costs for the real objective.
  d.cost.assign(d.stride, 0.0);
  for (int j = 0; j < n; ++j) d.cost[j] = lp.objective[j];
  for (int i = 0; i < d.m; ++i) {
    const int b = d.basis[i];
    const double cb = b < n ? lp.objective[b] : 0.0;
    if (cb == 0.0) continue;
    const double* r = d.row(i);
    for (int j = 0; j <= d.total_cols; ++j) d.cost[j] -= cb * r[j];
  }
  for (int i = 0; i < d.m; ++i) d.cost[d.basis[i]] = 0.0;

  const PivotOutcome p2 = run_pivots(d, allowed, max_pivots, bland_after_stall, out.pivots);
  if (p2 == PivotOutcome::Limit) return out;
  if (p2 == PivotOutcome::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  Vec x(n, 0.0);
  for (int i = 0; i < d.m; ++i)
    if (d.basis[i] < n) x[d.basis[i]] = d.rhs(i);

  // The returned solution must satisfy the original constraints; a violation
  // here means the pivoting drifted and the solve is not trustworthy.
  for (int i = 0; i < m; ++i) {
    double lhs = 0.0;
    for (int j = 0; j < n; ++j) lhs += lp.rows[i][j] * x[j];
    if (lhs > lp.rhs[i] + tol.feasibility * 10.0) return out;
  }
  for (int i = 0; i < d.m; ++i)
    if (d.rhs(i) < -tol.feasibility * 10.0) return out;

  double obj = 0.0;
  for (int j = 0; j < n; ++j) obj += lp.objective[j] * x[j];

  // Rows are exposed sorted by basic-variable index, so the tableau (and
  // the candidate cut order derived from it) depends only on the final
  // basis, not on the pivot history. The lexicographic baseline then picks
  // the fractional variable with the smallest index, as in Gomory's rule.
  std::vector<int> order(d.m);
  for (int i = 0; i < d.m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return d.basis[a] < d.basis[b]; });

  SimplexTableau tab;
  tab.num_structural = n;
  tab.basis.resize(d.m);
  tab.basic_values.resize(d.m);
  tab.rows.resize(d.m);
  for (int i = 0; i < d.m; ++i) {
    const double* r = d.row(order[i]);
    tab.basis[i] = d.basis[order[i]];
    tab.rows[i].assign(r, r + d.real_cols);
    tab.basic_values[i] = r[d.total_cols];
  }
  tab.objective_value = obj;

  out.status = LpStatus::Optimal;
  out.tableau = std::move(tab);
  out.x = std::move(x);
  out.objective = obj;
  return out;
}

// ---------------------------------------------------------------------------
// WarmSimplex

struct WarmSimplex::State {
  LinearProgram lp;
  Tolerances tol;
  int max_pivots_cfg = -1;
  LpStatus status = LpStatus::IterationLimit;
  Dict dict;
  Vec x;
  double objective = 0.0;
  long cold_resolves = 0;

  int max_pivots() const {
    return max_pivots_cfg > 0 ? max_pivots_cfg : 50 * (lp.num_vars() + lp.num_rows());
  }

  // Rebuild the dictionary and cost row from a cold solve's tableau.
  void adopt(const LpSolution& sol) {
    status = sol.status;
    if (!sol.optimal()) return;
    const SimplexTableau& tab = *sol.tableau;
    const int n = lp.num_vars();
    const int m = static_cast<int>(tab.rows.size());
    dict.m = m;
    dict.real_cols = n + lp.num_rows();
    dict.total_cols = dict.real_cols;
    dict.stride = dict.total_cols + 1;
    dict.data.assign(static_cast<std::size_t>(m) * dict.stride, 0.0);
    dict.basis = tab.basis;
    for (int i = 0; i < m; ++i) {
      double* r = dict.row(i);
      std::copy(tab.rows[i].begin(), tab.rows[i].end(), r);
      r[dict.total_cols] = tab.basic_values[i];
    }
    dict.cost.assign(dict.stride, 0.0);
    for (int j = 0; j < n; ++j) dict.cost[j] = lp.objective[j];
    for (int i = 0; i < m; ++i) {
      const int b = dict.basis[i];
      const double cb = b < n ? lp.objective[b] : 0.0;
      if (cb == 0.0) continue;
      const double* r = dict.row(i);
      for (int j = 0; j <= dict.total_cols; ++j) dict.cost[j] -= cb * r[j];
    }
    for (int i = 0; i < m; ++i) dict.cost[dict.basis[i]] = 0.0;
    x = *sol.x;
    objective = sol.objective;
  }

  void cold_resolve() {
    ++cold_resolves;
    adopt(solve_lp(lp, tol, max_pivots_cfg));
    if (status == LpStatus::Optimal) lex_polish();
  }

  bool extract_and_verify() {
    const int n = lp.num_vars();
    x.assign(n, 0.0);
    for (int i = 0; i < dict.m; ++i) {
      if (dict.rhs(i) < -tol.feasibility * 10.0) return false;
      if (dict.basis[i] < n) x[dict.basis[i]] = std::max(dict.rhs(i), 0.0);
    }
    for (int i = 0; i < lp.num_rows(); ++i) {
      double lhs = 0.0;
      for (int j = 0; j < n; ++j) lhs += lp.rows[i][j] * x[j];
      if (lhs > lp.rhs[i] + tol.feasibility * 10.0) return false;
    }
    objective = 0.0;
    for (int j = 0; j < n; ++j) objective += lp.objective[j] * x[j];
    return true;
  }

  // Dual simplex until primal feasible. Assumes the cost row is dual
  // feasible (it is at an optimal dictionary and stays so under dual
  // pivots).
  enum class DualOutcome { Optimal, Infeasible, Limit };
  DualOutcome dual_reoptimize() {
    int pivots = 0;
    const int cap = max_pivots();
    while (true) {
      int leaving = -1;
      double most_negative = -1e-9;
      for (int i = 0; i < dict.m; ++i) {
        if (dict.rhs(i) < most_negative) {
          most_negative = dict.rhs(i);
          leaving = i;
        }
      }
      if (leaving < 0) return DualOutcome::Optimal;

      const double* row = dict.row(leaving);
      int entering = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int j = 0; j < dict.total_cols; ++j) {
        if (row[j] >= -kPivotTol) continue;
        const double ratio = std::max(dict.cost[j], 0.0) / -row[j];
        if (ratio < best_ratio - 1e-12) {
          best_ratio = ratio;
          entering = j;
        }
      }
      if (entering < 0) return DualOutcome::Infeasible;
      dict.pivot(leaving, entering);
      if (++pivots > cap) return DualOutcome::Limit;
    }
  }

  // Reoptimize across the optimal face to the vertex that lexicographically
  // maximizes (x_1, x_2, ...). Anchoring every round at one canonical
  // vertex keeps cut generation from wandering across equivalent optima,
  // which is what stalls pure cutting-plane runs on degenerate instances;
  // empirically the lex-max corner yields markedly deeper Gomory cuts than
  // either the raw solver vertex or the lex-min corner.
  void lex_polish() {
    const int n = lp.num_vars();
    std::vector<char> frozen(dict.total_cols, 0);
    for (int j = 0; j < dict.total_cols; ++j) frozen[j] = dict.cost[j] > 1e-9;
    int budget = 20 * (dict.m + dict.total_cols);

    Vec level_cost(dict.total_cols + 1);
    for (int level = 0; level < n && budget > 0; ++level) {
      // Reduced costs of the objective "maximize x_level" on the face.
      std::fill(level_cost.begin(), level_cost.end(), 0.0);
      level_cost[level] = -1.0;
      for (int i = 0; i < dict.m; ++i) {
        if (dict.basis[i] != level) continue;
        const double* r = dict.row(i);
        for (int j = 0; j <= dict.total_cols; ++j) level_cost[j] += r[j];
        break;
      }
      for (int i = 0; i < dict.m; ++i) level_cost[dict.basis[i]] = 0.0;

      while (budget > 0) {
        int entering = -1;
        double best = -1e-9;
        for (int j = 0; j < dict.total_cols; ++j) {
          if (!frozen[j] && level_cost[j] < best) {
            best = level_cost[j];
            entering = j;
          }
        }
        if (entering < 0) break;
        int leaving = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < dict.m; ++i) {
          const double a = dict.row(i)[entering];
          if (a <= kPivotTol) continue;
          const double ratio = std::max(dict.rhs(i), 0.0) / a;
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 && leaving >= 0 &&
               lex_smaller(dict.row(i), a, dict.row(leaving),
                           dict.row(leaving)[entering], dict.total_cols))) {
            best_ratio = std::min(best_ratio, ratio);
            leaving = i;
          }
        }
        if (leaving < 0) break;  // unbounded face direction; stop polishing
        dict.pivot(leaving, entering);
        --budget;
        const double f = level_cost[entering];
        if (f != 0.0) {
          const double* r = dict.row(leaving);
          for (int j = 0; j <= dict.total_cols; ++j) level_cost[j] -= f * r[j];
          level_cost[entering] = 0.0;
        }
      }
      for (int j = 0; j < dict.total_cols; ++j)
        if (!frozen[j] && level_cost[j] > 1e-9) frozen[j] = 1;
    }
  }
};

WarmSimplex::WarmSimplex(LinearProgram lp, const Tolerances& tol, int max_pivots)
    : state_(std::make_unique<State>()) {
  state_->lp = std::move(lp);
  state_->tol = tol;
  state_->max_pivots_cfg = max_pivots;
  state_->adopt(solve_lp(state_->lp, tol, max_pivots));
  if (state_->status == LpStatus::Optimal) {
    state_->lex_polish();
    if (!state_->extract_and_verify()) state_->cold_resolve();
  }
}

WarmSimplex::~WarmSimplex() = default;
WarmSimplex::WarmSimplex(WarmSimplex&&) noexcept = default;
WarmSimplex& WarmSimplex::operator=(WarmSimplex&&) noexcept = default;

LpStatus WarmSimplex::status() const { return state_->status; }
double WarmSimplex::objective() const { return state_->objective; }
const Vec& WarmSimplex::solution() const { return state_->x; }
const LinearProgram& WarmSimplex::lp() const { return state_->lp; }
long WarmSimplex::cold_resolves() const { return state_->cold_resolves; }

SimplexTableau WarmSimplex::tableau() const {
  const State& s = *state_;
  if (s.status != LpStatus::Optimal)
    throw std::logic_error("WarmSimplex::tableau: not optimal");
  std::vector<int> order(s.dict.m);
  for (int i = 0; i < s.dict.m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return s.dict.basis[a] < s.dict.basis[b]; });
  SimplexTableau tab;
  tab.num_structural = s.lp.num_vars();
  tab.basis.resize(s.dict.m);
  tab.basic_values.resize(s.dict.m);
  tab.rows.resize(s.dict.m);
  for (int i = 0; i < s.dict.m; ++i) {
    const double* r = s.dict.row(order[i]);
    tab.basis[i] = s.dict.basis[order[i]];
    tab.rows[i].assign(r, r + s.dict.real_cols);
    tab.basic_values[i] = r[s.dict.total_cols];
  }
  tab.objective_value = s.objective;
  return tab;
}

LpStatus WarmSimplex::add_cut(const Cut& cut) {
  State& s = *state_;
  if (s.status != LpStatus::Optimal)
    throw std::logic_error("WarmSimplex::add_cut: not optimal");
  s.lp = add_constraint(s.lp, cut);

  // Widen every dictionary row by the new slack column (zero everywhere but
  // the new row, which is eliminated against the current basis below).
  Dict next;
  next.m = s.dict.m + 1;
  next.real_cols = s.dict.real_cols + 1;
  next.total_cols = next.real_cols;
  next.stride = next.total_cols + 1;
  next.data.assign(static_cast<std::size_t>(next.m) * next.stride, 0.0);
  next.basis = s.dict.basis;
  const int new_slack = s.dict.real_cols;
  for (int i = 0; i < s.dict.m; ++i) {
    const double* src = s.dict.row(i);
    double* dst = next.row(i);
    std::copy(src, src + s.dict.total_cols, dst);
    dst[new_slack] = 0.0;
    dst[next.total_cols] = src[s.dict.total_cols];
  }
  next.cost.assign(next.stride, 0.0);
  std::copy(s.dict.cost.begin(), s.dict.cost.begin() + s.dict.total_cols, next.cost.begin());
  next.cost[new_slack] = 0.0;
  next.cost[next.total_cols] = s.dict.cost[s.dict.total_cols];

  const int n = s.lp.num_vars();
  Vec raw(next.stride, 0.0);
  for (int j = 0; j < n; ++j) raw[j] = cut.coeffs[j];
  raw[new_slack] = 1.0;
  raw[next.total_cols] = cut.rhs;
  for (int i = 0; i < s.dict.m; ++i) {
    const double f = raw[next.basis[i]];
    if (f == 0.0) continue;
    const double* r = next.row(i);
    for (int j = 0; j <= next.total_cols; ++j) raw[j] -= f * r[j];
    raw[next.basis[i]] = 0.0;
  }
  std::copy(raw.begin(), raw.end(), next.row(next.m - 1));
  next.basis.push_back(new_slack);

  s.dict = std::move(next);
  const State::DualOutcome outcome = s.dual_reoptimize();
  if (outcome == State::DualOutcome::Optimal) s.lex_polish();
  if (outcome == State::DualOutcome::Optimal && s.extract_and_verify()) {
    s.status = LpStatus::Optimal;
    return s.status;
  }
  // Pivot limit, drift, or a (possibly spurious) infeasible verdict: redo
  // from scratch so the answer never depends on the warm path.
  s.cold_resolve();
  return s.status;
}

}  // namespace cutsel
