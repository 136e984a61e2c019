#pragma once

#include <memory>
#include <optional>
#include <string>

#include "cutsel/types.hpp"

namespace cutsel {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string to_string(LpStatus status);

/// Final tableau of an optimal solve. rows[i] spans the n structural columns
/// followed by one slack column per constraint (identity on the basis);
/// basic_values is b-tilde. Gomory cuts are read off fractional rows.
struct SimplexTableau {
  std::vector<int> basis;        // basic variable of each row, in [0, n + N)
  std::vector<Vec> rows;         // each of length n + N
  Vec basic_values;              // >= -feasibility tolerance
  double objective_value = 0.0;  // z*_LP
  int num_structural = 0;        // n

  int num_columns() const { return rows.empty() ? num_structural : static_cast<int>(rows.front().size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
};

struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  std::optional<SimplexTableau> tableau;  // present iff Optimal
  std::optional<Vec> x;                   // structural solution, iff Optimal
  double objective = 0.0;
  int pivots = 0;

  bool optimal() const { return status == LpStatus::Optimal; }
};

/// Dense two-phase primal simplex. Dantzig pricing with Bland's rule engaged
/// after `bland_after_stall` pivots without objective improvement (default
/// 2(n+m)+10). max_pivots <= 0 selects the default 50(n+m).
LpSolution solve_lp(const LinearProgram& lp, const Tolerances& tol = {},
                    int max_pivots = -1, int bland_after_stall = -1);

/// Incremental solver for the cutting-plane loop: keeps the optimal
/// dictionary alive and reoptimizes with the dual simplex after each
/// appended cut (the new row enters primal-infeasible, dual-feasible).
/// Every warm result is verified against the constraints; any drift or
/// pivot-limit falls back to a cold solve_lp, so correctness never depends
/// on the warm start.
class WarmSimplex {
 public:
  WarmSimplex(LinearProgram lp, const Tolerances& tol, int max_pivots = -1);
  ~WarmSimplex();
  WarmSimplex(WarmSimplex&&) noexcept;
  WarmSimplex& operator=(WarmSimplex&&) noexcept;

  LpStatus status() const;
  double objective() const;
  const Vec& solution() const;
  const LinearProgram& lp() const;
  SimplexTableau tableau() const;

  /// Appends the cut and reoptimizes. Infeasible results are re-confirmed
  /// with a cold solve before being reported.
  LpStatus add_cut(const Cut& cut);

  long cold_resolves() const;  // fallbacks taken (exposed for tests)

 private:
  struct State;
  std::unique_ptr<State> state_;
};

}  // namespace cutsel
