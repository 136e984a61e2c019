#pragma once

#include "cutsel/simplex.hpp"
#include "cutsel/types.hpp"

namespace cutsel {

/// Candidate cuts of the current round, one per fractional basic structural
/// component, in tableau-row order. source_rows are the tableau rows each
/// cut came from (the lexicographic baseline keys off this order).
struct CandidateCutSet {
  std::vector<Cut> cuts;
  std::vector<int> source_rows;

  bool empty() const { return cuts.empty(); }
  int size() const { return static_cast<int>(cuts.size()); }
};

/// Fractional part v - floor(v) with snapping: values within snap_tol of an
/// integer count as that integer, so near-integral tableau entries do not
/// leak spurious tiny cut coefficients.
double snapped_frac(double v, double snap_tol);

/// Tableau rows whose basic variable is structural and whose basic value is
/// fractional: |b_i - round(b_i)| > frac_tol.
std::vector<int> fractional_components(const SimplexTableau& tableau, double frac_tol);

/// Eq-style Gomory cut from one fractional row, over structural + slack
/// variables: coefficient j is -frac(row_j), rhs is -frac(b_i). All
/// coefficients land in [-1, 0].
Cut raw_gomory_cut(const SimplexTableau& tableau, int row, double frac_tol);

/// Eliminate slack terms via s = b - Ax against the current constraint set
/// (including earlier cuts): (e - r^T A) x <= d - r^T b.
Cut project_to_original(const Cut& raw_cut, const LinearProgram& lp);

/// One projected cut per fractional row. Cuts whose largest projected
/// coefficient magnitude is below void_tol are dropped as numerically void.
CandidateCutSet generate_candidates(const SimplexTableau& tableau, const LinearProgram& lp,
                                    double frac_tol, double void_tol = 1e-9);

}  // namespace cutsel
