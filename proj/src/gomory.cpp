#include "cutsel/gomory.hpp"

#include <cmath>
#include <stdexcept>

namespace cutsel {

double snapped_frac(double v, double snap_tol) {
  const double nearest = std::round(v);
  if (std::abs(v - nearest) <= snap_tol) return 0.0;
  return v - std::floor(v);
}

std::vector<int> fractional_components(const SimplexTableau& tableau, double frac_tol) {
  std::vector<int> rows;
  for (int i = 0; i < tableau.num_rows(); ++i) {
    if (tableau.basis[i] >= tableau.num_structural) continue;
    const double v = tableau.basic_values[i];
    if (std::abs(v - std::round(v)) > frac_tol) rows.push_back(i);
  }
  return rows;
}

Cut raw_gomory_cut(const SimplexTableau& tableau, int row, double frac_tol) {
  if (row < 0 || row >= tableau.num_rows())
    throw std::out_of_range("raw_gomory_cut: row index out of range");
  const double b = tableau.basic_values[row];
  if (std::abs(b - std::round(b)) <= frac_tol)
    throw std::invalid_argument("raw_gomory_cut: row is not fractional");

  const Vec& src = tableau.rows[row];
  Cut cut;
  cut.coeffs.resize(src.size());
  for (std::size_t j = 0; j < src.size(); ++j)
    cut.coeffs[j] = -snapped_frac(src[j], frac_tol);
  cut.rhs = -snapped_frac(b, frac_tol);
  return cut;
}

Cut project_to_original(const Cut& raw_cut, const LinearProgram& lp) {
  const int n = lp.num_vars();
  const int slacks = static_cast<int>(raw_cut.coeffs.size()) - n;
  if (slacks < 0 || slacks > lp.num_rows())
    throw std::out_of_range("project_to_original: slack index out of range");

  Cut out;
  out.coeffs.assign(raw_cut.coeffs.begin(), raw_cut.coeffs.begin() + n);
  out.rhs = raw_cut.rhs;
  for (int k = 0; k < slacks; ++k) {
    const double r = raw_cut.coeffs[n + k];
    if (r == 0.0) continue;
    const Vec& row = lp.rows[k];
    for (int j = 0; j < n; ++j) out.coeffs[j] -= r * row[j];
    out.rhs -= r * lp.rhs[k];
  }
  return out;
}

CandidateCutSet generate_candidates(const SimplexTableau& tableau, const LinearProgram& lp,
                                    double frac_tol, double void_tol) {
  CandidateCutSet set;
  for (int row : fractional_components(tableau, frac_tol)) {
    Cut cut = project_to_original(raw_gomory_cut(tableau, row, frac_tol), lp);
    double max_mag = 0.0;
    for (double c : cut.coeffs) max_mag = std::max(max_mag, std::abs(c));
    if (max_mag < void_tol || max_mag > 1e4) continue;
    set.cuts.push_back(std::move(cut));
    set.source_rows.push_back(row);
  }
  return set;
}

}  // namespace cutsel
