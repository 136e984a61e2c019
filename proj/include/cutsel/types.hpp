#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cutsel {

using Vec = std::vector<double>;

struct Tolerances {
  double feasibility = 1e-7;
  double fractionality = 1e-6;
  double objective = 1e-6;
};

/// One linear inequality coeffs^T x <= rhs in original variable space.
/// Doubles as a branch-and-cut action.
struct Cut {
  Vec coeffs;
  double rhs = 0.0;
};

/// Working LP: min objective^T x subject to rows[i]^T x <= rhs[i], x >= 0.
/// Nonnegativity is implicit and never materialized as rows. The row list
/// grows by exactly one entry per cut added.
struct LinearProgram {
  Vec objective;
  std::vector<Vec> rows;
  Vec rhs;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
};

/// Canonical integer program: min objective^T x, matrix x <= rhs, x >= 0,
/// x integer. raw_sense records whether the generator negated a
/// maximization objective (-1) so reports can flip values back.
struct IpInstance {
  std::string name;
  Vec objective;
  std::vector<Vec> matrix;
  Vec rhs;
  std::optional<double> known_ip_optimum;  // z*_IP in canonical (min) space
  int raw_sense = 1;
  std::vector<std::string> var_names;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(matrix.size()); }

  LinearProgram relaxation() const { return {objective, matrix, rhs}; }

  void validate() const {
    if (objective.empty() || matrix.empty())
      throw std::invalid_argument("instance must have n >= 1, m >= 1");
    if (matrix.size() != rhs.size())
      throw std::invalid_argument("rhs length does not match row count");
    for (const auto& row : matrix)
      if (row.size() != objective.size())
        throw std::invalid_argument("row width does not match objective length");
  }
};

/// Append one cut; prior constraints unchanged and order-preserved.
inline LinearProgram add_constraint(const LinearProgram& lp, const Cut& cut) {
  if (static_cast<int>(cut.coeffs.size()) != lp.num_vars())
    throw std::invalid_argument("cut dimension does not match LP variable count");
  LinearProgram out = lp;
  out.rows.push_back(cut.coeffs);
  out.rhs.push_back(cut.rhs);
  return out;
}

}  // namespace cutsel
