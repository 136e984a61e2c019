#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "cutsel/env.hpp"

namespace cutsel {

/// Cut scaled to integer coefficients: each entry within tol of an integer
/// after multiplying by the least common denominator (capped). Normalized so
/// the rhs is positive. ok=false when no such scaling exists.
struct IntegerizedCut {
  std::vector<long long> coeffs;
  long long rhs = 0;
  bool ok = false;
};

IntegerizedCut integerize(const Cut& cut, double tol = 1e-6, long long max_denominator = 10000);

/// Lifted-cover-likeness levels. A cut qualifies at `level` iff some integer
/// p >= 1 divides the (positive, integerized) rhs and p * count > rhs, where
/// count is the number of coefficients that are
///   level 1: exactly p,  level 2: in [p, p+2],  level 3: at least p.
/// Qualification nests: level 1 => 2 => 3. Cuts that do not integerize or
/// whose normalized rhs is <= 0 never qualify.
bool classify(const Cut& cut, int level);

struct CutScoreReport {
  std::array<double, 3> criterion_fraction{0.0, 0.0, 0.0};
  int cuts_added = 0;
  Termination termination = Termination::LpFailure;
  bool empty = true;  // no cuts were added; excluded from aggregates
};

/// Full cutting-plane rollout on a knapsack instance; every added cut is
/// classified under each criterion and the fractions averaged.
CutScoreReport score_rollout(const IpInstance& instance, const ActionSelector& selector,
                             const RolloutConfig& cfg, std::uint64_t seed);

}  // namespace cutsel
