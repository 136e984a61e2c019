#pragma once

#include <optional>

#include "cutsel/instances.hpp"
#include "cutsel/types.hpp"

namespace cutsel {

/// Reference IP optima for generated instances (canonical minimization
/// space). These back the optional known_ip_optimum field; the paper used a
/// commercial solver for this, which is out of scope here.

/// Best-first branch-and-bound with most-fractional branching. When every
/// matrix entry is nonnegative, floor(x_LP) is feasible at each node and
/// feeds the incumbent. Returns nullopt if optimality is not proven within
/// node_limit nodes.
std::optional<double> ip_optimum_bnb(const IpInstance& instance, long node_limit = 2000000);

/// Exhaustive dynamic program over (period, storage) states.
double planning_optimum(const PlanningRaw& raw);

/// 0/1 knapsack value DP over integer capacities, returned as the canonical
/// minimization optimum (negated maximization value).
double knapsack_optimum(const KnapsackRaw& raw);

/// Enumerates all 2^|V| vertex assignments. Canonical (negated) optimum.
double maxcut_optimum(const MaxCutRaw& raw);

/// Fills known_ip_optimum using the family DP/enumeration where one exists,
/// falling back to branch-and-bound. Returns false if the fallback hit its
/// node limit.
bool attach_known_optimum(IpInstance& instance, Family family, const PlanningRaw* planning,
                          const KnapsackRaw* knapsack, const MaxCutRaw* maxcut,
                          long node_limit = 2000000);

}  // namespace cutsel
