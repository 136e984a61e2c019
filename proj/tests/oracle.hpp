#pragma once

// Independent reference computations for tests. Nothing here touches the
// library's simplex/tableau path: LP optima come from basic-solution
// enumeration, IP optima from exhaustive or DFS enumeration.

#include <optional>
#include <vector>

#include "cutsel/instances.hpp"
#include "cutsel/types.hpp"

namespace cutsel::oracle {

/// LP minimum by enumerating all vertex candidates: every n-subset of
/// {constraint rows} U {x_j >= 0}, solved as an n x n system and checked
/// feasible. Suitable for small LPs only. Returns nullopt when no feasible
/// basic solution exists (infeasible or pathological).
std::optional<double> lp_optimum_by_vertex_enumeration(const LinearProgram& lp);

/// Per-variable integer upper bounds read off single all-nonnegative rows:
/// ub_j = min over such rows with a_ij > 0 of floor(b_i / a_ij). Returns
/// nullopt if some variable stays unbounded or the box exceeds max_points.
std::optional<std::vector<int>> box_bounds(const IpInstance& instance, long long max_points);

/// All integer feasible points of the box (exhaustive).
std::vector<Vec> enumerate_feasible_points(const IpInstance& instance,
                                           const std::vector<int>& bounds);

/// IP minimum over the box; nullopt if no feasible point.
std::optional<double> ip_optimum_by_enumeration(const IpInstance& instance,
                                                const std::vector<int>& bounds);

/// IP minimum for packing-shaped instances (nonnegative matrix, nonpositive
/// canonical objective) by DFS with capacity pruning and a greedy objective
/// bound. LP-free and exact.
double packing_ip_optimum_dfs(const IpInstance& instance);

/// Planning optimum by exhaustive production-grid enumeration (small K
/// only); storage and setup variables are implied by the x choices.
double planning_ip_optimum_enumeration(const PlanningRaw& raw);

/// Max-cut optimum (canonical minimization space) over all 2^|V| sides.
double maxcut_ip_optimum_enumeration(const MaxCutRaw& raw);

}  // namespace cutsel::oracle
