#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "cutsel/env.hpp"

namespace cutsel {

struct BncConfig {
  long node_budget = 1000;             // N_exp
  int cuts_per_node = 10;              // N_cuts
  double termination_threshold = 1e-4; // on r = (z_up - z_low)/(z_up - z_root)
  std::optional<double> igc_target;    // record nodes needed to reach this IGC
  bool inherit_cuts = true;            // children keep the parent's local cuts
  Tolerances tol;
  std::uint64_t seed = 0;              // RNG stream for stochastic selectors
  int max_pivots = -1;
};

enum class BncStop { GapClosed, QueueExhausted, NodeBudget, RootFailure };

struct BncResult {
  std::optional<Vec> best_solution;
  double best_objective = 0.0;  // z_upper at the end; meaningless without a solution
  double root_objective = 0.0;  // z*_LP of the initial relaxation
  double final_lower = 0.0;
  std::vector<double> z_upper_trace;   // one entry per node expansion
  std::vector<double> z_lower_trace;
  std::vector<double> igc_trace;       // only when known_ip_optimum is present
  std::vector<long> expansion_order;   // node ids, enqueue-ordered FIFO discipline
  long nodes_expanded = 0;
  std::optional<long> nodes_to_igc_target;
  BncStop stop = BncStop::QueueExhausted;
  int lp_failures = 0;
};

/// Split on the most fractional component of `solution` (0.5 being the most
/// fractional, ties to the lowest variable index). Returns the floor child
/// (x_j <= floor(v)) and the ceil child (-x_j <= -ceil(v)).
std::pair<LinearProgram, LinearProgram> branch(const LinearProgram& lp, const Vec& solution,
                                               double frac_tol);

/// FIFO branch-and-cut: per node, solve the relaxation, add up to N_cuts
/// selector-chosen Gomory cuts (re-solving after each), prune by bound,
/// record integral solutions, otherwise branch.
BncResult run_bnc(const IpInstance& instance, const ActionSelector& cut_selector,
                  const BncConfig& cfg);

}  // namespace cutsel
