#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "cutsel/gomory.hpp"
#include "cutsel/rng.hpp"
#include "cutsel/simplex.hpp"
#include "cutsel/types.hpp"

namespace cutsel {

enum class RolloutMode { Train, Test };

enum class Termination {
  IntegerOptimal,
  HorizonReached,
  StoppingCriterion,
  NumericalExhaustion,
  LpFailure,
};

std::string to_string(Termination t);

struct RolloutConfig {
  int horizon = 1000;           // T, max cuts added
  double gamma = 0.99;          // discount
  int stopping_window = 5;      // H
  double stopping_eta = 1e-3;   // eta
  RolloutMode mode = RolloutMode::Test;  // stopping criterion active in Test only
  Tolerances tol;
  int max_pivots = -1;          // forwarded to solve_lp
};

/// s_t = {C^(t), c, x*_LP(t), D^(t)}; terminal iff the candidate set is
/// empty with the structural solution integral.
struct CutEnvState {
  LinearProgram lp;
  Vec lp_solution;
  double lp_objective = 0.0;
  CandidateCutSet candidates;
  int step_index = 0;
};

struct StepOutcome {
  double reward = 0.0;
  bool done = false;
};

/// One cutting-plane episode over a fixed LP. Constructed in a solved state;
/// step() appends the chosen candidate cut, reoptimizes (dual-simplex warm
/// start with cold fallback), regenerates D^(t).
class CutEnv {
 public:
  CutEnv(LinearProgram lp, const RolloutConfig& cfg);

  /// False when the initial (or a later) solve failed.
  bool ok() const { return !failed_; }
  bool done() const;
  const CutEnvState& state() const { return state_; }
  const SimplexTableau& tableau() const { return tableau_; }

  StepOutcome step(int action);

  /// IntegerOptimal / NumericalExhaustion / LpFailure once done.
  Termination termination() const;

 private:
  void refresh();

  RolloutConfig cfg_;
  WarmSimplex solver_;
  CutEnvState state_;
  SimplexTableau tableau_;
  bool failed_ = false;
  bool fractional_but_no_cuts_ = false;
};

inline CutEnv reset(const IpInstance& instance, const RolloutConfig& cfg) {
  return CutEnv(instance.relaxation(), cfg);
}

/// IGC = (g0 - g_tau)/g0 with g_t = z_ip - z_lp(t), clamped to [0, 1];
/// an LP-tight instance (g0 < 1e-9) scores 1 by convention. Throws
/// std::domain_error when the bound ordering is violated beyond tolerance
/// (invalid-cut contamination).
double compute_igc(double z_ip, double z_lp0, double z_lp_tau);

/// Test-time halt: true iff at least H rewards have accumulated and the mean
/// of the last H values of s_t = r_t / sum_{t'<=t} r_t' is below eta.
/// s_t is 0 by convention while the cumulative reward is 0.
bool stopping_update(const std::vector<double>& rewards, int window, double eta);

struct RolloutResult {
  std::vector<double> rewards;
  double discounted_return = 0.0;
  std::vector<double> objective_trace;  // z*_LP(0..tau)
  int cuts_added = 0;
  Termination termination = Termination::LpFailure;
  std::optional<double> igc;
  bool invalid_cut_detected = false;  // z*_LP exceeded z*_IP beyond tolerance
};

/// Picks a candidate index given the current state and tableau.
using ActionSelector = std::function<int(const CutEnvState&, const SimplexTableau&, Rng&)>;

RolloutResult rollout(const IpInstance& instance, const ActionSelector& selector,
                      const RolloutConfig& cfg, std::uint64_t seed);

}  // namespace cutsel
