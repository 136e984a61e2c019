#include "cutsel/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cutsel {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::IntegerOptimal: return "IntegerOptimal";
    case Termination::HorizonReached: return "HorizonReached";
    case Termination::StoppingCriterion: return "StoppingCriterion";
    case Termination::NumericalExhaustion: return "NumericalExhaustion";
    case Termination::LpFailure: return "LpFailure";
  }
  return "?";
}

CutEnv::CutEnv(LinearProgram lp, const RolloutConfig& cfg)
    : cfg_(cfg), solver_(std::move(lp), cfg.tol, cfg.max_pivots) {
  state_.step_index = 0;
  refresh();
}

void CutEnv::refresh() {
  if (solver_.status() != LpStatus::Optimal) {
    failed_ = true;
    state_.candidates = {};
    return;
  }
  state_.lp = solver_.lp();
  tableau_ = solver_.tableau();
  state_.lp_solution = solver_.solution();
  state_.lp_objective = solver_.objective();
  state_.candidates = generate_candidates(tableau_, state_.lp, cfg_.tol.fractionality);
  fractional_but_no_cuts_ =
      state_.candidates.empty() &&
      !fractional_components(tableau_, cfg_.tol.fractionality).empty();
}

bool CutEnv::done() const { return failed_ || state_.candidates.empty(); }

StepOutcome CutEnv::step(int action) {
  if (done()) throw std::logic_error("CutEnv::step on terminal state");
  if (action < 0 || action >= state_.candidates.size())
    throw std::out_of_range("CutEnv::step: action out of range");

  const double old_objective = state_.lp_objective;
  solver_.add_cut(state_.candidates.cuts[action]);
  state_.step_index += 1;
  refresh();
  if (failed_) return {0.0, true};
  return {state_.lp_objective - old_objective, done()};
}

Termination CutEnv::termination() const {
  if (failed_) return Termination::LpFailure;
  if (fractional_but_no_cuts_) return Termination::NumericalExhaustion;
  return Termination::IntegerOptimal;
}

double compute_igc(double z_ip, double z_lp0, double z_lp_tau) {
  constexpr double kOrderTol = 1e-6;
  if (z_lp_tau < z_lp0 - 1e-7 || z_ip < z_lp_tau - kOrderTol)
    throw std::domain_error("compute_igc: bound ordering violated (invalid cut?)");
  const double g0 = z_ip - z_lp0;
  if (g0 < 1e-9) return 1.0;
  const double gt = z_ip - z_lp_tau;
  return std::clamp((g0 - gt) / g0, 0.0, 1.0);
}

bool stopping_update(const std::vector<double>& rewards, int window, double eta) {
  const int t = static_cast<int>(rewards.size());
  if (t < window) return false;
  // s_t series over the full history; only the trailing window is averaged.
  double cumulative = 0.0;
  std::vector<double> s(t);
  for (int i = 0; i < t; ++i) {
    cumulative += std::abs(rewards[i]);
    s[i] = cumulative > 0.0 ? std::abs(rewards[i]) / cumulative : 0.0;
  }
  double mean = 0.0;
  for (int i = t - window; i < t; ++i) mean += s[i];
  mean /= window;
  return mean < eta;
}

RolloutResult rollout(const IpInstance& instance, const ActionSelector& selector,
                      const RolloutConfig& cfg, std::uint64_t seed) {
  RolloutResult result;
  Rng rng(mix_seed(seed, 0x6e76));

  CutEnv env(instance.relaxation(), cfg);
  if (!env.ok()) {
    result.termination = Termination::LpFailure;
    return result;
  }
  result.objective_trace.push_back(env.state().lp_objective);

  result.termination = env.done() ? env.termination() : Termination::HorizonReached;
  while (!env.done() && result.cuts_added < cfg.horizon) {
    if (cfg.mode == RolloutMode::Test &&
        stopping_update(result.rewards, cfg.stopping_window, cfg.stopping_eta)) {
      result.termination = Termination::StoppingCriterion;
      break;
    }
    const int action = selector(env.state(), env.tableau(), rng);
    const StepOutcome outcome = env.step(action);
    result.rewards.push_back(outcome.reward);
    result.cuts_added += 1;
    if (env.ok()) result.objective_trace.push_back(env.state().lp_objective);
    if (outcome.done) {
      result.termination = env.termination();
      break;
    }
  }

  double discount = 1.0;
  for (double r : result.rewards) {
    result.discounted_return += discount * r;
    discount *= cfg.gamma;
  }

  if (instance.known_ip_optimum) {
    const double z_ip = *instance.known_ip_optimum;
    const double z0 = result.objective_trace.front();
    const double z_tau = result.objective_trace.back();
    if (z_tau > z_ip + 1e-6) {
      result.invalid_cut_detected = true;
    } else {
      result.igc = compute_igc(z_ip, z0, z_tau);
    }
  }
  return result;
}

}  // namespace cutsel
