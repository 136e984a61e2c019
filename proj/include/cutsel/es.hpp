#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cutsel/env.hpp"
#include "cutsel/instances.hpp"
#include "cutsel/policy.hpp"

namespace cutsel {

struct EsConfig {
  int num_perturbations = 10;      // N
  double sigma = 0.2;
  double alpha = 0.01;             // Adam learning rate
  int trajectories_per_instance = 1;
  int num_iterations = 500;
  int horizon = 50;                // rollout T during training
  double gamma = 0.99;
  std::uint64_t master_seed = 0;
  int threads = 0;                 // 0 = all available
  int checkpoint_interval = 0;     // 0 = no checkpoints
  std::string checkpoint_path;
  Tolerances tol;

  void validate() const;
};

/// Planning trains with a smaller perturbation scale and more trajectories
/// per instance; every other family uses the shared defaults.
EsConfig default_es_config(Family family);

struct AdamState {
  Vec first_moment, second_moment;
  long long step = 0;
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

  explicit AdamState(std::size_t dim)
      : first_moment(dim, 0.0), second_moment(dim, 0.0) {}
};

/// Bias-corrected Adam update in the ascent direction (we maximize J):
/// theta += alpha * m_hat / (sqrt(v_hat) + eps).
void adam_step(AdamState& adam, Vec& theta, const Vec& gradient, double alpha);

/// Mean discounted return over trajectories_per_instance sampled-action
/// rollouts in Train mode. Trajectory t uses seed mix(seed_base, t).
double estimate_return(const PolicyParams& params, const IpInstance& instance,
                       const EsConfig& cfg, std::uint64_t seed_base);

/// Vanilla ES estimator: g = (1/N) sum_i Jbar(theta + sigma*eps_i) * eps_i/sigma,
/// eps_i standard normal. avg_return receives the perturbed parameter vector
/// and the perturbation index (for seed derivation). No baseline, no
/// antithetic sampling.
Vec es_gradient(const Vec& theta,
                const std::function<double(const Vec&, int)>& avg_return,
                int num_perturbations, double sigma, Rng& rng);

/// Instance-driven form: Jbar(theta') averages estimate_return over the
/// training instances; the N x M x trajectories rollouts are dispatched to
/// the worker pool, keyed by task index so scheduling cannot affect which
/// epsilon pairs with which return.
Vec es_gradient(const PolicyParams& shape, const Vec& theta,
                const std::vector<IpInstance>& instances, const EsConfig& cfg,
                std::uint64_t iteration_seed, Rng& pert_rng,
                Vec* per_instance_returns = nullptr);

struct IterationLog {
  double mean_return = 0.0;
  Vec per_instance_returns;
  double param_norm = 0.0;
  double wall_seconds = 0.0;
};

struct TrainLog {
  std::vector<IterationLog> iterations;
};

std::pair<PolicyParams, TrainLog> train(const EsConfig& cfg,
                                        const std::vector<IpInstance>& instances,
                                        PolicyParams initial);

}  // namespace cutsel
