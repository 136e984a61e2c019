#include "cutsel/es.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "cutsel/batch.hpp"
#include "cutsel/io.hpp"

namespace cutsel {

void EsConfig::validate() const {
  if (num_perturbations < 1) throw std::invalid_argument("es: N must be >= 1");
  if (sigma <= 0.0) throw std::invalid_argument("es: sigma must be positive");
  if (alpha <= 0.0) throw std::invalid_argument("es: alpha must be positive");
  if (trajectories_per_instance < 1)
    throw std::invalid_argument("es: trajectories_per_instance must be >= 1");
}

EsConfig default_es_config(Family family) {
  EsConfig cfg;
  if (family == Family::Planning) {
    cfg.sigma = 0.02;
    cfg.trajectories_per_instance = 5;
  }
  return cfg;
}

void adam_step(AdamState& adam, Vec& theta, const Vec& gradient, double alpha) {
  if (theta.size() != gradient.size() || theta.size() != adam.first_moment.size())
    throw std::invalid_argument("adam_step: shape mismatch");
  adam.step += 1;
  const double bc1 = 1.0 - std::pow(adam.beta1, static_cast<double>(adam.step));
  const double bc2 = 1.0 - std::pow(adam.beta2, static_cast<double>(adam.step));
  for (std::size_t i = 0; i < theta.size(); ++i) {
    adam.first_moment[i] = adam.beta1 * adam.first_moment[i] + (1.0 - adam.beta1) * gradient[i];
    adam.second_moment[i] =
        adam.beta2 * adam.second_moment[i] + (1.0 - adam.beta2) * gradient[i] * gradient[i];
    const double m_hat = adam.first_moment[i] / bc1;
    const double v_hat = adam.second_moment[i] / bc2;
    theta[i] += alpha * m_hat / (std::sqrt(v_hat) + adam.eps);
  }
}

namespace {

RolloutConfig train_rollout_config(const EsConfig& cfg) {
  RolloutConfig rc;
  rc.horizon = cfg.horizon;
  rc.gamma = cfg.gamma;
  rc.mode = RolloutMode::Train;
  rc.tol = cfg.tol;
  return rc;
}

}  // namespace

double estimate_return(const PolicyParams& params, const IpInstance& instance,
                       const EsConfig& cfg, std::uint64_t seed_base) {
  cfg.validate();
  const RolloutConfig rc = train_rollout_config(cfg);
  auto shared = std::make_shared<const PolicyParams>(params);
  double total = 0.0;
  for (int t = 0; t < cfg.trajectories_per_instance; ++t) {
    const auto selector = make_policy_selector(shared, ActionMode::Sample);
    total += rollout(instance, selector, rc, mix_seed(seed_base, t)).discounted_return;
  }
  return total / cfg.trajectories_per_instance;
}

Vec es_gradient(const Vec& theta,
                const std::function<double(const Vec&, int)>& avg_return,
                int num_perturbations, double sigma, Rng& rng) {
  if (num_perturbations < 1) throw std::invalid_argument("es_gradient: N must be >= 1");
  const std::size_t dim = theta.size();
  std::vector<Vec> eps(num_perturbations, Vec(dim));
  for (auto& e : eps)
    for (double& v : e) v = rng.gaussian();

  Vec gradient(dim, 0.0);
  for (int i = 0; i < num_perturbations; ++i) {
    Vec perturbed(dim);
    for (std::size_t k = 0; k < dim; ++k) perturbed[k] = theta[k] + sigma * eps[i][k];
    const double ret = avg_return(perturbed, i);
    for (std::size_t k = 0; k < dim; ++k) gradient[k] += ret * eps[i][k] / sigma;
  }
  for (double& g : gradient) g /= num_perturbations;
  return gradient;
}

Vec es_gradient(const PolicyParams& shape, const Vec& theta,
                const std::vector<IpInstance>& instances, const EsConfig& cfg,
                std::uint64_t iteration_seed, Rng& pert_rng,
                Vec* per_instance_returns) {
  cfg.validate();
  if (instances.empty()) throw std::invalid_argument("es_gradient: no instances");
  const int N = cfg.num_perturbations;
  const int M = static_cast<int>(instances.size());
  const int traj = cfg.trajectories_per_instance;
  const std::size_t dim = theta.size();

  std::vector<Vec> eps(N, Vec(dim));
  for (auto& e : eps)
    for (double& v : e) v = pert_rng.gaussian();

  std::vector<std::shared_ptr<const PolicyParams>> perturbed(N);
  for (int i = 0; i < N; ++i) {
    PolicyParams p = shape;
    Vec t(dim);
    for (std::size_t k = 0; k < dim; ++k) t[k] = theta[k] + cfg.sigma * eps[i][k];
    p.assign_flat(t);
    perturbed[i] = std::make_shared<const PolicyParams>(std::move(p));
  }

  // One task per rollout; results keyed by flat (perturbation, instance,
  // trajectory) index so worker scheduling cannot reorder the reduction.
  const RolloutConfig rc = train_rollout_config(cfg);
  const int total = N * M * traj;
  std::function<double(int)> task = [&](int idx) {
    const int i = idx / (M * traj);
    const int m = (idx / traj) % M;
    const int t = idx % traj;
    const auto selector = make_policy_selector(perturbed[i], ActionMode::Sample);
    const std::uint64_t seed = mix_seed(mix_seed(iteration_seed, 0xB000 + i),
                                        static_cast<std::uint64_t>(m) * 8192 + t);
    return rollout(instances[m], selector, rc, seed).discounted_return;
  };
  const Vec returns = map_indexed<double>(total, cfg.threads, task);

  Vec j_bar(N, 0.0);
  for (int idx = 0; idx < total; ++idx) j_bar[idx / (M * traj)] += returns[idx];
  for (double& j : j_bar) j /= M * traj;

  if (per_instance_returns) {
    per_instance_returns->assign(M, 0.0);
    for (int idx = 0; idx < total; ++idx)
      (*per_instance_returns)[(idx / traj) % M] += returns[idx];
    for (double& r : *per_instance_returns) r /= N * traj;
  }

  Vec gradient(dim, 0.0);
  for (int i = 0; i < N; ++i)
    for (std::size_t k = 0; k < dim; ++k) gradient[k] += j_bar[i] * eps[i][k] / cfg.sigma;
  for (double& g : gradient) g /= N;
  return gradient;
}

std::pair<PolicyParams, TrainLog> train(const EsConfig& cfg,
                                        const std::vector<IpInstance>& instances,
                                        PolicyParams initial) {
  cfg.validate();
  if (instances.empty()) throw std::invalid_argument("train: empty instance set");

  PolicyParams params = std::move(initial);
  Vec theta = params.flatten();
  AdamState adam(theta.size());
  TrainLog log;
  log.iterations.reserve(cfg.num_iterations);

  for (int iter = 0; iter < cfg.num_iterations; ++iter) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t iteration_seed = mix_seed(cfg.master_seed, 0x17E4 + iter);
    Rng pert_rng(mix_seed(iteration_seed, 0xE5));

    IterationLog entry;
    const Vec gradient = es_gradient(params, theta, instances, cfg, iteration_seed,
                                     pert_rng, &entry.per_instance_returns);
    adam_step(adam, theta, gradient, cfg.alpha);
    params.assign_flat(theta);

    for (double r : entry.per_instance_returns) entry.mean_return += r;
    entry.mean_return /= entry.per_instance_returns.size();
    double norm_sq = 0.0;
    for (double v : theta) norm_sq += v * v;
    entry.param_norm = std::sqrt(norm_sq);
    entry.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    log.iterations.push_back(std::move(entry));

    if (cfg.checkpoint_interval > 0 && !cfg.checkpoint_path.empty() &&
        (iter + 1) % cfg.checkpoint_interval == 0) {
      save_policy(params, cfg.checkpoint_path);
    }
  }
  return {std::move(params), std::move(log)};
}

}  // namespace cutsel
