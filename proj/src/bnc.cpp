#include "cutsel/bnc.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace cutsel {

namespace {

bool integral(const Vec& x, double frac_tol) {
  for (double v : x)
    if (std::abs(v - std::round(v)) > frac_tol) return false;
  return true;
}

int most_fractional_index(const Vec& x, double frac_tol) {
  int best = -1;
  double best_frac = frac_tol;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double f = x[j] - std::floor(x[j]);
    const double dist = std::min(f, 1.0 - f);
    if (dist > best_frac + 1e-15) {
      best_frac = dist;
      best = static_cast<int>(j);
    }
  }
  return best;
}

}  // namespace

std::pair<LinearProgram, LinearProgram> branch(const LinearProgram& lp, const Vec& solution,
                                               double frac_tol) {
  const int j = most_fractional_index(solution, frac_tol);
  if (j < 0) throw std::logic_error("branch: solution is integral");
  const double v = solution[j];

  Cut floor_bound;
  floor_bound.coeffs.assign(lp.num_vars(), 0.0);
  floor_bound.coeffs[j] = 1.0;
  floor_bound.rhs = std::floor(v);

  Cut ceil_bound;
  ceil_bound.coeffs.assign(lp.num_vars(), 0.0);
  ceil_bound.coeffs[j] = -1.0;
  ceil_bound.rhs = -std::ceil(v);

  return {add_constraint(lp, floor_bound), add_constraint(lp, ceil_bound)};
}

BncResult run_bnc(const IpInstance& instance, const ActionSelector& cut_selector,
                  const BncConfig& cfg) {
  if (cfg.node_budget < 1) throw std::invalid_argument("run_bnc: budget must be >= 1");
  if (cfg.cuts_per_node < 0) throw std::invalid_argument("run_bnc: N_cuts must be >= 0");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double frac_tol = cfg.tol.fractionality;

  struct Node {
    LinearProgram lp;
    double bound;  // parent's post-cut LP objective, -inf for the root
    long id;
  };

  BncResult result;
  Rng rng(mix_seed(cfg.seed, 0xB4C));
  std::deque<Node> queue;
  long next_id = 0;
  queue.push_back({instance.relaxation(), -kInf, next_id++});

  double z_upper = kInf;
  double z_root = 0.0;
  bool root_solved = false;

  RolloutConfig env_cfg;
  env_cfg.tol = cfg.tol;
  env_cfg.mode = RolloutMode::Train;  // no stopping criterion inside nodes
  env_cfg.max_pivots = cfg.max_pivots;

  const std::optional<double> z_ip = instance.known_ip_optimum;

  auto queue_lower = [&] {
    double low = queue.empty() ? z_upper : kInf;
    for (const Node& n : queue) low = std::min(low, n.bound);
    if (!root_solved) return z_root;
    return std::min(low, z_upper);
  };

  while (!queue.empty()) {
    if (result.nodes_expanded >= cfg.node_budget) {
      result.stop = BncStop::NodeBudget;
      break;
    }
    Node node = std::move(queue.front());
    queue.pop_front();

    if (node.bound >= z_upper - 1e-9) continue;  // pruned by bound, not expanded

    CutEnv env(std::move(node.lp), env_cfg);
    if (!env.ok()) {
      if (!root_solved) {
        result.stop = BncStop::RootFailure;
        return result;
      }
      ++result.lp_failures;
      continue;
    }
    if (!root_solved) {
      z_root = env.state().lp_objective;
      result.root_objective = z_root;
      root_solved = true;
    }

    // Cuts are local to this node; children inherit them by default (they
    // remain valid under the branch bounds), or start from the pre-cut LP
    // when inherit_cuts is off.
    const LinearProgram pre_cut_lp = cfg.inherit_cuts ? LinearProgram{} : env.state().lp;
    bool node_failed = false;
    for (int c = 0; c < cfg.cuts_per_node && !env.done(); ++c)
      env.step(cut_selector(env.state(), env.tableau(), rng));
    if (!env.ok()) {
      ++result.lp_failures;
      node_failed = true;
    }

    ++result.nodes_expanded;
    result.expansion_order.push_back(node.id);

    if (!node_failed) {
      const double z_node = env.state().lp_objective;
      const Vec& x = env.state().lp_solution;
      if (integral(x, frac_tol)) {
        if (z_node < z_upper) {
          z_upper = z_node;
          result.best_solution = x;
          result.best_objective = z_node;
        }
      } else if (z_node < z_upper - 1e-9) {
        const LinearProgram& base = cfg.inherit_cuts ? env.state().lp : pre_cut_lp;
        auto [child_floor, child_ceil] = branch(base, x, frac_tol);
        queue.push_back({std::move(child_floor), z_node, next_id++});
        queue.push_back({std::move(child_ceil), z_node, next_id++});
      }
    }

    const double z_lower = queue_lower();
    result.z_upper_trace.push_back(z_upper);
    result.z_lower_trace.push_back(z_lower);
    if (z_ip) {
      const double g0 = *z_ip - z_root;
      const double igc =
          g0 < 1e-9 ? 1.0 : std::clamp((z_lower - z_root) / g0, 0.0, 1.0);
      result.igc_trace.push_back(igc);
      if (cfg.igc_target && !result.nodes_to_igc_target && igc >= *cfg.igc_target)
        result.nodes_to_igc_target = result.nodes_expanded;
    }

    if (z_upper < kInf) {
      const double denom = z_upper - z_root;
      const double r = denom > 1e-12 ? (z_upper - z_lower) / denom : 0.0;
      if (r < cfg.termination_threshold) {
        result.stop = BncStop::GapClosed;
        break;
      }
    }
  }

  if (queue.empty() && result.stop != BncStop::GapClosed &&
      result.stop != BncStop::NodeBudget)
    result.stop = BncStop::QueueExhausted;
  result.final_lower = queue.empty() ? z_upper : queue_lower();
  if (result.best_solution) result.best_objective = z_upper;
  return result;
}

}  // namespace cutsel
