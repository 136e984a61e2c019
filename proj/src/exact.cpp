#include "cutsel/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cutsel/simplex.hpp"

namespace cutsel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool integral(const Vec& x, double tol) {
  for (double v : x)
    if (std::abs(v - std::round(v)) > tol) return false;
  return true;
}

}  // namespace

std::optional<double> ip_optimum_bnb(const IpInstance& instance, long node_limit) {
  const double frac_tol = 1e-6;
  bool nonneg_matrix = true;
  for (const auto& row : instance.matrix)
    for (double v : row)
      if (v < 0.0) nonneg_matrix = false;

  struct Node {
    LinearProgram lp;
    double bound;
  };
  const auto by_bound = [](const Node& a, const Node& b) { return a.bound > b.bound; };
  std::vector<Node> heap;
  heap.push_back({instance.relaxation(), -kInf});

  double incumbent = kInf;
  const auto try_round_down = [&](const Vec& x) {
    if (!nonneg_matrix) return;
    double z = 0.0;
    for (int j = 0; j < instance.num_vars(); ++j)
      z += instance.objective[j] * std::floor(x[j] + frac_tol);
    incumbent = std::min(incumbent, z);
  };

  long nodes = 0;
  while (!heap.empty()) {
    if (++nodes > node_limit) return std::nullopt;
    std::pop_heap(heap.begin(), heap.end(), by_bound);
    Node node = std::move(heap.back());
    heap.pop_back();
    if (node.bound >= incumbent - 1e-9) break;  // best-first: rest is no better

    const LpSolution sol = solve_lp(node.lp);
    if (sol.status == LpStatus::Infeasible) continue;
    if (!sol.optimal()) return std::nullopt;  // numerically stuck; don't trust
    if (sol.objective >= incumbent - 1e-9) continue;

    const Vec& x = *sol.x;
    if (integral(x, frac_tol)) {
      incumbent = std::min(incumbent, sol.objective);
      continue;
    }
    try_round_down(x);

    int j = -1;
    double best_dist = frac_tol;
    for (int k = 0; k < instance.num_vars(); ++k) {
      const double f = x[k] - std::floor(x[k]);
      const double dist = std::min(f, 1.0 - f);
      if (dist > best_dist + 1e-15) {
        best_dist = dist;
        j = k;
      }
    }
    if (j < 0) {
      incumbent = std::min(incumbent, sol.objective);
      continue;
    }

    Cut lo;
    lo.coeffs.assign(instance.num_vars(), 0.0);
    lo.coeffs[j] = 1.0;
    lo.rhs = std::floor(x[j]);
    Cut hi;
    hi.coeffs.assign(instance.num_vars(), 0.0);
    hi.coeffs[j] = -1.0;
    hi.rhs = -std::ceil(x[j]);
    heap.push_back({add_constraint(node.lp, lo), sol.objective});
    std::push_heap(heap.begin(), heap.end(), by_bound);
    heap.push_back({add_constraint(node.lp, hi), sol.objective});
    std::push_heap(heap.begin(), heap.end(), by_bound);
  }
  return incumbent < kInf ? std::optional<double>(incumbent) : std::nullopt;
}

double planning_optimum(const PlanningRaw& raw) {
  const int K = raw.periods;
  const int max_x = static_cast<int>(raw.big_m);
  // Optimal runs never store beyond remaining demand plus the final target.
  double remaining = raw.s_final;
  for (double d : raw.demand) remaining += d;
  const int s_cap = static_cast<int>(remaining);

  Vec cost(s_cap + 1, kInf);
  const int s0 = static_cast<int>(raw.s_initial);
  if (s0 > s_cap) throw std::invalid_argument("planning_optimum: initial storage too large");
  cost[s0] = raw.hold_cost[0] * s0;

  for (int i = 0; i < K; ++i) {
    Vec next(s_cap + 1, kInf);
    const int d = static_cast<int>(raw.demand[i]);
    for (int s = 0; s <= s_cap; ++s) {
      if (cost[s] == kInf) continue;
      for (int x = 0; x <= max_x; ++x) {
        const int s_next = s + x - d;
        if (s_next < 0 || s_next > s_cap) continue;
        const double step = raw.prod_cost[i] * x + (x > 0 ? raw.setup_cost[i] : 0.0) +
                            raw.hold_cost[i + 1] * s_next;
        next[s_next] = std::min(next[s_next], cost[s] + step);
      }
    }
    cost = std::move(next);
  }
  const int s_final = static_cast<int>(raw.s_final);
  if (s_final > s_cap || cost[s_final] == kInf)
    throw std::runtime_error("planning_optimum: no feasible schedule");
  return cost[s_final];
}

double knapsack_optimum(const KnapsackRaw& raw) {
  const int cap = static_cast<int>(raw.capacity);
  Vec best(cap + 1, 0.0);
  for (std::size_t j = 0; j < raw.weights.size(); ++j) {
    const int w = static_cast<int>(raw.weights[j]);
    for (int c = cap; c >= w; --c)
      best[c] = std::max(best[c], best[c - w] + raw.values[j]);
  }
  return -best[cap];  // canonical minimization space
}

double maxcut_optimum(const MaxCutRaw& raw) {
  if (raw.vertices > 25) throw std::invalid_argument("maxcut_optimum: too many vertices");
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << raw.vertices); ++mask) {
    double value = 0.0;
    for (std::size_t e = 0; e < raw.edges.size(); ++e) {
      const auto [u, v] = raw.edges[e];
      if (((mask >> u) & 1u) != ((mask >> v) & 1u)) value += raw.weights[e];
    }
    best = std::max(best, value);
  }
  return -best;
}

bool attach_known_optimum(IpInstance& instance, Family family, const PlanningRaw* planning,
                          const KnapsackRaw* knapsack, const MaxCutRaw* maxcut,
                          long node_limit) {
  switch (family) {
    case Family::Planning:
      if (planning) {
        instance.known_ip_optimum = planning_optimum(*planning);
        return true;
      }
      break;
    case Family::Knapsack:
      if (knapsack) {
        instance.known_ip_optimum = knapsack_optimum(*knapsack);
        return true;
      }
      break;
    case Family::MaxCut:
      if (maxcut) {
        instance.known_ip_optimum = maxcut_optimum(*maxcut);
        return true;
      }
      break;
    default:
      break;
  }
  const auto opt = ip_optimum_bnb(instance, node_limit);
  if (!opt) return false;
  instance.known_ip_optimum = *opt;
  return true;
}

}  // namespace cutsel
