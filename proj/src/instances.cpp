#include "cutsel/instances.hpp"

#include <cmath>
#include <stdexcept>

#include "cutsel/rng.hpp"
#include "cutsel/simplex.hpp"

namespace cutsel {

std::string to_string(Family family) {
  switch (family) {
    case Family::Packing: return "packing";
    case Family::BinaryPacking: return "binary-packing";
    case Family::Planning: return "planning";
    case Family::MaxCut: return "maxcut";
    case Family::Knapsack: return "knapsack";
  }
  return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
  if (name == "packing") return Family::Packing;
  if (name == "binary-packing" || name == "binary") return Family::BinaryPacking;
  if (name == "planning") return Family::Planning;
  if (name == "maxcut" || name == "max-cut") return Family::MaxCut;
  if (name == "knapsack") return Family::Knapsack;
  return std::nullopt;
}

IpInstance canonicalize(const RawFormulation& raw) {
  IpInstance out;
  out.name = raw.name;
  out.var_names = raw.var_names;
  out.raw_sense = raw.maximize ? -1 : 1;
  out.objective = raw.objective;
  if (raw.maximize)
    for (double& c : out.objective) c = -c;

  for (const auto& con : raw.constraints) {
    if (con.coeffs.size() != raw.objective.size())
      throw std::invalid_argument("canonicalize: constraint width mismatch");
    Vec neg(con.coeffs.size());
    for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = -con.coeffs[j];
    switch (con.relation) {
      case Relation::LessEqual:
        out.matrix.push_back(con.coeffs);
        out.rhs.push_back(con.rhs);
        break;
      case Relation::GreaterEqual:
        out.matrix.push_back(neg);
        out.rhs.push_back(-con.rhs);
        break;
      case Relation::Equal:
        out.matrix.push_back(con.coeffs);
        out.rhs.push_back(con.rhs);
        out.matrix.push_back(neg);
        out.rhs.push_back(-con.rhs);
        break;
    }
  }
  out.validate();
  return out;
}

namespace {

// Generators resample on the rare draw whose relaxation is not both feasible
// and bounded (e.g. an all-zero packing column); the retry continues the
// same RNG stream so a given seed still maps to exactly one instance.
template <typename Sampler>
IpInstance sample_until_solvable(Sampler&& sampler) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    IpInstance inst = sampler();
    if (solve_lp(inst.relaxation()).optimal()) return inst;
  }
  throw std::runtime_error("instance generator: no feasible bounded draw in 1000 attempts");
}

std::string dims_tag(int n, int m) { return std::to_string(n) + "x" + std::to_string(m); }

}  // namespace

IpInstance gen_packing(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("gen_packing: sizes must be positive");
  Rng rng(mix_seed(seed, 0x01));
  return sample_until_solvable([&] {
    RawFormulation raw;
    raw.name = "packing_" + dims_tag(n, m) + "_s" + std::to_string(seed);
    raw.maximize = true;
    raw.constraints.resize(m);
    for (int i = 0; i < m; ++i) {
      raw.constraints[i].coeffs.resize(n);
      for (int j = 0; j < n; ++j) raw.constraints[i].coeffs[j] = rng.uniform_int(0, 5);
    }
    for (int i = 0; i < m; ++i) raw.constraints[i].rhs = rng.uniform_int(9 * n, 10 * n);
    raw.objective.resize(n);
    for (int j = 0; j < n; ++j) raw.objective[j] = rng.uniform_int(1, 10);
    return canonicalize(raw);
  });
}

IpInstance gen_binary_packing(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("gen_binary_packing: sizes must be positive");
  Rng rng(mix_seed(seed, 0x02));
  return sample_until_solvable([&] {
    RawFormulation raw;
    raw.name = "binary-packing_" + dims_tag(n, m + n) + "_s" + std::to_string(seed);
    raw.maximize = true;
    raw.constraints.resize(m);
    for (int i = 0; i < m; ++i) {
      raw.constraints[i].coeffs.resize(n);
      for (int j = 0; j < n; ++j) raw.constraints[i].coeffs[j] = rng.uniform_int(5, 30);
    }
    for (int i = 0; i < m; ++i) raw.constraints[i].rhs = rng.uniform_int(10 * n, 20 * n);
    raw.objective.resize(n);
    for (int j = 0; j < n; ++j) raw.objective[j] = rng.uniform_int(1, 10);
    for (int j = 0; j < n; ++j) {
      RawConstraint bound;
      bound.coeffs.assign(n, 0.0);
      bound.coeffs[j] = 1.0;
      bound.rhs = 1.0;
      raw.constraints.push_back(std::move(bound));
    }
    return canonicalize(raw);
  });
}

IpInstance gen_planning(int periods, std::uint64_t seed, PlanningRaw* raw_out) {
  if (periods < 1) throw std::invalid_argument("gen_planning: horizon must be positive");
  const int K = periods;
  Rng rng(mix_seed(seed, 0x03));

  return sample_until_solvable([&] {
  PlanningRaw data;
  data.periods = K;
  data.prod_cost.resize(K);
  data.hold_cost.resize(K + 1);
  data.setup_cost.resize(K);
  data.demand.resize(K);
  for (int i = 0; i < K; ++i) data.prod_cost[i] = rng.uniform_int(1, 10);
  for (int i = 0; i <= K; ++i) data.hold_cost[i] = rng.uniform_int(1, 10);
  for (int i = 0; i < K; ++i) data.setup_cost[i] = rng.uniform_int(1, 10);
  for (int i = 0; i < K; ++i) data.demand[i] = rng.uniform_int(1, 10);
  if (raw_out) *raw_out = data;

  // Variables: x_1..x_K | s_0..s_K | y_1..y_K  (n = 3K+1).
  const int n = 3 * K + 1;
  const int x0 = 0, s0 = K, y0 = 2 * K + 1;
  RawFormulation raw;
  raw.name = "planning_" + dims_tag(n, 4 * K + 4) + "_s" + std::to_string(seed);
  raw.maximize = false;
  raw.objective.assign(n, 0.0);
  raw.var_names.resize(n);
  for (int i = 0; i < K; ++i) {
    raw.objective[x0 + i] = data.prod_cost[i];
    raw.var_names[x0 + i] = "x" + std::to_string(i + 1);
  }
  for (int i = 0; i <= K; ++i) {
    raw.objective[s0 + i] = data.hold_cost[i];
    raw.var_names[s0 + i] = "s" + std::to_string(i);
  }
  for (int i = 0; i < K; ++i) {
    raw.objective[y0 + i] = data.setup_cost[i];
    raw.var_names[y0 + i] = "y" + std::to_string(i + 1);
  }

  auto zero_row = [&] { RawConstraint c; c.coeffs.assign(n, 0.0); return c; };
  // Flow balance s_{i-1} + x_i = d_i + s_i.
  for (int i = 0; i < K; ++i) {
    RawConstraint c = zero_row();
    c.coeffs[s0 + i] = 1.0;
    c.coeffs[x0 + i] = 1.0;
    c.coeffs[s0 + i + 1] = -1.0;
    c.rhs = data.demand[i];
    c.relation = Relation::Equal;
    raw.constraints.push_back(std::move(c));
  }
  // Production gated by setup: x_i <= M y_i.
  for (int i = 0; i < K; ++i) {
    RawConstraint c = zero_row();
    c.coeffs[x0 + i] = 1.0;
    c.coeffs[y0 + i] = -data.big_m;
    c.rhs = 0.0;
    raw.constraints.push_back(std::move(c));
  }
  for (int i = 0; i < K; ++i) {
    RawConstraint c = zero_row();
    c.coeffs[y0 + i] = 1.0;
    c.rhs = 1.0;
    raw.constraints.push_back(std::move(c));
  }
  {
    RawConstraint c = zero_row();
    c.coeffs[s0] = 1.0;
    c.rhs = data.s_initial;
    c.relation = Relation::Equal;
    raw.constraints.push_back(std::move(c));
  }
  {
    RawConstraint c = zero_row();
    c.coeffs[s0 + K] = 1.0;
    c.rhs = data.s_final;
    c.relation = Relation::Equal;
    raw.constraints.push_back(std::move(c));
  }
  return canonicalize(raw);
  });
}

IpInstance gen_maxcut(int num_vertices, int num_edges, std::uint64_t seed, MaxCutRaw* raw_out) {
  if (num_vertices < 2) throw std::invalid_argument("gen_maxcut: need at least 2 vertices");
  const long long max_edges =
      static_cast<long long>(num_vertices) * (num_vertices - 1) / 2;
  if (num_edges < 1 || num_edges > max_edges)
    throw std::invalid_argument("gen_maxcut: infeasible edge count");
  Rng rng(mix_seed(seed, 0x04));

  return sample_until_solvable([&] {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(max_edges);
  for (int u = 0; u < num_vertices; ++u)
    for (int v = u + 1; v < num_vertices; ++v) pairs.emplace_back(u, v);
  // Partial Fisher-Yates: first num_edges entries are a uniform sample
  // without replacement.
  for (int i = 0; i < num_edges; ++i) {
    const int j = rng.uniform_int(i, static_cast<int>(pairs.size()) - 1);
    std::swap(pairs[i], pairs[j]);
  }
  pairs.resize(num_edges);

  MaxCutRaw data;
  data.vertices = num_vertices;
  data.edges = pairs;
  data.weights.resize(num_edges);
  for (int e = 0; e < num_edges; ++e) data.weights[e] = rng.uniform_int(0, 10);
  if (raw_out) *raw_out = data;

  // Variables: x_u per vertex, then y_uv per sampled edge.
  const int n = num_vertices + num_edges;
  RawFormulation raw;
  raw.name = "maxcut_" + dims_tag(n, 3 * num_edges + num_vertices) + "_s" +
             std::to_string(seed);
  raw.maximize = true;
  raw.objective.assign(n, 0.0);
  raw.var_names.resize(n);
  for (int u = 0; u < num_vertices; ++u) raw.var_names[u] = "x" + std::to_string(u);
  for (int e = 0; e < num_edges; ++e) {
    raw.objective[num_vertices + e] = data.weights[e];
    raw.var_names[num_vertices + e] =
        "y" + std::to_string(pairs[e].first) + "_" + std::to_string(pairs[e].second);
  }
  auto zero_row = [&] { RawConstraint c; c.coeffs.assign(n, 0.0); return c; };
  for (int e = 0; e < num_edges; ++e) {
    const int ye = num_vertices + e;
    const auto [u, v] = pairs[e];
    RawConstraint a = zero_row();  // y_uv <= x_u + x_v
    a.coeffs[ye] = 1.0;
    a.coeffs[u] = -1.0;
    a.coeffs[v] = -1.0;
    raw.constraints.push_back(std::move(a));
    RawConstraint b = zero_row();  // y_uv <= 2 - x_u - x_v
    b.coeffs[ye] = 1.0;
    b.coeffs[u] = 1.0;
    b.coeffs[v] = 1.0;
    b.rhs = 2.0;
    raw.constraints.push_back(std::move(b));
    RawConstraint c = zero_row();  // y_uv <= 1
    c.coeffs[ye] = 1.0;
    c.rhs = 1.0;
    raw.constraints.push_back(std::move(c));
  }
  for (int u = 0; u < num_vertices; ++u) {
    RawConstraint c = zero_row();  // x_u <= 1
    c.coeffs[u] = 1.0;
    c.rhs = 1.0;
    raw.constraints.push_back(std::move(c));
  }
  return canonicalize(raw);
  });
}

IpInstance gen_knapsack(int n, std::uint64_t seed, KnapsackRaw* raw_out) {
  if (n < 1) throw std::invalid_argument("gen_knapsack: n must be positive");
  Rng rng(mix_seed(seed, 0x05));

  return sample_until_solvable([&] {
  KnapsackRaw data;
  data.weights.resize(n);
  data.values.resize(n);
  double weight_sum = 0.0;
  for (int j = 0; j < n; ++j) {
    data.weights[j] = rng.uniform_int(1, 30);
    weight_sum += data.weights[j];
  }
  for (int j = 0; j < n; ++j) data.values[j] = rng.uniform_int(1, 10);
  // beta = sum(a)/2, floored when the sum is odd to keep the rhs integral.
  data.capacity = std::floor(weight_sum / 2.0);
  if (raw_out) *raw_out = data;

  RawFormulation raw;
  raw.name = "knapsack_" + dims_tag(n, n + 1) + "_s" + std::to_string(seed);
  raw.maximize = true;
  raw.objective = data.values;
  RawConstraint cap;
  cap.coeffs = data.weights;
  cap.rhs = data.capacity;
  raw.constraints.push_back(std::move(cap));
  for (int j = 0; j < n; ++j) {
    RawConstraint bound;
    bound.coeffs.assign(n, 0.0);
    bound.coeffs[j] = 1.0;
    bound.rhs = 1.0;
    raw.constraints.push_back(std::move(bound));
  }
  return canonicalize(raw);
  });
}

IpInstance generate(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::Packing: return gen_packing(spec.n, spec.m, spec.seed);
    case Family::BinaryPacking: return gen_binary_packing(spec.n, spec.m, spec.seed);
    case Family::Planning: return gen_planning(spec.periods, spec.seed);
    case Family::MaxCut: return gen_maxcut(spec.vertices, spec.edges, spec.seed);
    case Family::Knapsack: return gen_knapsack(spec.n, spec.seed);
  }
  throw std::invalid_argument("generate: unknown family");
}

}  // namespace cutsel
