#include <doctest.h>

#include <cmath>

#include "cutsel/exact.hpp"
#include "cutsel/instances.hpp"
#include "cutsel/simplex.hpp"
#include "oracle.hpp"

using namespace cutsel;

TEST_CASE("generators are deterministic in the seed") {
  const auto a = gen_packing(10, 5, 7);
  const auto b = gen_packing(10, 5, 7);
  CHECK(a.objective == b.objective);
  CHECK(a.matrix == b.matrix);
  CHECK(a.rhs == b.rhs);
  CHECK(a.name == b.name);

  const auto c = gen_packing(10, 5, 8);
  CHECK(a.matrix != c.matrix);
}

TEST_CASE("packing distributions stay in the documented ranges") {
  int draws = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 6, m = 4;
    const auto inst = gen_packing(n, m, seed);
    REQUIRE(inst.num_rows() == m);
    for (int i = 0; i < m; ++i) {
      for (double a : inst.matrix[i]) {
        CHECK(a >= 0.0);
        CHECK(a <= 5.0);
        CHECK(a == std::round(a));
      }
      CHECK(inst.rhs[i] >= 9 * n);
      CHECK(inst.rhs[i] <= 10 * n);
      ++draws;
    }
    for (double c : inst.objective) {  // negated maximization objective
      CHECK(-c >= 1.0);
      CHECK(-c <= 10.0);
    }
    // x = 0 is feasible
    for (double b : inst.rhs) CHECK(b >= 0.0);
  }
  CHECK(draws >= 400);
}

TEST_CASE("binary packing adds n bound rows and keeps its ranges") {
  const int n = 5, m = 3;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = gen_binary_packing(n, m, seed);
    REQUIRE(inst.num_rows() == m + n);
    for (int i = 0; i < m; ++i) {
      for (double a : inst.matrix[i]) {
        CHECK(a >= 5.0);
        CHECK(a <= 30.0);
      }
      CHECK(inst.rhs[i] >= 10 * n);
      CHECK(inst.rhs[i] <= 20 * n);
    }
    for (int j = 0; j < n; ++j) {
      CHECK(inst.rhs[m + j] == 1.0);
      CHECK(inst.matrix[m + j][j] == 1.0);
    }
  }
}

TEST_CASE("planning instance shape and fixed storages") {
  const int K = 4;
  PlanningRaw raw;
  const auto inst = gen_planning(K, 3, &raw);
  CHECK(inst.num_vars() == 3 * K + 1);
  CHECK(inst.num_rows() == 4 * K + 4);
  CHECK(raw.s_initial == 0.0);
  CHECK(raw.s_final == 20.0);
  CHECK(raw.big_m == 100.0);
  for (double v : raw.prod_cost) CHECK((v >= 1.0 && v <= 10.0));
  for (double v : raw.hold_cost) CHECK((v >= 1.0 && v <= 10.0));
  for (double v : raw.setup_cost) CHECK((v >= 1.0 && v <= 10.0));
  for (double v : raw.demand) CHECK((v >= 1.0 && v <= 10.0));

  SUBCASE("relaxation is feasible and bounded") {
    const auto sol = solve_lp(inst.relaxation());
    CHECK(sol.status == LpStatus::Optimal);
  }
  SUBCASE("s0/sT pinned in every draw") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      PlanningRaw r;
      gen_planning(3, seed, &r);
      CHECK(r.s_initial == 0.0);
      CHECK(r.s_final == 20.0);
    }
  }
}

TEST_CASE("maxcut shape matches the size map") {
  const int V = 5, E = 8;
  MaxCutRaw raw;
  const auto inst = gen_maxcut(V, E, 17, &raw);
  CHECK(inst.num_vars() == V + E);
  CHECK(inst.num_rows() == 3 * E + V);
  CHECK(static_cast<int>(raw.edges.size()) == E);
  for (const auto& [u, v] : raw.edges) {
    CHECK(u < v);
    CHECK(v < V);
  }
  for (double w : raw.weights) CHECK((w >= 0.0 && w <= 10.0));
  // edges are distinct
  for (std::size_t i = 0; i < raw.edges.size(); ++i)
    for (std::size_t j = i + 1; j < raw.edges.size(); ++j) CHECK(raw.edges[i] != raw.edges[j]);

  CHECK_THROWS_AS(gen_maxcut(3, 4, 0), std::invalid_argument);
}

TEST_CASE("single-edge maxcut has optimum 1") {
  MaxCutRaw raw;
  raw.vertices = 2;
  raw.edges = {{0, 1}};
  raw.weights = {1.0};
  CHECK(maxcut_optimum(raw) == doctest::Approx(-1.0));  // canonical min space

  // via the generator + reference solver
  MaxCutRaw gen_raw;
  const auto inst = gen_maxcut(2, 1, 5, &gen_raw);
  const auto opt = ip_optimum_bnb(inst);
  REQUIRE(opt.has_value());
  CHECK(*opt == doctest::Approx(-gen_raw.weights[0]));
}

TEST_CASE("knapsack capacity is the floored half weight sum") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    KnapsackRaw raw;
    const auto inst = gen_knapsack(10, seed, &raw);
    double weight_sum = 0.0;
    for (double w : raw.weights) {
      CHECK((w >= 1.0 && w <= 30.0));
      weight_sum += w;
    }
    for (double v : raw.values) CHECK((v >= 1.0 && v <= 10.0));
    CHECK(raw.capacity == std::floor(weight_sum / 2.0));
    CHECK(inst.num_rows() == 11);
    CHECK(inst.rhs[0] == raw.capacity);
  }
}

TEST_CASE("canonicalize splits equalities and flips senses") {
  RawFormulation raw;
  raw.name = "toy";
  raw.objective = {2.0};
  raw.maximize = true;
  RawConstraint eq;
  eq.coeffs = {1.0};
  eq.rhs = 3.0;
  eq.relation = Relation::Equal;
  raw.constraints.push_back(eq);
  RawConstraint ge;
  ge.coeffs = {1.0};
  ge.rhs = 1.0;
  ge.relation = Relation::GreaterEqual;
  raw.constraints.push_back(ge);

  const auto inst = canonicalize(raw);
  REQUIRE(inst.num_rows() == 3);
  CHECK(inst.matrix[0][0] == 1.0);
  CHECK(inst.rhs[0] == 3.0);
  CHECK(inst.matrix[1][0] == -1.0);
  CHECK(inst.rhs[1] == -3.0);
  CHECK(inst.matrix[2][0] == -1.0);
  CHECK(inst.rhs[2] == -1.0);
  CHECK(inst.objective[0] == -2.0);  // negated max
  CHECK(inst.raw_sense == -1);

  const auto sol = solve_lp(inst.relaxation());
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(-6.0));  // raw optimum 6, sign flipped
}

TEST_CASE("planning canonical optimum matches brute-force enumeration at K=2") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    PlanningRaw raw;
    const auto inst = gen_planning(2, seed, &raw);
    const double enumerated = oracle::planning_ip_optimum_enumeration(raw);
    const double dp = planning_optimum(raw);
    CHECK(dp == doctest::Approx(enumerated).epsilon(1e-9));
    const auto bnb = ip_optimum_bnb(inst);
    REQUIRE(bnb.has_value());
    CHECK(*bnb == doctest::Approx(enumerated).epsilon(1e-6));
  }
}

TEST_CASE("every generated relaxation is feasible and bounded") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    CHECK(solve_lp(gen_packing(8, 4, seed).relaxation()).optimal());
    CHECK(solve_lp(gen_binary_packing(6, 4, seed).relaxation()).optimal());
    CHECK(solve_lp(gen_knapsack(8, seed).relaxation()).optimal());
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(solve_lp(gen_planning(4, seed).relaxation()).optimal());
    CHECK(solve_lp(gen_maxcut(5, 7, seed).relaxation()).optimal());
  }
}

TEST_CASE("knapsack reference DP matches enumeration") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    KnapsackRaw raw;
    const auto inst = gen_knapsack(8, seed, &raw);
    const auto bounds = oracle::box_bounds(inst, 1 << 10);
    REQUIRE(bounds.has_value());
    const auto enumerated = oracle::ip_optimum_by_enumeration(inst, *bounds);
    REQUIRE(enumerated.has_value());
    CHECK(knapsack_optimum(raw) == doctest::Approx(*enumerated).epsilon(1e-9));
  }
}
