#include <doctest.h>

#include "cutsel/gomory.hpp"
#include "cutsel/instances.hpp"
#include "cutsel/rng.hpp"
#include "cutsel/simplex.hpp"
#include "oracle.hpp"

using namespace cutsel;

namespace {

LinearProgram make_lp(Vec objective, std::vector<Vec> rows, Vec rhs) {
  return {std::move(objective), std::move(rows), std::move(rhs)};
}

LinearProgram random_packing_lp(int n, int m, Rng& rng) {
  LinearProgram lp;
  lp.objective.resize(n);
  for (double& c : lp.objective) c = -rng.uniform_int(1, 10);
  lp.rows.assign(m, Vec(n));
  lp.rhs.resize(m);
  for (int i = 0; i < m; ++i) {
    for (double& a : lp.rows[i]) a = rng.uniform_int(1, 5);
    lp.rhs[i] = rng.uniform_int(3 * n, 10 * n);
  }
  return lp;
}

}  // namespace

TEST_CASE("single-variable LP") {
  const auto sol = solve_lp(make_lp({-1.0}, {{1.0}}, {1.0}));
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK((*sol.x)[0] == doctest::Approx(1.0));
  CHECK(sol.objective == doctest::Approx(-1.0));
}

TEST_CASE("symmetric LP has forced objective") {
  const auto sol = solve_lp(make_lp({-1.0, -1.0}, {{1.0, 1.0}}, {1.0}));
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(-1.0));
  CHECK((*sol.x)[0] + (*sol.x)[1] == doctest::Approx(1.0));
}

TEST_CASE("infeasible and unbounded detection") {
  // x <= 1 and x >= 2 (as -x <= -2)
  const auto infeasible = solve_lp(make_lp({1.0}, {{1.0}, {-1.0}}, {1.0, -2.0}));
  CHECK(infeasible.status == LpStatus::Infeasible);
  CHECK(!infeasible.tableau.has_value());

  // min -x with only a vacuous row
  const auto unbounded = solve_lp(make_lp({-1.0}, {{0.0}}, {1.0}));
  CHECK(unbounded.status == LpStatus::Unbounded);
  CHECK(!unbounded.tableau.has_value());
}

TEST_CASE("iteration limit surfaces as status") {
  Rng rng(7);
  const auto lp = random_packing_lp(6, 4, rng);
  const auto sol = solve_lp(lp, {}, /*max_pivots=*/1);
  CHECK(sol.status == LpStatus::IterationLimit);
}

TEST_CASE("dimension mismatch is a programming error") {
  LinearProgram lp = make_lp({1.0, 2.0}, {{1.0}}, {1.0});
  CHECK_THROWS_AS(solve_lp(lp), std::invalid_argument);
}

TEST_CASE("objective matches vertex-enumeration oracle on random packing LPs") {
  Rng rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    const auto lp = random_packing_lp(3, 5, rng);
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    const auto expected = oracle::lp_optimum_by_vertex_enumeration(lp);
    REQUIRE(expected.has_value());
    CHECK(sol.objective == doctest::Approx(*expected).epsilon(1e-6));
  }
}

TEST_CASE("frozen 5x3 packing LP oracle value") {
  Rng rng(42);
  const auto lp = random_packing_lp(3, 5, rng);
  const auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  const auto expected = oracle::lp_optimum_by_vertex_enumeration(lp);
  REQUIRE(expected.has_value());
  CHECK(sol.objective == doctest::Approx(*expected).epsilon(1e-9));
}

TEST_CASE("solution satisfies constraints within tolerance") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto lp = random_packing_lp(5, 4, rng);
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    for (int i = 0; i < lp.num_rows(); ++i) {
      double lhs = 0.0;
      for (int j = 0; j < lp.num_vars(); ++j) lhs += lp.rows[i][j] * (*sol.x)[j];
      CHECK(lhs <= lp.rhs[i] + 1e-7);
    }
    double obj = 0.0;
    for (int j = 0; j < lp.num_vars(); ++j) obj += lp.objective[j] * (*sol.x)[j];
    CHECK(obj == doctest::Approx(sol.objective).epsilon(1e-6));
  }
}

TEST_CASE("idempotence: identical status and objective on re-solve") {
  Rng rng(5);
  const auto lp = random_packing_lp(6, 5, rng);
  const auto a = solve_lp(lp);
  const auto b = solve_lp(lp);
  REQUIRE(a.status == b.status);
  CHECK(a.objective == b.objective);
  CHECK(a.pivots == b.pivots);
}

TEST_CASE("negative rhs rows go through phase 1") {
  // x1 + x2 >= 2 encoded canonically, plus x1 + x2 <= 3
  const auto sol = solve_lp(make_lp({1.0, 2.0}, {{-1.0, -1.0}, {1.0, 1.0}}, {-2.0, 3.0}));
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(2.0));  // x = (2, 0)
}

TEST_CASE("equality-split rows solve (planning-style degeneracy)") {
  const auto inst = gen_planning(3, 11);
  const auto sol = solve_lp(inst.relaxation());
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective > 0.0);
}

TEST_CASE("weak duality: relaxation lower-bounds integer feasible points") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = gen_packing(4, 3, seed);
    const auto bounds = oracle::box_bounds(inst, 2'000'000);
    if (!bounds) continue;
    const auto sol = solve_lp(inst.relaxation());
    REQUIRE(sol.status == LpStatus::Optimal);
    const auto points = oracle::enumerate_feasible_points(inst, *bounds);
    for (const auto& x : points) {
      double obj = 0.0;
      for (int j = 0; j < inst.num_vars(); ++j) obj += inst.objective[j] * x[j];
      CHECK(sol.objective <= obj + 1e-7);
    }
  }
}

TEST_CASE("monotonicity: adding a gomory cut never decreases the objective") {
  Rng rng(2024);
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 50; ++seed) {
    const auto inst = gen_packing(5, 3, seed);
    const auto sol = solve_lp(inst.relaxation());
    REQUIRE(sol.status == LpStatus::Optimal);
    const auto lp = inst.relaxation();
    const auto candidates = generate_candidates(*sol.tableau, lp, 1e-6);
    if (candidates.empty()) continue;
    const int pick = static_cast<int>(rng.uniform_index(candidates.cuts.size()));
    const auto resolved = solve_lp(add_constraint(lp, candidates.cuts[pick]));
    REQUIRE(resolved.status == LpStatus::Optimal);
    CHECK(resolved.objective >= sol.objective - 1e-7);
    ++checked;
  }
}

TEST_CASE("tableau invariants: basic values nonnegative, basis matches rows") {
  Rng rng(77);
  const auto lp = random_packing_lp(6, 6, rng);
  const auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  const auto& tab = *sol.tableau;
  REQUIRE(tab.basis.size() == tab.rows.size());
  REQUIRE(tab.basic_values.size() == tab.rows.size());
  for (std::size_t i = 0; i < tab.rows.size(); ++i) {
    CHECK(tab.basic_values[i] >= -1e-7);
    CHECK(tab.rows[i].size() == static_cast<std::size_t>(lp.num_vars() + lp.num_rows()));
    // basis column is a unit column
    CHECK(tab.rows[i][tab.basis[i]] == doctest::Approx(1.0));
  }
}
