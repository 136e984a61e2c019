#include <doctest.h>

#include <cmath>

#include "cutsel/gomory.hpp"
#include "cutsel/instances.hpp"
#include "cutsel/rng.hpp"
#include "cutsel/simplex.hpp"
#include "oracle.hpp"

using namespace cutsel;

namespace {

SimplexTableau tableau_with_values(Vec basic_values, std::vector<Vec> rows,
                                   std::vector<int> basis, int n) {
  SimplexTableau t;
  t.basic_values = std::move(basic_values);
  t.rows = std::move(rows);
  t.basis = std::move(basis);
  t.num_structural = n;
  return t;
}

double cut_violation(const Cut& cut, const Vec& x) {
  double lhs = 0.0;
  for (std::size_t j = 0; j < cut.coeffs.size(); ++j) lhs += cut.coeffs[j] * x[j];
  return lhs - cut.rhs;  // > 0 means violated
}

}  // namespace

TEST_CASE("fractional_components picks fractional structural rows only") {
  // three rows, basis = structural vars 0..2
  auto t = tableau_with_values({2.0, 3.5, 1.0},
                               {Vec(6, 0.0), Vec(6, 0.0), Vec(6, 0.0)}, {0, 1, 2}, 3);
  CHECK(fractional_components(t, 1e-6) == std::vector<int>{1});

  SUBCASE("all-integer values are terminal") {
    t.basic_values = {2.0, 3.0, 1.0};
    CHECK(fractional_components(t, 1e-6).empty());
  }
  SUBCASE("tolerance rounding") {
    t.basic_values = {0.9999999, 1.0, 2.0};
    CHECK(fractional_components(t, 1e-6).empty());
  }
  SUBCASE("slack-basic rows are skipped") {
    t.basic_values = {2.5, 3.5, 1.5};
    t.basis = {0, 4, 5};  // rows 1,2 carry slack variables
    CHECK(fractional_components(t, 1e-6) == std::vector<int>{0});
  }
}

TEST_CASE("raw gomory cut floors the tableau row") {
  auto t = tableau_with_values({3.5}, {{0.5, 1.0, -0.25}}, {0}, 3);
  const Cut cut = raw_gomory_cut(t, 0, 1e-6);
  CHECK(cut.coeffs[0] == doctest::Approx(-0.5));
  CHECK(cut.coeffs[1] == doctest::Approx(0.0));
  CHECK(cut.coeffs[2] == doctest::Approx(-0.75));
  CHECK(cut.rhs == doctest::Approx(-0.5));
  for (double c : cut.coeffs) {
    CHECK(c <= 0.0);
    CHECK(c >= -1.0);
  }
}

TEST_CASE("integer row coefficients leave only the rhs fraction") {
  auto t = tableau_with_values({2.5}, {{1.0, -3.0, 2.0}}, {0}, 3);
  const Cut cut = raw_gomory_cut(t, 0, 1e-6);
  for (double c : cut.coeffs) CHECK(c == doctest::Approx(0.0));
  CHECK(cut.rhs == doctest::Approx(-0.5));
}

TEST_CASE("raw cut on non-fractional row throws") {
  auto t = tableau_with_values({2.0}, {{0.5, 0.5, 0.5}}, {0}, 3);
  CHECK_THROWS_AS(raw_gomory_cut(t, 0, 1e-6), std::invalid_argument);
}

TEST_CASE("projection with zero slack coefficients is the identity") {
  LinearProgram lp{{1.0, 1.0}, {{1.0, 2.0}}, {3.0}};
  Cut raw{{0.25, -0.5, 0.0}, -0.75};
  const Cut projected = project_to_original(raw, lp);
  CHECK(projected.coeffs[0] == doctest::Approx(0.25));
  CHECK(projected.coeffs[1] == doctest::Approx(-0.5));
  CHECK(projected.rhs == doctest::Approx(-0.75));
}

TEST_CASE("projection substitutes the slack definition") {
  // x1 + x2 <= 3, raw cut -0.5 s1 <= -0.5; substituting s1 = 3 - x1 - x2
  // gives 0.5 x1 + 0.5 x2 <= 1.
  LinearProgram lp{{1.0, 1.0}, {{1.0, 1.0}}, {3.0}};
  Cut raw{{0.0, 0.0, -0.5}, -0.5};
  const Cut projected = project_to_original(raw, lp);
  CHECK(projected.coeffs[0] == doctest::Approx(0.5));
  CHECK(projected.coeffs[1] == doctest::Approx(0.5));
  CHECK(projected.rhs == doctest::Approx(1.0));
}

TEST_CASE("projection exactness on random points") {
  Rng rng(314);
  const auto inst = gen_packing(4, 3, 9);
  LinearProgram lp = inst.relaxation();
  const auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  const auto rows = fractional_components(*sol.tableau, 1e-6);
  REQUIRE(!rows.empty());
  const Cut raw = raw_gomory_cut(*sol.tableau, rows[0], 1e-6);
  const Cut projected = project_to_original(raw, lp);

  for (int trial = 0; trial < 1000; ++trial) {
    Vec x(lp.num_vars());
    for (double& v : x) v = rng.uniform_real(0.0, 10.0);
    // slack values from s = b - Ax, any x
    Vec xs = x;
    for (int i = 0; i < lp.num_rows(); ++i) {
      double lhs = 0.0;
      for (int j = 0; j < lp.num_vars(); ++j) lhs += lp.rows[i][j] * x[j];
      xs.push_back(lp.rhs[i] - lhs);
    }
    const double raw_violation = cut_violation(raw, xs);
    const double projected_violation = cut_violation(projected, x);
    CHECK(raw_violation == doctest::Approx(projected_violation).epsilon(1e-9));
  }
}

TEST_CASE("textbook 2-variable instance: first cut separates the LP vertex") {
  // max x2 s.t. 3x1 + 2x2 <= 6, -3x1 + 2x2 <= 0 has fractional LP vertex (1, 1.5)
  LinearProgram lp{{0.0, -1.0}, {{3.0, 2.0}, {-3.0, 2.0}}, {6.0, 0.0}};
  const auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  const auto candidates = generate_candidates(*sol.tableau, lp, 1e-6);
  REQUIRE(!candidates.empty());
  for (const auto& cut : candidates.cuts)
    CHECK(cut_violation(cut, *sol.x) > 1e-7);  // LP optimum violates every cut
}

TEST_CASE("generate_candidates: terminal tableau gives empty set, counts match") {
  const auto integral = solve_lp(LinearProgram{{-1.0}, {{1.0}}, {4.0}});
  REQUIRE(integral.status == LpStatus::Optimal);
  CHECK(generate_candidates(*integral.tableau, LinearProgram{{-1.0}, {{1.0}}, {4.0}}, 1e-6)
            .empty());

  const auto inst = gen_packing(6, 4, 3);
  LinearProgram lp = inst.relaxation();
  const auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  const auto fracs = fractional_components(*sol.tableau, 1e-6);
  const auto candidates = generate_candidates(*sol.tableau, lp, 1e-6);
  CHECK(candidates.size() == static_cast<int>(fracs.size()));
  CHECK(candidates.source_rows == fracs);
}

TEST_CASE("validity: enumerated integer points satisfy cuts over ten rounds") {
  Rng rng(500);
  int instances_checked = 0;
  for (std::uint64_t seed = 0; instances_checked < 25; ++seed) {
    IpInstance inst;
    switch (seed % 3) {
      case 0: inst = gen_packing(4, 3, seed); break;
      case 1: inst = gen_binary_packing(5, 3, seed); break;
      default: inst = gen_knapsack(6, seed); break;
    }
    const auto bounds = oracle::box_bounds(inst, 200'000);
    if (!bounds) continue;
    const auto points = oracle::enumerate_feasible_points(inst, *bounds);
    REQUIRE(!points.empty());
    ++instances_checked;

    LinearProgram lp = inst.relaxation();
    for (int round = 0; round < 10; ++round) {
      const auto sol = solve_lp(lp);
      REQUIRE(sol.status == LpStatus::Optimal);
      const auto candidates = generate_candidates(*sol.tableau, lp, 1e-6);
      if (candidates.empty()) break;
      for (const auto& cut : candidates.cuts) {
        // separation: the fractional vertex violates each cut
        CHECK(cut_violation(cut, *sol.x) > 0.0);
        // validity: every integer feasible point satisfies each cut
        for (const auto& p : points) CHECK(cut_violation(cut, p) <= 1e-7);
      }
      const int pick = static_cast<int>(rng.uniform_index(candidates.cuts.size()));
      lp = add_constraint(lp, candidates.cuts[pick]);
    }
  }
}

TEST_CASE("separation margin exceeds half the fractionality tolerance") {
  for (std::uint64_t seed = 20; seed < 30; ++seed) {
    const auto inst = gen_packing(5, 4, seed);
    LinearProgram lp = inst.relaxation();
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    for (const auto& cut : generate_candidates(*sol.tableau, lp, 1e-6).cuts)
      CHECK(cut_violation(cut, *sol.x) > 0.5e-6);
  }
}
