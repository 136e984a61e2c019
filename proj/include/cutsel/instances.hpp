#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cutsel/types.hpp"

namespace cutsel {

enum class Family { Packing, BinaryPacking, Planning, MaxCut, Knapsack };

std::string to_string(Family family);
std::optional<Family> family_from_name(const std::string& name);

struct GeneratorSpec {
  Family family = Family::Packing;
  int n = 0;         // packing/binary/knapsack variables
  int m = 0;         // packing/binary resource rows
  int periods = 0;   // planning horizon
  int vertices = 0;  // max-cut |V|
  int edges = 0;     // max-cut |E|
  std::uint64_t seed = 0;
};

enum class Relation { LessEqual, GreaterEqual, Equal };

struct RawConstraint {
  Vec coeffs;
  double rhs = 0.0;
  Relation relation = Relation::LessEqual;
};

/// Problem in its natural form before conversion to min / <= / x >= 0.
struct RawFormulation {
  std::string name;
  Vec objective;
  bool maximize = false;
  std::vector<RawConstraint> constraints;
  std::vector<std::string> var_names;
};

/// Convert to canonical form: equalities become opposing <= pairs (in
/// place, adjacent), >= rows are negated, a max objective is negated with
/// raw_sense = -1 so reports can flip the optimum back.
IpInstance canonicalize(const RawFormulation& raw);

// Side payloads kept by the generators for family-specific exact reference
// solvers (see exact.hpp); canonical instances lose this structure.
struct PlanningRaw {
  int periods = 0;
  Vec demand, prod_cost, hold_cost, setup_cost;
  double big_m = 100.0;
  double s_initial = 0.0, s_final = 20.0;
};

struct KnapsackRaw {
  Vec weights, values;
  double capacity = 0.0;
};

struct MaxCutRaw {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  Vec weights;
};

IpInstance gen_packing(int n, int m, std::uint64_t seed);
IpInstance gen_binary_packing(int n, int m, std::uint64_t seed);
IpInstance gen_planning(int periods, std::uint64_t seed, PlanningRaw* raw = nullptr);
IpInstance gen_maxcut(int num_vertices, int num_edges, std::uint64_t seed,
                      MaxCutRaw* raw = nullptr);
IpInstance gen_knapsack(int n, std::uint64_t seed, KnapsackRaw* raw = nullptr);

IpInstance generate(const GeneratorSpec& spec);

}  // namespace cutsel
