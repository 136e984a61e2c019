#pragma once

#include <optional>
#include <string>

#include "cutsel/env.hpp"

namespace cutsel {

enum class HeuristicKind { Random, MaxViolation, MaxNormalizedViolation, Lexicographic };

std::string to_string(HeuristicKind kind);
std::optional<HeuristicKind> heuristic_from_name(const std::string& name);

/// Baseline cut choice over the current candidate set.
///   Random: uniform over candidates.
///   MV:     most fractional basic value among candidate source rows.
///   MNV:    fractionality divided by the Euclidean norm of the tableau row.
///   LE:     smallest fractional row index (candidates keep tableau order).
/// Argmax ties break to the lowest candidate index.
int select(HeuristicKind kind, const CutEnvState& state, const SimplexTableau& tableau,
           Rng& rng);

ActionSelector make_heuristic_selector(HeuristicKind kind);

}  // namespace cutsel
