#include "cutsel/heuristics.hpp"

#include <cmath>
#include <stdexcept>

namespace cutsel {

std::string to_string(HeuristicKind kind) {
  switch (kind) {
    case HeuristicKind::Random: return "random";
    case HeuristicKind::MaxViolation: return "mv";
    case HeuristicKind::MaxNormalizedViolation: return "mnv";
    case HeuristicKind::Lexicographic: return "le";
  }
  return "?";
}

std::optional<HeuristicKind> heuristic_from_name(const std::string& name) {
  if (name == "random") return HeuristicKind::Random;
  if (name == "mv") return HeuristicKind::MaxViolation;
  if (name == "mnv") return HeuristicKind::MaxNormalizedViolation;
  if (name == "le") return HeuristicKind::Lexicographic;
  return std::nullopt;
}

namespace {

double fractionality(const SimplexTableau& tableau, int row) {
  const double v = tableau.basic_values[row];
  return std::abs(v - std::round(v));
}

double row_norm(const SimplexTableau& tableau, int row) {
  double sq = 0.0;
  for (double v : tableau.rows[row]) sq += v * v;
  return std::sqrt(sq);
}

}  // namespace

int select(HeuristicKind kind, const CutEnvState& state, const SimplexTableau& tableau,
           Rng& rng) {
  const int count = state.candidates.size();
  if (count == 0) throw std::logic_error("heuristic select: empty candidate set");

  switch (kind) {
    case HeuristicKind::Random:
      return static_cast<int>(rng.uniform_index(count));
    case HeuristicKind::Lexicographic:
      return 0;  // candidates preserve tableau-row order
    case HeuristicKind::MaxViolation:
    case HeuristicKind::MaxNormalizedViolation: {
      int best = 0;
      double best_score = -1.0;
      for (int i = 0; i < count; ++i) {
        const int row = state.candidates.source_rows[i];
        double score = fractionality(tableau, row);
        if (kind == HeuristicKind::MaxNormalizedViolation) {
          const double norm = row_norm(tableau, row);
          score = norm > 0.0 ? score / norm : 0.0;
        }
        if (score > best_score + 1e-15) {
          best_score = score;
          best = i;
        }
      }
      return best;
    }
  }
  throw std::logic_error("heuristic select: unknown kind");
}

ActionSelector make_heuristic_selector(HeuristicKind kind) {
  return [kind](const CutEnvState& state, const SimplexTableau& tableau, Rng& rng) {
    return select(kind, state, tableau, rng);
  };
}

}  // namespace cutsel
