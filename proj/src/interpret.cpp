#include "cutsel/interpret.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cutsel {

namespace {

// Smallest q <= cap with |v*q - round(v*q)| <= tol*q, via continued
// fractions; 0 when none exists.
long long denominator_of(double v, double tol, long long cap) {
  v = std::abs(v);
  double frac = v - std::floor(v);
  if (frac <= tol) return 1;
  long long prev_den = 0, den = 1;
  double x = frac;
  for (int iter = 0; iter < 64; ++iter) {
    const double inv = 1.0 / x;
    const double a = std::floor(inv);
    if (a > static_cast<double>(cap)) break;
    const long long next = static_cast<long long>(a) * den + prev_den;
    if (next > cap) break;
    prev_den = den;
    den = next;
    const double scaled = frac * static_cast<double>(den);
    if (std::abs(scaled - std::round(scaled)) <= tol * static_cast<double>(den)) return den;
    x = inv - a;
    if (x < 1e-12) break;
  }
  return 0;
}

}  // namespace

IntegerizedCut integerize(const Cut& cut, double tol, long long max_denominator) {
  IntegerizedCut out;
  long long q = 1;
  auto fold = [&](double v) {
    if (q == 0) return;
    const long long d = denominator_of(v, tol, max_denominator);
    if (d == 0) {
      q = 0;
      return;
    }
    q = std::lcm(q, d);
    if (q > max_denominator || q <= 0) q = 0;
  };
  for (double c : cut.coeffs) fold(c);
  fold(cut.rhs);
  if (q == 0) return out;

  out.coeffs.resize(cut.coeffs.size());
  const double scale = static_cast<double>(q);
  for (std::size_t j = 0; j < cut.coeffs.size(); ++j) {
    const double scaled = cut.coeffs[j] * scale;
    if (std::abs(scaled) > 9e15) return out;  // would overflow the integer grid
    out.coeffs[j] = static_cast<long long>(std::llround(scaled));
  }
  const double scaled_rhs = cut.rhs * scale;
  if (std::abs(scaled_rhs) > 9e15) return out;
  out.rhs = std::llround(scaled_rhs);

  if (out.rhs < 0) {  // normalize the sign so cover-style rhs is positive
    out.rhs = -out.rhs;
    for (auto& c : out.coeffs) c = -c;
  }
  out.ok = true;
  return out;
}

bool classify(const Cut& cut, int level) {
  if (level < 1 || level > 3) throw std::invalid_argument("classify: level must be 1..3");
  const IntegerizedCut ic = integerize(cut);
  if (!ic.ok || ic.rhs <= 0) return false;

  for (long long p = 1; p <= ic.rhs; ++p) {
    if (ic.rhs % p != 0) continue;  // clause (1): rhs is an integer multiple of p
    long long count = 0;
    for (long long c : ic.coeffs) {
      const bool hit = level == 1   ? c == p
                       : level == 2 ? c >= p && c <= p + 2
                                    : c >= p;
      if (hit) ++count;
    }
    if (p * count > ic.rhs) return true;
  }
  return false;
}

CutScoreReport score_rollout(const IpInstance& instance, const ActionSelector& selector,
                             const RolloutConfig& cfg, std::uint64_t seed) {
  CutScoreReport report;
  Rng rng(mix_seed(seed, 0x1c7));

  CutEnv env(instance.relaxation(), cfg);
  if (!env.ok()) return report;

  std::vector<double> rewards;
  std::array<int, 3> qualifying{0, 0, 0};
  while (!env.done() && report.cuts_added < cfg.horizon) {
    if (cfg.mode == RolloutMode::Test &&
        stopping_update(rewards, cfg.stopping_window, cfg.stopping_eta)) {
      report.termination = Termination::StoppingCriterion;
      break;
    }
    const int action = selector(env.state(), env.tableau(), rng);
    const Cut cut = env.state().candidates.cuts[action];
    const StepOutcome outcome = env.step(action);
    rewards.push_back(outcome.reward);
    report.cuts_added += 1;
    for (int level = 1; level <= 3; ++level)
      if (classify(cut, level)) ++qualifying[level - 1];
    if (outcome.done) {
      report.termination = env.termination();
      break;
    }
    report.termination = Termination::HorizonReached;
  }
  if (env.done() && env.ok() && report.cuts_added == 0)
    report.termination = env.termination();

  if (report.cuts_added > 0) {
    report.empty = false;
    for (int k = 0; k < 3; ++k)
      report.criterion_fraction[k] = static_cast<double>(qualifying[k]) / report.cuts_added;
  }
  return report;
}

}  // namespace cutsel
