#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "cutsel/env.hpp"

namespace cutsel {

/// Two-layer embedding network F: R^input -> R^k, tanh on the hidden layer.
/// One shared F embeds both LP constraints and candidate cuts.
struct AttentionParams {
  int input_dim = 0;
  int hidden_dim = 64;
  int output_dim = 64;  // k
  Vec w1, b1;  // hidden x input (row-major), hidden
  Vec w2, b2;  // output x hidden (row-major), output

  std::size_t param_count() const {
    return w1.size() + b1.size() + w2.size() + b2.size();
  }
};

/// Single recurrent gated cell, scalar inputs (inequality entries fed one
/// per step, coefficients first then rhs). Gate order in the stacked
/// weights: input, forget, cell, output.
struct LstmParams {
  int hidden_dim = 10;  // d_h
  Vec w_input;   // 4*d_h
  Vec w_hidden;  // 4*d_h x d_h (row-major)
  Vec bias;      // 4*d_h

  std::size_t param_count() const {
    return w_input.size() + w_hidden.size() + bias.size();
  }
};

enum class PolicyArch { AttentionOnly, LstmAttention };

std::string to_string(PolicyArch arch);
std::optional<PolicyArch> arch_from_name(const std::string& name);

/// Full parameter set; flattens to/from one vector in the fixed layout
/// [attention w1, b1, w2, b2][lstm w_input, w_hidden, bias] so ES can
/// perturb a single theta.
struct PolicyParams {
  PolicyArch arch = PolicyArch::AttentionOnly;
  int num_vars = 0;  // fixed n; AttentionOnly rejects other instance sizes
  int version = 1;
  AttentionParams attention;
  std::optional<LstmParams> lstm;

  std::size_t param_count() const;
  Vec flatten() const;
  void assign_flat(const Vec& theta);

  static PolicyParams init_attention(int num_vars, int hidden, int embed_dim,
                                     std::uint64_t seed);
  static PolicyParams init_lstm_attention(int lstm_hidden, int hidden, int embed_dim,
                                          std::uint64_t seed);
};

/// Embed one inequality coeffs^T x <= rhs. Inputs are scaled by
/// 1/max(1, max|entry|) before the network to keep tanh in range.
Vec embed(const PolicyParams& params, std::span<const double> coeffs, double rhs);

/// S_j = mean_i g_j^T h_i over the LP constraints i and candidates j.
Vec score_candidates(const PolicyParams& params, const CutEnvState& state);

/// Numerically stable softmax.
Vec action_distribution(const Vec& scores);

enum class ActionMode { Sample, Greedy };

int select_action(const PolicyParams& params, const CutEnvState& state, ActionMode mode,
                  Rng& rng);

/// Incremental scorer for rollouts: constraint embeddings are cached and
/// extended as cuts are appended, so each step embeds only the new rows.
/// Valid within one episode (constraints append-only); a shrinking
/// constraint count resets the cache. Create one per rollout.
class PolicyEvaluator {
 public:
  explicit PolicyEvaluator(std::shared_ptr<const PolicyParams> params);
  Vec scores(const CutEnvState& state);

 private:
  std::shared_ptr<const PolicyParams> params_;
  Vec h_sum_;
  int cached_rows_ = 0;
};

ActionSelector make_policy_selector(std::shared_ptr<const PolicyParams> params,
                                    ActionMode mode);

}  // namespace cutsel
