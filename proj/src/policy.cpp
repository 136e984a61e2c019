#include "cutsel/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cutsel {

std::string to_string(PolicyArch arch) {
  return arch == PolicyArch::AttentionOnly ? "attention" : "lstm-attention";
}

std::optional<PolicyArch> arch_from_name(const std::string& name) {
  if (name == "attention") return PolicyArch::AttentionOnly;
  if (name == "lstm-attention" || name == "lstm") return PolicyArch::LstmAttention;
  return std::nullopt;
}

std::size_t PolicyParams::param_count() const {
  return attention.param_count() + (lstm ? lstm->param_count() : 0);
}

Vec PolicyParams::flatten() const {
  Vec theta;
  theta.reserve(param_count());
  auto push = [&theta](const Vec& v) { theta.insert(theta.end(), v.begin(), v.end()); };
  push(attention.w1);
  push(attention.b1);
  push(attention.w2);
  push(attention.b2);
  if (lstm) {
    push(lstm->w_input);
    push(lstm->w_hidden);
    push(lstm->bias);
  }
  return theta;
}

void PolicyParams::assign_flat(const Vec& theta) {
  if (theta.size() != param_count())
    throw std::invalid_argument("assign_flat: parameter vector length mismatch");
  std::size_t pos = 0;
  auto pull = [&theta, &pos](Vec& v) {
    std::copy(theta.begin() + pos, theta.begin() + pos + v.size(), v.begin());
    pos += v.size();
  };
  pull(attention.w1);
  pull(attention.b1);
  pull(attention.w2);
  pull(attention.b2);
  if (lstm) {
    pull(lstm->w_input);
    pull(lstm->w_hidden);
    pull(lstm->bias);
  }
}

namespace {

void fill_uniform(Vec& v, Rng& rng) {
  for (double& x : v) x = rng.uniform_real(-0.1, 0.1);
}

AttentionParams make_attention(int input_dim, int hidden, int embed_dim, Rng& rng) {
  AttentionParams a;
  a.input_dim = input_dim;
  a.hidden_dim = hidden;
  a.output_dim = embed_dim;
  a.w1.resize(static_cast<std::size_t>(hidden) * input_dim);
  a.b1.resize(hidden);
  a.w2.resize(static_cast<std::size_t>(embed_dim) * hidden);
  a.b2.resize(embed_dim);
  fill_uniform(a.w1, rng);
  fill_uniform(a.b1, rng);
  fill_uniform(a.w2, rng);
  fill_uniform(a.b2, rng);
  return a;
}

}  // namespace

PolicyParams PolicyParams::init_attention(int num_vars, int hidden, int embed_dim,
                                          std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x70));
  PolicyParams p;
  p.arch = PolicyArch::AttentionOnly;
  p.num_vars = num_vars;
  p.attention = make_attention(num_vars + 1, hidden, embed_dim, rng);
  return p;
}

PolicyParams PolicyParams::init_lstm_attention(int lstm_hidden, int hidden, int embed_dim,
                                               std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x71));
  PolicyParams p;
  p.arch = PolicyArch::LstmAttention;
  p.num_vars = 0;
  p.attention = make_attention(lstm_hidden, hidden, embed_dim, rng);
  LstmParams l;
  l.hidden_dim = lstm_hidden;
  l.w_input.resize(4 * static_cast<std::size_t>(lstm_hidden));
  l.w_hidden.resize(4 * static_cast<std::size_t>(lstm_hidden) * lstm_hidden);
  l.bias.resize(4 * static_cast<std::size_t>(lstm_hidden));
  fill_uniform(l.w_input, rng);
  fill_uniform(l.w_hidden, rng);
  fill_uniform(l.bias, rng);
  p.lstm = std::move(l);
  return p;
}

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// y = tanh(W1 u + b1), out = W2 y + b2
Vec attention_forward(const AttentionParams& a, const Vec& input) {
  Vec hidden(a.hidden_dim);
  for (int i = 0; i < a.hidden_dim; ++i) {
    double acc = a.b1[i];
    const double* w = a.w1.data() + static_cast<std::size_t>(i) * a.input_dim;
    for (int j = 0; j < a.input_dim; ++j) acc += w[j] * input[j];
    hidden[i] = std::tanh(acc);
  }
  Vec out(a.output_dim);
  for (int i = 0; i < a.output_dim; ++i) {
    double acc = a.b2[i];
    const double* w = a.w2.data() + static_cast<std::size_t>(i) * a.hidden_dim;
    for (int j = 0; j < a.hidden_dim; ++j) acc += w[j] * hidden[j];
    out[i] = acc;
  }
  return out;
}

Vec lstm_forward(const LstmParams& l, const Vec& sequence) {
  const int d = l.hidden_dim;
  Vec h(d, 0.0), c(d, 0.0), gates(4 * d);
  for (double u : sequence) {
    for (int g = 0; g < 4 * d; ++g) {
      double acc = l.bias[g] + l.w_input[g] * u;
      const double* w = l.w_hidden.data() + static_cast<std::size_t>(g) * d;
      for (int j = 0; j < d; ++j) acc += w[j] * h[j];
      gates[g] = acc;
    }
    for (int j = 0; j < d; ++j) {
      const double in_gate = sigmoid(gates[j]);
      const double forget_gate = sigmoid(gates[d + j]);
      const double cell_in = std::tanh(gates[2 * d + j]);
      const double out_gate = sigmoid(gates[3 * d + j]);
      c[j] = forget_gate * c[j] + in_gate * cell_in;
      h[j] = out_gate * std::tanh(c[j]);
    }
  }
  return h;
}

Vec normalized_input(std::span<const double> coeffs, double rhs) {
  Vec input(coeffs.size() + 1);
  double max_mag = std::abs(rhs);
  for (double v : coeffs) max_mag = std::max(max_mag, std::abs(v));
  const double scale = 1.0 / std::max(1.0, max_mag);
  for (std::size_t j = 0; j < coeffs.size(); ++j) input[j] = coeffs[j] * scale;
  input.back() = rhs * scale;
  return input;
}

}  // namespace

Vec embed(const PolicyParams& params, std::span<const double> coeffs, double rhs) {
  Vec input = normalized_input(coeffs, rhs);
  if (params.arch == PolicyArch::AttentionOnly) {
    if (static_cast<int>(input.size()) != params.attention.input_dim)
      throw std::invalid_argument("embed: inequality width does not match policy n");
    return attention_forward(params.attention, input);
  }
  const Vec hidden_state = lstm_forward(*params.lstm, input);
  return attention_forward(params.attention, hidden_state);
}

Vec score_candidates(const PolicyParams& params, const CutEnvState& state) {
  const int count = state.candidates.size();
  if (count == 0) throw std::logic_error("score_candidates: empty candidate set");
  const int n_rows = state.lp.num_rows();

  Vec h_mean(params.attention.output_dim, 0.0);
  for (int i = 0; i < n_rows; ++i) {
    const Vec h = embed(params, state.lp.rows[i], state.lp.rhs[i]);
    for (int k = 0; k < params.attention.output_dim; ++k) h_mean[k] += h[k];
  }
  for (double& v : h_mean) v /= n_rows;

  Vec scores(count);
  for (int j = 0; j < count; ++j) {
    const Cut& cut = state.candidates.cuts[j];
    const Vec g = embed(params, cut.coeffs, cut.rhs);
    double s = 0.0;
    for (int k = 0; k < params.attention.output_dim; ++k) s += g[k] * h_mean[k];
    scores[j] = s;
  }
  return scores;
}

Vec action_distribution(const Vec& scores) {
  Vec probs(scores.size());
  const double max_score = *std::max_element(scores.begin(), scores.end());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    probs[i] = std::exp(scores[i] - max_score);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

namespace {

int pick(const Vec& scores, ActionMode mode, Rng& rng) {
  const Vec probs = action_distribution(scores);
  if (mode == ActionMode::Greedy) {
    return static_cast<int>(std::max_element(probs.begin(), probs.end()) - probs.begin());
  }
  const double u = rng.uniform_real();
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

}  // namespace

int select_action(const PolicyParams& params, const CutEnvState& state, ActionMode mode,
                  Rng& rng) {
  if (state.candidates.empty())
    throw std::logic_error("select_action: empty candidate set");
  return pick(score_candidates(params, state), mode, rng);
}

PolicyEvaluator::PolicyEvaluator(std::shared_ptr<const PolicyParams> params)
    : params_(std::move(params)), h_sum_(params_->attention.output_dim, 0.0) {}

Vec PolicyEvaluator::scores(const CutEnvState& state) {
  const int n_rows = state.lp.num_rows();
  if (n_rows < cached_rows_) {
    std::fill(h_sum_.begin(), h_sum_.end(), 0.0);
    cached_rows_ = 0;
  }
  for (int i = cached_rows_; i < n_rows; ++i) {
    const Vec h = embed(*params_, state.lp.rows[i], state.lp.rhs[i]);
    for (std::size_t k = 0; k < h_sum_.size(); ++k) h_sum_[k] += h[k];
  }
  cached_rows_ = n_rows;

  Vec scores(state.candidates.size());
  for (int j = 0; j < state.candidates.size(); ++j) {
    const Cut& cut = state.candidates.cuts[j];
    const Vec g = embed(*params_, cut.coeffs, cut.rhs);
    double s = 0.0;
    for (std::size_t k = 0; k < h_sum_.size(); ++k) s += g[k] * h_sum_[k];
    scores[j] = s / n_rows;
  }
  return scores;
}

ActionSelector make_policy_selector(std::shared_ptr<const PolicyParams> params,
                                    ActionMode mode) {
  auto evaluator = std::make_shared<PolicyEvaluator>(std::move(params));
  return [evaluator, mode](const CutEnvState& state, const SimplexTableau&, Rng& rng) {
    return pick(evaluator->scores(state), mode, rng);
  };
}

}  // namespace cutsel
