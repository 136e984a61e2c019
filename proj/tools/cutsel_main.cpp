#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>

#include <CLI11.hpp>
#include <json.hpp>

#include "cutsel/batch.hpp"
#include "cutsel/bnc.hpp"
#include "cutsel/es.hpp"
#include "cutsel/exact.hpp"
#include "cutsel/heuristics.hpp"
#include "cutsel/interpret.hpp"
#include "cutsel/io.hpp"
#include "cutsel/policy.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cutsel;

namespace {

void write_config(const json& cfg, const std::string& out_dir) {
  fs::create_directories(out_dir);
  std::ofstream out(fs::path(out_dir) / "config.json");
  out << cfg.dump(1) << "\n";
  std::cout << "config: " << cfg.dump() << "\n";
}

ActionSelector selector_from_flags(const std::string& name, const std::string& weights_path,
                                   ActionMode mode) {
  if (const auto kind = heuristic_from_name(name)) return make_heuristic_selector(*kind);
  if (name == "policy") {
    if (weights_path.empty())
      throw CLI::ValidationError("--weights is required with --selector policy");
    auto params = std::make_shared<const PolicyParams>(load_policy(weights_path));
    return make_policy_selector(std::move(params), mode);
  }
  throw CLI::ValidationError("unknown selector '" + name + "'");
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::string family = "packing";
  int n = 10, m = 5, periods = 4, vertices = 4, edges = 6;
  int train_count = 30, test_count = 20;
  std::uint64_t seed = 0;
  std::string out = "out";
  bool with_optimum = false;
  long bnb_limit = 2000000;
};

int run_generate(const GenerateArgs& a) {
  const auto family = family_from_name(a.family);
  if (!family) throw CLI::ValidationError("unknown family '" + a.family + "'");

  json cfg{{"subcommand", "generate"}, {"family", a.family}, {"n", a.n},
           {"m", a.m},                 {"periods", a.periods}, {"vertices", a.vertices},
           {"edges", a.edges},         {"train", a.train_count}, {"test", a.test_count},
           {"seed", a.seed},           {"with_optimum", a.with_optimum}, {"out", a.out}};
  write_config(cfg, a.out);

  Manifest manifest;
  int skipped_optima = 0;
  auto emit = [&](const std::string& split, int index, std::uint64_t seed) {
    PlanningRaw planning;
    KnapsackRaw knapsack;
    MaxCutRaw maxcut;
    IpInstance inst;
    switch (*family) {
      case Family::Packing: inst = gen_packing(a.n, a.m, seed); break;
      case Family::BinaryPacking: inst = gen_binary_packing(a.n, a.m, seed); break;
      case Family::Planning: inst = gen_planning(a.periods, seed, &planning); break;
      case Family::MaxCut: inst = gen_maxcut(a.vertices, a.edges, seed, &maxcut); break;
      case Family::Knapsack: inst = gen_knapsack(a.n, seed, &knapsack); break;
    }
    if (a.with_optimum &&
        !attach_known_optimum(inst, *family, &planning, &knapsack, &maxcut, a.bnb_limit)) {
      ++skipped_optima;
      std::cerr << "warning: optimum not proven for " << inst.name << "\n";
    }
    char idx[16];
    std::snprintf(idx, sizeof(idx), "%03d", index);
    const std::string file = a.family + "_" + split + "_" + idx + ".json";
    save_instance(inst, (fs::path(a.out) / file).string());
    (split == "train" ? manifest.train : manifest.test).push_back(file);
  };

  for (int i = 0; i < a.train_count; ++i) emit("train", i, a.seed + i);
  for (int i = 0; i < a.test_count; ++i) emit("test", i, a.seed + 10000 + i);
  save_manifest(manifest, (fs::path(a.out) / "manifest.json").string());
  std::cout << "wrote " << a.train_count << " train + " << a.test_count
            << " test instances to " << a.out << "\n";
  if (skipped_optima > 0)
    std::cerr << "warning: " << skipped_optima << " instances lack known_ip_optimum\n";
  return 0;
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
  std::string manifest;
  std::string family;  // optional: pulls per-family ES defaults
  std::string arch = "attention";
  int hidden = 64, embed_dim = 64, lstm_hidden = 10;
  int perturbations = -1, trajectories = -1, iterations = -1, horizon = -1;
  double sigma = -1.0, alpha = -1.0, gamma = -1.0;
  std::uint64_t seed = 0;
  int threads = 0, checkpoint_interval = 0;
  std::string out = "out";
};

int run_train(const TrainArgs& a) {
  EsConfig es;
  if (!a.family.empty()) {
    const auto family = family_from_name(a.family);
    if (!family) throw CLI::ValidationError("unknown family '" + a.family + "'");
    es = default_es_config(*family);
  }
  if (a.perturbations > 0) es.num_perturbations = a.perturbations;
  if (a.trajectories > 0) es.trajectories_per_instance = a.trajectories;
  if (a.iterations > 0) es.num_iterations = a.iterations;
  if (a.horizon > 0) es.horizon = a.horizon;
  if (a.sigma > 0) es.sigma = a.sigma;
  if (a.alpha > 0) es.alpha = a.alpha;
  if (a.gamma > 0) es.gamma = a.gamma;
  es.master_seed = a.seed;
  es.threads = a.threads;
  es.checkpoint_interval = a.checkpoint_interval;
  es.checkpoint_path = (fs::path(a.out) / "checkpoint.json").string();

  json cfg{{"subcommand", "train"},   {"manifest", a.manifest},
           {"family", a.family},      {"arch", a.arch},
           {"hidden", a.hidden},      {"embed_dim", a.embed_dim},
           {"lstm_hidden", a.lstm_hidden}, {"perturbations", es.num_perturbations},
           {"sigma", es.sigma},       {"alpha", es.alpha},
           {"trajectories", es.trajectories_per_instance},
           {"iterations", es.num_iterations}, {"horizon", es.horizon},
           {"gamma", es.gamma},       {"seed", a.seed},
           {"threads", a.threads},    {"out", a.out}};
  write_config(cfg, a.out);

  const Manifest manifest = load_manifest(a.manifest);
  const auto instances = load_instances(manifest.train, a.manifest);
  if (instances.empty()) throw CLI::ValidationError("manifest has no training instances");

  const auto arch = arch_from_name(a.arch);
  if (!arch) throw CLI::ValidationError("unknown arch '" + a.arch + "'");
  PolicyParams init =
      *arch == PolicyArch::AttentionOnly
          ? PolicyParams::init_attention(instances.front().num_vars(), a.hidden, a.embed_dim,
                                         a.seed)
          : PolicyParams::init_lstm_attention(a.lstm_hidden, a.hidden, a.embed_dim, a.seed);

  auto [params, log] = train(es, instances, std::move(init));
  save_policy(params, (fs::path(a.out) / "weights.json").string());

  std::vector<std::string> header{"iteration", "mean_return", "param_norm"};
  for (std::size_t i = 0; i < instances.size(); ++i)
    header.push_back("ret_" + std::to_string(i));
  std::vector<std::vector<std::string>> rows;
  double total_wall = 0.0;
  for (std::size_t it = 0; it < log.iterations.size(); ++it) {
    const auto& entry = log.iterations[it];
    std::vector<std::string> row{std::to_string(it), format_double(entry.mean_return),
                                 format_double(entry.param_norm)};
    for (double r : entry.per_instance_returns) row.push_back(format_double(r));
    rows.push_back(std::move(row));
    total_wall += entry.wall_seconds;
  }
  write_csv((fs::path(a.out) / "trainlog.csv").string(), header, rows);

  json meta{{"total_wall_seconds", total_wall}, {"iterations", log.iterations.size()}};
  std::ofstream meta_out(fs::path(a.out) / "run_meta.json");
  meta_out << meta.dump(1) << "\n";

  if (!log.iterations.empty())
    std::cout << "final mean return " << log.iterations.back().mean_return << " after "
              << log.iterations.size() << " iterations (" << total_wall << "s)\n";
  std::cout << "weights: " << (fs::path(a.out) / "weights.json").string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string selector = "le";
  std::string weights;
  std::string manifest;
  std::string split = "test";
  int horizon = 1000;
  double gamma = 0.99;
  int window = 5;
  double eta = 1e-3;
  std::string mode = "test";
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out = "out";
};

int run_eval(const EvalArgs& a) {
  json cfg{{"subcommand", "eval"}, {"selector", a.selector}, {"weights", a.weights},
           {"manifest", a.manifest}, {"split", a.split},     {"horizon", a.horizon},
           {"gamma", a.gamma},     {"window", a.window},     {"eta", a.eta},
           {"mode", a.mode},       {"seed", a.seed},         {"out", a.out}};
  write_config(cfg, a.out);

  const Manifest manifest = load_manifest(a.manifest);
  const auto& names = a.split == "train" ? manifest.train : manifest.test;
  const auto instances = load_instances(names, a.manifest);
  if (instances.empty()) throw CLI::ValidationError("no instances in split " + a.split);

  RolloutConfig rc;
  rc.horizon = a.horizon;
  rc.gamma = a.gamma;
  rc.stopping_window = a.window;
  rc.stopping_eta = a.eta;
  rc.mode = a.mode == "train" ? RolloutMode::Train : RolloutMode::Test;
  const ActionMode action_mode =
      rc.mode == RolloutMode::Train ? ActionMode::Sample : ActionMode::Greedy;

  std::function<RolloutResult(int)> task = [&](int i) {
    // Fresh selector per rollout: policy evaluators cache per-episode state.
    const auto selector = selector_from_flags(a.selector, a.weights, action_mode);
    return rollout(instances[i], selector, rc, mix_seed(a.seed, i));
  };
  const auto results =
      map_indexed<RolloutResult>(static_cast<int>(instances.size()), a.threads, task);

  std::vector<std::vector<std::string>> rows;
  Vec igcs;
  double mean_cuts = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    rows.push_back({instances[i].name, std::to_string(r.cuts_added), to_string(r.termination),
                    fmt_opt(r.igc), std::to_string(r.objective_trace.size())});
    if (r.igc) igcs.push_back(*r.igc);
    mean_cuts += r.cuts_added;
  }
  mean_cuts /= results.size();
  write_csv((fs::path(a.out) / "eval.csv").string(),
            {"instance", "cuts", "termination", "igc", "objective_trace_len"}, rows);

  std::sort(igcs.begin(), igcs.end());
  std::vector<std::vector<std::string>> prows;
  for (std::size_t i = 0; i < igcs.size(); ++i) {
    const double pct = 100.0 * static_cast<double>(i + 1) / igcs.size();
    prows.push_back({format_double(pct), format_double(igcs[i])});
  }
  write_csv((fs::path(a.out) / "igc_percentiles.csv").string(), {"percentile", "igc"}, prows);

  const double mean_igc =
      igcs.empty() ? 0.0 : std::accumulate(igcs.begin(), igcs.end(), 0.0) / igcs.size();
  std::cout << "instances " << results.size() << "  mean cuts " << mean_cuts
            << "  mean igc " << mean_igc << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// bnc

struct BncArgs {
  std::string selector = "random";
  std::string weights;
  std::string manifest;
  std::string split = "test";
  int ncuts = 10;
  long budget = 1000;
  double threshold = 1e-4;
  double igc_target = -1.0;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out = "out";
};

int run_bnc_cmd(const BncArgs& a) {
  json cfg{{"subcommand", "bnc"},   {"selector", a.selector}, {"weights", a.weights},
           {"manifest", a.manifest}, {"split", a.split},      {"ncuts", a.ncuts},
           {"budget", a.budget},    {"threshold", a.threshold},
           {"igc_target", a.igc_target}, {"seed", a.seed},    {"out", a.out}};
  write_config(cfg, a.out);

  const Manifest manifest = load_manifest(a.manifest);
  const auto& names = a.split == "train" ? manifest.train : manifest.test;
  const auto instances = load_instances(names, a.manifest);
  if (instances.empty()) throw CLI::ValidationError("no instances in split " + a.split);

  BncConfig bc;
  bc.node_budget = a.budget;
  bc.cuts_per_node = a.ncuts;
  bc.termination_threshold = a.threshold;
  if (a.igc_target > 0) bc.igc_target = a.igc_target;

  std::function<BncResult(int)> task = [&](int i) {
    const auto selector = selector_from_flags(a.selector, a.weights, ActionMode::Greedy);
    BncConfig local = bc;
    local.seed = mix_seed(a.seed, i);
    return run_bnc(instances[i], selector, local);
  };
  const auto results =
      map_indexed<BncResult>(static_cast<int>(instances.size()), a.threads, task);

  std::vector<std::vector<std::string>> rows;
  std::vector<long> reached;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    const std::string final_igc = r.igc_trace.empty() ? "" : format_double(r.igc_trace.back());
    rows.push_back({instances[i].name, std::to_string(r.nodes_expanded),
                    r.nodes_to_igc_target ? std::to_string(*r.nodes_to_igc_target) : "",
                    final_igc,
                    r.best_solution ? format_double(r.best_objective) : ""});
    if (r.nodes_to_igc_target) reached.push_back(*r.nodes_to_igc_target);
  }
  write_csv((fs::path(a.out) / "bnc.csv").string(),
            {"instance", "nodes_expanded", "nodes_to_igc_target", "final_igc", "best_objective"},
            rows);

  std::sort(reached.begin(), reached.end());
  std::vector<std::vector<std::string>> prows;
  for (std::size_t i = 0; i < reached.size(); ++i) {
    const double pct = 100.0 * static_cast<double>(i + 1) / results.size();
    prows.push_back({format_double(pct), std::to_string(reached[i])});
  }
  write_csv((fs::path(a.out) / "nodes_percentiles.csv").string(),
            {"percentile", "nodes_to_igc_target"}, prows);

  std::cout << "instances " << results.size() << "  reached igc target " << reached.size()
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// interpret

struct InterpretArgs {
  std::string selectors = "random,mv,mnv,le";
  std::string weights;
  int count = 20;
  int n = 10;
  int horizon = 1000;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out = "out";
};

int run_interpret(const InterpretArgs& a) {
  json cfg{{"subcommand", "interpret"}, {"selectors", a.selectors}, {"weights", a.weights},
           {"count", a.count},          {"n", a.n},                 {"horizon", a.horizon},
           {"seed", a.seed},            {"out", a.out}};
  write_config(cfg, a.out);

  std::vector<std::string> selector_names;
  {
    std::string token;
    for (char c : a.selectors + ",") {
      if (c == ',') {
        if (!token.empty()) selector_names.push_back(token);
        token.clear();
      } else {
        token += c;
      }
    }
  }

  std::vector<IpInstance> instances(a.count);
  for (int i = 0; i < a.count; ++i)
    instances[i] = gen_knapsack(a.n, a.seed + 10000 + i);

  RolloutConfig rc;
  rc.horizon = a.horizon;
  rc.mode = RolloutMode::Test;

  std::vector<std::vector<std::string>> rows;
  for (const auto& name : selector_names) {
    std::function<CutScoreReport(int)> task = [&](int i) {
      const ActionMode mode = ActionMode::Greedy;
      const auto selector = selector_from_flags(name, a.weights, mode);
      return score_rollout(instances[i], selector, rc, mix_seed(a.seed, i));
    };
    const auto reports = map_indexed<CutScoreReport>(a.count, a.threads, task);
    std::array<double, 3> mean{0.0, 0.0, 0.0};
    double mean_cuts = 0.0;
    int scored = 0;
    for (const auto& rep : reports) {
      mean_cuts += rep.cuts_added;
      if (rep.empty) continue;
      ++scored;
      for (int k = 0; k < 3; ++k) mean[k] += rep.criterion_fraction[k];
    }
    for (int k = 0; k < 3; ++k) mean[k] = scored ? mean[k] / scored : 0.0;
    mean_cuts /= a.count;
    rows.push_back({name, format_double(mean[0]), format_double(mean[1]),
                    format_double(mean[2]), format_double(mean_cuts),
                    std::to_string(scored)});
    std::cout << name << ": crit1 " << mean[0] << " crit2 " << mean[1] << " crit3 "
              << mean[2] << " cuts " << mean_cuts << "\n";
  }
  write_csv((fs::path(a.out) / "interpret.csv").string(),
            {"selector", "criterion1", "criterion2", "criterion3", "mean_cuts",
             "instances_scored"},
            rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gomory cutting-plane workbench with a trainable cut-selection policy"};
  app.require_subcommand(1);

  GenerateArgs g;
  auto* gen = app.add_subcommand("generate", "generate random IP instances + manifest");
  gen->add_option("--family", g.family, "packing|binary-packing|planning|maxcut|knapsack");
  gen->add_option("--n", g.n, "variables (packing/binary/knapsack)");
  gen->add_option("--m", g.m, "resource rows (packing/binary)");
  gen->add_option("--periods", g.periods, "planning horizon K");
  gen->add_option("--vertices", g.vertices, "max-cut |V|");
  gen->add_option("--edges", g.edges, "max-cut |E|");
  gen->add_option("--train", g.train_count, "training instances");
  gen->add_option("--test", g.test_count, "test instances");
  gen->add_option("--seed", g.seed, "master seed");
  gen->add_option("--out", g.out, "output directory");
  gen->add_flag("--with-optimum", g.with_optimum, "attach known_ip_optimum");
  gen->add_option("--bnb-limit", g.bnb_limit, "node limit for the reference solver");

  TrainArgs t;
  auto* tr = app.add_subcommand("train", "ES-train the attention policy");
  tr->add_option("--manifest", t.manifest, "dataset manifest")->required();
  tr->add_option("--family", t.family, "per-family ES defaults");
  tr->add_option("--arch", t.arch, "attention|lstm-attention");
  tr->add_option("--hidden", t.hidden, "embedding hidden width");
  tr->add_option("--embed-dim", t.embed_dim, "embedding output width k");
  tr->add_option("--lstm-hidden", t.lstm_hidden, "LSTM hidden size d_h");
  tr->add_option("--pert", t.perturbations, "perturbations N");
  tr->add_option("--sigma", t.sigma, "perturbation scale");
  tr->add_option("--alpha", t.alpha, "Adam learning rate");
  tr->add_option("--traj", t.trajectories, "trajectories per instance");
  tr->add_option("--iters", t.iterations, "training iterations");
  tr->add_option("--horizon", t.horizon, "rollout horizon T");
  tr->add_option("--gamma", t.gamma, "discount factor");
  tr->add_option("--seed", t.seed, "master seed");
  tr->add_option("--threads", t.threads, "worker threads (0 = all)");
  tr->add_option("--checkpoint-interval", t.checkpoint_interval, "iterations per checkpoint");
  tr->add_option("--out", t.out, "output directory");

  EvalArgs e;
  auto* ev = app.add_subcommand("eval", "roll out a selector on a test split");
  ev->add_option("--selector", e.selector, "random|mv|mnv|le|policy");
  ev->add_option("--weights", e.weights, "policy weights file");
  ev->add_option("--manifest", e.manifest, "dataset manifest")->required();
  ev->add_option("--split", e.split, "train|test");
  ev->add_option("--horizon", e.horizon, "max cuts T");
  ev->add_option("--gamma", e.gamma, "discount factor");
  ev->add_option("--window", e.window, "stopping window H");
  ev->add_option("--eta", e.eta, "stopping threshold");
  ev->add_option("--mode", e.mode, "test|train (test enables stopping + greedy)");
  ev->add_option("--seed", e.seed, "seed");
  ev->add_option("--threads", e.threads, "worker threads (0 = all)");
  ev->add_option("--out", e.out, "output directory");

  BncArgs b;
  auto* bc = app.add_subcommand("bnc", "branch-and-cut with a chosen cut selector");
  bc->add_option("--selector", b.selector, "random|mv|mnv|le|policy");
  bc->add_option("--weights", b.weights, "policy weights file");
  bc->add_option("--manifest", b.manifest, "dataset manifest")->required();
  bc->add_option("--split", b.split, "train|test");
  bc->add_option("--ncuts", b.ncuts, "cuts per node");
  bc->add_option("--budget", b.budget, "node budget");
  bc->add_option("--threshold", b.threshold, "gap-ratio termination threshold");
  bc->add_option("--igc-target", b.igc_target, "record nodes to reach this IGC");
  bc->add_option("--seed", b.seed, "seed");
  bc->add_option("--threads", b.threads, "worker threads (0 = all)");
  bc->add_option("--out", b.out, "output directory");

  InterpretArgs ip;
  auto* it = app.add_subcommand("interpret", "score cuts against cover-inequality criteria");
  it->add_option("--selectors", ip.selectors, "comma-separated selector list");
  it->add_option("--weights", ip.weights, "policy weights file");
  it->add_option("--count", ip.count, "knapsack test instances");
  it->add_option("--n", ip.n, "knapsack size");
  it->add_option("--horizon", ip.horizon, "max cuts per rollout");
  it->add_option("--seed", ip.seed, "seed");
  it->add_option("--threads", ip.threads, "worker threads (0 = all)");
  it->add_option("--out", ip.out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_generate(g);
    if (tr->parsed()) return run_train(t);
    if (ev->parsed()) return run_eval(e);
    if (bc->parsed()) return run_bnc_cmd(b);
    if (it->parsed()) return run_interpret(ip);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
