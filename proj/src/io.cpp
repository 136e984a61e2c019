#include "cutsel/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace cutsel {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(1) << "\n";
}

void expect_format(const json& j, const std::string& tag, const std::string& path) {
  if (j.value("format", "") != tag)
    throw std::runtime_error(path + ": expected format '" + tag + "'");
  if (!j.contains("version") || !j["version"].is_number_integer())
    throw std::runtime_error(path + ": missing version field");
}

}  // namespace

void save_instance(const IpInstance& instance, const std::string& path) {
  instance.validate();
  json j;
  j["format"] = "cutsel-ip";
  j["version"] = 1;
  j["name"] = instance.name;
  j["n"] = instance.num_vars();
  j["m"] = instance.num_rows();
  j["objective"] = instance.objective;
  Vec flat;
  flat.reserve(static_cast<std::size_t>(instance.num_rows()) * instance.num_vars());
  for (const auto& row : instance.matrix) flat.insert(flat.end(), row.begin(), row.end());
  j["matrix"] = flat;
  j["rhs"] = instance.rhs;
  if (instance.known_ip_optimum) j["known_ip_optimum"] = *instance.known_ip_optimum;
  j["raw_sense"] = instance.raw_sense;
  if (!instance.var_names.empty()) j["var_names"] = instance.var_names;
  write_json(j, path);
}

IpInstance load_instance(const std::string& path) {
  const json j = read_json(path);
  expect_format(j, "cutsel-ip", path);
  IpInstance inst;
  inst.name = j.at("name").get<std::string>();
  const int n = j.at("n").get<int>();
  const int m = j.at("m").get<int>();
  inst.objective = j.at("objective").get<Vec>();
  inst.rhs = j.at("rhs").get<Vec>();
  const Vec flat = j.at("matrix").get<Vec>();
  if (static_cast<int>(inst.objective.size()) != n ||
      static_cast<int>(inst.rhs.size()) != m ||
      flat.size() != static_cast<std::size_t>(n) * m)
    throw std::runtime_error(path + ": inconsistent dimensions");
  inst.matrix.resize(m);
  for (int i = 0; i < m; ++i)
    inst.matrix[i].assign(flat.begin() + static_cast<std::size_t>(i) * n,
                          flat.begin() + static_cast<std::size_t>(i + 1) * n);
  if (j.contains("known_ip_optimum")) inst.known_ip_optimum = j["known_ip_optimum"].get<double>();
  inst.raw_sense = j.value("raw_sense", 1);
  if (j.contains("var_names")) inst.var_names = j["var_names"].get<std::vector<std::string>>();
  inst.validate();
  return inst;
}

void save_manifest(const Manifest& manifest, const std::string& path) {
  json j;
  j["format"] = "cutsel-manifest";
  j["version"] = 1;
  j["train"] = manifest.train;
  j["test"] = manifest.test;
  write_json(j, path);
}

Manifest load_manifest(const std::string& path) {
  const json j = read_json(path);
  expect_format(j, "cutsel-manifest", path);
  Manifest m;
  m.train = j.at("train").get<std::vector<std::string>>();
  m.test = j.at("test").get<std::vector<std::string>>();
  return m;
}

std::vector<IpInstance> load_instances(const std::vector<std::string>& names,
                                       const std::string& manifest_path) {
  const auto dir = std::filesystem::path(manifest_path).parent_path();
  std::vector<IpInstance> out;
  out.reserve(names.size());
  for (const auto& name : names) out.push_back(load_instance((dir / name).string()));
  return out;
}

void save_policy(const PolicyParams& params, const std::string& path) {
  json j;
  j["format"] = "cutsel-policy";
  j["version"] = params.version;
  j["arch"] = to_string(params.arch);
  j["num_vars"] = params.num_vars;
  j["hidden"] = params.attention.hidden_dim;
  j["embed_dim"] = params.attention.output_dim;
  if (params.lstm) j["lstm_hidden"] = params.lstm->hidden_dim;
  j["params"] = params.flatten();
  // Write-then-rename keeps checkpoints valid if interrupted mid-write.
  const std::string tmp = path + ".tmp";
  write_json(j, tmp);
  std::filesystem::rename(tmp, path);
}

PolicyParams load_policy(const std::string& path) {
  const json j = read_json(path);
  expect_format(j, "cutsel-policy", path);
  const auto arch = arch_from_name(j.at("arch").get<std::string>());
  if (!arch) throw std::runtime_error(path + ": unknown architecture tag");
  const int hidden = j.at("hidden").get<int>();
  const int embed_dim = j.at("embed_dim").get<int>();
  PolicyParams params;
  if (*arch == PolicyArch::AttentionOnly) {
    params = PolicyParams::init_attention(j.at("num_vars").get<int>(), hidden, embed_dim, 0);
  } else {
    params = PolicyParams::init_lstm_attention(j.at("lstm_hidden").get<int>(), hidden,
                                               embed_dim, 0);
  }
  params.version = j.at("version").get<int>();
  const Vec theta = j.at("params").get<Vec>();
  if (theta.size() != params.param_count())
    throw std::runtime_error(path + ": parameter vector length mismatch");
  params.assign_flat(theta);
  return params;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "");
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 < row.size() ? "," : "");
    out << "\n";
  }
}

}  // namespace cutsel
