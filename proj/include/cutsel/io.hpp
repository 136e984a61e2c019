#pragma once

#include <string>
#include <vector>

#include "cutsel/policy.hpp"
#include "cutsel/types.hpp"

namespace cutsel {

/// Shortest round-trip decimal formatting (std::to_chars); integer-valued
/// data survives write/read bit-exact and output is locale-independent.
std::string format_double(double v);

// Instance files: one self-describing JSON object per instance with fields
// name, n, m, objective, matrix (row-major), rhs, optional known_ip_optimum.
void save_instance(const IpInstance& instance, const std::string& path);
IpInstance load_instance(const std::string& path);

/// Dataset manifest listing train/test instance files (paths relative to
/// the manifest's directory).
struct Manifest {
  std::vector<std::string> train;
  std::vector<std::string> test;
};

void save_manifest(const Manifest& manifest, const std::string& path);
Manifest load_manifest(const std::string& path);
std::vector<IpInstance> load_instances(const std::vector<std::string>& names,
                                       const std::string& manifest_path);

// Policy weights: architecture tag, dimension metadata and the flat
// parameter vector in the documented layout; version field mandatory.
void save_policy(const PolicyParams& params, const std::string& path);
PolicyParams load_policy(const std::string& path);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace cutsel
