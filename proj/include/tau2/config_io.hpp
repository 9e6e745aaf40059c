#pragma once
// JSON config serialization, report types, digests, CSV table writers.
#include "tau2/weyl.hpp"
#include <map>

namespace tau2 {

inline constexpr const char* kToolVersion = "tau2 0.1.0";

// complex numbers serialize as [re, im]
std::string config_to_json(const ModelConfig& cfg);
// throws std::runtime_error with a parse diagnostic on malformed input
ModelConfig config_from_json(const std::string& text);

std::string config_digest(const ModelConfig& cfg);  // fnv1a hex of canonical JSON

struct CheckResult {
  std::string name;    // human-readable
  std::string anchor;  // stable id, e.g. "algebra.rll"
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct RunReport {
  std::string config_digest;
  std::string version = kToolVersion;
  std::vector<CheckResult> checks;             // sorted by anchor
  std::map<std::string, double> timing_s;      // per phase; excluded from identity
  bool all_pass() const;
  std::string to_json(bool include_timing = true) const;
};

}  // namespace tau2
