#pragma once
// Verification-suite orchestration: every acceptance check, grouped into the
// nine criteria, producing RunReports and CSV tables.
#include "tau2/config_io.hpp"
#include "tau2/tq.hpp"

namespace tau2 {

struct SuiteOptions {
  std::string level = "all";  // algebra | fusion | truncation | all
  double tol_scale = 1.0;
  double corrupt_c = 1.0;
};

// criterion runners; base_seed controls the derived random configs
std::vector<CheckResult> run_algebra_suite(const ModelConfig& cfg, double tol_scale);
std::vector<CheckResult> run_transfer_suite(const ModelConfig& cfg, double tol_scale);
std::vector<CheckResult> run_qdet_suite(const ModelConfig& cfg, double tol_scale);
std::vector<CheckResult> run_average_suite(const ModelConfig& cfg, double tol_scale);
std::vector<CheckResult> run_fusion_suite(const ModelConfig& cfg, double tol_scale);
std::vector<CheckResult> run_truncation_suite(const ModelConfig& cfg, double tol_scale);
std::vector<CheckResult> run_tq_suite(const ModelConfig& cfg, double tol_scale,
                                      double corrupt_c);
std::vector<CheckResult> run_degenerate_suite(const ModelConfig& cfg, double tol_scale);
std::vector<CheckResult> run_determinism_suite(const ModelConfig& cfg);

RunReport run_suites(const ModelConfig& cfg, const SuiteOptions& opt);

// CSV tables (deterministic formatting)
std::string spectrum_csv(const ModelConfig& cfg);
std::string tq_csv(const ModelConfig& cfg, double corrupt_c = 1.0);

}  // namespace tau2
