// Acceptance gate: runs every verification suite at the shipped tolerances on
// a fixed seeded configuration and prints one line per criterion.
#include "tau2/suites.hpp"

#include <iomanip>
#include <iostream>
#include <set>
#include <string>

int main() {
  using namespace tau2;

  const ModelConfig cfg = gen_config(424242, 3, 2);
  SuiteOptions opt;  // level = all, tol_scale = 1, honest c
  RunReport rep;
  try {
    rep = run_suites(cfg, opt);
  } catch (const std::exception& e) {
    std::cerr << "suite run aborted: " << e.what() << "\n";
    return 1;
  }

  // these two are negative controls: they pass when the residual is large
  const std::set<std::string> inverted{"tq.corrupt_c", "degenerate.generic_distance"};

  struct Criterion {
    const char* prefix;
    const char* title;
    const char* phase;
    double budget_s;
  };
  const Criterion crits[] = {
      {"algebra.", "exchange and reflection identities", "algebra", 5.0},
      {"transfer.", "transfer matrix properties", "transfer", 30.0},
      {"qdet.", "quantum determinants", "qdet", 0.0},
      {"averages.", "average-value reduction", "averages", 0.0},
      {"fusion.", "fused hierarchy and determinant form", "fusion", 0.0},
      {"truncation.", "spin-3/2 truncation at p = 3", "truncation", 120.0},
      {"tq.", "inhomogeneous T-Q relation", "tq", 120.0},
      {"degenerate.", "degenerate-surface diagnostics", "degenerate", 0.0},
      {"determinism.", "deterministic artifacts", "determinism", 0.0},
  };

  bool all_ok = true;
  int num = 0;
  for (const auto& cr : crits) {
    ++num;
    bool ok = true;
    int count = 0;
    double worst_ratio = 0.0;
    std::string worst_anchor = "-", failing;
    for (const auto& c : rep.checks) {
      if (c.anchor.rfind(cr.prefix, 0) != 0) continue;
      ++count;
      ok = ok && c.pass;
      if (!c.pass) failing += " " + c.anchor;
      double ratio = inverted.count(c.anchor)
                         ? c.tolerance / std::max(c.residual, 1e-300)
                         : c.residual / std::max(c.tolerance, 1e-300);
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        worst_anchor = c.anchor;
      }
    }
    double secs = rep.timing_s.count(cr.phase) ? rep.timing_s.at(cr.phase) : 0.0;
    if (count == 0) {
      ok = false;
      failing += " (no checks ran)";
    }
    if (cr.budget_s > 0 && secs >= cr.budget_s) {
      ok = false;
      failing += " (over time budget)";
    }
    all_ok = all_ok && ok;

    std::cout << "criterion " << num << " [" << (ok ? "PASS" : "FAIL") << "] "
              << std::left << std::setw(38) << cr.title << " tightest margin "
              << std::scientific << std::setprecision(2) << worst_ratio << " of tol at "
              << worst_anchor << " (" << count << " checks, " << std::fixed
              << std::setprecision(1) << secs << "s";
    if (cr.budget_s > 0) std::cout << ", budget " << cr.budget_s << "s";
    std::cout << ")";
    if (!failing.empty()) std::cout << "  failing:" << failing;
    std::cout << "\n";
  }

  std::cout << (all_ok ? "acceptance: all criteria satisfied"
                       : "acceptance: criteria failed")
            << "  [config " << rep.config_digest << "]\n";
  return all_ok ? 0 : 1;
}
