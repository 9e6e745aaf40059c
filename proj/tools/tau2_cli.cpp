#include "tau2/suites.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text;
  else
    write_file(path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for the open tau2 chain"};
  app.set_version_flag("--version", std::string(tau2::kToolVersion));
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  int p = 3, N = 1;
  std::string out_path, csv_path, config_path;
  std::string level = "all";
  double tol_scale = 1.0, corrupt_c = 1.0;

  auto* gen = app.add_subcommand("gen", "generate a random model configuration");
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--p", p, "cyclic representation order, odd >= 3");
  gen->add_option("--N", N, "chain length");
  gen->add_option("--out", out_path, "output JSON path (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the verification suites");
  verify->add_option("config", config_path, "model configuration JSON")->required();
  verify->add_option("--level", level, "algebra|fusion|truncation|all (cumulative)");
  verify->add_option("--tol-scale", tol_scale, "multiply every tolerance");
  verify->add_option("--corrupt-c", corrupt_c,
                     "multiply the T-Q constant c (negative control)");
  verify->add_option("--out", out_path, "write the JSON report here");

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalue curve coefficient table");
  spectrum->add_option("config", config_path, "model configuration JSON")->required();
  spectrum->add_option("--csv", csv_path, "output CSV path (default stdout)");

  auto* tq = app.add_subcommand("tq", "Bethe root table from the T-Q relation");
  tq->add_option("config", config_path, "model configuration JSON")->required();
  tq->add_option("--csv", csv_path, "output CSV path (default stdout)");
  tq->add_option("--corrupt-c", corrupt_c,
                 "multiply the T-Q constant c (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      tau2::ModelConfig cfg = tau2::gen_config(seed, p, N);
      emit(out_path, tau2::config_to_json(cfg) + "\n");
      return 0;
    }

    tau2::ModelConfig cfg = tau2::config_from_json(read_file(config_path));

    if (verify->parsed()) {
      tau2::SuiteOptions opt;
      opt.level = level;
      opt.tol_scale = tol_scale;
      opt.corrupt_c = corrupt_c;
      tau2::RunReport rep = tau2::run_suites(cfg, opt);

      std::cout << "config " << rep.config_digest << "  level " << level << "\n";
      for (const auto& c : rep.checks) {
        std::cout << (c.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(34)
                  << c.anchor << std::scientific << std::setprecision(3)
                  << "residual " << c.residual << "  tol " << c.tolerance;
        if (!c.note.empty()) std::cout << "  [" << c.note << "]";
        std::cout << "\n";
      }
      if (!out_path.empty()) write_file(out_path, rep.to_json(true));

      int failed = 0;
      for (const auto& c : rep.checks)
        if (!c.pass) ++failed;
      if (failed == 0) {
        std::cout << "all " << rep.checks.size() << " checks passed\n";
        return 0;
      }
      std::cout << failed << " of " << rep.checks.size() << " checks failed:";
      for (const auto& c : rep.checks)
        if (!c.pass) std::cout << " " << c.anchor;
      std::cout << "\n";
      return 1;
    }

    if (spectrum->parsed()) {
      emit(csv_path, tau2::spectrum_csv(cfg));
      return 0;
    }
    if (tq->parsed()) {
      emit(csv_path, tau2::tq_csv(cfg, corrupt_c));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
