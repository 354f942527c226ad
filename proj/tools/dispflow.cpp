// dispflow: command-line driver.
//
//   dispflow run <config>
//   dispflow check-identities [--trials N] [--seed S]
//   dispflow convergence <config> --levels L
//
// Exit status: 0 success, 1 validation error, 2 numerical blow-up.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dispflow/dispflow.hpp"
#include "dispflow/harness/config.hpp"
#include "dispflow/harness/experiments.hpp"
#include "dispflow/harness/output.hpp"

namespace fs = std::filesystem;
using namespace dispflow;
using namespace dispflow::harness;

namespace {

constexpr const char* kConfigHelp = R"(Config file: one `key = value` per line, `#` starts a comment.
  mode          geometric | complex | compare-frame | check-identities | convergence (required)
  N             grid size, power of two in [8, 4096] (required)
  t_end         final time >= 0 (required)
  a, b, K       flow constants (defaults 0, 0, 1)
  dt            fixed time step; otherwise cfl_safety times the stability limit
  cfl_safety    in (0, 1], default 0.5
  ic            initial condition, e.g. `perturbed_great_circle eps=0.05 mode_k=3`
                curves: great_circle, perturbed_great_circle, random_smooth decay=
                fields: plane_wave amp= k=, gaussian amp= width=, sech amp= width=
  seed          RNG seed, default 0
  output_dir    default `.`; the DISPFLOW_OUT environment variable overrides it
  sample_every  default 100
  scheme        spectral | central-2 | central-4, default spectral
  renormalize   true | false, default true)";

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  RunConfig cfg = parse_config(ss.str());
  if (const char* env = std::getenv("DISPFLOW_OUT"); env && *env) cfg.output_dir = env;
  fs::create_directories(cfg.output_dir);
  return cfg;
}

std::string out_path(const RunConfig& cfg, const char* name) { return (fs::path(cfg.output_dir) / name).string(); }

std::vector<EnergyReport> reports_of(const std::vector<TrajectorySample>& samples) {
  std::vector<EnergyReport> r;
  for (const auto& s : samples) r.push_back(s.report);
  return r;
}

void write_compare(const std::string& path, const std::vector<FrameComparisonRow>& rows) {
  std::vector<std::string> lines;
  for (const auto& r : rows) {
    lines.push_back(harness::detail::csv_row({r.time, r.modulus_gap, r.e1_gap, r.e2_gap, r.holonomy}));
  }
  harness::detail::write_lines(path, "t,modulus_gap,e1_gap,e2_gap,holonomy", lines);
}

void write_convergence(const std::string& path, const std::vector<ConvergenceRow>& rows) {
  std::vector<std::string> lines;
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const double order = i == 0 ? std::nan("") : observed_order(rows[i - 1].e1_drift, r.e1_drift);
    lines.push_back(harness::detail::csv_row({double(r.n), r.dt, double(r.steps), r.l2_drift, r.e1_drift,
                                              order, r.max_f_ratio, r.max_renorm_displacement}));
  }
  harness::detail::write_lines(
      path, "N,dt,steps,l2_drift,e1_drift,e1_order,max_f_ratio,max_renorm_displacement", lines);
}

void print_identities(const IdentityReport& r) {
  std::printf("trials                 %d\n", r.trials);
  std::printf("max rel err (test1)    %.3e\n", r.max_rel_err_test1);
  std::printf("max rel err (test2)    %.3e\n", r.max_rel_err_test2);
  std::printf("hirota residual        %.3e\n", r.hirota_conj_coefficient);
}

int do_run(const std::string& path) {
  const RunConfig cfg = load_config(path);
  switch (cfg.mode) {
    case Mode::geometric: {
      try {
        const auto samples = run_geometric(cfg);
        emit_timeseries(out_path(cfg, "timeseries.csv"), reports_of(samples));
        const auto& last = samples.back().state.curve;
        emit_q_field(out_path(cfg, "q_final.csv"), extract_q(last, build_parallel_frame(last, cfg.scheme), cfg.scheme));
      } catch (const RunBlowUp& e) {
        if (!e.partial().empty()) emit_timeseries(out_path(cfg, "timeseries.csv"), reports_of(e.partial()));
        throw;
      }
      break;
    }
    case Mode::complex: {
      const auto samples = run_complex_mode(cfg);
      std::vector<ComplexReport> reports;
      for (const auto& s : samples) reports.push_back(s.report);
      emit_timeseries(out_path(cfg, "timeseries.csv"), reports);
      emit_q_field(out_path(cfg, "q_final.csv"), samples.back().q);
      break;
    }
    case Mode::compare_frame:
      write_compare(out_path(cfg, "compare_frame.csv"), compare_frame(cfg));
      break;
    case Mode::check_identities:
      print_identities(check_identities(100, cfg.seed, cfg.n));
      break;
    case Mode::convergence:
      write_convergence(out_path(cfg, "convergence.csv"), run_convergence(cfg, 3));
      break;
  }
  std::printf("wrote results to %s\n", cfg.output_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Third-order dispersive curve flow on the sphere"};
  app.footer(kConfigHelp);
  app.require_subcommand(1);

  std::string run_path;
  auto* run_cmd = app.add_subcommand("run", "Run the experiment described by a config file");
  run_cmd->add_option("config", run_path, "config file")->required();

  int trials = 100;
  std::uint64_t seed = 0;
  auto* id_cmd = app.add_subcommand("check-identities", "Check the parameter-map functional identities");
  id_cmd->add_option("--trials", trials, "random draws")->check(CLI::PositiveNumber);
  id_cmd->add_option("--seed", seed, "RNG seed");

  std::string conv_path;
  int levels = 3;
  auto* conv_cmd = app.add_subcommand("convergence", "Refinement study N, 2N, 4N, ...");
  conv_cmd->add_option("config", conv_path, "config file")->required();
  conv_cmd->add_option("--levels", levels, "number of grids")->check(CLI::Range(1, 10));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*run_cmd) return do_run(run_path);
    if (*id_cmd) {
      print_identities(check_identities(trials, seed));
      return 0;
    }
    if (*conv_cmd) {
      const RunConfig cfg = load_config(conv_path);
      const auto rows = run_convergence(cfg, levels);
      write_convergence(out_path(cfg, "convergence.csv"), rows);
      for (const auto& r : rows) {
        std::printf("N=%-5d dt=%.3e l2_drift=%.3e e1_drift=%.3e max_f_ratio=%.4g\n", r.n, r.dt, r.l2_drift,
                    r.e1_drift, r.max_f_ratio);
      }
      return 0;
    }
  } catch (const BlowUpError& e) {
    std::fprintf(stderr, "blow-up: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
