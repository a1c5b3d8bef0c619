// Command-line front end: closed-form dip tables, Monte Carlo sweeps with
// standard errors, and the verification suite. Times are taken in fs for
// tau_p / delta_t and in ns for the gate, matching the magnitudes of the
// modeled experiment; everything is converted to seconds internally.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "speckledip/analytic.hpp"
#include "speckledip/config.hpp"
#include "speckledip/montecarlo.hpp"
#include "speckledip/records.hpp"
#include "speckledip/verification.hpp"

namespace {

struct SweepFlags {
  double tau_p_fs = 345.0;
  double delta_t_min_fs = -2000.0;
  double delta_t_max_fs = 2000.0;
  int points = 81;
  double gate_ns = 1.0;
  double eta = 0.1;
  double n_mean = 0.0267;
  std::string format = "csv";
  std::string output;
};

void add_sweep_flags(CLI::App* cmd, SweepFlags& f) {
  cmd->add_option("--tau-p-fs", f.tau_p_fs, "Pulse duration tau_p [fs]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--delta-t-min-fs", f.delta_t_min_fs,
                  "Sweep start delay [fs]")
      ->capture_default_str();
  cmd->add_option("--delta-t-max-fs", f.delta_t_max_fs, "Sweep end delay [fs]")
      ->capture_default_str();
  cmd->add_option("--points", f.points, "Number of delay points")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--gate-ns", f.gate_ns, "Coincidence gate [ns]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--eta", f.eta, "Detector quantum efficiency")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--n-mean", f.n_mean, "Mean photons per fiber per pulse")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", f.output, "Write the table to a file");
}

std::vector<double> delay_list(const SweepFlags& f) {
  std::vector<double> delays;
  delays.reserve(f.points);
  if (f.points == 1) {
    delays.push_back(f.delta_t_min_fs * 1e-15);
    return delays;
  }
  const double step =
      (f.delta_t_max_fs - f.delta_t_min_fs) / (f.points - 1);
  for (int i = 0; i < f.points; ++i)
    delays.push_back((f.delta_t_min_fs + step * i) * 1e-15);
  return delays;
}

speckledip::ExperimentConfig config_from(const SweepFlags& f) {
  speckledip::ExperimentConfig cfg;
  cfg.tau_p = f.tau_p_fs * 1e-15;
  cfg.delta_t = std::max(std::abs(f.delta_t_min_fs), std::abs(f.delta_t_max_fs)) * 1e-15;
  cfg.gate = f.gate_ns * 1e-9;
  cfg.eta = f.eta;
  cfg.n_mean = f.n_mean;
  return cfg;
}

void print_warnings(const speckledip::ExperimentConfig& cfg) {
  for (const std::string& w : cfg.warnings())
    std::cerr << "warning: " << w << "\n";
}

int emit(const SweepFlags& f,
         const std::vector<speckledip::OutputRecord>& records) {
  const std::string text = f.format == "json" ? speckledip::to_json(records)
                                              : speckledip::to_csv(records);
  if (f.output.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream os(f.output, std::ios::binary);
  if (!os) {
    std::cerr << "error: cannot open output file '" << f.output << "'\n";
    return 2;
  }
  os << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Classical pseudothermal-light anticorrelation dip: closed forms and "
      "shot-noise Monte Carlo"};
  app.require_subcommand(1);

  SweepFlags analytic_flags;
  CLI::App* analytic_cmd = app.add_subcommand(
      "analytic", "Tabulate the closed-form dip over a delay sweep");
  add_sweep_flags(analytic_cmd, analytic_flags);

  SweepFlags sim_flags;
  std::uint64_t pulses = 1'000'000;
  std::uint64_t seed = 1;
  std::string block = "none";
  int threads = 0;
  bool with_accidentals = false;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Monte Carlo sweep with per-pulse shot-noise detection");
  add_sweep_flags(sim_cmd, sim_flags);
  sim_cmd->add_option("--pulses", pulses, "Pulses per delay point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  sim_cmd->add_option("--block", block, "Block one interferometer arm")
      ->check(CLI::IsMember({"none", "plus", "minus"}))
      ->capture_default_str();
  sim_cmd->add_option("--threads", threads,
                      "Worker threads (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sim_cmd->add_flag("--accidentals", with_accidentals,
                    "Also estimate accidentals from blocked-arm runs");

  std::uint64_t verify_pulses = 1'000'000;
  std::uint64_t verify_seed = 12345;
  int verify_threads = 0;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Run the invariant suite and report PASS/FAIL per check");
  verify_cmd->add_option("--pulses", verify_pulses,
                         "Pulses per delay point in the MC checks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify_seed, "Random seed")
      ->capture_default_str();
  verify_cmd->add_option("--threads", verify_threads,
                         "Worker threads (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analytic_cmd->parsed()) {
      const auto cfg = config_from(analytic_flags);
      cfg.validate();
      print_warnings(cfg);
      const auto delays = delay_list(analytic_flags);
      const auto curve = speckledip::dip_curve(cfg, delays);
      std::vector<speckledip::OutputRecord> records;
      records.reserve(curve.size());
      for (const auto& p : curve)
        records.push_back(speckledip::record_from_prediction(p));
      return emit(analytic_flags, records);
    }

    if (sim_cmd->parsed()) {
      speckledip::RunSpec spec;
      spec.config = config_from(sim_flags);
      spec.n_pulses = pulses;
      spec.seed = seed;
      if (block == "plus") spec.blocked_arm = speckledip::BlockedArm::plus_blocked;
      if (block == "minus") spec.blocked_arm = speckledip::BlockedArm::minus_blocked;
      spec.validate();
      print_warnings(spec.config);

      const auto delays = delay_list(sim_flags);
      auto sweep = speckledip::run_sweep(spec, delays, threads);
      if (with_accidentals && spec.blocked_arm == speckledip::BlockedArm::none) {
        const auto acc = speckledip::estimate_accidentals(spec, delays, threads);
        for (std::size_t j = 0; j < sweep.size(); ++j)
          sweep[j].accidentals = acc[j];
      }
      std::vector<speckledip::OutputRecord> records;
      records.reserve(sweep.size());
      for (const auto& r : sweep)
        records.push_back(speckledip::record_from_sweep(r));
      return emit(sim_flags, records);
    }

    // verify
    speckledip::VerifyOptions opts;
    opts.mc_pulses = verify_pulses;
    opts.seed = verify_seed;
    opts.threads = verify_threads;
    const auto checks = speckledip::run_verification(opts);
    bool all_pass = true;
    for (const auto& c : checks) {
      std::printf("%-52s measured=%- .6g target=%- .6g tol=%-9s %s\n",
                  c.name.c_str(), c.measured, c.target, c.tolerance.c_str(),
                  c.pass ? "PASS" : "FAIL");
      all_pass = all_pass && c.pass;
    }
    std::printf("%s (%zu checks)\n", all_pass ? "ALL PASS" : "FAILURES",
                checks.size());
    return all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
