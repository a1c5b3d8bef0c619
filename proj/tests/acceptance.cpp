// Acceptance suite: end-to-end statistical and analytic gates for the
// whole library, one PASS/FAIL line per criterion. Monte Carlo criteria
// run at a pinned seed; every tolerance is stated next to its check.

#include <sys/wait.h>

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "speckledip/analytic.hpp"
#include "speckledip/config.hpp"
#include "speckledip/exact_probability.hpp"
#include "speckledip/fields.hpp"
#include "speckledip/montecarlo.hpp"
#include "speckledip/records.hpp"

using namespace speckledip;

namespace {

constexpr std::uint64_t kSeed = 42;

int g_failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] %2d. %-38s %s\n", pass ? "PASS" : "FAIL", index, name,
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// z-score with the reference-rate SE as a floor, so zero-count bins cannot
// fake an infinite significance.
double zscore(const Estimate& e, double ref, std::uint64_t n) {
  const double se_ref = std::sqrt(ref * (1.0 - ref) / static_cast<double>(n));
  return std::abs(e.value - ref) / std::max(e.se, se_ref);
}

struct Pool {
  double value = 0.0;
  double se = 0.0;
};

Pool pool(const std::vector<Estimate>& parts) {
  Pool p;
  double var = 0.0;
  for (const Estimate& e : parts) {
    p.value += e.value;
    var += e.se * e.se;
  }
  const double k = static_cast<double>(parts.size());
  p.value /= k;
  p.se = std::sqrt(var) / k;
  return p;
}

std::string run_command(const std::string& cmd, int& exit_code) {
  std::string output;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) {
    exit_code = -1;
    return output;
  }
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  const int status = pclose(pipe);
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return output;
}

}  // namespace

int main() {
  ExperimentConfig cfg;  // tau_p 345 fs, eta 0.1, defaults otherwise
  cfg.n_mean = 0.05;

  // 1. Raw dip visibility is exactly 1/5.
  {
    const double s2 = cfg.eta * cfg.eta * cfg.n_mean * cfg.n_mean;
    const double v = visibility(1.5 * s2, s2).value();
    report(1, "raw dip visibility = 0.2", std::abs(v - 0.2) <= 1e-12,
           fmt("measured %.17g, tolerance 1e-12", v));
  }

  // 2. Corrected dip: zero floor and unit visibility.
  {
    const double floor =
        corrected_coincidence_rate(cfg.eta, cfg.n_mean, 0.0, cfg.tau_p);
    const double shoulder = corrected_coincidence_rate(
        cfg.eta, cfg.n_mean, 50.0 * cfg.tau_p, cfg.tau_p);
    const double v = visibility(shoulder, floor).value();
    report(2, "corrected dip floor 0, visibility 1",
           floor == 0.0 && v == 1.0,
           fmt("floor %.17g, visibility %.17g", floor, v));
  }

  // 3. Overlap quadrature matches exp(-dt^2/tau^2) on 50 delays in
  //    [0, 10 tau_p], absolute tolerance 1e-9.
  {
    const PulseEnvelope env(cfg.tau_p);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double ratio = k == 0 ? 0.0 : 1e-2 * std::pow(1e3, (k - 1) / 48.0);
      const double dt = ratio * cfg.tau_p;
      const TimeGrid grid = TimeGrid::pulse_support(cfg.tau_p, dt);
      worst = std::max(worst,
                       std::abs(overlap_magnitude_sq_numeric(env, dt, grid) -
                                overlap_magnitude_sq(dt, cfg.tau_p)));
    }
    report(3, "overlap oracle within 1e-9", worst <= 1e-9,
           fmt("max |quadrature - closed| = %.3g", worst));
  }

  // Shared Monte Carlo run for criteria 4-7: tau_p 345 fs, eta 0.1,
  // N 0.05, 1e6 pulses per point, nine delays across +-2 ps.
  RunSpec spec;
  spec.config = cfg;
  spec.n_pulses = 1'000'000;
  spec.seed = kSeed;
  std::vector<double> delays;
  for (int i = -4; i <= 4; ++i) delays.push_back(i * 0.5e-12);
  const auto sweep = run_sweep(spec, delays);
  const auto accidentals = estimate_accidentals(spec, delays);
  std::vector<std::size_t> shoulder_rows;  // |dt| >= 1.5 ps
  for (std::size_t j = 0; j < delays.size(); ++j)
    if (std::abs(delays[j]) >= 1.5e-12) shoulder_rows.push_back(j);

  // 4. Coincidence rates within 3 SE at every delay; bottom/shoulder ratio
  //    within 3 propagated SE of 2/3.
  {
    double worst = 0.0;
    for (const SweepResult& r : sweep)
      worst = std::max(
          worst, zscore(r.coincidences, r.analytic_ref.coincidence_rate,
                        r.n_pulses));

    std::vector<Estimate> sh;
    for (std::size_t j : shoulder_rows) sh.push_back(sweep[j].coincidences);
    const Pool shoulder = pool(sh);
    const Estimate& bottom = sweep[4].coincidences;
    const double ratio = bottom.value / shoulder.value;
    const double se_ratio =
        ratio * std::hypot(bottom.se / bottom.value,
                           shoulder.se / shoulder.value);
    const bool ratio_ok = std::abs(ratio - 2.0 / 3.0) <= 3.0 * se_ratio;
    report(4, "MC dip reproduction (9 points, 1e6)",
           worst <= 3.0 && ratio_ok,
           fmt("max |z| = %.2f, bottom/shoulder = %.4f +- %.4f", worst, ratio,
               se_ratio));
  }

  // 5. Singles flat: within 3 SE of eta N everywhere, no monotone trend.
  {
    const double ref = singles_rate(cfg.eta, cfg.n_mean);
    double worst = 0.0;
    for (const SweepResult& r : sweep)
      worst = std::max({worst, zscore(r.singles_1, ref, r.n_pulses),
                        zscore(r.singles_2, ref, r.n_pulses)});

    // Least-squares slope against delay, scaled to a z-score.
    auto slope_z = [&](auto pick) {
      double sxx = 0.0, sxy1 = 0.0;
      double mean_x = 0.0, mean_y = 0.0;
      for (std::size_t j = 0; j < delays.size(); ++j) {
        mean_x += delays[j];
        mean_y += pick(sweep[j]);
      }
      mean_x /= delays.size();
      mean_y /= delays.size();
      for (std::size_t j = 0; j < delays.size(); ++j) {
        sxx += (delays[j] - mean_x) * (delays[j] - mean_x);
        sxy1 += (delays[j] - mean_x) * (pick(sweep[j]) - mean_y);
      }
      const double slope = sxy1 / sxx;
      const double sigma =
          std::sqrt(ref * (1.0 - ref) / static_cast<double>(spec.n_pulses));
      const double se_slope = sigma / std::sqrt(sxx);
      return std::abs(slope) / se_slope;
    };
    const double z1 = slope_z([](const SweepResult& r) { return r.singles_1.value; });
    const double z2 = slope_z([](const SweepResult& r) { return r.singles_2.value; });
    report(5, "singles flat at eta*N", worst <= 3.0 && z1 <= 3.0 && z2 <= 3.0,
           fmt("max |z| = %.2f, slope z = (%.2f, %.2f)", worst, z1, z2));
  }

  // 6. Accidentals near eta^2 N^2; corrected curve vanishes at zero delay
  //    and has unit visibility within errors.
  {
    const double acc_target =
        cfg.eta * cfg.eta * cfg.n_mean * cfg.n_mean;
    const Pool acc = pool(accidentals);
    const double se_floor = std::sqrt(
        acc_target / (static_cast<double>(spec.n_pulses) * delays.size()));
    const double z_acc = std::abs(acc.value - acc_target) /
                         std::max(acc.se, se_floor);

    std::vector<Estimate> corrected(delays.size());
    for (std::size_t j = 0; j < delays.size(); ++j)
      corrected[j] = {sweep[j].coincidences.value - accidentals[j].value,
                      std::hypot(sweep[j].coincidences.se, accidentals[j].se)};
    const Estimate& floor = corrected[4];
    const double z_floor = std::abs(floor.value) / floor.se;

    std::vector<Estimate> sh;
    for (std::size_t j : shoulder_rows) sh.push_back(corrected[j]);
    const Pool shoulder = pool(sh);
    const double a = shoulder.value, b = floor.value;
    const double v = (a - b) / (a + b);
    const double se_v =
        2.0 / ((a + b) * (a + b)) * std::hypot(b * shoulder.se, a * floor.se);
    const bool ok = z_acc <= 3.0 && z_floor <= 3.0 &&
                    std::abs(v - 1.0) <= 3.0 * se_v;
    report(6, "accidental subtraction", ok,
           fmt("acc z = %.2f, corrected(0) z = %.2f, visibility %.2f +- %.2f",
               z_acc, z_floor, v, se_v));
  }

  // 7. Peak ratio: shoulder coincidences over singles near 3 eta N / 2,
  //    both in the shared run and at the reported N = 0.0267.
  {
    std::vector<Estimate> sh, singles;
    for (std::size_t j : shoulder_rows) {
      sh.push_back(sweep[j].coincidences);
      singles.push_back(sweep[j].singles_1);
      singles.push_back(sweep[j].singles_2);
    }
    const Pool c = pool(sh);
    const Pool s = pool(singles);
    const double ratio = c.value / s.value;
    const double se_ratio =
        ratio * std::hypot(c.se / c.value, s.se / s.value);
    const double target = peak_ratio(cfg.eta, cfg.n_mean);
    const bool main_ok = std::abs(ratio - target) <= 3.0 * se_ratio;

    RunSpec paper = spec;
    paper.config.n_mean = 0.0267;
    paper.n_pulses = 50'000'000;
    const std::vector<double> one_delay = {2e-12};
    const auto shoulder_run = run_sweep(paper, one_delay);
    const Estimate& cc = shoulder_run[0].coincidences;
    const Estimate s1 = shoulder_run[0].singles_1;
    const double r2 = cc.value / s1.value;
    const double se2 = r2 * std::hypot(std::max(cc.se, 1e-300) / cc.value,
                                       s1.se / s1.value);
    const double target2 = peak_ratio(paper.config.eta, paper.config.n_mean);
    const bool paper_ok = std::abs(r2 - target2) <= 3.0 * se2;
    report(7, "peak ratio 3 eta N / 2", main_ok && paper_ok,
           fmt("N=0.05: %.5f vs %.5f; N=0.0267: %.5f vs %.5f (~0.004)", ratio,
               target, r2, target2));
  }

  // 8. Moment factoring at a million samples, five standard errors.
  {
    bool ok = true;
    double v2 = 0.0, v4 = 0.0;
    for (const MomentCheck& m : moment_check(kSeed, 1.0, 1'000'000)) {
      ok = ok && std::abs(m.value - m.target) <= 5.0 * m.se;
      if (m.name == "<|v+|^2>") v2 = m.value;
      if (m.name == "<|v+|^4>") v4 = m.value;
    }
    report(8, "Gaussian moment factoring", ok,
           fmt("<|v|^2> = %.4f (target 1), <|v|^4> = %.4f (target 2)", v2,
               v4));
  }

  // 9. Oracle chain: the exact detection probability recovers the
  //    closed-form dip as N -> 0, and the Monte Carlo matches the exact
  //    oracle at N = 0.5 where the closed form is visibly wrong.
  {
    bool small_ok = true;
    double worst_dev = 0.0;
    for (double n_small : {1e-3, 1e-4}) {
      ExperimentConfig c = cfg;
      c.n_mean = n_small;
      for (double r : {0.0, 1.0}) {
        const double exact =
            exact_coincidence_probability(c, r * c.tau_p);
        const double low = coincidence_rate(c.eta, n_small, r * c.tau_p,
                                            c.tau_p);
        const double dev = std::abs(exact / low - 1.0);
        worst_dev = std::max(worst_dev, dev / n_small);
        small_ok = small_ok && dev <= 10.0 * n_small;
      }
    }

    RunSpec hot = spec;
    hot.config.eta = 0.4;
    hot.config.n_mean = 0.5;
    const std::vector<double> pts = {0.0, 2e-12};
    const auto hot_run = run_sweep(hot, pts);
    bool mc_ok = true;
    double z_worst = 0.0, eq13_z = 0.0;
    for (const SweepResult& r : hot_run) {
      const double exact =
          exact_coincidence_probability(hot.config, r.delta_t);
      const double z = zscore(r.coincidences, exact, r.n_pulses);
      z_worst = std::max(z_worst, z);
      mc_ok = mc_ok && z <= 3.0;
      eq13_z = std::max(
          eq13_z, zscore(r.coincidences, r.analytic_ref.coincidence_rate,
                         r.n_pulses));
    }
    report(9, "oracle chain across flux regimes", small_ok && mc_ok,
           fmt("low-flux dev <= %.2f*N; N=0.5: z(exact) = %.2f, z(closed "
               "form) = %.0f",
               worst_dev, z_worst, eq13_z));
  }

  // 10. Energy conservation over 1e4 random draws and times, 1e-12
  //     relative.
  {
    const PulseEnvelope env(cfg.tau_p);
    double worst = 0.0;
    for (int i = 0; i < 10'000; ++i) {
      PulseRng rng(kSeed ^ 0xabcdu, i);
      const SpeckleDraw d = sample_speckle(rng, 2.3);
      Substream misc = rng.lane(9);
      const double t = (2.0 * misc.uniform() - 1.0) * 5.0 * cfg.tau_p;
      const double dt = (2.0 * misc.uniform() - 1.0) * 4.0 * cfg.tau_p;
      const ArmFields e = arm_fields(env, d, dt, t);
      const PortIntensities p = output_intensities(env, d, dt, t);
      const double rhs = std::norm(e.plus) + std::norm(e.minus);
      if (rhs > 0.0)
        worst = std::max(worst, std::abs(p.port1 + p.port2 - rhs) / rhs);
    }
    report(10, "energy conservation", worst <= 1e-12,
           fmt("max relative residual %.3g", worst));
  }

  // 11. cmd_simulate determinism: byte-identical output for identical
  //     flags, independent of worker count.
  {
    const std::string base =
        std::string(SPECKLEDIP_CLI_PATH) +
        " simulate --points 3 --pulses 50000 --seed 7 --n-mean 0.05";
    int rc1 = 0, rc2 = 0, rc3 = 0;
    const std::string one = run_command(base + " --threads 1", rc1);
    const std::string two = run_command(base + " --threads 2", rc2);
    const std::string rerun = run_command(base + " --threads 2", rc3);
    const bool ok = rc1 == 0 && rc2 == 0 && rc3 == 0 && !one.empty() &&
                    one == two && two == rerun;
    report(11, "cmd_simulate determinism", ok,
           fmt("%zu bytes, identical across reruns and 1 vs 2 workers",
               one.size()));
  }

  if (g_failures == 0) {
    std::printf("ACCEPTANCE: all 11 criteria passed\n");
    return 0;
  }
  std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
  return 1;
}
