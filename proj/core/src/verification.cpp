#include "speckledip/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "speckledip/analytic.hpp"
#include "speckledip/config.hpp"
#include "speckledip/exact_probability.hpp"
#include "speckledip/fields.hpp"
#include "speckledip/montecarlo.hpp"

namespace speckledip {

namespace {

CheckResult abs_check(std::string name, double measured, double target,
                      double tol) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0e abs", tol);
  return {std::move(name), measured, target, buf,
          std::abs(measured - target) <= tol};
}

CheckResult sigma_check(std::string name, double measured, double target,
                        double se, double n_sigma) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0f SE", n_sigma);
  const double slack = n_sigma * se;
  return {std::move(name), measured, target, buf,
          std::abs(measured - target) <= slack};
}

struct Pooled {
  double value = 0.0;
  double se = 0.0;
};

// Equal-weight pool of independent estimates.
Pooled pool(const std::vector<Estimate>& parts) {
  Pooled p;
  double var = 0.0;
  for (const Estimate& e : parts) {
    p.value += e.value;
    var += e.se * e.se;
  }
  const double n = static_cast<double>(parts.size());
  p.value /= n;
  p.se = std::sqrt(var) / n;
  return p;
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::vector<CheckResult> out;
  ExperimentConfig cfg;  // nominal parameters
  const double eta = cfg.eta;
  const double n = cfg.n_mean;
  const double s2 = eta * eta * n * n;

  // Closed-form identities.
  out.push_back(abs_check("raw dip visibility (shoulder vs bottom)",
                          visibility(1.5 * s2, s2).value(), 0.2, 1e-12));
  out.push_back(abs_check(
      "corrected dip floor at zero delay",
      corrected_coincidence_rate(eta, n, 0.0, cfg.tau_p), 0.0, 0.0));
  out.push_back(abs_check("corrected dip visibility",
                          visibility(0.5 * s2, 0.0).value(), 1.0, 1e-15));
  out.push_back(abs_check(
      "dip bottom over shoulder",
      coincidence_rate(eta, n, 0.0, cfg.tau_p) /
          coincidence_rate(eta, n, 1000.0 * cfg.tau_p, cfg.tau_p),
      2.0 / 3.0, 1e-12));
  out.push_back(abs_check(
      "peak ratio times singles equals shoulder rate",
      peak_ratio(eta, n) * singles_rate(eta, n) -
          coincidence_rate(eta, n, 1000.0 * cfg.tau_p, cfg.tau_p),
      0.0, 1e-18));
  out.push_back(abs_check(
      "coherence length at nominal geometry (m)",
      coherence_length(cfg.wavelength, cfg.source_distance,
                       cfg.source_diameter),
      3.4666666666666666e-5, 1e-12));

  // Overlap integral: quadrature against the closed form on 50 delays.
  {
    const PulseEnvelope env(cfg.tau_p);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double ratio =
          k == 0 ? 0.0 : 1e-2 * std::pow(1e3, (k - 1) / 48.0);  // up to 10
      const double dt = ratio * cfg.tau_p;
      const TimeGrid grid = TimeGrid::pulse_support(cfg.tau_p, dt);
      const double numeric = overlap_magnitude_sq_numeric(env, dt, grid);
      const double closed = overlap_magnitude_sq(dt, cfg.tau_p);
      worst = std::max(worst, std::abs(numeric - closed));
    }
    out.push_back(abs_check("overlap quadrature vs closed form (max |diff|)",
                            worst, 0.0, 1e-9));
  }

  // Circular-Gaussian moments of the speckle sampler.
  for (const MomentCheck& m : moment_check(options.seed, 1.0, 1'000'000))
    out.push_back(sigma_check("moment " + m.name, m.value, m.target,
                              std::max(m.se, 1e-300), 5.0));

  // Exact detection oracle: low-flux limit and the zero-delay closed form.
  for (double small_n : {1e-3, 1e-4}) {
    ExperimentConfig c = cfg;
    c.n_mean = small_n;
    const double exact = exact_coincidence_probability(c, 0.0);
    const double low_flux = coincidence_rate(c.eta, small_n, 0.0, c.tau_p);
    out.push_back(abs_check(
        "exact oracle over low-flux form, N=" + std::to_string(small_n),
        exact / low_flux, 1.0, 10.0 * small_n));
  }
  {
    ExperimentConfig c = cfg;
    c.eta = 0.4;
    c.n_mean = 0.5;
    const double g = c.eta * c.n_mean;
    const double closed = (g / (1.0 + g)) * (g / (1.0 + g));
    out.push_back(abs_check("exact oracle at zero delay vs closed form",
                            exact_coincidence_probability(c, 0.0), closed,
                            1e-9));
  }

  // Energy conservation on random draws and times.
  {
    const PulseEnvelope env(cfg.tau_p);
    double worst = 0.0;
    for (int i = 0; i < 10'000; ++i) {
      PulseRng rng(options.seed ^ 0x5eedu, i);
      SpeckleDraw d = sample_speckle(rng, 1.7);
      Substream misc = rng.lane(7);
      const double t = (2.0 * misc.uniform() - 1.0) * 4.0 * cfg.tau_p;
      const double dt = (2.0 * misc.uniform() - 1.0) * 3.0 * cfg.tau_p;
      const ArmFields e = arm_fields(env, d, dt, t);
      const PortIntensities ports = output_intensities(env, d, dt, t);
      const double lhs = ports.port1 + ports.port2;
      const double rhs = std::norm(e.plus) + std::norm(e.minus);
      if (rhs > 0.0)
        worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
    out.push_back(abs_check("energy conservation (max relative residual)",
                            worst, 0.0, 1e-12));
  }

  // Monte Carlo block: dip, flat singles, accidentals, corrected visibility.
  {
    RunSpec spec;
    spec.config = cfg;
    spec.config.n_mean = 0.05;
    spec.n_pulses = options.mc_pulses;
    spec.seed = options.seed;
    const std::vector<double> delays = {-2e-12, -1e-12, 0.0, 1e-12, 2e-12};
    const auto sweep = run_sweep(spec, delays, options.threads);
    const auto accidentals =
        estimate_accidentals(spec, delays, options.threads);

    double worst_c12 = 0.0, worst_singles = 0.0;
    for (const SweepResult& r : sweep) {
      const double ref = r.analytic_ref.coincidence_rate;
      const double se_ref =
          std::sqrt(ref * (1.0 - ref) / static_cast<double>(r.n_pulses));
      worst_c12 = std::max(worst_c12,
                           std::abs(r.coincidences.value - ref) /
                               std::max(r.coincidences.se, se_ref));
      const double sref = r.analytic_ref.singles_rate;
      const double se_s =
          std::sqrt(sref * (1.0 - sref) / static_cast<double>(r.n_pulses));
      worst_singles =
          std::max({worst_singles,
                    std::abs(r.singles_1.value - sref) /
                        std::max(r.singles_1.se, se_s),
                    std::abs(r.singles_2.value - sref) /
                        std::max(r.singles_2.se, se_s)});
    }
    out.push_back({"MC dip vs closed form (max |z| over delays)", worst_c12,
                   0.0, "3 SE", worst_c12 <= 3.0});
    out.push_back({"MC singles vs eta*N (max |z|)", worst_singles, 0.0,
                   "3 SE", worst_singles <= 3.0});

    // Reference-rate SE floors keep the z-scores honest when a small
    // pulse budget leaves near-zero counts in a bin.
    const double n_p = static_cast<double>(spec.n_pulses);
    const Pooled acc = pool(accidentals);
    const double acc_target = spec.config.eta * spec.config.eta *
                              spec.config.n_mean * spec.config.n_mean;
    const double acc_floor =
        std::sqrt(acc_target / (n_p * static_cast<double>(delays.size())));
    out.push_back(sigma_check("MC accidental rate vs eta^2 N^2", acc.value,
                              acc_target, std::max(acc.se, acc_floor), 3.0));

    // Corrected curve: bottom at delta_t = 0, shoulder pooled over the
    // |delta_t| >= 1 ps points where the overlap is below 3e-4.
    std::vector<Estimate> shoulder;
    Estimate bottom{};
    for (std::size_t j = 0; j < delays.size(); ++j) {
      const Estimate corrected = {
          sweep[j].coincidences.value - accidentals[j].value,
          std::hypot(sweep[j].coincidences.se, accidentals[j].se)};
      if (delays[j] == 0.0)
        bottom = corrected;
      else
        shoulder.push_back(corrected);
    }
    const Pooled sh = pool(shoulder);
    const double bottom_floor = std::sqrt(2.0 * acc_target / n_p);
    const double bottom_se = std::max(bottom.se, bottom_floor);
    out.push_back(sigma_check("MC corrected rate at zero delay", bottom.value,
                              0.0, bottom_se, 3.0));
    const double shoulder_floor = std::sqrt(
        2.5 * acc_target / (n_p * static_cast<double>(shoulder.size())));
    const double shoulder_se = std::max(sh.se, shoulder_floor);
    // |V - 1| <= 3 se_V, multiplied through by (a + b)^2 so the test stays
    // defined when a sparse run fluctuates the denominator to zero.
    const double a = sh.value, b = bottom.value;
    const bool vis_ok = std::abs(b * (a + b)) <=
                        3.0 * std::hypot(b * shoulder_se, a * bottom_se);
    const double v = a + b > 0.0 ? (a - b) / (a + b)
                                 : std::numeric_limits<double>::quiet_NaN();
    out.push_back({"MC corrected visibility", v, 1.0, "3 SE", vis_ok});
  }

  // Determinism: identical output for 1 and 2 workers.
  {
    RunSpec spec;
    spec.config = cfg;
    spec.config.n_mean = 0.1;
    spec.n_pulses = std::min<std::uint64_t>(options.mc_pulses, 50'000);
    spec.seed = options.seed + 1;
    const std::vector<double> delays = {0.0, 5e-13};
    const auto one = run_sweep(spec, delays, 1);
    const auto two = run_sweep(spec, delays, 2);
    bool same = one.size() == two.size();
    for (std::size_t j = 0; same && j < one.size(); ++j) {
      same = one[j].coincidences.value == two[j].coincidences.value &&
             one[j].singles_1.value == two[j].singles_1.value &&
             one[j].singles_2.value == two[j].singles_2.value;
    }
    out.push_back({"sweep determinism across worker counts", same ? 1.0 : 0.0,
                   1.0, "exact", same});
  }

  return out;
}

}  // namespace speckledip
