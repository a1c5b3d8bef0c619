#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace speckledip {

/// One named check of the verification suite.
struct CheckResult {
  std::string name;
  double measured = 0.0;
  double target = 0.0;
  std::string tolerance;  // human-readable bound the check was run at
  bool pass = false;
};

struct VerifyOptions {
  std::uint64_t mc_pulses = 1'000'000;  // per delay point in the MC checks
  std::uint64_t seed = 12345;
  int threads = 0;
};

/// Runs the invariant suite: visibility identities, overlap quadrature
/// against the closed form, circular-Gaussian moment checks, the exact
/// detection oracle chain, energy conservation, a Monte Carlo dip with
/// accidental subtraction, and sweep determinism.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

}  // namespace speckledip
