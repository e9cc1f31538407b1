#pragma once

namespace grassmap {

// Library-wide residual thresholds. The defaults below are the contract values
// the test suites assert against; the CLI may override the verification
// thresholds per run without touching these.
struct Tolerances {
  double algebra = 1e-12;       // algebra-level residuals at unit scale
  double non_pure_rel = 1e-9;   // |Re u| > non_pure_rel * |u| => NonPureInput
  double degenerate_rel = 1e-8; // sigma2 <= degenerate_rel * sigma1 => DegeneratePlane
  double unit = 1e-10;          // unit-norm / orthogonality checks on inputs
  double triality = 1e-10;      // 64 basis-pair triality validation
  double rank = 1e-6;           // sigma_k / sigma_1 threshold for full rank
};

inline Tolerances& tolerances() {
  static Tolerances instance;
  return instance;
}

}  // namespace grassmap
