#pragma once

#include <cstddef>

namespace annulus {

/// Test hook: deliberately corrupts the right-hand side so that the
/// verification suites can be checked against a known-bad solver.
enum class FaultInjection { none, flipped_aux_sign };

struct SolverConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-13;
  double max_step = 0.05;
  /// Accepted |P(lambda) - R*| at the end of a shooting solve.
  double root_tol = 1e-10;
  double lambda_lo = 0.0;
  double lambda_hi = 2.0;
  int max_iters = 200;
  /// Number of uniformly spaced profile nodes on [1, R], endpoints included.
  std::size_t profile_nodes = 202;
  FaultInjection fault = FaultInjection::none;

  /// Throws InvalidArgument unless all tolerances are positive and lambda_lo >= 0.
  void validate() const;
};

}  // namespace annulus
