#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bellkit/errors.hpp"

namespace bellkit {

/// maximize <C, X>  subject to  <A_k, X> = b_k,  X symmetric PSD.
struct SdpProblem {
  int size = 0;
  Eigen::MatrixXd objective;                       // C, symmetric
  std::vector<Eigen::MatrixXd> constraint_matrices;  // A_k, symmetric
  Eigen::VectorXd constraint_values;               // b
};

enum class SdpStatus { converged, max_iter, infeasible_suspected };

struct SdpSolution {
  Eigen::MatrixXd X;
  double value = 0.0;
  double primal_residual = 0.0;  // max_k |<A_k, X> - b_k| on the returned X
  double dual_residual = 0.0;
  double psd_violation = 0.0;    // max(0, -lambda_min(X))
  int iterations = 0;
  SdpStatus status = SdpStatus::max_iter;
};

struct SdpOptions {
  double tolerance;  // set from default_sdp_tolerance() when constructed
  int max_iterations = 100000;
  double over_relaxation = 1.6;
  int size_cap = 200;
  int plateau_window = 5000;
  double plateau_rel_change = 1e-10;

  SdpOptions();
};

/// 1e-8 unless the BELLKIT_SDP_TOL environment variable overrides it.
double default_sdp_tolerance();

/// Operator-splitting solve: alternating projection onto the affine
/// subspace (pre-factorized) and onto the PSD cone (eigendecomposition),
/// with over-relaxation. Deterministic for fixed inputs. Inconsistent
/// constraints are rejected during preprocessing; non-convergence is
/// reported through the status, never as a fabricated value.
SdpSolution solve_sdp(const SdpProblem& problem, const SdpOptions& options = SdpOptions());

struct FeasibilityResult {
  bool feasible = false;
  SdpSolution solution;
};

/// Runs the same iteration with a zero objective.
FeasibilityResult feasibility(SdpProblem problem, const SdpOptions& options = SdpOptions());

}  // namespace bellkit
