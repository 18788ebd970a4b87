#include "bellkit/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace bellkit {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Scaled vectorization of the upper triangle so that svec(A).svec(B)
// equals <A, B>.
Eigen::VectorXd svec(const Eigen::MatrixXd& m) {
  const int t = static_cast<int>(m.rows());
  Eigen::VectorXd v(t * (t + 1) / 2);
  int k = 0;
  for (int i = 0; i < t; ++i) {
    v[k++] = m(i, i);
    for (int j = i + 1; j < t; ++j) v[k++] = kSqrt2 * 0.5 * (m(i, j) + m(j, i));
  }
  return v;
}

Eigen::MatrixXd smat(const Eigen::VectorXd& v, int t) {
  Eigen::MatrixXd m(t, t);
  int k = 0;
  for (int i = 0; i < t; ++i) {
    m(i, i) = v[k++];
    for (int j = i + 1; j < t; ++j) {
      m(i, j) = v[k] / kSqrt2;
      m(j, i) = v[k] / kSqrt2;
      ++k;
    }
  }
  return m;
}

struct AffineProjector {
  Eigen::MatrixXd basis;  // r x N, orthonormal rows
  Eigen::VectorXd rhs;    // transformed right-hand side
  Eigen::VectorXd base_point;

  Eigen::VectorXd apply(const Eigen::VectorXd& w) const {
    if (basis.rows() == 0) return w;
    return w - basis.transpose() * (basis * w) + base_point;
  }
  double residual(const Eigen::VectorXd& w) const {
    if (basis.rows() == 0) return 0.0;
    return (basis * w - rhs).lpNorm<Eigen::Infinity>();
  }
};

// Rank-revealing Gram-Schmidt over the constraint rows; dependent rows
// must be consistent or the problem is rejected.
AffineProjector preprocess(const SdpProblem& problem) {
  const int t = problem.size;
  const int n = t * (t + 1) / 2;
  const int m = static_cast<int>(problem.constraint_matrices.size());

  std::vector<Eigen::VectorXd> rows;
  std::vector<double> betas;
  rows.reserve(static_cast<std::size_t>(m));
  const double dep_tol = 1e-12;

  for (int k = 0; k < m; ++k) {
    Eigen::VectorXd r = svec(problem.constraint_matrices[static_cast<std::size_t>(k)]);
    const double original_norm = std::max(1.0, r.norm());
    double rb = problem.constraint_values[k];
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < rows.size(); ++j) {
        const double c = rows[j].dot(r);
        r -= c * rows[j];
        rb -= c * betas[j];
      }
    }
    const double nr = r.norm();
    if (nr > dep_tol * original_norm) {
      rows.push_back(r / nr);
      betas.push_back(rb / nr);
    } else if (std::abs(rb) > 1e-9 * std::max(1.0, std::abs(problem.constraint_values[k]))) {
      throw validation_error("inconsistent equality constraints (row " + std::to_string(k) + ")");
    }
  }

  AffineProjector proj;
  proj.basis.resize(static_cast<int>(rows.size()), n);
  proj.rhs.resize(static_cast<int>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    proj.basis.row(static_cast<int>(j)) = rows[j];
    proj.rhs[static_cast<int>(j)] = betas[j];
  }
  proj.base_point = proj.basis.rows() ? Eigen::VectorXd(proj.basis.transpose() * proj.rhs)
                                      : Eigen::VectorXd::Zero(n);
  return proj;
}

Eigen::VectorXd psd_project(const Eigen::VectorXd& v, int t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(smat(v, t));
  const Eigen::VectorXd& lam = eig.eigenvalues();
  Eigen::VectorXd clamped = lam.cwiseMax(0.0);
  Eigen::MatrixXd rebuilt =
      eig.eigenvectors() * clamped.asDiagonal() * eig.eigenvectors().transpose();
  return svec(rebuilt);
}

}  // namespace

double default_sdp_tolerance() {
  if (const char* env = std::getenv("BELLKIT_SDP_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0) return std::clamp(v, 1e-12, 1e-2);
  }
  return 1e-8;
}

SdpOptions::SdpOptions() : tolerance(default_sdp_tolerance()) {}

SdpSolution solve_sdp(const SdpProblem& problem, const SdpOptions& options) {
  if (problem.size <= 0) throw validation_error("SDP size must be positive");
  if (problem.size > options.size_cap)
    throw capacity_error("SDP size " + std::to_string(problem.size) + " exceeds cap " +
                         std::to_string(options.size_cap));
  if (problem.constraint_values.size() !=
      static_cast<Eigen::Index>(problem.constraint_matrices.size()))
    throw validation_error("constraint matrix/value count mismatch");

  const int t = problem.size;
  const int n = t * (t + 1) / 2;
  const AffineProjector proj = preprocess(problem);

  const Eigen::VectorXd c_raw = svec(problem.objective);
  const double c_norm = c_raw.norm();
  const Eigen::VectorXd c_unit = c_norm > 0 ? Eigen::VectorXd(c_raw / c_norm)
                                            : Eigen::VectorXd::Zero(n);

  double rho = 1.0;
  const double alpha = options.over_relaxation;

  Eigen::VectorXd z = proj.apply(Eigen::VectorXd::Zero(n));
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd x(n), xhat(n), z_old(n);

  double primal = 0.0, dual = 0.0, gap = 0.0;
  double window_best = std::numeric_limits<double>::infinity();
  double prev_window_best = std::numeric_limits<double>::infinity();
  int iter = 0;
  SdpStatus status = SdpStatus::max_iter;

  for (iter = 1; iter <= options.max_iterations; ++iter) {
    x = proj.apply(z - u + (1.0 / rho) * c_unit);
    xhat = alpha * x + (1.0 - alpha) * z;
    z_old = z;
    z = psd_project(xhat + u, t);
    u += xhat - z;

    gap = (x - z).lpNorm<Eigen::Infinity>();
    dual = rho * (z - z_old).lpNorm<Eigen::Infinity>();
    primal = proj.residual(z);
    const double conv = std::max({gap, dual, primal});

    if (conv <= options.tolerance) {
      status = SdpStatus::converged;
      break;
    }

    window_best = std::min(window_best, conv);
    if (iter % options.plateau_window == 0) {
      if (std::isfinite(prev_window_best) &&
          prev_window_best - window_best <=
              options.plateau_rel_change * std::max(1.0, prev_window_best) &&
          window_best > options.tolerance) {
        status = SdpStatus::infeasible_suspected;
        break;
      }
      prev_window_best = window_best;
      window_best = std::numeric_limits<double>::infinity();
    }

    if (iter % 100 == 0) {
      const double balance_primal = std::max(gap, primal);
      if (balance_primal > 5.0 * dual && rho < 1e6) {
        rho *= 1.5;
        u /= 1.5;
      } else if (dual > 5.0 * balance_primal && rho > 1e-6) {
        rho /= 1.5;
        u *= 1.5;
      }
    }
  }

  SdpSolution sol;
  sol.X = smat(z, t);
  sol.value = c_norm > 0 ? c_raw.dot(z) : 0.0;
  sol.iterations = std::min(iter, options.max_iterations);
  sol.status = status;
  sol.dual_residual = dual;

  double worst = 0.0;
  for (std::size_t k = 0; k < problem.constraint_matrices.size(); ++k) {
    const double lhs = problem.constraint_matrices[k].cwiseProduct(sol.X).sum();
    worst = std::max(worst, std::abs(lhs - problem.constraint_values[static_cast<int>(k)]));
  }
  sol.primal_residual = worst;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sol.X);
  sol.psd_violation = std::max(0.0, -eig.eigenvalues().minCoeff());
  return sol;
}

FeasibilityResult feasibility(SdpProblem problem, const SdpOptions& options) {
  problem.objective = Eigen::MatrixXd::Zero(problem.size, problem.size);
  SdpSolution sol = solve_sdp(problem, options);
  FeasibilityResult result;
  result.feasible = sol.status == SdpStatus::converged;
  result.solution = std::move(sol);
  return result;
}

}  // namespace bellkit
