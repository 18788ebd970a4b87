#include "bellkit/xorcorr.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

namespace bellkit {

namespace {
constexpr double kPi = std::numbers::pi;
}

void XorGame::validate() const {
  if (alpha.empty() || alpha[0].empty()) throw validation_error("empty game matrix");
  bool nonzero = false;
  for (const auto& row : alpha) {
    if (static_cast<int>(row.size()) != cols())
      throw validation_error("ragged game matrix");
    for (const auto& v : row)
      if (v != 0) nonzero = true;
  }
  if (!nonzero) throw validation_error("game matrix must have a nonzero entry");
}

void DOutcomeGame::validate() const {
  if (d < 2) throw validation_error("need at least two outcomes");
  if (q.empty() || q[0].empty()) throw validation_error("empty game weights");
  if (f.size() != q.size()) throw validation_error("weight/value shape mismatch");
  Rational total(0);
  for (int x = 0; x < rows(); ++x) {
    if (static_cast<int>(q[static_cast<std::size_t>(x)].size()) != cols() ||
        static_cast<int>(f[static_cast<std::size_t>(x)].size()) != cols())
      throw validation_error("ragged game matrix");
    for (int y = 0; y < cols(); ++y) {
      const auto& w = q[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
      if (w < 0) throw validation_error("game weights must be nonnegative");
      total += w;
      const int val = f[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
      if (val < 1 || val > d) throw validation_error("f values must lie in 1..d");
    }
  }
  if (total != 1) throw validation_error("game weights must sum to 1");
}

void CorrelatorPoint::validate() const {
  if (c.empty() || c[0].empty()) throw validation_error("empty correlator matrix");
  for (const auto& row : c) {
    if (static_cast<int>(row.size()) != cols()) throw validation_error("ragged correlator matrix");
    for (double v : row)
      if (!(v >= -1.0 - 1e-12 && v <= 1.0 + 1e-12))
        throw validation_error("correlators must lie in [-1, 1]");
  }
}

BellInequality game_to_inequality(const XorGame& game) {
  game.validate();
  const BellScenario s = make_scenario(std::vector<int>(static_cast<std::size_t>(game.rows()), 2),
                                       std::vector<int>(static_cast<std::size_t>(game.cols()), 2));
  BellInequality ineq{s, std::vector<Rational>(s.event_count(), Rational(0)), std::nullopt};
  for (int x = 1; x <= game.rows(); ++x)
    for (int y = 1; y <= game.cols(); ++y)
      for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
          const int sign = ((a - 1) + (b - 1)) % 2 == 0 ? 1 : -1;
          ineq.coeff[flat_index(s, {x, a, y, b})] =
              game.alpha[static_cast<std::size_t>(x) - 1][static_cast<std::size_t>(y) - 1] * sign;
        }
  return ineq;
}

BellInequality game_to_inequality(const DOutcomeGame& game) {
  game.validate();
  const BellScenario s =
      make_scenario(std::vector<int>(static_cast<std::size_t>(game.rows()), game.d),
                    std::vector<int>(static_cast<std::size_t>(game.cols()), game.d));
  BellInequality ineq{s, std::vector<Rational>(s.event_count(), Rational(0)), std::nullopt};
  for (int x = 1; x <= game.rows(); ++x)
    for (int y = 1; y <= game.cols(); ++y)
      for (int a = 1; a <= game.d; ++a)
        for (int b = 1; b <= game.d; ++b)
          if ((a + b) % game.d ==
              game.f[static_cast<std::size_t>(x) - 1][static_cast<std::size_t>(y) - 1] % game.d)
            ineq.coeff[flat_index(s, {x, a, y, b})] =
                game.q[static_cast<std::size_t>(x) - 1][static_cast<std::size_t>(y) - 1];
  return ineq;
}

double xor_quantum_value(const XorGame& game, const SdpOptions& options) {
  game.validate();
  const int ma = game.rows();
  const int mb = game.cols();
  const int t = ma + mb;

  SdpProblem sdp;
  sdp.size = t;
  sdp.objective = Eigen::MatrixXd::Zero(t, t);
  for (int x = 0; x < ma; ++x)
    for (int y = 0; y < mb; ++y) {
      const double w = to_double(game.alpha[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]);
      sdp.objective(x, ma + y) += 0.5 * w;
      sdp.objective(ma + y, x) += 0.5 * w;
    }
  for (int i = 0; i < t; ++i) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(t, t);
    a(i, i) = 1.0;
    sdp.constraint_matrices.push_back(std::move(a));
  }
  sdp.constraint_values = Eigen::VectorXd::Ones(t);

  const SdpSolution sol = solve_sdp(sdp, options);
  if (sol.status != SdpStatus::converged)
    throw solver_error("correlation-matrix SDP did not converge");
  return sol.value;
}

TiltedNoAdvantage tilted_no_advantage(const std::array<Rational, 4>& alpha) {
  for (const auto& a : alpha)
    if (a <= 0) throw validation_error("weights must be positive");

  int min_index = 0;
  for (int i = 1; i < 4; ++i)
    if (alpha[static_cast<std::size_t>(i)] < alpha[static_cast<std::size_t>(min_index)]) min_index = i;
  for (int i = 0; i < 4; ++i)
    if (i != min_index && alpha[static_cast<std::size_t>(i)] == alpha[static_cast<std::size_t>(min_index)])
      throw validation_error("unsupported regime: tied minimum weight");

  // Relabel settings so the minimum sits in the (2,2) slot; the test is
  // stated for that regime only.
  std::array<Rational, 4> b = alpha;  // order (a11, a12, a21, a22)
  switch (min_index) {
    case 0: b = {alpha[3], alpha[2], alpha[1], alpha[0]}; break;  // swap both parties
    case 1: b = {alpha[1], alpha[0], alpha[3], alpha[2]}; break;  // swap Bob settings
    case 2: b = {alpha[2], alpha[3], alpha[0], alpha[1]}; break;  // swap Alice settings
    default: break;
  }

  TiltedNoAdvantage out;
  const Rational lhs_root = b[1] * b[2] + b[0] * b[3];
  out.lhs = lhs_root * lhs_root;
  out.rhs = (b[0] + b[1]) * (b[0] + b[2]) * (b[1] - b[3]) * (b[2] - b[3]);
  out.holds = out.lhs <= out.rhs;
  return out;
}

std::vector<Eigen::MatrixXcd> build_phi_matrices(const DOutcomeGame& game) {
  game.validate();
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(static_cast<std::size_t>(game.d - 1));
  for (int k = 1; k < game.d; ++k) {
    Eigen::MatrixXcd phi(game.rows(), game.cols());
    for (int x = 0; x < game.rows(); ++x)
      for (int y = 0; y < game.cols(); ++y) {
        const int power =
            (k * game.f[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]) % game.d;
        const double angle = 2.0 * kPi * power / game.d;
        phi(x, y) = to_double(game.q[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]) *
                    std::complex<double>(std::cos(angle), std::sin(angle));
      }
    out.push_back(std::move(phi));
  }
  return out;
}

namespace {

// Multiplies u and v by the common phase that makes the first
// nonnegligible entry of u real positive.
void fix_phase(Eigen::VectorXcd& u, Eigen::VectorXcd& v) {
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) > 1e-9) {
      const std::complex<double> g = std::conj(u[i]) / std::abs(u[i]);
      u *= g;
      v *= g;
      return;
    }
  }
}

// Distance of a phase to the nearest multiple of 2 pi / d, plus the index
// of that multiple.
std::pair<double, int> nearest_root_phase(std::complex<double> z, int d) {
  const double phase = std::arg(z);
  const double step = 2.0 * kPi / d;
  int idx = static_cast<int>(std::lround(phase / step));
  double dev = std::abs(phase - idx * step);
  idx = ((idx % d) + d) % d;
  return {dev, idx};
}

}  // namespace

RootsOfUnityCheck roots_of_unity_condition(const DOutcomeGame& game, double tolerance) {
  const auto phis = build_phi_matrices(game);
  RootsOfUnityCheck check;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd1(phis[0], Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd1.singularValues();
  if (sv[0] <= 0) {
    check.detail = "top singular value of the first game matrix is zero";
    return check;
  }
  check.singular_gap = sv.size() > 1 ? (sv[0] - sv[1]) / sv[0] : 1.0;
  if (check.singular_gap < 1e-8) {
    check.detail = "degenerate top singular value of the first game matrix";
    return check;
  }

  Eigen::VectorXcd u1 = svd1.matrixU().col(0);
  Eigen::VectorXcd v1 = svd1.matrixV().col(0);
  fix_phase(u1, v1);

  const double flat_u = 1.0 / std::sqrt(static_cast<double>(game.rows()));
  const double flat_v = 1.0 / std::sqrt(static_cast<double>(game.cols()));
  std::vector<int> pow_u(static_cast<std::size_t>(game.rows()));
  std::vector<int> pow_v(static_cast<std::size_t>(game.cols()));
  double worst = 0.0;
  for (int i = 0; i < game.rows(); ++i) {
    worst = std::max(worst, std::abs(std::abs(u1[i]) - flat_u));
    const auto [dev, idx] = nearest_root_phase(u1[i], game.d);
    worst = std::max(worst, dev);
    pow_u[static_cast<std::size_t>(i)] = idx;
  }
  for (int j = 0; j < game.cols(); ++j) {
    worst = std::max(worst, std::abs(std::abs(v1[j]) - flat_v));
    const auto [dev, idx] = nearest_root_phase(v1[j], game.d);
    worst = std::max(worst, dev);
    pow_v[static_cast<std::size_t>(j)] = idx;
  }
  check.max_deviation = worst;
  if (worst > tolerance) {
    check.status = RootsOfUnityCheck::Status::not_satisfied;
    check.detail = "top singular vectors of the first game matrix are not flat roots of unity";
    return check;
  }

  // Each Phi_k must inherit the singular pair under zeta -> zeta^k.
  for (int k = 2; k < game.d; ++k) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svdk(phis[static_cast<std::size_t>(k - 1)],
                                            Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& svk = svdk.singularValues();
    if (svk[0] <= 0 || (svk.size() > 1 && (svk[0] - svk[1]) / svk[0] < 1e-8)) {
      check.status = RootsOfUnityCheck::Status::ambiguous;
      check.detail = "degenerate top singular value of game matrix " + std::to_string(k);
      return check;
    }
    Eigen::VectorXcd uk = svdk.matrixU().col(0);
    Eigen::VectorXcd vk = svdk.matrixV().col(0);
    fix_phase(uk, vk);

    Eigen::VectorXcd u_pred(game.rows()), v_pred(game.cols());
    for (int i = 0; i < game.rows(); ++i) {
      const double angle = 2.0 * kPi * ((k * pow_u[static_cast<std::size_t>(i)]) % game.d) / game.d;
      u_pred[i] = flat_u * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    for (int j = 0; j < game.cols(); ++j) {
      const double angle = 2.0 * kPi * ((k * pow_v[static_cast<std::size_t>(j)]) % game.d) / game.d;
      v_pred[j] = flat_v * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    fix_phase(u_pred, v_pred);

    const double dev = std::max((uk - u_pred).lpNorm<Eigen::Infinity>(),
                                (vk - v_pred).lpNorm<Eigen::Infinity>());
    check.max_deviation = std::max(check.max_deviation, dev);
    if (dev > tolerance) {
      check.status = RootsOfUnityCheck::Status::not_satisfied;
      check.detail = "game matrix " + std::to_string(k) + " does not inherit the singular pair";
      return check;
    }
  }

  check.status = RootsOfUnityCheck::Status::satisfied;
  return check;
}

namespace {

// Phase-I simplex with Bland's rule, exact arithmetic: does target lie in
// the convex hull of the columns?
bool in_convex_hull(const std::vector<std::vector<Rational>>& columns,
                    const std::vector<Rational>& target) {
  const std::size_t rows = target.size() + 1;  // + convex combination row
  const std::size_t cols = columns.size();

  // Tableau over [lambda | artificials | rhs] with artificial basis.
  std::vector<std::vector<Rational>> tab(rows, std::vector<Rational>(cols + rows + 1, Rational(0)));
  for (std::size_t r = 0; r + 1 < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) tab[r][c] = columns[c][r];
  for (std::size_t c = 0; c < cols; ++c) tab[rows - 1][c] = 1;
  for (std::size_t r = 0; r + 1 < rows; ++r) tab[r][cols + rows] = target[r];
  tab[rows - 1][cols + rows] = 1;
  for (std::size_t r = 0; r < rows; ++r) tab[r][cols + r] = 1;

  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) basis[r] = cols + r;

  // Objective: minimize the sum of artificials.
  std::vector<Rational> z(cols + rows + 1, Rational(0));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c <= cols + rows; ++c) z[c] += tab[r][c];
  for (std::size_t r = 0; r < rows; ++r) z[cols + r] = 0;  // basic columns price to zero

  while (true) {
    std::size_t enter = cols + rows;
    for (std::size_t c = 0; c < cols + rows; ++c)
      if (z[c] > 0) {
        enter = c;
        break;
      }
    if (enter == cols + rows) break;

    std::size_t leave = rows;
    Rational best_ratio;
    for (std::size_t r = 0; r < rows; ++r) {
      if (tab[r][enter] <= 0) continue;
      Rational ratio = tab[r][cols + rows] / tab[r][enter];
      if (leave == rows || ratio < best_ratio ||
          (ratio == best_ratio && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave == rows) break;  // unbounded cannot happen here

    const Rational pivot = tab[leave][enter];
    for (auto& v : tab[leave]) v /= pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave || tab[r][enter] == 0) continue;
      const Rational f = tab[r][enter];
      for (std::size_t c = 0; c <= cols + rows; ++c) tab[r][c] -= f * tab[leave][c];
    }
    const Rational fz = z[enter];
    if (fz != 0)
      for (std::size_t c = 0; c <= cols + rows; ++c) z[c] -= fz * tab[leave][c];
    basis[leave] = enter;
  }

  return z[cols + rows] == 0;  // all artificials driven to zero
}

}  // namespace

bool cut_membership(const CorrelatorPoint& point, int max_parties_total) {
  point.validate();
  const int ma = point.rows();
  const int mb = point.cols();
  if (ma + mb > max_parties_total)
    throw capacity_error("cut membership limited to " + std::to_string(max_parties_total) +
                         " total settings");

  std::vector<Rational> target;
  target.reserve(static_cast<std::size_t>(ma) * static_cast<std::size_t>(mb));
  for (int x = 0; x < ma; ++x)
    for (int y = 0; y < mb; ++y)
      target.push_back((Rational(1) - rational_from_double(point.c[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)])) / 2);

  // Cut vectors of the complete bipartite graph; the global flip is
  // factored out by pinning the first Alice label.
  std::vector<std::vector<Rational>> columns;
  for (std::uint32_t sa = 0; sa < (1u << (ma - 1)); ++sa)
    for (std::uint32_t sb = 0; sb < (1u << mb); ++sb) {
      std::vector<Rational> col;
      col.reserve(target.size());
      for (int x = 0; x < ma; ++x) {
        const int label_a = x == 0 ? 0 : static_cast<int>((sa >> (x - 1)) & 1);
        for (int y = 0; y < mb; ++y) {
          const int label_b = static_cast<int>((sb >> y) & 1);
          col.push_back(Rational(label_a ^ label_b));
        }
      }
      columns.push_back(std::move(col));
    }

  return in_convex_hull(columns, target);
}

ElliptopeMembership elliptope_membership(const CorrelatorPoint& point, const SdpOptions& options) {
  point.validate();
  const int ma = point.rows();
  const int mb = point.cols();
  const int t = ma + mb;

  SdpProblem sdp;
  sdp.size = t;
  sdp.objective = Eigen::MatrixXd::Zero(t, t);
  std::vector<double> vals;
  for (int i = 0; i < t; ++i) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(t, t);
    a(i, i) = 1.0;
    sdp.constraint_matrices.push_back(std::move(a));
    vals.push_back(1.0);
  }
  for (int x = 0; x < ma; ++x)
    for (int y = 0; y < mb; ++y) {
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(t, t);
      a(x, ma + y) = 0.5;
      a(ma + y, x) = 0.5;
      sdp.constraint_matrices.push_back(std::move(a));
      vals.push_back(point.c[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]);
    }
  sdp.constraint_values = Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));

  return feasibility(std::move(sdp), options).feasible ? ElliptopeMembership::member
                                                       : ElliptopeMembership::non_member_suspected;
}

FaceDimBounds face_dim_bounds(int t) {
  if (t < 2) throw validation_error("need t >= 2");
  FaceDimBounds out;
  // Largest d with (d+1 choose 2) <= t - 1.
  int d = 0;
  while ((d + 2) * (d + 1) / 2 <= t - 1) ++d;
  out.d_t = d;
  out.max_face_dim =
      static_cast<std::uint64_t>(t - 1) * static_cast<std::uint64_t>(t - 2) / 2;
  return out;
}

bool correlation_facet_forced_violation(int m_a, int m_b) {
  if (m_a < 2 || m_b < 2) throw validation_error("need at least two settings per party");
  const std::uint64_t facet_dim =
      static_cast<std::uint64_t>(m_a) * static_cast<std::uint64_t>(m_b) - 1;
  return facet_dim > static_cast<std::uint64_t>(face_dim_bounds(m_a + m_b).d_t);
}

namespace {

double checked_acos(double c) {
  if (c > 1.0 + 1e-12 || c < -1.0 - 1e-12)
    throw validation_error("correlator outside [-1, 1]");
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace

ChainCheck chain_boundary_check(const CorrelatorPoint& point, ChainMode mode, double tolerance) {
  point.validate();
  ChainCheck out;

  if (mode == ChainMode::arcsin) {
    if (point.rows() != 2 || point.cols() != 2)
      throw validation_error("arcsin mode applies to 2x2 correlator matrices");
    double asin_sum = 0.0;
    double asins[2][2];
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        asins[x][y] = std::asin(std::clamp(point.c[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)], -1.0, 1.0));
        asin_sum += asins[x][y];
      }
    double max_abs = 0.0;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        max_abs = std::max(max_abs, std::abs(asin_sum - 2.0 * asins[x][y]));
    out.lhs = max_abs;
    out.rhs = kPi;
    if (std::abs(max_abs - kPi) <= tolerance)
      out.verdict = RegionVerdict::boundary;
    else
      out.verdict = max_abs < kPi ? RegionVerdict::inside : RegionVerdict::outside;
    return out;
  }

  // theta mode: chain entries of a square matrix.
  const int m = point.rows();
  if (point.cols() != m || m < 2)
    throw validation_error("theta mode needs a square correlator matrix, m >= 2");
  std::vector<double> theta;
  theta.reserve(static_cast<std::size_t>(2 * m));
  theta.push_back(checked_acos(point.c[0][0]));
  for (int k = 2; k <= m; ++k) {
    theta.push_back(checked_acos(point.c[static_cast<std::size_t>(k) - 1][static_cast<std::size_t>(k) - 2]));
    theta.push_back(checked_acos(point.c[static_cast<std::size_t>(k) - 1][static_cast<std::size_t>(k) - 1]));
  }
  theta.push_back(checked_acos(point.c[0][static_cast<std::size_t>(m) - 1]));

  int above = 0;
  for (double th : theta)
    if (th > kPi / 2) ++above;
  if (above > 1)
    throw validation_error("chain parametrization requires at most one angle above pi/2");

  const double sum = std::accumulate(theta.begin(), theta.end(), 0.0);
  const double twice_max = 2.0 * *std::max_element(theta.begin(), theta.end());
  out.lhs = twice_max;
  out.rhs = sum;
  if (std::abs(twice_max - sum) <= tolerance)
    out.verdict = RegionVerdict::boundary;
  else
    out.verdict = twice_max < sum ? RegionVerdict::inside : RegionVerdict::outside;
  return out;
}

namespace {

// 4x4 operator of a B((2,2),(2,2)) inequality for planar qubit projectors
// with measurement directions (a1, a2, b1, b2).
Eigen::Matrix4d bell_operator(const std::vector<double>& coeff, const BellScenario& s,
                              const std::array<double, 4>& angles) {
  auto projector = [](double angle, int outcome) {
    Eigen::Matrix2d obs;
    obs << std::cos(angle), std::sin(angle), std::sin(angle), -std::cos(angle);
    const double sign = outcome == 1 ? 1.0 : -1.0;
    return Eigen::Matrix2d((Eigen::Matrix2d::Identity() + sign * obs) / 2.0);
  };

  Eigen::Matrix4d op = Eigen::Matrix4d::Zero();
  for (int x = 1; x <= 2; ++x)
    for (int a = 1; a <= 2; ++a) {
      const Eigen::Matrix2d ea = projector(angles[static_cast<std::size_t>(x) - 1], a);
      for (int y = 1; y <= 2; ++y)
        for (int b = 1; b <= 2; ++b) {
          const double w = coeff[flat_index(s, {x, a, y, b})];
          if (w == 0.0) continue;
          const Eigen::Matrix2d eb = projector(angles[static_cast<std::size_t>(y) + 1], b);
          op += w * Eigen::Matrix4d(Eigen::kroneckerProduct(ea, eb));
        }
    }
  return op;
}

double top_eigenvalue(const Eigen::Matrix4d& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(op, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

}  // namespace

QubitOptResult qubit_optimize(const BellInequality& ineq, int starts, std::uint32_t seed) {
  const BellScenario& s = ineq.scenario;
  if (s.outcomes_a != std::vector<int>{2, 2} || s.outcomes_b != std::vector<int>{2, 2})
    throw validation_error("qubit optimization applies to B((2,2),(2,2)) only");
  const std::vector<double> coeff = ineq.coeff_as_double();

  std::mt19937 rng(seed);
  auto random_angle = [&rng]() {
    return 2.0 * kPi * (static_cast<double>(rng()) / 4294967296.0);
  };

  QubitOptResult best;
  best.value = -std::numeric_limits<double>::infinity();

  for (int start = 0; start < starts; ++start) {
    std::array<double, 4> angles{random_angle(), random_angle(), random_angle(), random_angle()};
    double current = top_eigenvalue(bell_operator(coeff, s, angles));

    double step = 0.5;
    while (step > 1e-9) {
      bool improved = false;
      for (std::size_t i = 0; i < 4; ++i) {
        for (double delta : {step, -step}) {
          std::array<double, 4> trial = angles;
          trial[i] += delta;
          const double v = top_eigenvalue(bell_operator(coeff, s, trial));
          if (v > current + 1e-15) {
            angles = trial;
            current = v;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }

    if (current > best.value) {
      best.value = current;
      best.angles = angles;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(bell_operator(coeff, s, best.angles));
  int top = 0;
  eig.eigenvalues().maxCoeff(&top);
  best.state = eig.eigenvectors().col(top);
  return best;
}

}  // namespace bellkit
