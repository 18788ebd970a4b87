#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "bellkit/inequality.hpp"
#include "bellkit/sdp.hpp"

namespace bellkit {

/// Binary-outcome correlation game: signed weights on full correlators.
struct XorGame {
  std::vector<std::vector<Rational>> alpha;  // m_A x m_B

  int rows() const { return static_cast<int>(alpha.size()); }
  int cols() const { return alpha.empty() ? 0 : static_cast<int>(alpha[0].size()); }
  void validate() const;
};

/// d-outcome generalization: win when o_A + o_B = f(i_A,i_B) mod d,
/// weighted by a normalized distribution q over setting pairs.
struct DOutcomeGame {
  int d = 2;
  std::vector<std::vector<Rational>> q;  // nonnegative, sums to 1
  std::vector<std::vector<int>> f;       // values in 1..d

  int rows() const { return static_cast<int>(q.size()); }
  int cols() const { return q.empty() ? 0 : static_cast<int>(q[0].size()); }
  void validate() const;
};

/// Matrix of full correlators <A_x B_y>, entries in [-1, 1].
struct CorrelatorPoint {
  std::vector<std::vector<double>> c;

  int rows() const { return static_cast<int>(c.size()); }
  int cols() const { return c.empty() ? 0 : static_cast<int>(c[0].size()); }
  void validate() const;
};

/// Probability-form coefficient vector of a game on its natural scenario.
BellInequality game_to_inequality(const XorGame& game);
BellInequality game_to_inequality(const DOutcomeGame& game);

/// Quantum value of an XOR game by the correlation-matrix SDP: maximize
/// sum alpha_xy <u_x, v_y> over unit vectors.
double xor_quantum_value(const XorGame& game, const SdpOptions& options = SdpOptions());

struct TiltedNoAdvantage {
  bool holds = false;
  Rational lhs;  // (a12 a21 + a11 a22)^2 after placing the minimum at (2,2)
  Rational rhs;  // (a11+a12)(a11+a21)(a12-a22)(a21-a22)
};

/// Closed-form no-quantum-advantage test for the weighted CHSH family.
/// Requires a unique strict minimum among the four weights; a tie is an
/// unsupported regime and throws.
TiltedNoAdvantage tilted_no_advantage(const std::array<Rational, 4>& alpha);

/// Game matrices Phi_k[x][y] = q(x,y) zeta^{k f(x,y)}, zeta = exp(2 pi i/d),
/// for k = 1..d-1.
std::vector<Eigen::MatrixXcd> build_phi_matrices(const DOutcomeGame& game);

struct RootsOfUnityCheck {
  enum class Status { satisfied, not_satisfied, ambiguous };
  Status status = Status::ambiguous;
  double singular_gap = 0.0;  // relative gap of the top singular value of Phi_1
  double max_deviation = 0.0;
  std::string detail;
};

/// Tests whether the top singular vectors of Phi_1 are flat vectors of
/// d-th roots of unity and whether each Phi_k inherits them under
/// zeta -> zeta^k. A degenerate top singular value yields `ambiguous`.
RootsOfUnityCheck roots_of_unity_condition(const DOutcomeGame& game, double tolerance = 1e-6);

/// Membership of the correlator point in the cut polytope of the complete
/// bipartite graph, decided by an exact feasibility LP over enumerated
/// cut vectors.
bool cut_membership(const CorrelatorPoint& point, int max_parties_total = 16);

enum class ElliptopeMembership { member, non_member_suspected };

/// PSD-completion feasibility: a correlation matrix with unit diagonal
/// and the given bipartite block.
ElliptopeMembership elliptope_membership(const CorrelatorPoint& point,
                                         const SdpOptions& options = SdpOptions());

struct FaceDimBounds {
  int d_t = 0;                      // largest polyhedral-face dimension
  std::uint64_t max_face_dim = 0;   // (t-1 choose 2)
};

/// Face-dimension bounds of the t x t correlation-matrix body.
FaceDimBounds face_dim_bounds(int t);

/// A correlation inequality supporting a facet (dimension m_A m_B - 1)
/// cannot be tight for quantum correlations when that dimension exceeds
/// d_{m_A + m_B}.
bool correlation_facet_forced_violation(int m_a, int m_b);

enum class ChainMode { arcsin, theta };
enum class RegionVerdict { inside, boundary, outside };

struct ChainCheck {
  RegionVerdict verdict = RegionVerdict::inside;
  double lhs = 0.0;  // arcsin: max sum over distinguished pairs; theta: 2 max theta
  double rhs = 0.0;  // arcsin: pi; theta: sum of thetas
};

/// Quantum-boundary test for chained correlators. arcsin mode applies to
/// the 2x2 case; theta mode reads the chain entries of a square matrix,
/// requires at most one angle above pi/2, and compares 2 max theta with
/// the total angle sum.
ChainCheck chain_boundary_check(const CorrelatorPoint& point, ChainMode mode,
                                double tolerance = 1e-9);

struct QubitOptResult {
  double value = 0.0;
  std::array<double, 4> angles{};  // measurement directions A1, A2, B1, B2
  Eigen::Vector4d state;           // optimal two-qubit state for those angles
};

/// Lower bound on the quantum value of a B((2,2),(2,2)) inequality over
/// real-plane projective qubit measurements: for fixed angles the optimal
/// state is the top eigenvector of the 4x4 operator; the angles are found
/// by seeded multistart coordinate ascent with shrinking steps.
QubitOptResult qubit_optimize(const BellInequality& ineq, int starts = 200,
                              std::uint32_t seed = 7);

}  // namespace bellkit
