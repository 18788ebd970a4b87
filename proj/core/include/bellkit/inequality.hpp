#pragma once

#include <array>
#include <optional>
#include <vector>

#include "bellkit/scenario.hpp"

namespace bellkit {

/// A linear functional on boxes together with an optional classical bound.
/// Coefficients are exact rationals in flat event order.
struct BellInequality {
  BellScenario scenario;
  std::vector<Rational> coeff;
  std::optional<Rational> bound;  // classical bound, once computed

  std::vector<double> coeff_as_double() const;

  template <typename Scalar>
  Scalar evaluate(const BasicBox<Scalar>& box) const;
};

/// Exact value of a deterministic strategy under an inequality, computed
/// from the assignments directly (the induced box has one 1 per setting
/// pair).
Rational ldb_value(const BellInequality& ineq, const LocalDeterministicBox& ldb);

struct ClassicalResult {
  Rational value;
  LocalDeterministicBox argmax;  // lexicographically first maximizer
};

/// Maximum of coeff . p over all local deterministic boxes, exact.
ClassicalResult classical_value(const BellInequality& ineq,
                                std::uint64_t limit = BellScenario::kDefaultLdbLimit);

struct FaceReport {
  std::vector<LocalDeterministicBox> saturating_ldbs;
  int affine_dim = -1;
  bool is_proper = false;
  bool is_facet = false;
  Rational bound_used;
};

/// Collects saturating deterministic boxes of coeff . p <= bound and
/// reports the affine dimension of the face they span. Uses the stored
/// bound if present, otherwise the classical value.
FaceReport face_dimension(const BellInequality& ineq,
                          std::uint64_t limit = BellScenario::kDefaultLdbLimit);

/// Weighted CHSH-type inequality
///   a11<A1B1> + a12<A1B2> + a21<A2B1> - a22<A2B2> <= 1 - 2 min(a)
/// in probability form on B((2,2),(2,2)). Weights must be positive and
/// sum to 1.
BellInequality tilted_chsh(const std::array<Rational, 4>& alpha);

// ---------------------------------------------------------------------
// Minimal (Collins-Gisin style) parametrization. The coordinates are the
// joint probabilities with the last outcome of each setting dropped,
// followed by Alice then Bob marginals, again without last outcomes.
// Exactly ns_dimension(scenario) coordinates; affine ranks and facet
// enumeration run in these coordinates.
// ---------------------------------------------------------------------

struct CollinsGisin {
  explicit CollinsGisin(BellScenario scenario);

  const BellScenario& scenario() const { return scenario_; }
  int dimension() const { return dim_; }

  /// Coordinates of a valid no-signalling box (marginals read off via the
  /// other party's setting 1).
  std::vector<Rational> coordinates(const RationalBox& box) const;
  std::vector<Rational> coordinates(const LocalDeterministicBox& ldb) const;

  /// Each coordinate as a linear functional on the full probability
  /// vector (row of the linear map R^n -> R^D).
  const std::vector<std::vector<Rational>>& functionals() const { return functionals_; }

  /// Full box entry p_e as an affine functional of the coordinates:
  /// p_e(z) = offset + gradient . z.
  struct AffineEntry {
    Rational offset;
    std::vector<Rational> gradient;
  };
  const AffineEntry& entry_expansion(std::size_t flat_event) const {
    return entries_[flat_event];
  }

  /// Lifts an inequality g . z <= c on coordinates to a full coefficient
  /// vector on probabilities with the same values on no-signalling boxes.
  BellInequality lift(const std::vector<Rational>& gradient, const Rational& bound) const;

 private:
  BellScenario scenario_;
  int dim_ = 0;
  std::vector<std::vector<Rational>> functionals_;
  std::vector<AffineEntry> entries_;
};

}  // namespace bellkit
