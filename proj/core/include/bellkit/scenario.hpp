#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bellkit/errors.hpp"
#include "bellkit/rational.hpp"

namespace bellkit {

/// Two-party measurement scenario: per-setting outcome counts for Alice
/// and Bob. Settings and outcomes are 1-based at the API surface.
struct BellScenario {
  std::vector<int> outcomes_a;  // d_A[i], one entry per Alice setting
  std::vector<int> outcomes_b;  // d_B[i], one entry per Bob setting

  int settings_a() const { return static_cast<int>(outcomes_a.size()); }
  int settings_b() const { return static_cast<int>(outcomes_b.size()); }
  int outcome_sum_a() const;
  int outcome_sum_b() const;

  /// Total number of joint events n = (sum d_A) * (sum d_B).
  std::size_t event_count() const;

  /// Dimension of the no-signalling polytope:
  /// (sum(d_A - 1) + 1)(sum(d_B - 1) + 1) - 1.
  int ns_dimension() const;

  /// Number of local deterministic boxes, prod(d_A) * prod(d_B).
  /// Throws capacity_error when the count exceeds `limit`.
  std::uint64_t ldb_count(std::uint64_t limit = kDefaultLdbLimit) const;

  bool operator==(const BellScenario&) const = default;

  void validate() const;  // throws validation_error on malformed input

  static constexpr std::uint64_t kDefaultLdbLimit = 10'000'000;
};

inline BellScenario make_scenario(std::vector<int> da, std::vector<int> db) {
  BellScenario s{std::move(da), std::move(db)};
  s.validate();
  return s;
}

/// One joint measurement event (o_A, o_B | i_A, i_B), all fields 1-based.
struct EventIndex {
  int setting_a = 1;
  int outcome_a = 1;
  int setting_b = 1;
  int outcome_b = 1;

  bool operator==(const EventIndex&) const = default;
};

/// Row-major flat index over (i_A, o_A, i_B, o_B). Bijective with 0..n-1.
std::size_t flat_index(const BellScenario& scenario, const EventIndex& event);
EventIndex event_at(const BellScenario& scenario, std::size_t flat);

/// Box of joint conditional probabilities, indexed by flat event order.
/// `Scalar` is double for numerical work and Rational for exact work.
template <typename Scalar>
struct BasicBox {
  BellScenario scenario;
  std::vector<Scalar> p;
};

using Box = BasicBox<double>;
using RationalBox = BasicBox<Rational>;

inline Box to_double_box(const RationalBox& box) {
  Box out{box.scenario, {}};
  out.p.reserve(box.p.size());
  for (const auto& v : box.p) out.p.push_back(to_double(v));
  return out;
}

/// Deterministic local strategy: one fixed outcome per setting (1-based).
struct LocalDeterministicBox {
  std::vector<int> outcome_for_a;  // size m_A
  std::vector<int> outcome_for_b;  // size m_B

  bool operator==(const LocalDeterministicBox&) const = default;

  bool hits(const EventIndex& event) const {
    return outcome_for_a[static_cast<std::size_t>(event.setting_a) - 1] == event.outcome_a &&
           outcome_for_b[static_cast<std::size_t>(event.setting_b) - 1] == event.outcome_b;
  }

  template <typename Scalar>
  BasicBox<Scalar> to_box(const BellScenario& scenario) const;
};

/// All deterministic strategies in lexicographic order of
/// (outcome_for_a, outcome_for_b) tuples.
std::vector<LocalDeterministicBox> enumerate_ldbs(
    const BellScenario& scenario,
    std::uint64_t limit = BellScenario::kDefaultLdbLimit);

/// One detected constraint violation in a box.
struct BoxViolation {
  enum class Kind { negative_entry, normalization, no_signalling };
  Kind kind;
  // negative_entry: flat event index; normalization: (i_A, i_B);
  // no_signalling: (party, setting pair and marginal indices), see text.
  std::string description;
  double magnitude = 0.0;
};

struct BoxValidation {
  bool nonnegative = true;
  bool normalized = true;
  bool no_signalling = true;
  std::vector<BoxViolation> violations;

  bool all_ok() const { return nonnegative && normalized && no_signalling; }
};

/// Checks non-negativity, per-setting-pair normalization, and both
/// no-signalling marginal families within `tolerance`. Exact for the
/// rational flavor with tolerance 0. Throws on shape mismatch.
BoxValidation validate_box(const Box& box, double tolerance);
BoxValidation validate_box(const RationalBox& box, const Rational& tolerance = Rational(0));

/// Dimension of the no-signalling polytope (free-function form).
int ns_dimension(const BellScenario& scenario);

}  // namespace bellkit
