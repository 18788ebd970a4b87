#pragma once

#include <Eigen/Dense>
#include <compare>
#include <cstdint>
#include <vector>

#include "bellkit/inequality.hpp"
#include "bellkit/sdp.hpp"

namespace bellkit {

/// One projector symbol. Settings and outcomes are 0-based here; this is
/// the internal algebra, not the I/O surface.
struct Generator {
  std::uint8_t party = 0;  // 0 = Alice, 1 = Bob
  std::uint16_t setting = 0;
  std::uint16_t outcome = 0;
  auto operator<=>(const Generator&) const = default;
};

/// Product of projectors in normal form: Alice symbols before Bob symbols
/// (relative order within a party preserved), no adjacent repeats, and a
/// distinguished absorbing Zero. The empty word is the identity.
struct Word {
  bool zero = false;
  std::vector<Generator> gens;

  static Word identity() { return {}; }
  static Word zero_word() {
    Word w;
    w.zero = true;
    return w;
  }
  bool is_identity() const { return !zero && gens.empty(); }
  auto operator<=>(const Word&) const = default;
};

/// Rewrites to the unique normal form: cross-party commutation, then
/// idempotency (g g -> g) and same-setting orthogonality (-> Zero), each
/// applied to a fixed point.
Word normal_form(Word word);

/// normal_form of the concatenation.
Word word_product(const Word& lhs, const Word& rhs);

/// Adjoint = reversal; projectors are self-adjoint.
Word word_adjoint(const Word& word);

enum class NpaLevel { level_1, level_1ab };

/// Moment-matrix description for one scenario, level, and objective.
/// Cells are packed row-major (row * size + col) with row <= col.
struct MomentProblem {
  BellScenario scenario;
  NpaLevel level = NpaLevel::level_1ab;
  bool strict_words = false;  // 1+AB with single-party words added
  std::vector<Word> words;    // words[0] is the identity
  Eigen::MatrixXd objective;
  std::vector<std::vector<int>> equality_classes;  // cells sharing one value
  std::vector<int> zero_cells;
  std::vector<std::vector<int>> clique_equalities;  // cells summing to 1
  std::vector<int> event_cells;                     // flat event -> cell

  int size() const { return static_cast<int>(words.size()); }
  SdpProblem to_sdp() const;
};

MomentProblem build_moment_problem(const BellScenario& scenario, NpaLevel level,
                                   const BellInequality& objective,
                                   bool strict_words = false);

/// Deterministic strategies induce rank-one feasible moment matrices;
/// used as exact feasibility witnesses.
Eigen::MatrixXd ldb_moment_matrix(const MomentProblem& problem,
                                  const LocalDeterministicBox& ldb);

/// Value of a word under a deterministic assignment (0 or 1).
double word_value(const Word& word, const LocalDeterministicBox& ldb);

/// Box entries read off a solved moment matrix.
Box extract_box(const MomentProblem& problem, const Eigen::MatrixXd& X);

struct NpaResult {
  double value = 0.0;
  SdpSolution details;
  MomentProblem problem;
};

/// Relaxation value of an inequality at the given level.
NpaResult npa_value(const BellScenario& scenario, const BellInequality& ineq, NpaLevel level,
                    bool strict_words = false, const SdpOptions& options = SdpOptions());

}  // namespace bellkit
