#pragma once

#include "bellkit/inequality.hpp"
#include "bellkit/xorcorr.hpp"

namespace bellkit {

/// CHSH as an XOR game: weights ((1,1),(1,-1)).
XorGame chsh_xor_game();

/// CHSH in probability form (correlator expansion), classical bound 2.
BellInequality chsh_correlator_inequality();

/// Sum of the 8 winning-event probabilities of the CHSH game, classical
/// bound 3.
BellInequality chsh_sum_inequality();

/// Five-term inequality with marginal terms on B((2,2),(2,2)):
///   P(1,1|1,1) + alpha P(2,2|1,1) - P(1,2|1,2) - P(2,1|2,1) - P(1,1|2,2)
///   <= alpha
/// for 0 < alpha <= 1.
BellInequality marginal_term_inequality(const Rational& alpha);

/// The 4-outcome, 4-setting correlation game whose first game matrix has
/// entries in {±2, ±i}/24; no quantum advantage, classical value 3/4.
DOutcomeGame four_outcome_correlation_game();

/// Extremal no-signalling box winning the CHSH game with certainty.
RationalBox pr_box();

/// Quantum box maximally violating CHSH: (2+sqrt2)/8 on winning events,
/// (2-sqrt2)/8 elsewhere.
Box tsirelson_box();

/// Correlators of the maximal CHSH violation: 1/sqrt2 with one sign flip.
CorrelatorPoint tsirelson_point();

template <typename Scalar>
BasicBox<Scalar> uniform_box(const BellScenario& scenario);

}  // namespace bellkit
