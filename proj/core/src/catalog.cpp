#include "bellkit/catalog.hpp"

#include <cmath>

#include "bellkit/orthograph.hpp"

namespace bellkit {

XorGame chsh_xor_game() {
  XorGame g;
  g.alpha = {{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}};
  return g;
}

BellInequality chsh_correlator_inequality() {
  BellInequality ineq = game_to_inequality(chsh_xor_game());
  ineq.bound = Rational(2);
  return ineq;
}

BellInequality chsh_sum_inequality() {
  const BellScenario s = make_scenario({2, 2}, {2, 2});
  BellInequality ineq{s, std::vector<Rational>(s.event_count(), Rational(0)), Rational(3)};
  for (int e : chsh_sum_events()) ineq.coeff[static_cast<std::size_t>(e)] = 1;
  return ineq;
}

BellInequality marginal_term_inequality(const Rational& alpha) {
  if (alpha <= 0 || alpha > 1) throw validation_error("alpha must lie in (0, 1]");
  const BellScenario s = make_scenario({2, 2}, {2, 2});
  BellInequality ineq{s, std::vector<Rational>(s.event_count(), Rational(0)), alpha};
  ineq.coeff[flat_index(s, {1, 1, 1, 1})] = 1;
  ineq.coeff[flat_index(s, {1, 2, 1, 2})] = alpha;
  ineq.coeff[flat_index(s, {1, 1, 2, 2})] = -1;
  ineq.coeff[flat_index(s, {2, 2, 1, 1})] = -1;
  ineq.coeff[flat_index(s, {2, 1, 2, 1})] = -1;
  return ineq;
}

DOutcomeGame four_outcome_correlation_game() {
  DOutcomeGame g;
  g.d = 4;
  const Rational lo(1, 24), hi(1, 12);
  g.q = {{lo, hi, hi, lo}, {hi, lo, lo, hi}, {hi, lo, lo, hi}, {lo, hi, hi, lo}};
  g.f = {{1, 4, 2, 1}, {4, 1, 1, 2}, {2, 1, 1, 4}, {1, 2, 4, 1}};
  return g;
}

RationalBox pr_box() {
  const BellScenario s = make_scenario({2, 2}, {2, 2});
  RationalBox box{s, std::vector<Rational>(s.event_count(), Rational(0))};
  for (int x = 1; x <= 2; ++x)
    for (int y = 1; y <= 2; ++y)
      for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
          if (((a - 1) ^ (b - 1)) == (x - 1) * (y - 1))
            box.p[flat_index(s, {x, a, y, b})] = Rational(1, 2);
  return box;
}

Box tsirelson_box() {
  const BellScenario s = make_scenario({2, 2}, {2, 2});
  const double win = (2.0 + std::sqrt(2.0)) / 8.0;
  const double lose = (2.0 - std::sqrt(2.0)) / 8.0;
  Box box{s, std::vector<double>(s.event_count(), lose)};
  for (int e : chsh_sum_events()) box.p[static_cast<std::size_t>(e)] = win;
  return box;
}

CorrelatorPoint tsirelson_point() {
  const double r = 1.0 / std::sqrt(2.0);
  CorrelatorPoint pt;
  pt.c = {{r, r}, {r, -r}};
  return pt;
}

template <typename Scalar>
BasicBox<Scalar> uniform_box(const BellScenario& scenario) {
  scenario.validate();
  BasicBox<Scalar> box{scenario, std::vector<Scalar>(scenario.event_count(), Scalar(0))};
  for (int x = 1; x <= scenario.settings_a(); ++x)
    for (int y = 1; y <= scenario.settings_b(); ++y) {
      const int da = scenario.outcomes_a[static_cast<std::size_t>(x) - 1];
      const int db = scenario.outcomes_b[static_cast<std::size_t>(y) - 1];
      for (int a = 1; a <= da; ++a)
        for (int b = 1; b <= db; ++b)
          box.p[flat_index(scenario, {x, a, y, b})] = Scalar(1) / Scalar(da * db);
    }
  return box;
}

template BasicBox<double> uniform_box<double>(const BellScenario&);
template BasicBox<Rational> uniform_box<Rational>(const BellScenario&);

}  // namespace bellkit
