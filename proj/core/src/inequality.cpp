#include "bellkit/inequality.hpp"

#include <algorithm>

namespace bellkit {

std::vector<double> BellInequality::coeff_as_double() const {
  std::vector<double> out;
  out.reserve(coeff.size());
  for (const auto& c : coeff) out.push_back(to_double(c));
  return out;
}

template <typename Scalar>
Scalar BellInequality::evaluate(const BasicBox<Scalar>& box) const {
  if (box.p.size() != coeff.size()) throw validation_error("box/inequality length mismatch");
  Scalar acc(0);
  for (std::size_t i = 0; i < coeff.size(); ++i) {
    if constexpr (std::is_same_v<Scalar, double>)
      acc += to_double(coeff[i]) * box.p[i];
    else
      acc += coeff[i] * box.p[i];
  }
  return acc;
}

template double BellInequality::evaluate<double>(const BasicBox<double>&) const;
template Rational BellInequality::evaluate<Rational>(const BasicBox<Rational>&) const;

Rational ldb_value(const BellInequality& ineq, const LocalDeterministicBox& ldb) {
  const BellScenario& s = ineq.scenario;
  Rational acc(0);
  for (int x = 1; x <= s.settings_a(); ++x)
    for (int y = 1; y <= s.settings_b(); ++y) {
      EventIndex e{x, ldb.outcome_for_a[static_cast<std::size_t>(x) - 1], y,
                   ldb.outcome_for_b[static_cast<std::size_t>(y) - 1]};
      acc += ineq.coeff[flat_index(s, e)];
    }
  return acc;
}

ClassicalResult classical_value(const BellInequality& ineq, std::uint64_t limit) {
  const BellScenario& s = ineq.scenario;
  s.validate();
  if (ineq.coeff.size() != s.event_count())
    throw validation_error("inequality length does not match scenario");
  s.ldb_count(limit);

  const auto ldbs = enumerate_ldbs(s, limit);
  ClassicalResult best{ldb_value(ineq, ldbs.front()), ldbs.front()};
  for (std::size_t i = 1; i < ldbs.size(); ++i) {
    Rational v = ldb_value(ineq, ldbs[i]);
    if (v > best.value) {
      best.value = std::move(v);
      best.argmax = ldbs[i];
    }
  }
  return best;
}

FaceReport face_dimension(const BellInequality& ineq, std::uint64_t limit) {
  const BellScenario& s = ineq.scenario;
  FaceReport report;
  report.bound_used = ineq.bound ? *ineq.bound : classical_value(ineq, limit).value;

  const auto ldbs = enumerate_ldbs(s, limit);
  const CollinsGisin cg(s);
  std::vector<std::vector<Rational>> saturating_points;
  for (const auto& ldb : ldbs) {
    if (ldb_value(ineq, ldb) == report.bound_used) {
      report.saturating_ldbs.push_back(ldb);
      saturating_points.push_back(cg.coordinates(ldb));
    }
  }
  report.affine_dim = affine_dimension(saturating_points);
  report.is_proper =
      !report.saturating_ldbs.empty() && report.saturating_ldbs.size() != ldbs.size();
  report.is_facet = report.is_proper && report.affine_dim == s.ns_dimension() - 1;
  return report;
}

BellInequality tilted_chsh(const std::array<Rational, 4>& alpha) {
  Rational sum(0);
  for (const auto& a : alpha) {
    if (a <= 0) throw validation_error("tilted CHSH weights must be positive");
    sum += a;
  }
  if (sum != 1) throw validation_error("tilted CHSH weights must sum to 1");

  const BellScenario s = make_scenario({2, 2}, {2, 2});
  BellInequality ineq{s, std::vector<Rational>(s.event_count(), Rational(0)), std::nullopt};
  // Signed correlator weights: minus sign on the (2,2) term.
  const Rational w[2][2] = {{alpha[0], alpha[1]}, {alpha[2], -alpha[3]}};
  for (int x = 1; x <= 2; ++x)
    for (int y = 1; y <= 2; ++y)
      for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
          const int sign = ((a - 1) + (b - 1)) % 2 == 0 ? 1 : -1;
          ineq.coeff[flat_index(s, {x, a, y, b})] =
              w[x - 1][y - 1] * sign;
        }
  ineq.bound = Rational(1) - 2 * *std::min_element(alpha.begin(), alpha.end());
  return ineq;
}

CollinsGisin::CollinsGisin(BellScenario scenario) : scenario_(std::move(scenario)) {
  scenario_.validate();
  const BellScenario& s = scenario_;
  const std::size_t n = s.event_count();
  dim_ = s.ns_dimension();

  auto blank = [n]() { return std::vector<Rational>(n, Rational(0)); };

  // Joint block: both outcomes below the last one, (x, a, y, b) row-major.
  for (int x = 1; x <= s.settings_a(); ++x)
    for (int a = 1; a < s.outcomes_a[static_cast<std::size_t>(x) - 1]; ++a)
      for (int y = 1; y <= s.settings_b(); ++y)
        for (int b = 1; b < s.outcomes_b[static_cast<std::size_t>(y) - 1]; ++b) {
          auto f = blank();
          f[flat_index(s, {x, a, y, b})] = 1;
          functionals_.push_back(std::move(f));
        }
  // Alice marginals via Bob setting 1.
  for (int x = 1; x <= s.settings_a(); ++x)
    for (int a = 1; a < s.outcomes_a[static_cast<std::size_t>(x) - 1]; ++a) {
      auto f = blank();
      for (int b = 1; b <= s.outcomes_b[0]; ++b) f[flat_index(s, {x, a, 1, b})] = 1;
      functionals_.push_back(std::move(f));
    }
  // Bob marginals via Alice setting 1.
  for (int y = 1; y <= s.settings_b(); ++y)
    for (int b = 1; b < s.outcomes_b[static_cast<std::size_t>(y) - 1]; ++b) {
      auto f = blank();
      for (int a = 1; a <= s.outcomes_a[0]; ++a) f[flat_index(s, {1, a, y, b})] = 1;
      functionals_.push_back(std::move(f));
    }

  if (static_cast<int>(functionals_.size()) != dim_)
    throw validation_error("internal: coordinate count disagrees with dimension formula");

  // Coordinate positions by (setting, outcome), matching the emission
  // order above.
  const int ma = s.settings_a();
  const int mb = s.settings_b();
  int pos = 0;
  std::vector<std::vector<std::vector<std::vector<int>>>> joint(
      static_cast<std::size_t>(ma));
  for (int x = 1; x <= ma; ++x) {
    joint[x - 1].resize(static_cast<std::size_t>(s.outcomes_a[x - 1] - 1));
    for (int a = 1; a < s.outcomes_a[x - 1]; ++a) {
      joint[x - 1][a - 1].resize(static_cast<std::size_t>(mb));
      for (int y = 1; y <= mb; ++y) {
        joint[x - 1][a - 1][y - 1].resize(static_cast<std::size_t>(s.outcomes_b[y - 1] - 1));
        for (int b = 1; b < s.outcomes_b[y - 1]; ++b) joint[x - 1][a - 1][y - 1][b - 1] = pos++;
      }
    }
  }
  std::vector<std::vector<int>> amarg(static_cast<std::size_t>(ma));
  for (int x = 1; x <= ma; ++x) {
    amarg[x - 1].resize(static_cast<std::size_t>(s.outcomes_a[x - 1] - 1));
    for (int a = 1; a < s.outcomes_a[x - 1]; ++a) amarg[x - 1][a - 1] = pos++;
  }
  std::vector<std::vector<int>> bmarg(static_cast<std::size_t>(mb));
  for (int y = 1; y <= mb; ++y) {
    bmarg[y - 1].resize(static_cast<std::size_t>(s.outcomes_b[y - 1] - 1));
    for (int b = 1; b < s.outcomes_b[y - 1]; ++b) bmarg[y - 1][b - 1] = pos++;
  }

  // Affine reconstruction of every full entry from the coordinates.
  entries_.resize(n);
  for (std::size_t e = 0; e < n; ++e) {
    const EventIndex ev = event_at(s, e);
    const int da = s.outcomes_a[static_cast<std::size_t>(ev.setting_a) - 1];
    const int db = s.outcomes_b[static_cast<std::size_t>(ev.setting_b) - 1];
    AffineEntry exp{Rational(0), std::vector<Rational>(static_cast<std::size_t>(dim_), Rational(0))};
    const bool last_a = ev.outcome_a == da;
    const bool last_b = ev.outcome_b == db;
    const int x = ev.setting_a, y = ev.setting_b;
    if (!last_a && !last_b) {
      exp.gradient[static_cast<std::size_t>(joint[x - 1][ev.outcome_a - 1][y - 1][ev.outcome_b - 1])] += 1;
    } else if (!last_a && last_b) {
      // p(a, last | x, y) = pA(a|x) - sum_{b < last} p(a, b | x, y)
      exp.gradient[static_cast<std::size_t>(amarg[x - 1][ev.outcome_a - 1])] += 1;
      for (int b = 1; b < db; ++b)
        exp.gradient[static_cast<std::size_t>(joint[x - 1][ev.outcome_a - 1][y - 1][b - 1])] -= 1;
    } else if (last_a && !last_b) {
      exp.gradient[static_cast<std::size_t>(bmarg[y - 1][ev.outcome_b - 1])] += 1;
      for (int a = 1; a < da; ++a)
        exp.gradient[static_cast<std::size_t>(joint[x - 1][a - 1][y - 1][ev.outcome_b - 1])] -= 1;
    } else {
      // p(last, last | x, y) = 1 - sum_a pA(a|x) - sum_b pB(b|y) + sum_ab p(a,b|x,y)
      exp.offset = 1;
      for (int a = 1; a < da; ++a) exp.gradient[static_cast<std::size_t>(amarg[x - 1][a - 1])] -= 1;
      for (int b = 1; b < db; ++b) exp.gradient[static_cast<std::size_t>(bmarg[y - 1][b - 1])] -= 1;
      for (int a = 1; a < da; ++a)
        for (int b = 1; b < db; ++b)
          exp.gradient[static_cast<std::size_t>(joint[x - 1][a - 1][y - 1][b - 1])] += 1;
    }
    entries_[e] = std::move(exp);
  }
}

std::vector<Rational> CollinsGisin::coordinates(const RationalBox& box) const {
  if (box.p.size() != scenario_.event_count())
    throw validation_error("box length does not match scenario");
  std::vector<Rational> z(static_cast<std::size_t>(dim_), Rational(0));
  for (std::size_t i = 0; i < functionals_.size(); ++i) {
    Rational acc(0);
    const auto& f = functionals_[i];
    for (std::size_t j = 0; j < f.size(); ++j)
      if (f[j] != 0) acc += f[j] * box.p[j];
    z[i] = std::move(acc);
  }
  return z;
}

std::vector<Rational> CollinsGisin::coordinates(const LocalDeterministicBox& ldb) const {
  return coordinates(ldb.to_box<Rational>(scenario_));
}

BellInequality CollinsGisin::lift(const std::vector<Rational>& gradient,
                                  const Rational& bound) const {
  if (gradient.size() != static_cast<std::size_t>(dim_))
    throw validation_error("gradient length does not match coordinate dimension");
  BellInequality out{scenario_, std::vector<Rational>(scenario_.event_count(), Rational(0)),
                     bound};
  for (std::size_t i = 0; i < gradient.size(); ++i) {
    if (gradient[i] == 0) continue;
    const auto& f = functionals_[i];
    for (std::size_t j = 0; j < f.size(); ++j)
      if (f[j] != 0) out.coeff[j] += gradient[i] * f[j];
  }
  return out;
}

}  // namespace bellkit
