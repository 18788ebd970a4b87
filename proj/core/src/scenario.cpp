#include "bellkit/scenario.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace bellkit {

int BellScenario::outcome_sum_a() const {
  return std::accumulate(outcomes_a.begin(), outcomes_a.end(), 0);
}

int BellScenario::outcome_sum_b() const {
  return std::accumulate(outcomes_b.begin(), outcomes_b.end(), 0);
}

std::size_t BellScenario::event_count() const {
  return static_cast<std::size_t>(outcome_sum_a()) * static_cast<std::size_t>(outcome_sum_b());
}

int BellScenario::ns_dimension() const {
  int sum_a = 0, sum_b = 0;
  for (int d : outcomes_a) sum_a += d - 1;
  for (int d : outcomes_b) sum_b += d - 1;
  return (sum_a + 1) * (sum_b + 1) - 1;
}

std::uint64_t BellScenario::ldb_count(std::uint64_t limit) const {
  std::uint64_t count = 1;
  auto mul_checked = [&](int d) {
    if (count > limit / static_cast<std::uint64_t>(d)) {
      std::ostringstream msg;
      msg << "deterministic strategy count exceeds limit " << limit;
      throw capacity_error(msg.str());
    }
    count *= static_cast<std::uint64_t>(d);
  };
  for (int d : outcomes_a) mul_checked(d);
  for (int d : outcomes_b) mul_checked(d);
  return count;
}

void BellScenario::validate() const {
  if (outcomes_a.empty() || outcomes_b.empty())
    throw validation_error("scenario needs at least one setting per party");
  for (int d : outcomes_a)
    if (d < 2) throw validation_error("every Alice setting needs at least 2 outcomes");
  for (int d : outcomes_b)
    if (d < 2) throw validation_error("every Bob setting needs at least 2 outcomes");
}

namespace {

// 0-based offset of the first outcome of a given setting in the stacked
// per-party outcome list.
int party_offset(const std::vector<int>& outcomes, int setting_1based) {
  int off = 0;
  for (int i = 0; i + 1 < setting_1based; ++i) off += outcomes[static_cast<std::size_t>(i)];
  return off;
}

}  // namespace

std::size_t flat_index(const BellScenario& scenario, const EventIndex& event) {
  if (event.setting_a < 1 || event.setting_a > scenario.settings_a() ||
      event.setting_b < 1 || event.setting_b > scenario.settings_b())
    throw validation_error("event setting out of range");
  const int da = scenario.outcomes_a[static_cast<std::size_t>(event.setting_a) - 1];
  const int db = scenario.outcomes_b[static_cast<std::size_t>(event.setting_b) - 1];
  if (event.outcome_a < 1 || event.outcome_a > da || event.outcome_b < 1 || event.outcome_b > db)
    throw validation_error("event outcome out of range");
  const int row = party_offset(scenario.outcomes_a, event.setting_a) + event.outcome_a - 1;
  const int col = party_offset(scenario.outcomes_b, event.setting_b) + event.outcome_b - 1;
  return static_cast<std::size_t>(row) * static_cast<std::size_t>(scenario.outcome_sum_b()) +
         static_cast<std::size_t>(col);
}

EventIndex event_at(const BellScenario& scenario, std::size_t flat) {
  if (flat >= scenario.event_count()) throw validation_error("flat event index out of range");
  const int sum_b = scenario.outcome_sum_b();
  int row = static_cast<int>(flat / static_cast<std::size_t>(sum_b));
  int col = static_cast<int>(flat % static_cast<std::size_t>(sum_b));
  EventIndex e;
  e.setting_a = 1;
  while (row >= scenario.outcomes_a[static_cast<std::size_t>(e.setting_a) - 1]) {
    row -= scenario.outcomes_a[static_cast<std::size_t>(e.setting_a) - 1];
    ++e.setting_a;
  }
  e.outcome_a = row + 1;
  e.setting_b = 1;
  while (col >= scenario.outcomes_b[static_cast<std::size_t>(e.setting_b) - 1]) {
    col -= scenario.outcomes_b[static_cast<std::size_t>(e.setting_b) - 1];
    ++e.setting_b;
  }
  e.outcome_b = col + 1;
  return e;
}

template <typename Scalar>
BasicBox<Scalar> LocalDeterministicBox::to_box(const BellScenario& scenario) const {
  BasicBox<Scalar> box{scenario, std::vector<Scalar>(scenario.event_count(), Scalar(0))};
  for (int x = 1; x <= scenario.settings_a(); ++x)
    for (int y = 1; y <= scenario.settings_b(); ++y) {
      EventIndex e{x, outcome_for_a[static_cast<std::size_t>(x) - 1], y,
                   outcome_for_b[static_cast<std::size_t>(y) - 1]};
      box.p[flat_index(scenario, e)] = Scalar(1);
    }
  return box;
}

template BasicBox<double> LocalDeterministicBox::to_box<double>(const BellScenario&) const;
template BasicBox<Rational> LocalDeterministicBox::to_box<Rational>(const BellScenario&) const;

std::vector<LocalDeterministicBox> enumerate_ldbs(const BellScenario& scenario,
                                                  std::uint64_t limit) {
  scenario.validate();
  const std::uint64_t total = scenario.ldb_count(limit);
  std::vector<LocalDeterministicBox> out;
  out.reserve(static_cast<std::size_t>(total));

  const int ma = scenario.settings_a();
  const int mb = scenario.settings_b();
  LocalDeterministicBox ldb{std::vector<int>(static_cast<std::size_t>(ma), 1),
                            std::vector<int>(static_cast<std::size_t>(mb), 1)};

  // Odometer over the concatenated assignment tuple, last position fastest,
  // which yields lexicographic order of (outcome_for_a, outcome_for_b).
  while (true) {
    out.push_back(ldb);
    int pos = ma + mb - 1;
    while (pos >= 0) {
      int& slot = pos < ma ? ldb.outcome_for_a[static_cast<std::size_t>(pos)]
                           : ldb.outcome_for_b[static_cast<std::size_t>(pos - ma)];
      const int d = pos < ma ? scenario.outcomes_a[static_cast<std::size_t>(pos)]
                             : scenario.outcomes_b[static_cast<std::size_t>(pos - ma)];
      if (slot < d) {
        ++slot;
        break;
      }
      slot = 1;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

namespace {

inline double to_double_scalar(double v) { return v; }
inline double to_double_scalar(const Rational& v) { return to_double(v); }

template <typename Scalar, typename AbsLess>
BoxValidation validate_box_impl(const BasicBox<Scalar>& box, const Scalar& tolerance,
                                AbsLess exceeds) {
  const BellScenario& s = box.scenario;
  s.validate();
  if (box.p.size() != s.event_count()) throw validation_error("box length does not match scenario");

  BoxValidation report;
  auto note = [&report](BoxViolation::Kind kind, std::string text, double magnitude) {
    report.violations.push_back({kind, std::move(text), magnitude});
  };

  for (std::size_t i = 0; i < box.p.size(); ++i) {
    if (exceeds(-box.p[i], tolerance)) {
      report.nonnegative = false;
      note(BoxViolation::Kind::negative_entry, "p[" + std::to_string(i) + "] < 0",
           -static_cast<double>(to_double_scalar(box.p[i])));
    }
  }

  for (int x = 1; x <= s.settings_a(); ++x)
    for (int y = 1; y <= s.settings_b(); ++y) {
      Scalar sum(0);
      for (int a = 1; a <= s.outcomes_a[static_cast<std::size_t>(x) - 1]; ++a)
        for (int b = 1; b <= s.outcomes_b[static_cast<std::size_t>(y) - 1]; ++b)
          sum += box.p[flat_index(s, {x, a, y, b})];
      Scalar defect = sum - Scalar(1);
      if (exceeds(defect, tolerance) || exceeds(-defect, tolerance)) {
        report.normalized = false;
        note(BoxViolation::Kind::normalization,
             "sum over outcomes for settings (" + std::to_string(x) + "," + std::to_string(y) +
                 ") != 1",
             std::abs(to_double_scalar(defect)));
      }
    }

  // Bob's marginal must not depend on Alice's setting.
  for (int y = 1; y <= s.settings_b(); ++y)
    for (int b = 1; b <= s.outcomes_b[static_cast<std::size_t>(y) - 1]; ++b)
      for (int x = 2; x <= s.settings_a(); ++x) {
        Scalar lhs(0), rhs(0);
        for (int a = 1; a <= s.outcomes_a[0]; ++a) lhs += box.p[flat_index(s, {1, a, y, b})];
        for (int a = 1; a <= s.outcomes_a[static_cast<std::size_t>(x) - 1]; ++a)
          rhs += box.p[flat_index(s, {x, a, y, b})];
        Scalar defect = lhs - rhs;
        if (exceeds(defect, tolerance) || exceeds(-defect, tolerance)) {
          report.no_signalling = false;
          note(BoxViolation::Kind::no_signalling,
               "Bob marginal (o_B=" + std::to_string(b) + ", i_B=" + std::to_string(y) +
                   ") differs between Alice settings 1 and " + std::to_string(x),
               std::abs(to_double_scalar(defect)));
        }
      }

  // Alice's marginal must not depend on Bob's setting.
  for (int x = 1; x <= s.settings_a(); ++x)
    for (int a = 1; a <= s.outcomes_a[static_cast<std::size_t>(x) - 1]; ++a)
      for (int y = 2; y <= s.settings_b(); ++y) {
        Scalar lhs(0), rhs(0);
        for (int b = 1; b <= s.outcomes_b[0]; ++b) lhs += box.p[flat_index(s, {x, a, 1, b})];
        for (int b = 1; b <= s.outcomes_b[static_cast<std::size_t>(y) - 1]; ++b)
          rhs += box.p[flat_index(s, {x, a, y, b})];
        Scalar defect = lhs - rhs;
        if (exceeds(defect, tolerance) || exceeds(-defect, tolerance)) {
          report.no_signalling = false;
          note(BoxViolation::Kind::no_signalling,
               "Alice marginal (o_A=" + std::to_string(a) + ", i_A=" + std::to_string(x) +
                   ") differs between Bob settings 1 and " + std::to_string(y),
               std::abs(to_double_scalar(defect)));
        }
      }

  return report;
}

}  // namespace

BoxValidation validate_box(const Box& box, double tolerance) {
  return validate_box_impl<double>(box, tolerance,
                                   [](double v, double tol) { return v > tol; });
}

BoxValidation validate_box(const RationalBox& box, const Rational& tolerance) {
  return validate_box_impl<Rational>(box, tolerance,
                                     [](const Rational& v, const Rational& tol) { return v > tol; });
}

int ns_dimension(const BellScenario& scenario) {
  scenario.validate();
  return scenario.ns_dimension();
}

}  // namespace bellkit
