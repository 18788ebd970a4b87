#include "bellkit/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "bellkit/catalog.hpp"
#include "bellkit/facets.hpp"
#include "bellkit/npa.hpp"
#include "bellkit/orthograph.hpp"
#include "bellkit/sdp.hpp"

namespace bellkit {

namespace {

struct Checker {
  bool ok = true;
  std::vector<std::string> details;

  void expect(bool cond, const std::string& what) {
    details.push_back(std::string(cond ? "ok    " : "FAIL  ") + what);
    ok = ok && cond;
  }
  void note(const std::string& what) { details.push_back("      " + what); }
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

// --- row implementations ---------------------------------------------

void check_chsh_classical(Checker& c) {
  const auto result = classical_value(chsh_correlator_inequality());
  c.expect(result.value == Rational(2), "CHSH classical value equals 2 exactly");
  c.expect(ldb_value(chsh_correlator_inequality(), result.argmax) == Rational(2),
           "argmax strategy reaches the bound");
}

void check_chsh_facet(Checker& c) {
  auto ineq = chsh_correlator_inequality();
  const auto report = face_dimension(ineq);
  c.expect(report.saturating_ldbs.size() == 8, "8 of 16 deterministic boxes saturate");
  c.expect(report.affine_dim == 7, "affine dimension 7");
  c.expect(ineq.scenario.ns_dimension() - 1 == 7, "which is D - 1");
  c.expect(report.is_facet, "facet flag set");
}

void check_facet_enumeration(Checker& c) {
  const BellScenario s = make_scenario({2, 2}, {2, 2});
  const auto facets = enumerate_facets(s);
  c.expect(facets.size() == 24, "24 facets in total, got " + std::to_string(facets.size()));

  // Expected canonical forms in the minimal coordinates.
  const CollinsGisin cg(s);
  std::set<std::pair<std::vector<Rational>, Rational>> expected;
  for (std::size_t e = 0; e < s.event_count(); ++e) {
    const auto& exp = cg.entry_expansion(e);
    std::vector<Rational> grad(exp.gradient.size());
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] = -exp.gradient[i];
    Rational bound = exp.offset;
    canonicalize_integer_form(grad, bound);
    expected.emplace(std::move(grad), std::move(bound));
  }
  c.expect(expected.size() == 16, "16 distinct non-negativity forms");
  std::size_t nonneg_hits = 0;
  for (const auto& f : facets)
    if (expected.count({f.cg_coeff, f.cg_bound})) ++nonneg_hits;
  c.expect(nonneg_hits == 16, "all non-negativity facets present");

  // The CHSH family: correlator sign patterns with an odd number of
  // minus signs.
  std::set<std::pair<std::vector<Rational>, Rational>> chsh_forms;
  for (int mask = 0; mask < 16; ++mask) {
    int minus = __builtin_popcount(static_cast<unsigned>(mask));
    if (minus % 2 == 0) continue;
    std::vector<Rational> grad(static_cast<std::size_t>(cg.dimension()), Rational(0));
    Rational constant(0);
    for (int x = 1; x <= 2; ++x)
      for (int y = 1; y <= 2; ++y) {
        const int sign = (mask >> ((x - 1) * 2 + (y - 1))) & 1 ? -1 : 1;
        for (int a = 1; a <= 2; ++a)
          for (int b = 1; b <= 2; ++b) {
            const int parity = ((a - 1) + (b - 1)) % 2 == 0 ? 1 : -1;
            const auto& exp = cg.entry_expansion(flat_index(s, {x, a, y, b}));
            const Rational w = Rational(sign * parity);
            constant += w * exp.offset;
            for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += w * exp.gradient[i];
          }
      }
    Rational bound = Rational(2) - constant;
    canonicalize_integer_form(grad, bound);
    chsh_forms.emplace(std::move(grad), std::move(bound));
  }
  c.expect(chsh_forms.size() == 8, "8 distinct CHSH sign variants");
  std::size_t chsh_hits = 0;
  for (const auto& f : facets)
    if (chsh_forms.count({f.cg_coeff, f.cg_bound})) ++chsh_hits;
  c.expect(chsh_hits == 8, "all 8 CHSH-class facets present");

  // Determinism: a second run reproduces the list exactly.
  const auto again = enumerate_facets(s);
  bool same = again.size() == facets.size();
  for (std::size_t i = 0; same && i < facets.size(); ++i)
    same = again[i].cg_coeff == facets[i].cg_coeff && again[i].cg_bound == facets[i].cg_bound &&
           again[i].lifted.coeff == facets[i].lifted.coeff;
  c.expect(same, "repeated enumeration is identical");
}

void check_aq_chsh(Checker& c) {
  const double target_sum = 2.0 + std::sqrt(2.0);
  const double target_corr = 2.0 * std::sqrt(2.0);

  const auto sum = npa_value(make_scenario({2, 2}, {2, 2}), chsh_sum_inequality(),
                             NpaLevel::level_1ab);
  c.expect(sum.details.status == SdpStatus::converged, "event-sum solve converged");
  c.expect(std::abs(sum.value - target_sum) <= 1e-4,
           "event-sum value " + fmt(sum.value) + " within 1e-4 of 2+sqrt2");

  const auto corr = npa_value(make_scenario({2, 2}, {2, 2}), chsh_correlator_inequality(),
                              NpaLevel::level_1ab);
  c.expect(corr.details.status == SdpStatus::converged, "correlator solve converged");
  c.expect(std::abs(corr.value - target_corr) <= 1e-4,
           "correlator value " + fmt(corr.value) + " within 1e-4 of 2sqrt2");

  const auto box = extract_box(sum.problem, sum.details.X);
  const auto validation = validate_box(box, 1e-6);
  c.expect(validation.all_ok(), "first-row entries form a valid no-signalling box");
}

void check_aq_violates_facets(Checker& c) {
  const BellScenario s = make_scenario({2, 2}, {2, 2});
  const auto facets = enumerate_facets(s);
  int nontrivial = 0;
  for (const auto& f : facets) {
    // Non-negativity facets have a single support event; skip them.
    int support = 0;
    for (const auto& v : f.lifted.coeff)
      if (v != 0) ++support;
    if (support <= 1) continue;
    ++nontrivial;
    const Rational classical = *f.lifted.bound;
    const auto aq = npa_value(s, f.lifted, NpaLevel::level_1ab);
    const double gap = aq.value - to_double(classical);
    c.expect(aq.details.status == SdpStatus::converged && gap > 1e-3,
             "facet " + std::to_string(nontrivial) + ": relaxation exceeds classical by " +
                 fmt(gap));
  }
  c.expect(nontrivial == 8, "checked all 8 non-trivial facets");
}

void check_tilted(Checker& c) {
  const std::array<Rational, 4> alpha{Rational(9, 16), Rational(1, 4), Rational(1, 8),
                                      Rational(1, 16)};
  const auto cond = tilted_no_advantage(alpha);
  c.expect(cond.lhs == Rational(289, 65536), "left side recomputes to 289/65536");
  c.expect(cond.rhs == Rational(429, 65536), "right side recomputes to 429/65536");
  c.expect(cond.holds, "no-advantage condition holds");

  auto ineq = tilted_chsh(alpha);
  const auto classical = classical_value(ineq);
  c.expect(classical.value == Rational(7, 8), "classical value 7/8 exactly");
  c.expect(*ineq.bound == classical.value, "stated bound matches enumeration");

  const auto level1 = npa_value(ineq.scenario, ineq, NpaLevel::level_1);
  c.expect(level1.details.status == SdpStatus::converged, "level-1 solve converged");
  c.expect(std::abs(level1.value - 0.875) <= 1e-5,
           "level-1 value " + fmt(level1.value) + " within 1e-5 of 7/8");

  c.expect(!face_dimension(ineq).is_facet, "tilted inequality is not a facet");
}

void check_four_outcome_game(Checker& c) {
  const DOutcomeGame game = four_outcome_correlation_game();
  const auto phis = build_phi_matrices(game);

  const std::complex<double> i01(0.0, 1.0);
  Eigen::MatrixXcd expected(4, 4);
  expected << i01, 2, -2, i01, 2, i01, i01, -2, -2, i01, i01, 2, i01, -2, 2, i01;
  expected /= 24.0;
  c.expect((phis[0] - expected).cwiseAbs().maxCoeff() <= 1e-12,
           "first game matrix matches entrywise");

  const auto roots = roots_of_unity_condition(game);
  c.expect(roots.status == RootsOfUnityCheck::Status::satisfied,
           "singular vectors are flat roots of unity, inherited by every power");

  auto ineq = game_to_inequality(game);
  const auto classical = classical_value(ineq);
  c.expect(classical.value == Rational(3, 4), "classical value 3/4 exactly over 65536 strategies");

  const auto level1 = npa_value(ineq.scenario, ineq, NpaLevel::level_1);
  c.expect(level1.details.status == SdpStatus::converged, "level-1 solve converged");
  c.expect(std::abs(level1.value - 0.75) <= 1e-4,
           "level-1 value " + fmt(level1.value) + " within 1e-4 of 3/4");
}

void check_marginal_example(Checker& c) {
  const Rational alpha(9, 10);
  auto ineq = marginal_term_inequality(alpha);

  const auto classical = classical_value(ineq);
  c.expect(classical.value == alpha, "classical value 9/10 exactly");

  const Rational pr_value = ineq.evaluate(pr_box());
  c.expect(pr_value == Rational(19, 20), "PR-box value 19/20 exactly");
  c.expect(pr_value == (Rational(1) + alpha) / 2, "PR-box value equals (1+alpha)/2");

  const auto qopt = qubit_optimize(ineq);
  c.expect(std::abs(qopt.value - 0.9) <= 1e-3,
           "two-qubit optimum " + fmt(qopt.value) + " within 1e-3 of alpha");

  const auto face = face_dimension(ineq);
  c.expect(face.affine_dim == 2, "face dimension 2");
  const std::vector<LocalDeterministicBox> listed = {
      {{2, 2}, {2, 1}}, {{2, 2}, {2, 2}}, {{2, 1}, {2, 2}}};
  bool all_found = true;
  for (const auto& ldb : listed)
    all_found = all_found && std::find(face.saturating_ldbs.begin(), face.saturating_ldbs.end(),
                                       ldb) != face.saturating_ldbs.end();
  c.expect(all_found, "the three listed strategies are among the saturators");
}

void check_lo_cliques(Checker& c) {
  for (const auto& [da, db] : std::vector<std::pair<std::vector<int>, std::vector<int>>>{
           {{2, 2}, {2, 2}}, {{3, 3}, {2, 2}}, {{2, 2}, {2, 2, 2}}}) {
    const BellScenario s = make_scenario(da, db);
    const auto report = verify_lo_cliques(s);
    std::ostringstream name;
    name << "B((";
    for (std::size_t i = 0; i < da.size(); ++i) name << (i ? "," : "") << da[i];
    name << "),(";
    for (std::size_t i = 0; i < db.size(); ++i) name << (i ? "," : "") << db[i];
    name << "))";
    c.expect(report.all_matched,
             "every maximum clique matches a constraint in " + name.str());
  }
  const auto graph = build_orthogonality_graph(make_scenario({2, 2}, {2, 2}));
  c.expect(graph.vertex_count() == 16, "CHSH graph has 16 vertices");
  const auto cliques = maximal_cliques(graph);
  c.expect(cliques.maximum_size == 4, "maximum clique size 4");
}

void check_aq_certificate(Checker& c) {
  const auto cert = chsh_aq_certificate();
  const double overlap_target = 1.0 - 1.0 / std::sqrt(2.0);

  double worst_norm = std::abs(cert.rep.handle.norm() - 1.0);
  for (const auto& w : cert.rep.vectors) worst_norm = std::max(worst_norm, std::abs(w.norm() - 1.0));
  c.expect(worst_norm <= 1e-10, "all nine vectors unit norm within 1e-10");

  double worst_overlap = 0.0;
  for (const auto& w : cert.rep.vectors) {
    const double o = cert.rep.handle.dot(w);
    worst_overlap = std::max(worst_overlap, std::abs(o * o - overlap_target));
  }
  c.expect(worst_overlap <= 1e-10, "squared handle overlaps equal 1 - 1/sqrt2 within 1e-10");

  const auto graph = build_orthogonality_graph(make_scenario({2, 2}, {2, 2}));
  const auto sub = induced_subgraph(graph, cert.events);
  const auto check = validate_representation(complement(sub), cert.rep, 1e-10);
  c.expect(check.ok, "orthogonality residuals pass against the frozen pairing (worst " +
                         fmt(check.max_residual) + ")");

  // The pairing is recoverable by exhaustive search over orderings.
  const auto base_events = chsh_sum_events();
  const auto base_sub = induced_subgraph(graph, base_events);
  std::vector<int> perm(base_events.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  int found = 0;
  bool frozen_found = false;
  do {
    bool valid = true;
    for (std::size_t i = 0; i < perm.size() && valid; ++i)
      for (std::size_t j = i + 1; j < perm.size() && valid; ++j) {
        if (base_sub.adjacent(perm[i], perm[j])) continue;  // only complement edges constrain
        valid = std::abs(cert.rep.vectors[i].dot(cert.rep.vectors[j])) <= 1e-10;
      }
    if (valid) {
      ++found;
      std::vector<int> events(perm.size());
      for (std::size_t i = 0; i < perm.size(); ++i)
        events[i] = base_events[static_cast<std::size_t>(perm[i])];
      frozen_found = frozen_found || events == cert.events;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  c.expect(found > 0, "exhaustive search recovers " + std::to_string(found) + " valid pairings");
  c.expect(frozen_found, "the frozen pairing is among them");

  const double on_max = aq_boundary_evaluate(cert.rep, tsirelson_box(), cert.events);
  c.expect(std::abs(on_max - 1.0) <= 1e-8,
           "boundary functional equals 1 on the maximal box (" + fmt(on_max) + ")");

  const auto best_classical = classical_value(chsh_sum_inequality());
  const double on_classical = aq_boundary_evaluate(
      cert.rep, best_classical.argmax.to_box<double>(make_scenario({2, 2}, {2, 2})), cert.events);
  c.expect(on_classical <= 0.879,
           "boundary functional at most 0.879 on the best classical box (" + fmt(on_classical) +
               ")");
}

void check_correlation_polytope(Checker& c) {
  const auto bounds = face_dim_bounds(4);
  c.expect(bounds.d_t == 2 && bounds.max_face_dim == 3, "t=4 bounds are (2, 3)");
  c.expect(correlation_facet_forced_violation(2, 2),
           "2x2 correlation facets exceed the polyhedral face bound");

  const CorrelatorPoint tsirelson = tsirelson_point();
  c.expect(elliptope_membership(tsirelson) == ElliptopeMembership::member,
           "maximal CHSH correlators admit a PSD completion");
  c.expect(!cut_membership(tsirelson), "and are outside the cut polytope");

  CorrelatorPoint impossible;
  impossible.c = {{1, 1}, {1, -1}};
  c.expect(!cut_membership(impossible), "(1,1,1,-1) is outside the cut polytope");
  c.expect(elliptope_membership(impossible) == ElliptopeMembership::non_member_suspected,
           "(1,1,1,-1) has no PSD completion");

  const auto chain = chain_boundary_check(tsirelson, ChainMode::arcsin, 1e-9);
  c.expect(chain.verdict == RegionVerdict::boundary,
           "arcsin boundary identity holds at the maximal point within 1e-9");
}

// Random-word helper for the confluence suite.
Word random_word(std::mt19937& rng, int max_len) {
  Word w;
  const int len = static_cast<int>(rng() % static_cast<std::uint32_t>(max_len + 1));
  for (int i = 0; i < len; ++i) {
    Generator g;
    g.party = static_cast<std::uint8_t>(rng() % 2);
    g.setting = static_cast<std::uint16_t>(rng() % 3);
    g.outcome = static_cast<std::uint16_t>(rng() % 3);
    w.gens.push_back(g);
  }
  return w;
}

// Applies single rewrite steps at random applicable positions until none
// applies; an independent route to the normal form.
Word random_order_rewrite(Word w, std::mt19937& rng) {
  if (w.zero) return Word::zero_word();
  while (true) {
    std::vector<std::pair<std::size_t, int>> moves;  // position, rule
    for (std::size_t i = 0; i + 1 < w.gens.size(); ++i) {
      const Generator& a = w.gens[i];
      const Generator& b = w.gens[i + 1];
      if (a.party == 1 && b.party == 0) moves.push_back({i, 0});  // commute B A -> A B
      if (a == b) moves.push_back({i, 1});                        // collapse
      if (a.party == b.party && a.setting == b.setting && a.outcome != b.outcome)
        moves.push_back({i, 2});  // orthogonal
    }
    if (moves.empty()) return w;
    const auto [pos, rule] = moves[rng() % moves.size()];
    if (rule == 0) {
      std::swap(w.gens[pos], w.gens[pos + 1]);
    } else if (rule == 1) {
      w.gens.erase(w.gens.begin() + static_cast<std::ptrdiff_t>(pos));
    } else {
      return Word::zero_word();
    }
  }
}

void check_property_suites(Checker& c) {
  std::mt19937 rng(20240811);

  // Rank-one moment matrices of deterministic strategies satisfy every
  // constraint exactly.
  {
    const std::vector<BellScenario> pool = {
        make_scenario({2, 2}, {2, 2}), make_scenario({2, 2}, {2, 2, 2}),
        make_scenario({3, 2}, {2, 2}), make_scenario({2, 2, 2}, {2, 2}),
        make_scenario({3, 3}, {2, 2})};
    std::vector<MomentProblem> problems;
    for (const auto& s : pool) {
      BellInequality zero{s, std::vector<Rational>(s.event_count(), Rational(0)), std::nullopt};
      problems.push_back(build_moment_problem(s, NpaLevel::level_1ab, zero));
    }
    int failures = 0;
    const int cases = 1000;
    for (int it = 0; it < cases; ++it) {
      const std::size_t pick = rng() % problems.size();
      const MomentProblem& mp = problems[pick];
      const BellScenario& s = mp.scenario;
      LocalDeterministicBox ldb;
      for (int d : s.outcomes_a)
        ldb.outcome_for_a.push_back(static_cast<int>(rng() % static_cast<std::uint32_t>(d)) + 1);
      for (int d : s.outcomes_b)
        ldb.outcome_for_b.push_back(static_cast<int>(rng() % static_cast<std::uint32_t>(d)) + 1);
      const Eigen::MatrixXd gamma = ldb_moment_matrix(mp, ldb);
      const int t = mp.size();
      bool good = gamma(0, 0) == 1.0;
      for (int cell : mp.zero_cells) good = good && gamma(cell / t, cell % t) == 0.0;
      for (const auto& cls : mp.equality_classes)
        for (std::size_t j = 1; j < cls.size(); ++j)
          good = good && gamma(cls[0] / t, cls[0] % t) == gamma(cls[j] / t, cls[j] % t);
      for (const auto& clique : mp.clique_equalities) {
        double sum = 0;
        for (int cell : clique) sum += gamma(cell / t, cell % t);
        good = good && sum == 1.0;
      }
      const Box box = extract_box(mp, gamma);
      const Box direct = ldb.to_box<double>(s);
      good = good && box.p == direct.p;
      if (!good) ++failures;
    }
    c.expect(failures == 0,
             "1000 deterministic moment matrices feasible exactly (failures: " +
                 std::to_string(failures) + ")");
  }

  // Relaxation-level ordering and classical feasibility on random
  // inequalities.
  {
    const BellScenario s = make_scenario({2, 2}, {2, 2});
    BellInequality zero{s, std::vector<Rational>(s.event_count(), Rational(0)), std::nullopt};
    const MomentProblem mp1 = build_moment_problem(s, NpaLevel::level_1, zero);
    const MomentProblem mp1ab = build_moment_problem(s, NpaLevel::level_1ab, zero);
    const SdpProblem base1 = mp1.to_sdp();
    const SdpProblem base1ab = mp1ab.to_sdp();

    SdpOptions options;
    options.tolerance = 1e-7;

    int order_failures = 0, classical_failures = 0, solve_failures = 0;
    const int cases = 1000;
    for (int it = 0; it < cases; ++it) {
      BellInequality ineq{s, std::vector<Rational>(s.event_count(), Rational(0)), std::nullopt};
      for (auto& v : ineq.coeff) v = Rational(static_cast<int>(rng() % 7) - 3);

      const double classical = to_double(classical_value(ineq).value);

      auto solve_at = [&](const MomentProblem& mp, const SdpProblem& base) {
        SdpProblem sdp = base;
        sdp.objective = Eigen::MatrixXd::Zero(mp.size(), mp.size());
        const int t = mp.size();
        for (std::size_t e = 0; e < s.event_count(); ++e) {
          const double w = to_double(ineq.coeff[e]);
          if (w == 0.0) continue;
          const int cell = mp.event_cells[e];
          const int r = cell / t, col = cell % t;
          if (r == col) {
            sdp.objective(r, col) += w;
          } else {
            sdp.objective(r, col) += 0.5 * w;
            sdp.objective(col, r) += 0.5 * w;
          }
        }
        return solve_sdp(sdp, options);
      };

      const auto sol1 = solve_at(mp1, base1);
      const auto sol1ab = solve_at(mp1ab, base1ab);
      if (sol1.status != SdpStatus::converged || sol1ab.status != SdpStatus::converged) {
        ++solve_failures;
        continue;
      }
      if (sol1ab.value > sol1.value + 1e-6) ++order_failures;
      if (classical > sol1ab.value + 1e-6) ++classical_failures;
    }
    c.expect(solve_failures == 0,
             "1000 random inequalities solved at both levels (failures: " +
                 std::to_string(solve_failures) + ")");
    c.expect(order_failures == 0, "level 1+AB never exceeds level 1 (failures: " +
                                      std::to_string(order_failures) + ")");
    c.expect(classical_failures == 0, "classical value never exceeds level 1+AB (failures: " +
                                          std::to_string(classical_failures) + ")");
  }

  // Normal-form confluence under random rewrite orders.
  {
    int failures = 0;
    const int cases = 100000;
    for (int it = 0; it < cases; ++it) {
      const Word w = random_word(rng, 8);
      if (random_order_rewrite(w, rng) != normal_form(w)) ++failures;
    }
    c.expect(failures == 0, "normal form confluent on 100000 random words (failures: " +
                                std::to_string(failures) + ")");
  }

  // Solver residual contract on random feasible problems.
  {
    SdpOptions options;  // default tolerance
    int contract_failures = 0, unconverged = 0;
    const int cases = 1000;
    for (int it = 0; it < cases; ++it) {
      const int t = 2 + static_cast<int>(rng() % 4);
      const int m = 1 + static_cast<int>(rng() % 4);
      auto rand_entry = [&rng]() { return static_cast<double>(static_cast<int>(rng() % 5)) - 2.0; };
      Eigen::MatrixXd l = Eigen::MatrixXd::Zero(t, t);
      for (int i = 0; i < t; ++i)
        for (int j = 0; j <= i; ++j) l(i, j) = rand_entry();
      const Eigen::MatrixXd x0 = l * l.transpose();

      SdpProblem sdp;
      sdp.size = t;
      sdp.objective = Eigen::MatrixXd::Zero(t, t);
      for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j) sdp.objective(i, j) = rand_entry();
      sdp.objective = Eigen::MatrixXd(0.5 * (sdp.objective + sdp.objective.transpose()));

      std::vector<double> vals;
      Eigen::MatrixXd trace_con = Eigen::MatrixXd::Identity(t, t);
      sdp.constraint_matrices.push_back(trace_con);
      vals.push_back(x0.trace() + 1.0);
      for (int k = 0; k < m; ++k) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(t, t);
        for (int i = 0; i < t; ++i)
          for (int j = 0; j <= i; ++j) {
            a(i, j) = rand_entry();
            a(j, i) = a(i, j);
          }
        vals.push_back(a.cwiseProduct(x0).sum());
        sdp.constraint_matrices.push_back(std::move(a));
      }
      sdp.constraint_values =
          Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));

      const auto sol = solve_sdp(sdp, options);
      if (sol.status != SdpStatus::converged) {
        ++unconverged;
        continue;
      }
      double recomputed = 0.0;
      for (std::size_t k = 0; k < sdp.constraint_matrices.size(); ++k)
        recomputed = std::max(recomputed,
                              std::abs(sdp.constraint_matrices[k].cwiseProduct(sol.X).sum() -
                                       sdp.constraint_values[static_cast<int>(k)]));
      const bool good = sol.primal_residual <= options.tolerance &&
                        sol.psd_violation <= options.tolerance &&
                        std::abs(recomputed - sol.primal_residual) <= 1e-12;
      if (!good) ++contract_failures;
    }
    c.expect(unconverged == 0, "1000 random feasible problems converged (failures: " +
                                   std::to_string(unconverged) + ")");
    c.expect(contract_failures == 0,
             "converged solutions meet the residual contract (failures: " +
                 std::to_string(contract_failures) + ")");
  }
}

struct RowSpec {
  AcceptanceCheck meta;
  std::function<void(Checker&)> run;
  double time_limit_s;  // 0 = untimed
};

const std::vector<RowSpec>& rows() {
  static const std::vector<RowSpec> table = {
      {{"classical/chsh-value", "exact classical value of the CHSH inequality"},
       check_chsh_classical, 0.1},
      {{"polytope/chsh-facet", "CHSH saturators, affine dimension, facet flag"},
       check_chsh_facet, 0.1},
      {{"polytope/facet-enumeration", "full facet list of the two-setting binary scenario"},
       check_facet_enumeration, 5.0},
      {{"npa/aq-chsh-value", "level-(1+AB) value of the CHSH sum and correlator forms"},
       check_aq_chsh, 30.0},
      {{"npa/aq-violates-facets", "every non-trivial facet violated at level 1+AB"},
       check_aq_violates_facets, 0.0},
      {{"xor/tilted-no-advantage", "weighted CHSH with no quantum advantage"},
       check_tilted, 0.0},
      {{"dgame/four-outcome", "4-outcome correlation game: matrices, condition, values"},
       check_four_outcome_game, 300.0},
      {{"polytope/marginal-example", "five-term inequality with marginal terms"},
       check_marginal_example, 0.0},
      {{"orthograph/lo-cliques", "maximum cliques are normalization and no-signalling"},
       check_lo_cliques, 0.0},
      {{"orthograph/aq-boundary-certificate", "orthonormal-representation boundary certificate"},
       check_aq_certificate, 0.0},
      {{"corr/cut-elliptope-chain", "cut polytope, elliptope, and chain boundary checks"},
       check_correlation_polytope, 0.0},
      {{"properties/randomized-suites", "randomized property suites"},
       check_property_suites, 0.0},
  };
  return table;
}

}  // namespace

const std::vector<AcceptanceCheck>& acceptance_checks() {
  static const std::vector<AcceptanceCheck> list = [] {
    std::vector<AcceptanceCheck> out;
    for (const auto& row : rows()) out.push_back(row.meta);
    return out;
  }();
  return list;
}

CheckResult run_acceptance_check(const std::string& key) {
  for (const auto& row : rows()) {
    if (row.meta.key != key) continue;
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
      row.run(checker);
    } catch (const std::exception& e) {
      checker.expect(false, std::string("unexpected exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (row.time_limit_s > 0)
      checker.expect(seconds <= row.time_limit_s,
                     "completed in " + fmt(seconds) + " s (limit " + fmt(row.time_limit_s) + ")");
    return {key, checker.ok, seconds, checker.details};
  }
  throw validation_error("unknown check key: " + key);
}

std::vector<CheckResult> run_acceptance(const std::string& filter) {
  std::vector<CheckResult> out;
  for (const auto& row : rows()) {
    if (!filter.empty() && row.meta.key.find(filter) == std::string::npos) continue;
    out.push_back(run_acceptance_check(row.meta.key));
  }
  return out;
}

}  // namespace bellkit
