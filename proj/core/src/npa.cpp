#include "bellkit/npa.hpp"

#include <algorithm>
#include <map>

#include "bellkit/orthograph.hpp"

namespace bellkit {

Word normal_form(Word word) {
  if (word.zero) return Word::zero_word();

  std::vector<Generator> parts[2];
  for (const auto& g : word.gens) parts[g.party].push_back(g);

  Word out;
  for (auto& part : parts) {
    std::vector<Generator> stack;
    for (const auto& g : part) {
      if (!stack.empty()) {
        const Generator& top = stack.back();
        if (top == g) continue;  // idempotent projector
        if (top.party == g.party && top.setting == g.setting && top.outcome != g.outcome)
          return Word::zero_word();  // orthogonal outcomes of one setting
      }
      stack.push_back(g);
    }
    out.gens.insert(out.gens.end(), stack.begin(), stack.end());
  }
  return out;
}

Word word_product(const Word& lhs, const Word& rhs) {
  if (lhs.zero || rhs.zero) return Word::zero_word();
  Word cat;
  cat.gens = lhs.gens;
  cat.gens.insert(cat.gens.end(), rhs.gens.begin(), rhs.gens.end());
  return normal_form(std::move(cat));
}

Word word_adjoint(const Word& word) {
  Word out = word;
  std::reverse(out.gens.begin(), out.gens.end());
  return out;
}

namespace {

Generator alice_gen(int setting0, int outcome0) {
  return {0, static_cast<std::uint16_t>(setting0), static_cast<std::uint16_t>(outcome0)};
}
Generator bob_gen(int setting0, int outcome0) {
  return {1, static_cast<std::uint16_t>(setting0), static_cast<std::uint16_t>(outcome0)};
}

Word single(Generator g) {
  Word w;
  w.gens.push_back(g);
  return w;
}

int pack_cell(int row, int col, int size) { return row * size + col; }

}  // namespace

MomentProblem build_moment_problem(const BellScenario& scenario, NpaLevel level,
                                   const BellInequality& objective, bool strict_words) {
  scenario.validate();
  if (objective.coeff.size() != scenario.event_count())
    throw validation_error("objective length does not match scenario");
  if (strict_words && level != NpaLevel::level_1ab)
    throw validation_error("strict word set applies to level 1+AB only");

  MomentProblem mp;
  mp.scenario = scenario;
  mp.level = level;
  mp.strict_words = strict_words;

  const int ma = scenario.settings_a();
  const int mb = scenario.settings_b();
  const bool singles = level == NpaLevel::level_1 || strict_words;
  const bool products = level == NpaLevel::level_1ab;

  mp.words.push_back(Word::identity());
  std::vector<int> alice_word(static_cast<std::size_t>(scenario.outcome_sum_a()), -1);
  std::vector<int> bob_word(static_cast<std::size_t>(scenario.outcome_sum_b()), -1);
  if (singles) {
    int idx = 0;
    for (int x = 0; x < ma; ++x)
      for (int a = 0; a < scenario.outcomes_a[static_cast<std::size_t>(x)]; ++a) {
        alice_word[static_cast<std::size_t>(idx++)] = static_cast<int>(mp.words.size());
        mp.words.push_back(single(alice_gen(x, a)));
      }
    idx = 0;
    for (int y = 0; y < mb; ++y)
      for (int b = 0; b < scenario.outcomes_b[static_cast<std::size_t>(y)]; ++b) {
        bob_word[static_cast<std::size_t>(idx++)] = static_cast<int>(mp.words.size());
        mp.words.push_back(single(bob_gen(y, b)));
      }
  }
  std::vector<int> product_word(scenario.event_count(), -1);
  if (products) {
    for (std::size_t e = 0; e < scenario.event_count(); ++e) {
      const EventIndex ev = event_at(scenario, e);
      Word w;
      w.gens.push_back(alice_gen(ev.setting_a - 1, ev.outcome_a - 1));
      w.gens.push_back(bob_gen(ev.setting_b - 1, ev.outcome_b - 1));
      product_word[e] = static_cast<int>(mp.words.size());
      mp.words.push_back(std::move(w));
    }
  }

  const int t = mp.size();

  // Cell of the moment that equals the box entry for an event.
  mp.event_cells.resize(scenario.event_count());
  for (std::size_t e = 0; e < scenario.event_count(); ++e) {
    if (products) {
      mp.event_cells[e] = pack_cell(0, product_word[e], t);
    } else {
      const EventIndex ev = event_at(scenario, e);
      int arow = 0;
      for (int x = 0; x < ev.setting_a - 1; ++x)
        arow += scenario.outcomes_a[static_cast<std::size_t>(x)];
      arow += ev.outcome_a - 1;
      int brow = 0;
      for (int y = 0; y < ev.setting_b - 1; ++y)
        brow += scenario.outcomes_b[static_cast<std::size_t>(y)];
      brow += ev.outcome_b - 1;
      mp.event_cells[e] =
          pack_cell(alice_word[static_cast<std::size_t>(arow)], bob_word[static_cast<std::size_t>(brow)], t);
    }
  }

  // Word-algebra cell partition: equal normal forms share a value, Zero
  // cells vanish. The real-symmetric matrix identifies a cell with its
  // transpose, so the class key is the smaller of the two products.
  std::map<Word, std::vector<int>> classes;
  for (int r = 0; r < t; ++r)
    for (int c = r; c < t; ++c) {
      if (r == 0 && c == 0) continue;  // unit cell handled separately
      const Word fw = word_product(word_adjoint(mp.words[static_cast<std::size_t>(r)]),
                                   mp.words[static_cast<std::size_t>(c)]);
      if (fw.zero) {
        mp.zero_cells.push_back(pack_cell(r, c, t));
        continue;
      }
      const Word bw = word_product(word_adjoint(mp.words[static_cast<std::size_t>(c)]),
                                   mp.words[static_cast<std::size_t>(r)]);
      classes[std::min(fw, bw)].push_back(pack_cell(r, c, t));
    }
  for (auto& [key, cells] : classes) mp.equality_classes.push_back(std::move(cells));

  // Normalization and no-signalling enter as maximum-clique equalities of
  // the orthogonality graph on the first-row/box cells.
  const auto cliques = maximal_cliques(build_orthogonality_graph(scenario));
  for (const auto& clique : cliques.maximum_cliques) {
    std::vector<int> cells;
    cells.reserve(clique.size());
    for (int e : clique) cells.push_back(mp.event_cells[static_cast<std::size_t>(e)]);
    mp.clique_equalities.push_back(std::move(cells));
  }

  mp.objective = Eigen::MatrixXd::Zero(t, t);
  for (std::size_t e = 0; e < scenario.event_count(); ++e) {
    const double coeff = to_double(objective.coeff[e]);
    if (coeff == 0.0) continue;
    const int cell = mp.event_cells[e];
    const int r = cell / t, c = cell % t;
    if (r == c) {
      mp.objective(r, c) += coeff;
    } else {
      mp.objective(r, c) += 0.5 * coeff;
      mp.objective(c, r) += 0.5 * coeff;
    }
  }
  return mp;
}

SdpProblem MomentProblem::to_sdp() const {
  const int t = size();
  SdpProblem sdp;
  sdp.size = t;
  sdp.objective = objective;

  std::vector<Eigen::MatrixXd> mats;
  std::vector<double> vals;
  auto cell_matrix = [t](int cell, double weight) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(t, t);
    const int r = cell / t, c = cell % t;
    if (r == c) {
      m(r, c) = weight;
    } else {
      m(r, c) = 0.5 * weight;
      m(c, r) = 0.5 * weight;
    }
    return m;
  };

  Eigen::MatrixXd unit = Eigen::MatrixXd::Zero(t, t);
  unit(0, 0) = 1.0;
  mats.push_back(unit);
  vals.push_back(1.0);

  for (int cell : zero_cells) {
    mats.push_back(cell_matrix(cell, 1.0));
    vals.push_back(0.0);
  }
  for (const auto& cls : equality_classes) {
    for (std::size_t j = 1; j < cls.size(); ++j) {
      Eigen::MatrixXd m = cell_matrix(cls[0], 1.0) - cell_matrix(cls[j], 1.0);
      mats.push_back(std::move(m));
      vals.push_back(0.0);
    }
  }
  for (const auto& clique : clique_equalities) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(t, t);
    for (int cell : clique) m += cell_matrix(cell, 1.0);
    mats.push_back(std::move(m));
    vals.push_back(1.0);
  }

  sdp.constraint_matrices = std::move(mats);
  sdp.constraint_values = Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
  return sdp;
}

double word_value(const Word& word, const LocalDeterministicBox& ldb) {
  if (word.zero) return 0.0;
  for (const auto& g : word.gens) {
    const int chosen = g.party == 0 ? ldb.outcome_for_a[g.setting] : ldb.outcome_for_b[g.setting];
    if (chosen - 1 != static_cast<int>(g.outcome)) return 0.0;
  }
  return 1.0;
}

Eigen::MatrixXd ldb_moment_matrix(const MomentProblem& problem, const LocalDeterministicBox& ldb) {
  const int t = problem.size();
  Eigen::VectorXd g(t);
  for (int i = 0; i < t; ++i) g[i] = word_value(problem.words[static_cast<std::size_t>(i)], ldb);
  return g * g.transpose();
}

Box extract_box(const MomentProblem& problem, const Eigen::MatrixXd& X) {
  Box box{problem.scenario, std::vector<double>(problem.scenario.event_count(), 0.0)};
  const int t = problem.size();
  for (std::size_t e = 0; e < box.p.size(); ++e) {
    const int cell = problem.event_cells[e];
    box.p[e] = X(cell / t, cell % t);
  }
  return box;
}

NpaResult npa_value(const BellScenario& scenario, const BellInequality& ineq, NpaLevel level,
                    bool strict_words, const SdpOptions& options) {
  NpaResult result;
  result.problem = build_moment_problem(scenario, level, ineq, strict_words);
  result.details = solve_sdp(result.problem.to_sdp(), options);
  result.value = result.details.value;
  return result;
}

}  // namespace bellkit
