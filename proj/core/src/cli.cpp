#include "bellkit/cli.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellkit/catalog.hpp"
#include "bellkit/facets.hpp"
#include "bellkit/json_io.hpp"
#include "bellkit/npa.hpp"
#include "bellkit/orthograph.hpp"
#include "bellkit/reproduce.hpp"
#include "bellkit/version.hpp"

namespace bellkit::cli {

namespace {

using nlohmann::json;

struct Context {
  std::vector<std::string> args;
  std::uint64_t digest = 14695981039346656037ull;  // FNV-1a offset basis
  bool pretty = false;
  bool raw_output = false;  // bypass the report wrapper (graph export)
  std::string raw;
  json outputs;
  int exit_code = 0;

  void absorb(const std::string& bytes) {
    for (unsigned char b : bytes) {
      digest ^= b;
      digest *= 1099511628211ull;
    }
  }
  std::string load(const std::string& path) {
    std::string text = read_text_file(path);
    absorb(text);
    return text;
  }
};

std::string digest_string(std::uint64_t d) {
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setfill('0') << std::setw(16) << d;
  return out.str();
}

void print_pretty(std::ostream& out, const json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || value.is_array()) {
        out << prefix << key << ":\n";
        print_pretty(out, value, prefix + "  ");
      } else {
        out << prefix << key << " = " << (value.is_string() ? value.get<std::string>() : value.dump())
            << '\n';
      }
    }
  } else if (j.is_array()) {
    for (const auto& value : j) {
      if (value.is_object() || value.is_array()) {
        print_pretty(out, value, prefix + "  ");
        out << prefix << "-\n";
      } else {
        out << prefix << "- "
            << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
      }
    }
  }
}

json rational_node(const Rational& r) { return format_rational(r); }

json ldb_node(const LocalDeterministicBox& ldb) {
  return json{{"a", ldb.outcome_for_a}, {"b", ldb.outcome_for_b}};
}

const char* status_name(SdpStatus status) {
  switch (status) {
    case SdpStatus::converged: return "converged";
    case SdpStatus::max_iter: return "max_iter";
    default: return "infeasible_suspected";
  }
}

// --- subcommand bodies ------------------------------------------------

void cmd_scenario(Context& ctx, const std::string& file) {
  const BellScenario s = scenario_from_json(ctx.load(file));
  ctx.outputs = {{"n", s.event_count()},
                 {"D", s.ns_dimension()},
                 {"ldb_count", s.ldb_count()},
                 {"dA", s.outcomes_a},
                 {"dB", s.outcomes_b}};
}

void cmd_validate_box(Context& ctx, const std::string& file, bool rational, double tol) {
  const std::string text = ctx.load(file);
  BoxValidation report;
  if (rational) {
    report = validate_box(rational_box_from_json(text), Rational(0));
  } else {
    report = validate_box(box_from_json(text), tol);
  }
  json violations = json::array();
  for (const auto& v : report.violations)
    violations.push_back({{"what", v.description}, {"magnitude", v.magnitude}});
  ctx.outputs = {{"nonnegative", report.nonnegative},
                 {"normalized", report.normalized},
                 {"no_signalling", report.no_signalling},
                 {"violations", violations}};
  if (!report.all_ok()) ctx.exit_code = 2;
}

void cmd_classical(Context& ctx, const std::string& file, bool rational) {
  const BellInequality ineq = inequality_from_json(ctx.load(file));
  const auto result = classical_value(ineq);
  ctx.outputs["argmax"] = ldb_node(result.argmax);
  if (rational)
    ctx.outputs["value"] = rational_node(result.value);
  else
    ctx.outputs["value"] = to_double(result.value);
}

void cmd_facet_check(Context& ctx, const std::string& file) {
  const BellInequality ineq = inequality_from_json(ctx.load(file));
  const auto report = face_dimension(ineq);
  ctx.outputs = {{"saturating", report.saturating_ldbs.size()},
                 {"affine_dim", report.affine_dim},
                 {"is_proper", report.is_proper},
                 {"is_facet", report.is_facet},
                 {"bound", rational_node(report.bound_used)}};
}

void cmd_facets(Context& ctx, const std::string& file) {
  const BellScenario s = scenario_from_json(ctx.load(file));
  const auto facets = enumerate_facets(s);
  json list = json::array();
  for (const auto& f : facets) {
    json coeff = json::array();
    for (const auto& v : f.lifted.coeff) coeff.push_back(format_rational(v));
    json cg = json::array();
    for (const auto& v : f.cg_coeff) cg.push_back(format_rational(v));
    list.push_back({{"coeff", coeff},
                    {"bound", rational_node(*f.lifted.bound)},
                    {"cg_coeff", cg},
                    {"cg_bound", rational_node(f.cg_bound)}});
  }
  ctx.outputs = {{"count", facets.size()}, {"facets", list}};
}

void cmd_graph(Context& ctx, const std::string& file, const std::string& out_path) {
  const BellScenario s = scenario_from_json(ctx.load(file));
  const std::string edges = graph_to_edge_list(build_orthogonality_graph(s));
  if (out_path.empty()) {
    ctx.raw_output = true;
    ctx.raw = edges;
  } else {
    write_text_file(out_path, edges);
    ctx.outputs = {{"written", out_path}};
  }
}

void cmd_npa(Context& ctx, const std::string& file, const std::string& level, bool strict,
             bool verbose) {
  const BellInequality ineq = inequality_from_json(ctx.load(file));
  NpaLevel lvl;
  if (level == "1")
    lvl = NpaLevel::level_1;
  else if (level == "1ab")
    lvl = NpaLevel::level_1ab;
  else
    throw validation_error("level must be 1 or 1ab");
  const auto result = npa_value(ineq.scenario, ineq, lvl, strict);
  ctx.outputs = {{"value", result.value},
                 {"status", status_name(result.details.status)},
                 {"primal_residual", result.details.primal_residual},
                 {"dual_residual", result.details.dual_residual},
                 {"psd_violation", result.details.psd_violation},
                 {"level", level},
                 {"strict", strict}};
  if (verbose) {
    ctx.outputs["iterations"] = result.details.iterations;
    ctx.outputs["matrix_size"] = result.problem.size();
    ctx.outputs["tolerance"] = default_sdp_tolerance();
  }
  if (result.details.status != SdpStatus::converged) ctx.exit_code = 3;
}

void cmd_xor_value(Context& ctx, const std::string& file) {
  const XorGame game = xor_game_from_json(ctx.load(file));
  ctx.outputs = {{"value", xor_quantum_value(game)}};
}

void cmd_xor_no_advantage(Context& ctx, const std::string& file) {
  const XorGame game = xor_game_from_json(ctx.load(file));
  if (game.rows() != 2 || game.cols() != 2)
    throw validation_error("the no-advantage test takes a 2x2 weight matrix");
  const std::array<Rational, 4> alpha{game.alpha[0][0], game.alpha[0][1], game.alpha[1][0],
                                      game.alpha[1][1]};
  const auto result = tilted_no_advantage(alpha);
  ctx.outputs = {{"holds", result.holds},
                 {"lhs", rational_node(result.lhs)},
                 {"rhs", rational_node(result.rhs)}};
}

void cmd_dgame_phi(Context& ctx, const std::string& file) {
  const DOutcomeGame game = d_outcome_game_from_json(ctx.load(file));
  json mats = json::array();
  for (const auto& phi : build_phi_matrices(game)) {
    json rows = json::array();
    for (Eigen::Index x = 0; x < phi.rows(); ++x) {
      json row = json::array();
      for (Eigen::Index y = 0; y < phi.cols(); ++y)
        row.push_back(json::array({phi(x, y).real(), phi(x, y).imag()}));
      rows.push_back(std::move(row));
    }
    mats.push_back(std::move(rows));
  }
  ctx.outputs = {{"matrices", mats}};
}

void cmd_dgame_roots(Context& ctx, const std::string& file, double tol) {
  const DOutcomeGame game = d_outcome_game_from_json(ctx.load(file));
  const auto check = roots_of_unity_condition(game, tol);
  const char* status = check.status == RootsOfUnityCheck::Status::satisfied ? "satisfied"
                       : check.status == RootsOfUnityCheck::Status::not_satisfied
                           ? "not_satisfied"
                           : "ambiguous";
  ctx.outputs = {{"status", status},
                 {"singular_gap", check.singular_gap},
                 {"max_deviation", check.max_deviation},
                 {"detail", check.detail}};
}

void cmd_corr_cut(Context& ctx, const std::string& file) {
  const CorrelatorPoint point = point_from_json(ctx.load(file));
  ctx.outputs = {{"member", cut_membership(point)}};
}

void cmd_corr_elliptope(Context& ctx, const std::string& file) {
  const CorrelatorPoint point = point_from_json(ctx.load(file));
  ctx.outputs = {{"membership", elliptope_membership(point) == ElliptopeMembership::member
                                    ? "member"
                                    : "non_member_suspected"}};
}

void cmd_corr_chain(Context& ctx, const std::string& file, const std::string& mode, double tol) {
  const CorrelatorPoint point = point_from_json(ctx.load(file));
  ChainMode m;
  if (mode == "arcsin")
    m = ChainMode::arcsin;
  else if (mode == "theta")
    m = ChainMode::theta;
  else
    throw validation_error("mode must be arcsin or theta");
  const auto check = chain_boundary_check(point, m, tol);
  const char* verdict = check.verdict == RegionVerdict::inside     ? "inside"
                        : check.verdict == RegionVerdict::boundary ? "boundary"
                                                                   : "outside";
  ctx.outputs = {{"verdict", verdict}, {"lhs", check.lhs}, {"rhs", check.rhs}};
}

void cmd_qubit_opt(Context& ctx, const std::string& file, int starts, std::uint32_t seed) {
  const BellInequality ineq = inequality_from_json(ctx.load(file));
  const auto result = qubit_optimize(ineq, starts, seed);
  ctx.outputs = {{"value", result.value},
                 {"angles", result.angles},
                 {"starts", starts},
                 {"seed", seed}};
}

void cmd_reproduce(Context& ctx, const std::string& only, std::ostream& out) {
  const auto results = run_acceptance(only);
  bool all = true;
  json rows = json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    rows.push_back({{"key", r.key},
                    {"passed", r.passed},
                    {"seconds", r.seconds},
                    {"details", r.details}});
  }
  ctx.outputs = {{"results", rows}, {"all_passed", all}, {"count", results.size()}};
  if (results.empty() || !all) ctx.exit_code = 2;
  if (ctx.pretty) {
    for (const auto& r : results) {
      out << (r.passed ? "[PASS] " : "[FAIL] ") << r.key << "  (" << std::fixed
          << std::setprecision(2) << r.seconds << " s)\n";
      for (const auto& d : r.details) out << "    " << d << '\n';
    }
    out << (all ? "all checks passed" : "SOME CHECKS FAILED") << '\n';
    ctx.raw_output = true;  // table already printed
    ctx.raw = "";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bellkit: two-party Bell scenario verification toolkit"};
  app.set_version_flag("--version", BELLKIT_VERSION);

  Context ctx;
  ctx.args = args;

  std::function<void()> action;

  std::string file, out_path, level = "1ab", mode = "arcsin", only;
  bool rational = false, strict = false, verbose = false;
  double tol = 1e-9, roots_tol = 1e-6, chain_tol = 1e-9;
  int starts = 200;
  std::uint32_t seed = 7;

  auto add_pretty = [&](CLI::App* cmd) { cmd->add_flag("--pretty", ctx.pretty, "human-readable output"); };

  auto* scenario = app.add_subcommand("scenario", "event counts and polytope dimension");
  scenario->add_option("--file", file, "scenario JSON")->required();
  add_pretty(scenario);
  scenario->callback([&] { action = [&] { cmd_scenario(ctx, file); }; });

  auto* validate = app.add_subcommand("validate-box", "box constraint flags");
  validate->add_option("--box", file, "box JSON")->required();
  validate->add_flag("--rational", rational, "exact arithmetic, tolerance 0");
  validate->add_option("--tol", tol, "tolerance for the float path");
  add_pretty(validate);
  validate->callback([&] { action = [&] { cmd_validate_box(ctx, file, rational, tol); }; });

  auto* classical = app.add_subcommand("classical", "classical value of an inequality");
  classical->add_option("--ineq", file, "inequality JSON")->required();
  classical->add_flag("--rational", rational, "print the exact value");
  add_pretty(classical);
  classical->callback([&] { action = [&] { cmd_classical(ctx, file, rational); }; });

  auto* facet_check = app.add_subcommand("facet-check", "face dimension and facet flag");
  facet_check->add_option("--ineq", file, "inequality JSON")->required();
  add_pretty(facet_check);
  facet_check->callback([&] { action = [&] { cmd_facet_check(ctx, file); }; });

  auto* facets = app.add_subcommand("facets", "enumerate all facets of a small scenario");
  facets->add_option("--scenario", file, "scenario JSON")->required();
  add_pretty(facets);
  facets->callback([&] { action = [&] { cmd_facets(ctx, file); }; });

  auto* graph = app.add_subcommand("graph", "orthogonality graph edge list");
  graph->add_option("--scenario", file, "scenario JSON")->required();
  graph->add_option("--out", out_path, "write to a file instead of stdout");
  graph->callback([&] { action = [&] { cmd_graph(ctx, file, out_path); }; });

  auto* npa = app.add_subcommand("npa", "moment-relaxation value of an inequality");
  npa->add_option("--ineq", file, "inequality JSON")->required();
  npa->add_option("--level", level, "1 or 1ab")->required();
  npa->add_flag("--strict", strict, "add single-party words at level 1ab");
  npa->add_flag("--verbose", verbose, "solver diagnostics");
  add_pretty(npa);
  npa->callback([&] { action = [&] { cmd_npa(ctx, file, level, strict, verbose); }; });

  auto* xor_cmd = app.add_subcommand("xor", "binary correlation games");
  auto* xor_value = xor_cmd->add_subcommand("value", "quantum value by SDP");
  xor_value->add_option("--game", file, "game JSON")->required();
  add_pretty(xor_value);
  xor_value->callback([&] { action = [&] { cmd_xor_value(ctx, file); }; });
  auto* xor_noadv = xor_cmd->add_subcommand("no-advantage", "closed-form no-advantage test");
  xor_noadv->add_option("--game", file, "game JSON (2x2 positive weights)")->required();
  add_pretty(xor_noadv);
  xor_noadv->callback([&] { action = [&] { cmd_xor_no_advantage(ctx, file); }; });
  xor_cmd->require_subcommand(1);

  auto* dgame = app.add_subcommand("dgame", "d-outcome correlation games");
  auto* dgame_phi = dgame->add_subcommand("phi", "game matrices");
  dgame_phi->add_option("--game", file, "game JSON")->required();
  add_pretty(dgame_phi);
  dgame_phi->callback([&] { action = [&] { cmd_dgame_phi(ctx, file); }; });
  auto* dgame_roots = dgame->add_subcommand("roots", "roots-of-unity condition");
  dgame_roots->add_option("--game", file, "game JSON")->required();
  dgame_roots->add_option("--tol", roots_tol, "phase tolerance");
  add_pretty(dgame_roots);
  dgame_roots->callback([&] { action = [&] { cmd_dgame_roots(ctx, file, roots_tol); }; });
  dgame->require_subcommand(1);

  auto* corr = app.add_subcommand("corr", "correlator-point membership tests");
  auto* corr_cut = corr->add_subcommand("cut", "cut polytope membership (exact LP)");
  corr_cut->add_option("--point", file, "correlator JSON")->required();
  add_pretty(corr_cut);
  corr_cut->callback([&] { action = [&] { cmd_corr_cut(ctx, file); }; });
  auto* corr_ell = corr->add_subcommand("elliptope", "PSD completion feasibility");
  corr_ell->add_option("--point", file, "correlator JSON")->required();
  add_pretty(corr_ell);
  corr_ell->callback([&] { action = [&] { cmd_corr_elliptope(ctx, file); }; });
  auto* corr_chain = corr->add_subcommand("chain", "quantum chain-boundary test");
  corr_chain->add_option("--point", file, "correlator JSON")->required();
  corr_chain->add_option("--mode", mode, "arcsin or theta");
  corr_chain->add_option("--tol", chain_tol, "boundary tolerance");
  add_pretty(corr_chain);
  corr_chain->callback([&] { action = [&] { cmd_corr_chain(ctx, file, mode, chain_tol); }; });
  corr->require_subcommand(1);

  auto* qubit = app.add_subcommand("qubit-opt", "two-qubit lower bound for B((2,2),(2,2))");
  qubit->add_option("--ineq", file, "inequality JSON")->required();
  qubit->add_option("--starts", starts, "multistart count");
  qubit->add_option("--seed", seed, "random seed");
  add_pretty(qubit);
  qubit->callback([&] { action = [&] { cmd_qubit_opt(ctx, file, starts, seed); }; });

  auto* reproduce = app.add_subcommand("reproduce", "run the built-in verification matrix");
  reproduce->add_option("--only", only, "substring filter on row keys");
  add_pretty(reproduce);
  reproduce->callback([&] { action = [&] { cmd_reproduce(ctx, only, out); }; });

  app.require_subcommand(1);

  std::vector<std::string> argv_storage = args;
  std::vector<char*> argv;
  argv.push_back(const_cast<char*>("bellkit"));
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << BELLKIT_VERSION << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return 1;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    action();
  } catch (const validation_error& e) {
    err << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const capacity_error& e) {
    err << "capacity error: " << e.what() << '\n';
    return 4;
  } catch (const solver_error& e) {
    err << "solver error: " << e.what() << '\n';
    return 3;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (ctx.raw_output) {
    out << ctx.raw;
    return ctx.exit_code;
  }

  std::ostringstream cmdline;
  cmdline << "bellkit";
  for (const auto& a : args) cmdline << ' ' << a;

  if (ctx.pretty) {
    print_pretty(out, ctx.outputs, "");
    out << "(" << std::fixed << std::setprecision(3) << wall << " s)\n";
  } else {
    json report{{"command", cmdline.str()},
                {"inputs_digest", digest_string(ctx.digest)},
                {"outputs", ctx.outputs},
                {"versions", {{"bellkit", BELLKIT_VERSION}}},
                {"wall_time_s", wall}};
    out << report.dump() << '\n';
  }
  return ctx.exit_code;
}

}  // namespace bellkit::cli
