#include "bellkit/json_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace bellkit {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw validation_error("malformed JSON input");
  return j;
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
  if (j.is_number_float()) return rational_from_double(j.get<double>());
  throw validation_error("expected a number or a 'p/q' string");
}

double double_from_json(const json& j) {
  if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
  if (j.is_number()) return j.get<double>();
  throw validation_error("expected a number");
}

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

json scenario_to_node(const BellScenario& s) {
  return json{{"dA", s.outcomes_a}, {"dB", s.outcomes_b}};
}

BellScenario scenario_from_node(const json& j) {
  if (!j.contains("dA") || !j.contains("dB"))
    throw validation_error("scenario needs dA and dB arrays");
  BellScenario s{j.at("dA").get<std::vector<int>>(), j.at("dB").get<std::vector<int>>()};
  s.validate();
  return s;
}

}  // namespace

std::string scenario_to_json(const BellScenario& scenario) {
  return scenario_to_node(scenario).dump();
}

BellScenario scenario_from_json(const std::string& text) {
  return scenario_from_node(parse(text));
}

std::string box_to_json(const RationalBox& box) {
  json p = json::array();
  for (const auto& v : box.p) p.push_back(format_rational(v));
  return json{{"scenario", scenario_to_node(box.scenario)}, {"p", p}}.dump();
}

std::string box_to_json(const Box& box) {
  json p = json::array();
  for (double v : box.p) p.push_back(format_double(v));
  return json{{"scenario", scenario_to_node(box.scenario)}, {"p", p}}.dump();
}

RationalBox rational_box_from_json(const std::string& text) {
  const json j = parse(text);
  RationalBox box{scenario_from_node(j.at("scenario")), {}};
  for (const auto& v : j.at("p")) box.p.push_back(rational_from_json(v));
  if (box.p.size() != box.scenario.event_count())
    throw validation_error("box length does not match scenario");
  return box;
}

Box box_from_json(const std::string& text) {
  const json j = parse(text);
  Box box{scenario_from_node(j.at("scenario")), {}};
  for (const auto& v : j.at("p")) box.p.push_back(double_from_json(v));
  if (box.p.size() != box.scenario.event_count())
    throw validation_error("box length does not match scenario");
  return box;
}

std::string inequality_to_json(const BellInequality& ineq) {
  json coeff = json::array();
  for (const auto& c : ineq.coeff) coeff.push_back(format_rational(c));
  json j{{"scenario", scenario_to_node(ineq.scenario)}, {"coeff", coeff}};
  if (ineq.bound) j["bound"] = format_rational(*ineq.bound);
  return j.dump();
}

BellInequality inequality_from_json(const std::string& text) {
  const json j = parse(text);
  BellInequality ineq{scenario_from_node(j.at("scenario")), {}, std::nullopt};
  for (const auto& v : j.at("coeff")) ineq.coeff.push_back(rational_from_json(v));
  if (ineq.coeff.size() != ineq.scenario.event_count())
    throw validation_error("coefficient length does not match scenario");
  if (j.contains("bound")) ineq.bound = rational_from_json(j.at("bound"));
  return ineq;
}

std::string game_to_json(const XorGame& game) {
  json rows = json::array();
  for (const auto& row : game.alpha) {
    json r = json::array();
    for (const auto& v : row) r.push_back(format_rational(v));
    rows.push_back(std::move(r));
  }
  return json{{"alpha", rows}}.dump();
}

XorGame xor_game_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("alpha")) throw validation_error("XOR game needs an alpha matrix");
  XorGame game;
  for (const auto& row : j.at("alpha")) {
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(rational_from_json(v));
    game.alpha.push_back(std::move(r));
  }
  game.validate();
  return game;
}

std::string game_to_json(const DOutcomeGame& game) {
  json qrows = json::array();
  for (const auto& row : game.q) {
    json r = json::array();
    for (const auto& v : row) r.push_back(format_rational(v));
    qrows.push_back(std::move(r));
  }
  return json{{"d", game.d}, {"q", qrows}, {"f", game.f}}.dump();
}

DOutcomeGame d_outcome_game_from_json(const std::string& text) {
  const json j = parse(text);
  DOutcomeGame game;
  game.d = j.at("d").get<int>();
  for (const auto& row : j.at("q")) {
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(rational_from_json(v));
    game.q.push_back(std::move(r));
  }
  game.f = j.at("f").get<std::vector<std::vector<int>>>();
  game.validate();
  return game;
}

std::string point_to_json(const CorrelatorPoint& point) {
  json rows = json::array();
  for (const auto& row : point.c) {
    json r = json::array();
    for (double v : row) r.push_back(format_double(v));
    rows.push_back(std::move(r));
  }
  return json{{"c", rows}}.dump();
}

CorrelatorPoint point_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("c")) throw validation_error("correlator point needs a c matrix");
  CorrelatorPoint point;
  for (const auto& row : j.at("c")) {
    std::vector<double> r;
    for (const auto& v : row) r.push_back(double_from_json(v));
    point.c.push_back(std::move(r));
  }
  point.validate();
  return point;
}

std::string representation_to_json(const OrthonormalRepresentation& rep) {
  auto vec_to_node = [](const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(format_double(v[i]));
    return arr;
  };
  json vectors = json::array();
  for (const auto& v : rep.vectors) vectors.push_back(vec_to_node(v));
  return json{{"dim", rep.dim}, {"phi", vec_to_node(rep.handle)}, {"vectors", vectors}}.dump();
}

OrthonormalRepresentation representation_from_json(const std::string& text) {
  const json j = parse(text);
  OrthonormalRepresentation rep;
  rep.dim = j.at("dim").get<int>();
  auto vec_from_node = [&rep](const json& arr) {
    Eigen::VectorXd v(arr.size());
    Eigen::Index i = 0;
    for (const auto& item : arr) v[i++] = double_from_json(item);
    if (v.size() != rep.dim) throw validation_error("vector dimension mismatch");
    return v;
  };
  rep.handle = vec_from_node(j.at("phi"));
  for (const auto& item : j.at("vectors")) rep.vectors.push_back(vec_from_node(item));
  return rep;
}

std::string graph_to_edge_list(const OrthogonalityGraph& graph) {
  std::ostringstream out;
  out << graph.vertex_count() << ' ' << graph.edge_count() << '\n';
  for (int u = 0; u < graph.vertex_count(); ++u)
    for (int v = u + 1; v < graph.vertex_count(); ++v)
      if (graph.adjacent(u, v)) out << u << ' ' << v << '\n';
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write file: " + path);
  out << content;
}

}  // namespace bellkit
