#pragma once

#include <string>

#include "bellkit/inequality.hpp"
#include "bellkit/orthograph.hpp"
#include "bellkit/xorcorr.hpp"

namespace bellkit {

// JSON text formats. Rational values serialize as "p/q" strings; readers
// also accept plain numbers and decimal strings. Malformed input throws
// validation_error.

std::string scenario_to_json(const BellScenario& scenario);
BellScenario scenario_from_json(const std::string& text);

std::string box_to_json(const RationalBox& box);
std::string box_to_json(const Box& box);
RationalBox rational_box_from_json(const std::string& text);
Box box_from_json(const std::string& text);

std::string inequality_to_json(const BellInequality& ineq);
BellInequality inequality_from_json(const std::string& text);

std::string game_to_json(const XorGame& game);
XorGame xor_game_from_json(const std::string& text);

std::string game_to_json(const DOutcomeGame& game);
DOutcomeGame d_outcome_game_from_json(const std::string& text);

std::string point_to_json(const CorrelatorPoint& point);
CorrelatorPoint point_from_json(const std::string& text);

std::string representation_to_json(const OrthonormalRepresentation& rep);
OrthonormalRepresentation representation_from_json(const std::string& text);

/// Plain text edge list: header "n m", then one "u v" line per edge,
/// vertices as flat indices.
std::string graph_to_edge_list(const OrthogonalityGraph& graph);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace bellkit
