#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "bellkit/scenario.hpp"

namespace bellkit {

/// Orthogonality (exclusivity) graph of a Bell scenario: one vertex per
/// event, an edge whenever the two events share a local setting with
/// different outcomes on that side.
struct OrthogonalityGraph {
  std::vector<EventIndex> vertices;            // flat event order
  std::vector<std::vector<std::uint64_t>> adj;  // bitset rows

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  bool adjacent(int u, int v) const {
    return (adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v) / 64] >>
            (v % 64)) & 1;
  }
  std::size_t edge_count() const;
};

OrthogonalityGraph build_orthogonality_graph(const BellScenario& scenario);

/// Same vertices, complementary edge set (no self-loops either way).
OrthogonalityGraph complement(const OrthogonalityGraph& graph);

/// Subgraph induced by the given vertex indices, in the given order.
OrthogonalityGraph induced_subgraph(const OrthogonalityGraph& graph,
                                    const std::vector<int>& vertex_ids);

struct CliqueReport {
  std::vector<std::vector<int>> maximal_cliques;  // each sorted; list sorted
  int maximum_size = 0;
  std::vector<std::vector<int>> maximum_cliques;  // the maximal cliques of maximum size
};

/// All maximal cliques via pivoting Bron-Kerbosch with degeneracy
/// ordering. Deterministic output order.
CliqueReport maximal_cliques(const OrthogonalityGraph& graph, int max_vertices = 512);

struct LoCliqueMatch {
  std::vector<int> clique;
  std::string constraint;  // which normalization / marginal equality it is
};

struct LoCliqueReport {
  bool all_matched = false;
  std::vector<LoCliqueMatch> matches;
  std::vector<std::vector<int>> unmatched;
};

/// Checks that every maximum clique of the orthogonality graph is the
/// support of a normalization constraint or of a no-signalling marginal
/// constraint written in clique form.
LoCliqueReport verify_lo_cliques(const BellScenario& scenario, int max_vertices = 512);

/// Unit vectors assigned to graph vertices plus a unit handle vector.
struct OrthonormalRepresentation {
  int dim = 0;
  Eigen::VectorXd handle;
  std::vector<Eigen::VectorXd> vectors;
};

struct RepresentationCheck {
  bool ok = false;
  double max_residual = 0.0;
};

/// True when all norms are 1 and all edge pairs are orthogonal within
/// `tolerance`; reports the worst residual either way.
RepresentationCheck validate_representation(const OrthogonalityGraph& graph,
                                            const OrthonormalRepresentation& rep,
                                            double tolerance = 1e-9);

/// sum_i |<handle|w_i>|^2 p_i over the covered vertices. `vertex_subset`
/// maps rep.vectors[i] to flat event indices; empty means the vectors
/// cover all events in flat order.
double aq_boundary_evaluate(const OrthonormalRepresentation& rep, const Box& box,
                            const std::vector<int>& vertex_subset = {});

/// Certificate for a linear boundary of the level-(1+AB) relaxation in
/// B((2,2),(2,2)): an orthonormal representation of the complement of the
/// subgraph induced by the 8 events of the CHSH sum. `events[i]` is the
/// flat event index represented by `rep.vectors[i]`; the pairing was
/// recovered by exhaustive search over vertex orderings and frozen here.
struct ChshBoundaryCertificate {
  OrthonormalRepresentation rep;
  std::vector<int> events;
};

ChshBoundaryCertificate chsh_aq_certificate();

/// The 8 flat event indices appearing in the CHSH sum (winning events of
/// the CHSH game), ascending.
std::vector<int> chsh_sum_events();

}  // namespace bellkit
