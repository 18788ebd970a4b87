#include "bellkit/orthograph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace bellkit {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits make_bits(std::size_t n) { return Bits((n + 63) / 64, 0); }

void set_bit(Bits& b, int i) { b[static_cast<std::size_t>(i) / 64] |= std::uint64_t(1) << (i % 64); }
bool test_bit(const Bits& b, int i) {
  return (b[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1;
}
void clear_bit(Bits& b, int i) {
  b[static_cast<std::size_t>(i) / 64] &= ~(std::uint64_t(1) << (i % 64));
}

int popcount(const Bits& b) {
  int c = 0;
  for (auto w : b) c += __builtin_popcountll(w);
  return c;
}

Bits bits_and(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

bool bits_empty(const Bits& b) {
  for (auto w : b)
    if (w) return false;
  return true;
}

template <typename Fn>
void for_each_bit(const Bits& b, Fn fn) {
  for (std::size_t w = 0; w < b.size(); ++w) {
    std::uint64_t word = b[w];
    while (word) {
      const int bit = __builtin_ctzll(word);
      fn(static_cast<int>(w * 64 + static_cast<std::size_t>(bit)));
      word &= word - 1;
    }
  }
}

bool locally_orthogonal(const EventIndex& u, const EventIndex& v) {
  return (u.setting_a == v.setting_a && u.outcome_a != v.outcome_a) ||
         (u.setting_b == v.setting_b && u.outcome_b != v.outcome_b);
}

}  // namespace

std::size_t OrthogonalityGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adj)
    for (auto w : row) twice += static_cast<std::size_t>(__builtin_popcountll(w));
  return twice / 2;
}

OrthogonalityGraph build_orthogonality_graph(const BellScenario& scenario) {
  scenario.validate();
  const std::size_t n = scenario.event_count();
  OrthogonalityGraph g;
  g.vertices.reserve(n);
  for (std::size_t i = 0; i < n; ++i) g.vertices.push_back(event_at(scenario, i));
  g.adj.assign(n, make_bits(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (locally_orthogonal(g.vertices[u], g.vertices[v])) {
        set_bit(g.adj[u], static_cast<int>(v));
        set_bit(g.adj[v], static_cast<int>(u));
      }
  return g;
}

OrthogonalityGraph complement(const OrthogonalityGraph& graph) {
  const int n = graph.vertex_count();
  OrthogonalityGraph g;
  g.vertices = graph.vertices;
  g.adj.assign(static_cast<std::size_t>(n), make_bits(static_cast<std::size_t>(n)));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && !graph.adjacent(u, v)) set_bit(g.adj[static_cast<std::size_t>(u)], v);
  return g;
}

OrthogonalityGraph induced_subgraph(const OrthogonalityGraph& graph,
                                    const std::vector<int>& vertex_ids) {
  OrthogonalityGraph g;
  const std::size_t k = vertex_ids.size();
  g.vertices.reserve(k);
  for (int id : vertex_ids) g.vertices.push_back(graph.vertices[static_cast<std::size_t>(id)]);
  g.adj.assign(k, make_bits(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (graph.adjacent(vertex_ids[i], vertex_ids[j])) {
        set_bit(g.adj[i], static_cast<int>(j));
        set_bit(g.adj[j], static_cast<int>(i));
      }
  return g;
}

namespace {

struct BronKerbosch {
  const OrthogonalityGraph& g;
  std::vector<std::vector<int>> out;
  std::vector<int> stack;

  void expand(Bits p, Bits x) {
    if (bits_empty(p) && bits_empty(x)) {
      out.push_back(stack);
      return;
    }
    // Pivot: vertex of P union X with the most neighbours inside P.
    int pivot = -1, best = -1;
    auto consider = [&](int u) {
      const int score = popcount(bits_and(p, g.adj[static_cast<std::size_t>(u)]));
      if (score > best) {
        best = score;
        pivot = u;
      }
    };
    for_each_bit(p, consider);
    for_each_bit(x, consider);

    Bits candidates = p;
    for (std::size_t w = 0; w < candidates.size(); ++w)
      candidates[w] &= ~g.adj[static_cast<std::size_t>(pivot)][w];

    for_each_bit(candidates, [&](int v) {
      stack.push_back(v);
      expand(bits_and(p, g.adj[static_cast<std::size_t>(v)]),
             bits_and(x, g.adj[static_cast<std::size_t>(v)]));
      stack.pop_back();
      clear_bit(p, v);
      set_bit(x, v);
    });
  }
};

std::vector<int> degeneracy_order(const OrthogonalityGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> degree(static_cast<std::size_t>(n));
  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) degree[static_cast<std::size_t>(v)] = popcount(g.adj[static_cast<std::size_t>(v)]);
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!removed[static_cast<std::size_t>(v)] &&
          (best < 0 || degree[static_cast<std::size_t>(v)] < degree[static_cast<std::size_t>(best)]))
        best = v;
    removed[static_cast<std::size_t>(best)] = 1;
    order.push_back(best);
    for_each_bit(g.adj[static_cast<std::size_t>(best)], [&](int u) {
      if (!removed[static_cast<std::size_t>(u)]) --degree[static_cast<std::size_t>(u)];
    });
  }
  return order;
}

}  // namespace

CliqueReport maximal_cliques(const OrthogonalityGraph& graph, int max_vertices) {
  const int n = graph.vertex_count();
  if (n > max_vertices)
    throw capacity_error("clique enumeration limited to " + std::to_string(max_vertices) +
                         " vertices");
  CliqueReport report;
  if (n == 0) return report;

  const auto order = degeneracy_order(graph);
  std::vector<int> position(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) position[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

  BronKerbosch bk{graph, {}, {}};
  for (int i = 0; i < n; ++i) {
    const int v = order[static_cast<std::size_t>(i)];
    Bits p = make_bits(static_cast<std::size_t>(n));
    Bits x = make_bits(static_cast<std::size_t>(n));
    for_each_bit(graph.adj[static_cast<std::size_t>(v)], [&](int u) {
      if (position[static_cast<std::size_t>(u)] > i)
        set_bit(p, u);
      else
        set_bit(x, u);
    });
    bk.stack.push_back(v);
    bk.expand(std::move(p), std::move(x));
    bk.stack.pop_back();
  }

  for (auto& clique : bk.out) std::sort(clique.begin(), clique.end());
  std::sort(bk.out.begin(), bk.out.end());
  report.maximal_cliques = std::move(bk.out);
  for (const auto& c : report.maximal_cliques)
    report.maximum_size = std::max(report.maximum_size, static_cast<int>(c.size()));
  for (const auto& c : report.maximal_cliques)
    if (static_cast<int>(c.size()) == report.maximum_size) report.maximum_cliques.push_back(c);
  return report;
}

namespace {

// Candidate constraint cliques: normalization per setting pair, plus the
// clique form of each marginal no-signalling equality.
std::map<std::vector<int>, std::string> constraint_cliques(const BellScenario& s) {
  std::map<std::vector<int>, std::string> out;
  auto add = [&out](std::vector<int> clique, std::string label) {
    std::sort(clique.begin(), clique.end());
    out.emplace(std::move(clique), std::move(label));
  };

  for (int x = 1; x <= s.settings_a(); ++x)
    for (int y = 1; y <= s.settings_b(); ++y) {
      std::vector<int> c;
      for (int a = 1; a <= s.outcomes_a[static_cast<std::size_t>(x) - 1]; ++a)
        for (int b = 1; b <= s.outcomes_b[static_cast<std::size_t>(y) - 1]; ++b)
          c.push_back(static_cast<int>(flat_index(s, {x, a, y, b})));
      add(std::move(c), "normalization(i_A=" + std::to_string(x) + ",i_B=" + std::to_string(y) + ")");
    }

  // Alice marginal p(o_A | i_A) measured with Bob setting i_B vs i_B'.
  for (int x = 1; x <= s.settings_a(); ++x)
    for (int a = 1; a <= s.outcomes_a[static_cast<std::size_t>(x) - 1]; ++a)
      for (int y = 1; y <= s.settings_b(); ++y)
        for (int y2 = 1; y2 <= s.settings_b(); ++y2) {
          if (y == y2) continue;
          std::vector<int> c;
          for (int b = 1; b <= s.outcomes_b[static_cast<std::size_t>(y) - 1]; ++b)
            c.push_back(static_cast<int>(flat_index(s, {x, a, y, b})));
          for (int a2 = 1; a2 <= s.outcomes_a[static_cast<std::size_t>(x) - 1]; ++a2) {
            if (a2 == a) continue;
            for (int b2 = 1; b2 <= s.outcomes_b[static_cast<std::size_t>(y2) - 1]; ++b2)
              c.push_back(static_cast<int>(flat_index(s, {x, a2, y2, b2})));
          }
          add(std::move(c), "alice_marginal(o_A=" + std::to_string(a) + ",i_A=" + std::to_string(x) +
                                ",i_B=" + std::to_string(y) + "->" + std::to_string(y2) + ")");
        }

  // Bob marginal p(o_B | i_B) measured with Alice setting i_A vs i_A'.
  for (int y = 1; y <= s.settings_b(); ++y)
    for (int b = 1; b <= s.outcomes_b[static_cast<std::size_t>(y) - 1]; ++b)
      for (int x = 1; x <= s.settings_a(); ++x)
        for (int x2 = 1; x2 <= s.settings_a(); ++x2) {
          if (x == x2) continue;
          std::vector<int> c;
          for (int a = 1; a <= s.outcomes_a[static_cast<std::size_t>(x) - 1]; ++a)
            c.push_back(static_cast<int>(flat_index(s, {x, a, y, b})));
          for (int b2 = 1; b2 <= s.outcomes_b[static_cast<std::size_t>(y) - 1]; ++b2) {
            if (b2 == b) continue;
            for (int a2 = 1; a2 <= s.outcomes_a[static_cast<std::size_t>(x2) - 1]; ++a2)
              c.push_back(static_cast<int>(flat_index(s, {x2, a2, y, b2})));
          }
          add(std::move(c), "bob_marginal(o_B=" + std::to_string(b) + ",i_B=" + std::to_string(y) +
                                ",i_A=" + std::to_string(x) + "->" + std::to_string(x2) + ")");
        }

  return out;
}

}  // namespace

LoCliqueReport verify_lo_cliques(const BellScenario& scenario, int max_vertices) {
  const auto graph = build_orthogonality_graph(scenario);
  const auto cliques = maximal_cliques(graph, max_vertices);
  const auto candidates = constraint_cliques(scenario);

  LoCliqueReport report;
  report.all_matched = true;
  for (const auto& c : cliques.maximum_cliques) {
    auto it = candidates.find(c);
    if (it == candidates.end()) {
      report.all_matched = false;
      report.unmatched.push_back(c);
    } else {
      report.matches.push_back({c, it->second});
    }
  }
  return report;
}

RepresentationCheck validate_representation(const OrthogonalityGraph& graph,
                                            const OrthonormalRepresentation& rep,
                                            double tolerance) {
  if (static_cast<int>(rep.vectors.size()) != graph.vertex_count())
    throw validation_error("representation size does not match graph");
  for (const auto& v : rep.vectors)
    if (v.size() != rep.dim) throw validation_error("representation vector dimension mismatch");
  if (rep.handle.size() != rep.dim)
    throw validation_error("handle vector dimension mismatch");

  RepresentationCheck check;
  check.max_residual = std::abs(rep.handle.norm() - 1.0);
  for (const auto& v : rep.vectors)
    check.max_residual = std::max(check.max_residual, std::abs(v.norm() - 1.0));
  const int n = graph.vertex_count();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (graph.adjacent(u, v))
        check.max_residual =
            std::max(check.max_residual,
                     std::abs(rep.vectors[static_cast<std::size_t>(u)].dot(
                         rep.vectors[static_cast<std::size_t>(v)])));
  check.ok = check.max_residual <= tolerance;
  return check;
}

double aq_boundary_evaluate(const OrthonormalRepresentation& rep, const Box& box,
                            const std::vector<int>& vertex_subset) {
  if (!vertex_subset.empty() && vertex_subset.size() != rep.vectors.size())
    throw validation_error("vertex subset size does not match representation");
  if (vertex_subset.empty() && rep.vectors.size() != box.p.size())
    throw validation_error("representation does not cover the box");
  double acc = 0.0;
  for (std::size_t i = 0; i < rep.vectors.size(); ++i) {
    const double overlap = rep.handle.dot(rep.vectors[i]);
    const std::size_t event =
        vertex_subset.empty() ? i : static_cast<std::size_t>(vertex_subset[i]);
    if (event >= box.p.size()) throw validation_error("vertex subset index out of range");
    acc += overlap * overlap * box.p[event];
  }
  return acc;
}

std::vector<int> chsh_sum_events() { return {0, 2, 5, 7, 8, 11, 13, 14}; }

ChshBoundaryCertificate chsh_aq_certificate() {
  const double r2 = std::sqrt(2.0);
  const double s = std::sqrt(1.0 - 1.0 / r2);
  const double t = std::sqrt(3.0 / r2 - 2.0);

  OrthonormalRepresentation rep;
  rep.dim = 5;
  rep.handle.resize(5);
  rep.handle << s, s, s, t, 0.0;

  auto vec = [](double a, double b, double c, double d, double e) {
    Eigen::VectorXd v(5);
    v << a, b, c, d, e;
    return v;
  };
  rep.vectors = {
      vec(1, 0, 0, 0, 0),
      vec(0, 1, 0, 0, 0),
      vec(0, 0, 1, 0, 0),
      vec(2 - r2, 0, 0, std::sqrt(r2 - 1), -std::sqrt(3 * r2 - 4)),
      vec(3 - 2 * r2, 2 - r2, 0, std::sqrt(2 * (5 * r2 - 7)), std::sqrt(6 * r2 - 8)),
      vec(2 - r2, 3 - 2 * r2, 2 - r2, -2 * std::sqrt(5 * r2 - 7), 0),
      vec(0, -2 + r2, 2 * r2 - 3, -std::sqrt(2 * (5 * r2 - 7)), std::sqrt(6 * r2 - 8)),
      vec(0, 0, -2 + r2, -std::sqrt(r2 - 1), -std::sqrt(3 * r2 - 4)),
  };

  // Frozen event pairing (recovered by exhaustive search over orderings of
  // the 8 CHSH-sum events; the i-th vector represents events[i]).
  ChshBoundaryCertificate cert;
  cert.rep = std::move(rep);
  cert.events = {0, 2, 14, 13, 5, 7, 11, 8};
  return cert;
}

}  // namespace bellkit
