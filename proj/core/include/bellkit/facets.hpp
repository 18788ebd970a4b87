#pragma once

#include <utility>
#include <vector>

#include "bellkit/inequality.hpp"

namespace bellkit {

/// Inequality a . z <= b, primitive integer coefficients.
using HalfSpace = std::pair<std::vector<Rational>, Rational>;

/// Exact V-to-H conversion by the double description method. The point
/// set must affinely span R^d. Output is deduplicated, scaled so that
/// the entries of (a, b) are coprime integers, and sorted.
std::vector<HalfSpace> convex_hull_facets(const std::vector<std::vector<Rational>>& points);

struct Facet {
  std::vector<Rational> cg_coeff;  // inequality in minimal coordinates
  Rational cg_bound;
  BellInequality lifted;           // same inequality on full probability vectors
};

struct FacetEnumerationLimits {
  int max_dimension = 10;
  std::uint64_t max_vertices = 64;
};

/// All facets of the classical polytope of a scenario, computed in the
/// minimal parametrization and lifted back to probability space.
std::vector<Facet> enumerate_facets(const BellScenario& scenario,
                                    const FacetEnumerationLimits& limits = {});

}  // namespace bellkit
