#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace bellkit {

// Arbitrary-precision rational. All polytope logic runs on this type;
// SDP paths convert to double at the boundary.
using Rational = mpq_class;

/// Parses "p/q", integer, or plain decimal ("0.25", "-3.5") strings exactly.
Rational parse_rational(const std::string& text);

/// Canonical text form: "p/q", or just "p" when the denominator is 1.
std::string format_rational(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

/// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double value);

/// Scales entries (and bound, treated as one more entry) by a positive
/// rational so that everything is integer with overall gcd 1. In-place.
void canonicalize_integer_form(std::vector<Rational>& coeff, Rational& bound);

/// Rank of the span of the given vectors via exact Gaussian elimination.
int rational_rank(std::vector<std::vector<Rational>> rows);

/// Affine dimension of a point set: rank of differences to the first point.
/// Returns -1 for an empty set, 0 for a single point.
int affine_dimension(const std::vector<std::vector<Rational>>& points);

}  // namespace bellkit
