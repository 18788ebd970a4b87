#include "bellkit/facets.hpp"

#include <algorithm>
#include <cstdint>

namespace bellkit {

namespace {

using Vec = std::vector<Rational>;
using Bits = std::vector<std::uint64_t>;

void scale_to_primitive(Vec& v) {
  mpz_class den_lcm = 1;
  for (const auto& c : v) {
    mpz_class d = c.get_den();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  }
  mpz_class num_gcd = 0;
  for (const auto& c : v) {
    mpz_class scaled = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  if (num_gcd == 0) return;
  const Rational scale(den_lcm, num_gcd);
  for (auto& c : v) {
    c *= scale;
    c.canonicalize();
  }
}

Rational dot(const Vec& a, const Vec& b) {
  Rational acc(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
  return acc;
}

struct Ray {
  Vec y;
  Bits zeros;  // bit i set: exact equality on processed row i
};

Bits compute_zeros(const Vec& y, const std::vector<Vec>& rows,
                   const std::vector<int>& processed, std::size_t words) {
  Bits z(words, 0);
  for (int idx : processed) {
    if (dot(rows[static_cast<std::size_t>(idx)], y) == 0)
      z[static_cast<std::size_t>(idx) / 64] |= std::uint64_t(1) << (idx % 64);
  }
  return z;
}

int popcount_and(const Bits& a, const Bits& b) {
  int c = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    c += __builtin_popcountll(a[i] & b[i]);
  return c;
}

bool subset_of_and(const Bits& candidate, const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::uint64_t meet = a[i] & b[i];
    if ((meet & ~candidate[i]) != 0) return false;
  }
  return true;
}

// Exact inverse via Gauss-Jordan; returns false when singular.
bool invert(std::vector<Vec> m, std::vector<Vec>& inv) {
  const std::size_t n = m.size();
  inv.assign(n, Vec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return false;
    std::swap(m[col], m[pivot]);
    std::swap(inv[col], inv[pivot]);
    const Rational p = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return true;
}

// Greedy choice of a row subset forming an invertible matrix.
std::vector<int> independent_rows(const std::vector<Vec>& rows, std::size_t need) {
  std::vector<Vec> reduced;
  std::vector<int> chosen;
  for (std::size_t i = 0; i < rows.size() && chosen.size() < need; ++i) {
    std::vector<Vec> trial = reduced;
    trial.push_back(rows[i]);
    if (rational_rank(trial) == static_cast<int>(trial.size())) {
      reduced = std::move(trial);
      chosen.push_back(static_cast<int>(i));
    }
  }
  return chosen;
}

}  // namespace

std::vector<HalfSpace> convex_hull_facets(const std::vector<std::vector<Rational>>& points) {
  if (points.empty()) throw validation_error("need at least one point");
  const std::size_t dim = points[0].size();
  const std::size_t n = dim + 1;

  // Rows of the homogenized system: (1, -v) . (b, a) >= 0 encodes a.v <= b.
  std::vector<Vec> rows;
  rows.reserve(points.size());
  for (const auto& v : points) {
    if (v.size() != dim) throw validation_error("inconsistent point dimensions");
    Vec row(n, Rational(0));
    row[0] = 1;
    for (std::size_t j = 0; j < dim; ++j) row[j + 1] = -v[j];
    rows.push_back(std::move(row));
  }

  const auto basis = independent_rows(rows, n);
  if (basis.size() != n)
    throw validation_error("point set does not affinely span the space");

  std::vector<Vec> basis_matrix;
  for (int idx : basis) basis_matrix.push_back(rows[static_cast<std::size_t>(idx)]);
  std::vector<Vec> inv;
  if (!invert(std::move(basis_matrix), inv))
    throw validation_error("internal: singular basis in double description");

  const std::size_t words = (rows.size() + 63) / 64;
  std::vector<int> processed(basis.begin(), basis.end());

  std::vector<Ray> rays;
  for (std::size_t j = 0; j < n; ++j) {
    Vec y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = inv[i][j];
    scale_to_primitive(y);
    rays.push_back({y, compute_zeros(y, rows, processed, words)});
  }

  std::vector<char> in_basis(rows.size(), 0);
  for (int idx : basis) in_basis[static_cast<std::size_t>(idx)] = 1;

  const int min_common = static_cast<int>(dim) - 1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (in_basis[i]) continue;
    const Vec& row = rows[i];

    std::vector<Rational> sign(rays.size());
    for (std::size_t j = 0; j < rays.size(); ++j) sign[j] = dot(row, rays[j].y);

    std::vector<Ray> next;
    for (std::size_t j = 0; j < rays.size(); ++j)
      if (sign[j] >= 0) next.push_back(rays[j]);

    for (std::size_t jp = 0; jp < rays.size(); ++jp) {
      if (sign[jp] <= 0) continue;
      for (std::size_t jm = 0; jm < rays.size(); ++jm) {
        if (sign[jm] >= 0) continue;
        if (popcount_and(rays[jp].zeros, rays[jm].zeros) < min_common) continue;
        bool adjacent = true;
        for (std::size_t jo = 0; jo < rays.size() && adjacent; ++jo) {
          if (jo == jp || jo == jm) continue;
          if (subset_of_and(rays[jo].zeros, rays[jp].zeros, rays[jm].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        Vec y(n);
        for (std::size_t k = 0; k < n; ++k)
          y[k] = sign[jp] * rays[jm].y[k] - sign[jm] * rays[jp].y[k];
        scale_to_primitive(y);
        next.push_back({y, Bits(words, 0)});
      }
    }

    processed.push_back(static_cast<int>(i));
    for (auto& r : next) r.zeros = compute_zeros(r.y, rows, processed, words);

    std::sort(next.begin(), next.end(), [](const Ray& a, const Ray& b) { return a.y < b.y; });
    next.erase(std::unique(next.begin(), next.end(),
                           [](const Ray& a, const Ray& b) { return a.y == b.y; }),
               next.end());
    rays = std::move(next);
  }

  std::vector<HalfSpace> facets;
  for (const auto& r : rays) {
    bool trivial = true;
    for (std::size_t j = 1; j < n; ++j)
      if (r.y[j] != 0) trivial = false;
    if (trivial) continue;  // the 0 . z <= 1 ray of the homogenization
    Vec a(r.y.begin() + 1, r.y.end());
    facets.emplace_back(std::move(a), r.y[0]);
  }
  std::sort(facets.begin(), facets.end());
  return facets;
}

std::vector<Facet> enumerate_facets(const BellScenario& scenario,
                                    const FacetEnumerationLimits& limits) {
  scenario.validate();
  if (scenario.ns_dimension() > limits.max_dimension)
    throw capacity_error("facet enumeration limited to dimension " +
                         std::to_string(limits.max_dimension));
  scenario.ldb_count(limits.max_vertices);

  const CollinsGisin cg(scenario);
  const auto ldbs = enumerate_ldbs(scenario);
  std::vector<std::vector<Rational>> points;
  points.reserve(ldbs.size());
  for (const auto& ldb : ldbs) points.push_back(cg.coordinates(ldb));

  std::vector<Facet> out;
  for (auto& hs : convex_hull_facets(points)) {
    Facet f{hs.first, hs.second, cg.lift(hs.first, hs.second)};
    canonicalize_integer_form(f.lifted.coeff, *f.lifted.bound);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace bellkit
