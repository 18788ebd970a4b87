#include "bellkit/rational.hpp"

#include <algorithm>
#include <cctype>

#include "bellkit/errors.hpp"

namespace bellkit {

Rational parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw validation_error("empty rational literal");

  if (s.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw validation_error("bad rational literal: " + text);
    if (q.get_den() == 0) throw validation_error("zero denominator: " + text);
    q.canonicalize();
    return q;
  }

  const auto dot = s.find('.');
  if (dot == std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw validation_error("bad integer literal: " + text);
    q.canonicalize();
    return q;
  }

  // Decimal: sign, integer part, fractional part.
  std::string head = s.substr(0, dot);
  std::string frac = s.substr(dot + 1);
  bool negative = false;
  if (!head.empty() && (head[0] == '+' || head[0] == '-')) {
    negative = head[0] == '-';
    head = head.substr(1);
  }
  if (head.empty()) head = "0";
  if (frac.empty()) frac = "0";
  auto all_digits = [](const std::string& d) {
    return !d.empty() && std::all_of(d.begin(), d.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  if (!all_digits(head) || !all_digits(frac))
    throw validation_error("bad decimal literal: " + text);

  mpz_class num(head + frac, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  Rational q(num, den);
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

std::string format_rational(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Rational rational_from_double(double value) {
  Rational q;
  mpq_set_d(q.get_mpq_t(), value);
  return q;
}

void canonicalize_integer_form(std::vector<Rational>& coeff, Rational& bound) {
  mpz_class den_lcm = 1;
  auto absorb_den = [&den_lcm](const Rational& r) {
    mpz_class d = r.get_den();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  };
  for (const auto& c : coeff) absorb_den(c);
  absorb_den(bound);

  mpz_class num_gcd = 0;
  auto absorb_num = [&](const Rational& r) {
    mpz_class n = r.get_num() * (den_lcm / r.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
  };
  for (const auto& c : coeff) absorb_num(c);
  absorb_num(bound);
  if (num_gcd == 0) num_gcd = 1;

  const Rational scale(den_lcm, num_gcd);
  for (auto& c : coeff) {
    c *= scale;
    c.canonicalize();
  }
  bound *= scale;
  bound.canonicalize();
}

int rational_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  int rank = 0;
  std::size_t lead = 0;
  for (std::size_t r = 0; r < rows.size() && lead < cols; ++lead) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][lead] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    const Rational inv = rows[r][lead];
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][lead] == 0) continue;
      const Rational factor = rows[i][lead] / inv;
      for (std::size_t j = lead; j < cols; ++j) {
        rows[i][j] -= factor * rows[r][j];
        rows[i][j].canonicalize();
      }
    }
    ++r;
    ++rank;
  }
  return rank;
}

int affine_dimension(const std::vector<std::vector<Rational>>& points) {
  if (points.empty()) return -1;
  if (points.size() == 1) return 0;
  std::vector<std::vector<Rational>> diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) {
    std::vector<Rational> d(points[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(d));
  }
  return rational_rank(std::move(diffs));
}

}  // namespace bellkit
