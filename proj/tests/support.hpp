#pragma once

// Shared generators and independent reference computations for the tests.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "bilip/errors.hpp"
#include "bilip/invariant.hpp"
#include "bilip/oracle.hpp"

namespace testing_support {

using namespace bilip;

inline const std::string kTwoArc = "x^3 - 3*x*y^10 + y^12";
inline const std::string kTwoArcT2 = "x^3 - 12*x*y^10 + y^12";
inline const std::string kBc = "x^3 + x^2*y^3 + y^9 + x*y^7";
inline const std::string kBcB2 = "x^3 + 2*x^2*y^3 + y^9 + x*y^7";
inline const std::string kDegenerate = "x^3 - 3*x*y^4 + y^6";

inline std::vector<std::string> corpus() {
  return {kTwoArc,      kBc,           kDegenerate,
          "x^2 - y^3",  "x^2 + x*y + y^5",   "x^3 + y^5",
          "x^3 - y^7 + x*y^5", "x^2 - y^4 + x*y^3", "x^4 + x^2*y^2 + y^6",
          "x^3 - 3*x*y^6 + y^9 + x^2*y^4"};
}

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

  Rational rational(long range = 9, long max_den = 5) {
    Rational q(integer(-range, range), integer(1, max_den));
    q.canonicalize();
    return q;
  }

  Rational nonzero_rational(long range = 9, long max_den = 5) {
    for (;;) {
      Rational q = rational(range, max_den);
      if (q != 0) return q;
    }
  }

  Scalar gaussian(long range = 9, long max_den = 5) { return Scalar(rational(range, max_den), rational(range, max_den)); }

  Scalar nonzero_gaussian() {
    for (;;) {
      Scalar s = gaussian();
      if (!s.is_exact_zero()) return s;
    }
  }

  BivarPoly poly(int max_deg, int terms) {
    BivarPoly f;
    for (int t = 0; t < terms; ++t) {
      const int i = static_cast<int>(integer(0, max_deg));
      const int j = static_cast<int>(integer(0, max_deg - i));
      f.add_term(i, j, Scalar(rational()));
    }
    return f;
  }

  // x^3 + a x^2 y^p + b x y^q + c y^r, small integer coefficients.
  std::string template_germ() {
    const long a = integer(-3, 3), b = integer(-3, 3), c = integer(1, 3) * (integer(0, 1) ? 1 : -1);
    const long p = integer(1, 4), q = integer(2, 7), r = integer(3, 12);
    return "x^3 + (" + std::to_string(a) + ")*x^2*y^" + std::to_string(p) + " + (" + std::to_string(b) +
           ")*x*y^" + std::to_string(q) + " + (" + std::to_string(c) + ")*y^" + std::to_string(r);
  }
};

inline bool admissible(const BivarPoly& f) {
  try {
    require_admissible(f);
    return true;
  } catch (const Error&) {
    return false;
  }
}

/// Admissible template germs, with their polar analysis known to succeed.
inline std::vector<std::string> admissible_templates(std::uint64_t seed, std::size_t count) {
  Gen g(seed);
  std::vector<std::string> out;
  for (int tries = 0; out.size() < count && tries < 1000; ++tries) {
    const std::string s = g.template_germ();
    if (admissible(parse_poly(s))) out.push_back(s);
  }
  return out;
}

// ---- reference series arithmetic, exponents in units of 1/N ----

using Series = std::map<long, Scalar>;

inline Series mul(const Series& a, const Series& b, long bound) {
  Series out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b)
      if (i + j < bound) out[i + j] += x * y;
  return out;
}

/// f(A(s), s^N) below s^bound, term by term with naive powers.
inline Series substitute_naive(const BivarPoly& f, const PuiseuxArc& arc, long bound) {
  const long N = arc.ramification;
  Series A;
  for (const auto& t : arc.terms) {
    const Rational e = t.exp * N;
    A[e.get_num().get_si()] += t.coeff;
  }
  std::vector<Series> powers{{{0, Scalar(1)}}};
  Series out;
  for (const auto& [m, c] : f.terms()) {
    while (static_cast<int>(powers.size()) <= m.i) powers.push_back(mul(powers.back(), A, bound));
    for (const auto& [e, v] : powers[m.i]) {
      const long ex = e + m.j * N;
      if (ex < bound) out[ex] += c * v;
    }
  }
  return out;
}

/// Lowest exponent whose coefficient is not zero at precision p, bound if none.
inline long order_of(const Series& s, long bound, const Precision& p) {
  for (const auto& [e, c] : s)
    if (zero_test(c, p.eps()) == ZeroTest::NonZero) return e;
  return bound;
}

// ---- reference resultant via cofactor expansion of the Sylvester matrix ----

using YPoly = std::map<int, Rational>;

inline YPoly ymul(const YPoly& a, const YPoly& b) {
  YPoly out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) out[i + j] += x * y;
  return out;
}

inline YPoly determinant(const std::vector<std::vector<YPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  YPoly out;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].empty()) continue;
    std::vector<std::vector<YPoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<YPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    for (const auto& [e, v] : ymul(m[0][c], determinant(minor))) out[e] += (c % 2 ? -v : v);
  }
  return out;
}

/// ord_y Res_x(f, g) for exact real-rational f, g; -1 for a zero resultant.
inline long resultant_order_reference(const BivarPoly& f, const BivarPoly& g) {
  auto coeffs = [](const BivarPoly& h) {
    std::vector<YPoly> c(h.deg_x() + 1);
    for (const auto& [m, v] : h.terms()) c[m.i][m.j] += v.exact().re;
    return c;
  };
  const auto a = coeffs(f), b = coeffs(g);
  const std::size_t m = a.size() - 1, n = b.size() - 1, size = m + n;
  std::vector<std::vector<YPoly>> S(size, std::vector<YPoly>(size));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) S[r][r + k] = a[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) S[n + r][r + k] = b[n - k];
  for (const auto& [e, v] : determinant(S))
    if (v != 0) return e;
  return -1;
}

inline Scalar exact(const std::string& s) { return parse_scalar(s); }

}  // namespace testing_support
