#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bilip/scalar.hpp"

namespace bilip {

/// Exponent pair x^i y^j.
struct Monomial {
  int i = 0;
  int j = 0;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic: total degree first, then higher x-degree first.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.i + a.j != b.i + b.j) return a.i + a.j < b.i + b.j;
    return a.i > b.i;
  }
};

/// Sparse univariate polynomial / truncated series in one variable with
/// integer exponents (possibly negative is never needed here).
using SparseSeries = std::map<long, Scalar>;

/// Bivariate polynomial with sparse storage. Exact zeros are never stored;
/// approximate coefficients are kept until a zero test is requested.
class BivarPoly {
 public:
  using Terms = std::map<Monomial, Scalar, GradedLex>;

  BivarPoly() = default;
  explicit BivarPoly(const Scalar& c);
  static BivarPoly x();
  static BivarPoly y();
  static BivarPoly monomial(int i, int j, const Scalar& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of x^i y^j (zero when absent).
  Scalar coeff(int i, int j) const;
  void add_term(int i, int j, const Scalar& c);

  int deg_x() const;
  int deg_y() const;
  int total_degree() const;
  /// Smallest total degree of a stored term.
  int order() const;
  bool is_constant() const;

  BivarPoly operator-() const;
  friend BivarPoly operator+(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator-(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator*(const Scalar& c, const BivarPoly& a);
  BivarPoly& operator+=(const BivarPoly& b) { return *this = *this + b; }
  BivarPoly pow(int n) const;

  BivarPoly dx() const;
  BivarPoly dy() const;

  /// Coefficient of x^i as a polynomial in y.
  SparseSeries column(int i) const;
  /// Homogeneous part of total degree d.
  BivarPoly homogeneous_part(int d) const;

  /// Drops coefficients that test Zero; throws AmbiguousZero on Unknown.
  BivarPoly cleaned(const Precision& p) const;
  /// Drops terms with j >= bound.
  BivarPoly truncated_y(int bound) const;

  std::string to_string() const;
  friend bool operator==(const BivarPoly& a, const BivarPoly& b);

 private:
  Terms terms_;
};

struct ConeLine {
  Scalar lambda;  ///< the line x = lambda * y
  int multiplicity = 1;
};

struct TangentCone {
  int k = 0;                 ///< degree of the initial form
  BivarPoly initial_form;    ///< H_k
  std::vector<Scalar> h;     ///< coefficients of lambda -> H_k(lambda, 1)
  std::vector<ConeLine> lines;

  /// Lines of multiplicity >= 2, i.e. the singular locus of the cone.
  std::vector<ConeLine> singular_lines() const;
};

BivarPoly parse_poly(const std::string& text, const std::map<std::string, Scalar>& params = {});

std::pair<BivarPoly, BivarPoly> partials(const BivarPoly& f);
TangentCone tangent_cone(const BivarPoly& f, const Precision& p = {});
bool mini_regular_check(const BivarPoly& f);
bool squarefree_check(const BivarPoly& f);

/// Res_x(f, g) by fraction-free elimination of the Sylvester matrix; rows of
/// f first, so Res(x^2 - y, x) = -y. Result indexed by y-degree.
std::vector<Scalar> resultant_x(const BivarPoly& f, const BivarPoly& g);

/// Lowest y-degree with a nonzero coefficient, -1 for the zero polynomial.
int y_order(const std::vector<Scalar>& univariate);

/// f(x + shift(y), y). Terms with y-degree >= ybound are dropped when
/// ybound >= 0 (they cannot influence lower ones).
BivarPoly shift_x(const BivarPoly& f, const SparseSeries& shift, long ybound = -1);
/// f(x, y^q).
BivarPoly stretch_y(const BivarPoly& f, int q);
/// f(P(s), s^n) as a polynomial in s, truncated below `bound` when bound >= 0.
SparseSeries substitute(const BivarPoly& f, const SparseSeries& x_of_s, int n, long bound = -1);
/// Product of series truncated below `bound` when bound >= 0.
SparseSeries multiply(const SparseSeries& a, const SparseSeries& b, long bound = -1);

}  // namespace bilip
