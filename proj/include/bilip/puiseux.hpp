#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bilip/polynomial.hpp"
#include "bilip/scalar.hpp"

namespace bilip {

/// A rational order or +infinity.
struct Order {
  Rational value;
  bool infinite = false;

  static Order inf() { return {Rational(0), true}; }
  static Order of(Rational v) { return {std::move(v), false}; }
  std::string to_string() const { return infinite ? "inf" : value.get_str(); }

  friend bool operator<(const Order& a, const Order& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
  friend bool operator==(const Order& a, const Order& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

inline Order min(const Order& a, const Order& b) { return b < a ? b : a; }

struct ArcTerm {
  Rational exp;
  Scalar coeff;
};

/// x = sum c_k y^(n_k / N), a root of some polynomial in x through the origin.
struct PuiseuxArc {
  long ramification = 1;  ///< N
  std::vector<ArcTerm> terms;
  /// The true root differs from the truncation by O(y^residual).
  Order residual = Order::inf();
  int multiplicity = 1;
  int conj_class = 0;
  long conj_index = 0;

  /// Order of the leading term, +inf for the zero arc.
  Order leading_exponent() const;
  /// Coefficient at exponent e (zero if absent).
  Scalar coeff_at(const Rational& e) const;
  /// Terms keyed by exponent * N.
  SparseSeries scaled_terms() const;
  std::string to_string() const;
};

/// f(arc(y), y) = sum terms, with every coefficient below `window` certified.
struct GermExpansion {
  std::vector<ArcTerm> terms;
  Rational window;

  Scalar coeff_at(const Rational& e) const;
  std::string to_string() const;
};

struct NewtonEdge {
  Monomial left;
  Monomial right;
  /// Decrease of j per unit of i; the order of the roots the edge accounts for.
  Rational slope;
  /// Coefficients read off the points on the edge, indexed by i - left.i.
  std::vector<Scalar> edge_polynomial;
};

struct NewtonPolygon {
  std::vector<Monomial> support;
  std::vector<Monomial> hull;  ///< lower-left hull vertices, increasing i
  std::vector<NewtonEdge> edges;
};

/// F(z, y) with z the first variable. Coefficients are zero-tested.
NewtonPolygon newton_polygon(const BivarPoly& F, const Precision& p = {});

struct ExpansionOptions {
  Precision precision;
  int max_terms = 64;
};

/// Roots x = arc(y) of F with positive order, one per conjugacy class,
/// each certified to residual >= target (or exact).
std::vector<PuiseuxArc> puiseux_roots(const BivarPoly& F, const Rational& target,
                                      const ExpansionOptions& opts = {});

/// The N conjugates, coefficients twisted by theta^(j n_k).
std::vector<PuiseuxArc> conjugates(const PuiseuxArc& arc, unsigned prec = 256);

/// Either a finite contact order or "agree on every certified term below horizon".
struct Contact {
  std::optional<Rational> value;
  Order horizon;

  bool indistinguishable() const { return !value.has_value(); }
  /// The contact order as an Order, horizon when indistinguishable.
  Order as_order() const { return value ? Order::of(*value) : horizon; }
};

Contact contact_order(const PuiseuxArc& a, const PuiseuxArc& b, const Precision& p = {});
Contact contact_order_starred(const PuiseuxArc& a, const PuiseuxArc& b, const Precision& p = {});

using RefineArc = std::function<PuiseuxArc(const Rational& needed_residual)>;

/// Certified expansion of f(arc(y), y) below `window`. If the arc's residual
/// does not certify the window, `refine` is asked for a longer arc; without
/// it WindowTooSmall is thrown.
GermExpansion compose_germ(const BivarPoly& f, const PuiseuxArc& arc, const Rational& window,
                           const Precision& p = {}, const RefineArc& refine = {});

/// Largest window compose_germ will certify for f (4 * total degree).
Rational window_cap(const BivarPoly& f);

/// Lower bound for the certified window of f(arc) given the arc's residual.
Order certified_window(const BivarPoly& f, const PuiseuxArc& arc, const Rational& probe,
                       const Precision& p);

}  // namespace bilip
