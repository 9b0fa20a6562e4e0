#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bilip/equivalence.hpp"

namespace bilip {

/// Smallest grid exponent q at (and above) which perturbing the arc by c*y^q
/// with random unimodular c no longer changes the order of the gradient.
/// The default grid steps by 1/(N lcm(1..deg_x f)) from 1 to ord f_y(arc) + 1.
Rational dgr_sampling(const BivarPoly& f, const PuiseuxArc& arc,
                      std::optional<std::vector<Rational>> grid = std::nullopt, int trials = 5,
                      std::uint64_t seed = 1, const Precision& p = {});

/// ord_y of the gradient of f along x = A(y) + c y^q (exact arithmetic when
/// the inputs are exact), capped at `cap`.
Rational gradient_order(const BivarPoly& f, const PuiseuxArc& arc, const Scalar& c,
                        const Rational& q, const Rational& cap, const Precision& p = {});

struct OrderSum {
  Rational polar_sum;      ///< sum of h0 over polar arcs, with multiplicity
  long resultant_order = 0;
  bool holds() const { return polar_sum == resultant_order; }
};

/// Compares the polar leading exponents against ord_y Res_x(f, f_x).
/// PreconditionNotMet unless lc_x(f_x) is constant and deg_x f equals the
/// multiplicity (so every root of f_x passes through the origin).
OrderSum order_sum_check(const BivarPoly& f, const PolarOptions& opts = {});

struct Transform {
  enum Kind { Scale, Shear } kind = Scale;
  Scalar value = Scalar(1);
  std::string to_string() const;
};

/// Scale(c): f(cx, cy). Shear(l): f(x + l y, y).
BivarPoly transform_germ(const BivarPoly& f, const Transform& t);

/// Exact point on the unit circle ((1 - t^2) + 2 t i) / (1 + t^2).
Scalar unit_circle_point(const Rational& t);

struct SelftestRow {
  std::string suite;
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

/// Golden examples, oracle agreement and invariance checks.
std::vector<SelftestRow> run_selftest(std::uint64_t seed = 1, const PolarOptions& opts = {});

}  // namespace bilip
