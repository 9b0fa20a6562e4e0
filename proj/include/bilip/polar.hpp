#pragma once

#include <vector>

#include "bilip/polynomial.hpp"
#include "bilip/puiseux.hpp"

namespace bilip {

struct PolarArc {
  int id = 0;
  PuiseuxArc arc;
  Rational dgr;
  Scalar tangent_lambda;
  bool tangential = false;
  Rational h0;
  Scalar a0;
  GermExpansion expansion;
  int canyon = -1;
};

struct Canyon {
  int id = 0;
  std::vector<int> members;
  Rational degree;
};

struct PolarOptions {
  Precision precision;
  int max_terms = 64;
  int threads = 1;
};

struct PolarAnalysis {
  TangentCone cone;
  std::vector<PolarArc> arcs;
  std::vector<Canyon> canyons;
};

/// Checks the germ is admissible (vanishes at 0, mini-regular, squarefree).
void require_admissible(const BivarPoly& f);

/// Polar arcs of f with conjugates enumerated, decorated and partitioned
/// into canyons.
PolarAnalysis polar_arcs(const BivarPoly& f, const PolarOptions& opts = {});

/// Gradient degree of a polar arc by reading the supports of f_x and f_y
/// shifted along the arc. `refine` supplies a longer arc when the residual
/// is too short to fix the pure-y order of f_y.
Rational gradient_degree(const BivarPoly& f, const PuiseuxArc& arc, const Precision& p = {},
                         const RefineArc& refine = {});

struct Tangency {
  Scalar lambda;
  bool tangential = false;
};

Tangency tangency(const PuiseuxArc& arc, const TangentCone& cone, const Precision& p = {});

/// Partition by (equal d_gr, starred contact >= d_gr). Sets PolarArc::canyon.
std::vector<Canyon> canyons(std::vector<PolarArc>& arcs, const Precision& p = {});

/// Root of f_x matching `old` best among a fresh expansion to `need`.
PuiseuxArc refine_polar(const BivarPoly& fx, const PuiseuxArc& old, const Rational& need,
                        const ExpansionOptions& opts);

}  // namespace bilip
