#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bilip/polar.hpp"

namespace bilip {

struct PairData {
  int alpha = 0;
  int beta = 0;
  Rational l0;
  Rational delta;
  Rational m;
  Scalar nu;
};

enum class Exclusion {
  None,
  DifferentLine,
  ContactAtMostOne,
  SameCanyon,
  DifferentH0,
  NoDifferenceInWindow,
};

std::string to_string(Exclusion e);

struct PairOutcome {
  std::optional<PairData> data;
  Exclusion reason = Exclusion::None;
};

struct LeadingEntry {
  int arc = 0;
  Rational h0;
  Scalar a0;
  int multiplicity = 1;
};

struct DeltaL {
  Scalar lambda;
  std::vector<LeadingEntry> leading;
  std::vector<PairData> pairs;
};

struct Inv2 {
  int k = 0;
  std::vector<DeltaL> packets;
  unsigned precision_bits = 256;
};

/// Pair data for two polar arcs tangent to the same line. Expansions whose
/// window is too short for the contact order are recomputed from f.
PairOutcome pair_data(const BivarPoly& f, const PolarArc& a, const PolarArc& b,
                      const Precision& p = {});

DeltaL delta_L(const BivarPoly& f, const Scalar& lambda, const std::vector<PolarArc>& arcs,
               const Precision& p = {});

Inv2 inv2(const BivarPoly& f, const PolarAnalysis& polar, const Precision& p = {});
Inv2 inv2(const BivarPoly& f, const PolarOptions& opts = {});

struct GermAnalysis {
  PolarAnalysis polar;
  Inv2 inv;
  Precision used;
};

/// Polar stage plus Inv2, doubling the precision on inconclusive zero tests.
GermAnalysis analyze_germ(const BivarPoly& f, const PolarOptions& opts = {});

/// The C* action: a0 -> a0 c^h0 and nu -> nu c^(m - l0), principal branch.
DeltaL cstar_transform(const DeltaL& d, const Scalar& c, unsigned prec = 256);

}  // namespace bilip
