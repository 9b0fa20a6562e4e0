#pragma once

#include <string>
#include <vector>

#include "bilip/invariant.hpp"

namespace bilip {

/// A constant identifying two packets: c = u^D where u is the solved root.
struct CWitness {
  Scalar c;
  Scalar u;
  long D = 1;
};

/// Constants c (through the u = c^(1/D) parametrization) mapping d1 onto d2.
/// Empty when the packets cannot be identified.
std::vector<CWitness> delta_equivalent(const DeltaL& d1, const DeltaL& d2, const Precision& p = {});

/// Human-readable constraints on c that a witness for d1 -> d2 would satisfy.
std::vector<std::string> packet_constraints(const DeltaL& d1, const DeltaL& d2);

enum class Decision { NotEquivalent, ConsistentWithEquivalence };

std::string to_string(Decision d);

struct Witness {
  std::vector<int> line_map;                  ///< line i of the first germ -> line_map[i]
  std::vector<Scalar> c;                      ///< one representative constant per line
  std::vector<std::vector<CWitness>> candidates;  ///< all constants per line
};

struct Refutation {
  int line1 = -1;
  int line2 = -1;
  std::vector<std::string> constraints;
};

struct EquivalenceReport {
  Decision decision = Decision::NotEquivalent;
  std::vector<Witness> witnesses;
  std::vector<Refutation> refutations;
  std::vector<std::string> warnings;
};

EquivalenceReport inv2_equivalent(const Inv2& a, const Inv2& b, const Precision& p = {});

}  // namespace bilip
