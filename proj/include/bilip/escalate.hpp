#pragma once

#include <utility>

#include "bilip/errors.hpp"
#include "bilip/scalar.hpp"

namespace bilip {

/// Runs fn(p), doubling the working precision whenever a zero test or a
/// tolerance comparison is inconclusive, up to p.max_bits.
template <typename Fn>
auto with_escalation(Precision p, Fn&& fn) -> decltype(fn(p)) {
  for (;;) {
    try {
      return fn(p);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::AmbiguousZero) throw;
      if (p.bits * 2 > p.max_bits)
        fail(ErrorKind::PrecisionExhausted,
             "still inconclusive at " + std::to_string(p.bits) + " bits: " + e.what());
      p = p.doubled();
    }
  }
}

}  // namespace bilip
