#pragma once

// Cyclic systems: n properties and n contexts, context i measuring exactly
// q_i and q_{i+1} (indices mod n), and the closed-form noncontextuality test.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cbd/system.hpp"

namespace cbd {

struct CyclicArrangement {
  std::size_t rank = 0;
  std::vector<PropertyId> properties;  ///< q_1..q_n
  std::vector<ContextId> contexts;     ///< c_i measures {q_i, q_{i+1}}

  friend bool operator==(const CyclicArrangement&, const CyclicArrangement&) = default;
};

/// Canonical arrangement, or nullopt if `system` is not cyclic. q_1 is the
/// smallest property label and q_2 its smaller-labeled neighbour; for rank 2,
/// c_1 is the smaller context label.
std::optional<CyclicArrangement> detect_cyclic(const System& system);

/// max over sign vectors with an odd number of -1 of sum(sign_i * values_i).
Rational odd_sign_max(std::span<const Rational> values);

struct CyclicVerdict {
  Rational lhs;    ///< odd_sign_max of the within-context product expectations
  Rational rhs;    ///< n - 2 + sum of |<R_i^i> - <R_i^{i-1}>|
  Rational slack;  ///< lhs - rhs; reported for information only
  bool contextual = false;  ///< lhs > rhs; equality is noncontextual
};

/// Throws ValidationError if `arrangement` does not describe `system`.
CyclicVerdict cyclic_contextuality(const System& system, const CyclicArrangement& arrangement);

}  // namespace cbd
