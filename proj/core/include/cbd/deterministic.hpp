#pragma once

// 0/1 value assignments under per-context logical constraints, for
// Kochen-Specker style arguments where every property is assumed to carry one
// context-independent value.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cbd/system.hpp"

namespace cbd {

struct Predicate {
  enum class Kind { exactly_k, at_most_k, all_equal };
  Kind kind = Kind::exactly_k;
  std::size_t k = 0;  ///< count for exactly_k / at_most_k, value (0 or 1) for all_equal

  static Predicate exactly(std::size_t k) { return {Kind::exactly_k, k}; }
  static Predicate at_most(std::size_t k) { return {Kind::at_most_k, k}; }
  static Predicate all_equal(std::size_t value) { return {Kind::all_equal, value}; }

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

struct Constraint {
  std::vector<PropertyId> scope;
  Predicate predicate;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

class ConstraintSystem {
 public:
  /// Validates: unique properties, scopes drawn from `properties` without
  /// repeats, k <= |scope|, all_equal value in {0, 1}.
  ConstraintSystem(std::vector<PropertyId> properties, std::vector<Constraint> constraints);

  const std::vector<PropertyId>& properties() const noexcept { return properties_; }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
  /// Position of `p` in properties(); throws LookupError.
  std::size_t index_of(const PropertyId& p) const;

 private:
  std::vector<PropertyId> properties_;
  std::vector<Constraint> constraints_;
};

/// Values indexed like ConstraintSystem::properties().
using Assignment = std::vector<bool>;

bool satisfies(const ConstraintSystem& cs, const Assignment& assignment);

inline constexpr std::size_t kMaxSearchProperties = 30;

struct SearchResult {
  std::optional<Assignment> witness;
  std::optional<std::uint64_t> count;  ///< set when counting was requested
};

/// Backtracking over 0/1 assignments, most-constrained property first.
/// Throws SizeLimitError above kMaxSearchProperties properties.
SearchResult assignment_search(const ConstraintSystem& cs, bool count_all = false);

struct ParityCheck {
  enum class Status { contradiction, inconclusive, inapplicable };
  Status status = Status::inapplicable;
  std::size_t contexts = 0;  ///< number of exactly-1-true scopes
  std::string explanation;
};

/// If every property lies in exactly two exactly-1-true scopes, the number of
/// true cells is twice the number of true properties (even) but also equals the
/// number of such scopes; an odd count is a contradiction.
ParityCheck parity_check_ks4d(const ConstraintSystem& cs);

std::string to_string(ParityCheck::Status status);

}  // namespace cbd
