#pragma once

// Maximal and multimaximal couplings of the measurements in one connection.

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "cbd/system.hpp"

namespace cbd {

/// Joint distribution imposed on the k measurements of one connection.
/// Coordinates follow `contexts`; the table is sparse (zero-mass tuples omitted)
/// and keyed by TupleIndex of arity k.
struct ConnectionCoupling {
  PropertyId property;
  std::vector<ContextId> contexts;
  std::map<TupleIndex, Rational> table;

  std::size_t arity() const noexcept { return contexts.size(); }
  /// Pr[S_coordinate = +1].
  Rational plus_probability(std::size_t coordinate) const;

  friend bool operator==(const ConnectionCoupling&, const ConnectionCoupling&) = default;
};

/// Largest Pr[S = S'] over couplings of two binary variables with
/// Pr[S = +1] = p and Pr[S' = +1] = q, namely 1 - |p - q|.
Rational max_pair_equality(const Rational& p, const Rational& q);

/// The unique multimaximal coupling: a chain ("staircase") with mass p_1 on
/// all +1, p_{l+1} - p_l on the tuple that is -1 on coordinates 1..l and +1
/// after, and 1 - p_k on all -1.
ConnectionCoupling construct_multimaximal(const Connection& connection);

/// Pr[all coordinates in `subset` agree]. Indices are 0-based coordinates.
Rational subset_equality_prob(const ConnectionCoupling& coupling, std::span<const std::size_t> subset);

struct MultimaximalCheck {
  bool multimaximal = false;
  /// Consecutive coordinate pairs (l, l+1) whose equality probability falls short.
  std::vector<std::pair<std::size_t, std::size_t>> violations;
};

/// Checks the consecutive-pair condition, which is equivalent to maximality on
/// every subset. Throws DimensionError if `coupling` is not a coupling of
/// `connection` (context order or one-coordinate marginals differ, or mass != 1).
MultimaximalCheck is_multimaximal(const ConnectionCoupling& coupling, const Connection& connection);

}  // namespace cbd
