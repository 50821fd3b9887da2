#pragma once

// Systems of binary measurements: contexts with exact joint tables, connections
// and the queries the decision modules are built on.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cbd/error.hpp"
#include "cbd/rational.hpp"

namespace cbd {

/// Non-empty, case-sensitive identifier compared byte for byte.
template <class Tag>
class Label {
 public:
  Label() = default;
  explicit Label(std::string value) : value_(std::move(value)) {
    if (value_.empty()) throw ValidationError("empty identifier");
  }

  const std::string& str() const noexcept { return value_; }

  friend auto operator<=>(const Label&, const Label&) = default;
  friend bool operator==(const Label&, const Label&) = default;

 private:
  std::string value_;
};

using PropertyId = Label<struct PropertyTag>;
using ContextId = Label<struct ContextTag>;

enum class Outcome : int { plus = 1, minus = -1 };

/// Index of an outcome tuple. Coordinate i of an m-tuple lives in bit (m - 1 - i),
/// a set bit meaning -1, so ascending indices enumerate tuples lexicographically
/// with +1 before -1.
using TupleIndex = std::uint64_t;

inline Outcome outcome_at(TupleIndex tuple, std::size_t arity, std::size_t coordinate) {
  return ((tuple >> (arity - 1 - coordinate)) & 1U) ? Outcome::minus : Outcome::plus;
}

inline TupleIndex coordinate_bit(std::size_t arity, std::size_t coordinate) {
  return TupleIndex{1} << (arity - 1 - coordinate);
}

TupleIndex to_tuple_index(std::span<const Outcome> outcomes);
TupleIndex to_tuple_index(std::initializer_list<Outcome> outcomes);

/// "+1,-1,+1" form used in documents.
std::string tuple_to_string(TupleIndex tuple, std::size_t arity);
/// Inverse of tuple_to_string; throws ParseError on malformed text and
/// ValidationError when the arity differs from `arity`.
TupleIndex parse_tuple(std::string_view text, std::size_t arity);

inline constexpr std::size_t kMaxContextArity = 24;

/// Joint distribution of the measurements made in one context.
class ContextDistribution {
 public:
  /// `table` is dense (size 2^m) and indexed against `properties` in the order given;
  /// the stored form sorts the properties by label and permutes the table to match.
  ContextDistribution(ContextId id, std::vector<PropertyId> properties, std::vector<Probability> table);

  /// Sparse convenience: omitted tuples have probability 0. Keys index `properties` as given.
  static ContextDistribution from_sparse(ContextId id, std::vector<PropertyId> properties,
                                         const std::map<TupleIndex, Rational>& table);

  const ContextId& id() const noexcept { return id_; }
  std::span<const PropertyId> properties() const noexcept { return properties_; }
  std::size_t arity() const noexcept { return properties_.size(); }
  std::span<const Probability> table() const noexcept { return table_; }
  const Probability& probability(TupleIndex tuple) const { return table_.at(tuple); }

  bool measures(const PropertyId& property) const;
  /// Position of `property` in the canonical order; throws LookupError if absent.
  std::size_t coordinate_of(const PropertyId& property) const;
  /// Pr[R_property = +1] in this context.
  Rational plus_probability(const PropertyId& property) const;

  friend bool operator==(const ContextDistribution&, const ContextDistribution&) = default;

 private:
  ContextId id_;
  std::vector<PropertyId> properties_;
  std::vector<Probability> table_;
};

/// One measurement: property `property` recorded in context `context`.
struct Cell {
  PropertyId property;
  ContextId context;

  friend auto operator<=>(const Cell&, const Cell&) = default;
  friend bool operator==(const Cell&, const Cell&) = default;
};

class System {
 public:
  System(std::string name, std::vector<ContextDistribution> contexts);

  const std::string& name() const noexcept { return name_; }
  std::span<const ContextDistribution> contexts() const noexcept { return contexts_; }
  const ContextDistribution& context(const ContextId& id) const;
  bool has_context(const ContextId& id) const;

  /// Every property measured somewhere, sorted by label.
  std::vector<PropertyId> properties() const;
  /// Every measurement cell, sorted by (property, context).
  std::vector<Cell> cells() const;
  std::size_t cell_count() const;

  friend bool operator==(const System&, const System&) = default;

 private:
  std::string name_;
  std::vector<ContextDistribution> contexts_;
};

/// Marginal of `d` on `subset` (any order, no duplicates, nonempty).
ContextDistribution marginal(const ContextDistribution& d, std::span<const PropertyId> subset);

/// <R> for one property or <R R'> for two.
Rational expectation(const ContextDistribution& d, std::span<const PropertyId> properties);
Rational expectation(const ContextDistribution& d, const PropertyId& a);
Rational expectation(const ContextDistribution& d, const PropertyId& a, const PropertyId& b);

struct ConnectionEntry {
  ContextId context;
  Rational p;  ///< Pr[R_q^c = +1]

  friend bool operator==(const ConnectionEntry&, const ConnectionEntry&) = default;
};

/// All measurements of one property, ordered by ascending p, ties by context label.
struct Connection {
  PropertyId property;
  std::vector<ConnectionEntry> entries;

  friend bool operator==(const Connection&, const Connection&) = default;
};

/// One connection per property, sorted by property label.
std::vector<Connection> connections(const System& system);
Connection connection_of(const System& system, const PropertyId& property);

struct ConnectionDiscrepancy {
  PropertyId property;
  Rational delta;  ///< max p - min p over the connection
};

struct ConnectednessReport {
  std::vector<ConnectionDiscrepancy> connections;
  bool consistently_connected = true;
};

ConnectednessReport connectedness_report(const System& system);

/// Removes one measurement, marginalizing its context onto the remaining
/// properties. A context left empty is dropped. Throws LookupError if the cell
/// does not exist and ValidationError if it was the only cell of the system.
System delete_cell(const System& system, const PropertyId& property, const ContextId& context);

/// Swaps the +1/-1 labels of `property` in every context that measures it.
System flip_property(const System& system, const PropertyId& property);

}  // namespace cbd
