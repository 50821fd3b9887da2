#include "cbd/coupling.hpp"

namespace cbd {

Rational ConnectionCoupling::plus_probability(std::size_t coordinate) const {
  if (coordinate >= arity()) throw LookupError("coordinate out of range");
  const TupleIndex bit = coordinate_bit(arity(), coordinate);
  Rational p = 0;
  for (const auto& [t, mass] : table) {
    if (!(t & bit)) p += mass;
  }
  return p;
}

Rational max_pair_equality(const Rational& p, const Rational& q) { return 1 - abs(p - q); }

ConnectionCoupling construct_multimaximal(const Connection& connection) {
  const auto& entries = connection.entries;
  const std::size_t k = entries.size();
  if (k == 0) throw ValidationError("connection has no entries");
  if (k >= 64) throw ValidationError("connection too long for tuple indexing");

  ConnectionCoupling out{connection.property, {}, {}};
  for (const auto& e : entries) out.contexts.push_back(e.context);

  auto put = [&](TupleIndex t, Rational mass) {
    if (mass < 0) throw ValidationError("connection entries are not sorted by p");
    if (mass != 0) out.table.emplace(t, std::move(mass));
  };
  // Tuple with coordinates 1..l at -1 and the rest at +1 sets the top l bits.
  const TupleIndex all_minus = (TupleIndex{1} << k) - 1;
  auto leading_minus = [&](std::size_t l) { return all_minus ^ ((TupleIndex{1} << (k - l)) - 1); };

  put(0, entries.front().p);
  for (std::size_t l = 1; l < k; ++l) put(leading_minus(l), entries[l].p - entries[l - 1].p);
  put(all_minus, 1 - entries.back().p);
  return out;
}

Rational subset_equality_prob(const ConnectionCoupling& coupling, std::span<const std::size_t> subset) {
  if (subset.empty()) throw ValidationError("empty coordinate subset");
  TupleIndex mask = 0;
  for (std::size_t i : subset) {
    if (i >= coupling.arity()) throw LookupError("coordinate " + std::to_string(i) + " out of range");
    mask |= coordinate_bit(coupling.arity(), i);
  }
  Rational p = 0;
  for (const auto& [t, mass] : coupling.table) {
    const TupleIndex selected = t & mask;
    if (selected == 0 || selected == mask) p += mass;
  }
  return p;
}

MultimaximalCheck is_multimaximal(const ConnectionCoupling& coupling, const Connection& connection) {
  const std::size_t k = connection.entries.size();
  if (coupling.arity() != k) throw DimensionError("coupling arity differs from connection size");
  Rational total = 0;
  for (const auto& [t, mass] : coupling.table) {
    if (mass < 0) throw DimensionError("coupling has negative mass");
    total += mass;
  }
  if (total != 1) throw DimensionError("coupling mass sums to " + to_string(total));
  for (std::size_t i = 0; i < k; ++i) {
    if (coupling.contexts[i] != connection.entries[i].context) {
      throw DimensionError("coupling coordinate " + std::to_string(i) + " is context '" + coupling.contexts[i].str() +
                           "', connection has '" + connection.entries[i].context.str() + "'");
    }
    if (coupling.plus_probability(i) != connection.entries[i].p) {
      throw DimensionError("marginal mismatch at context '" + coupling.contexts[i].str() + "'");
    }
  }

  MultimaximalCheck check;
  for (std::size_t l = 0; l + 1 < k; ++l) {
    const std::size_t pair[] = {l, l + 1};
    if (subset_equality_prob(coupling, pair) != max_pair_equality(connection.entries[l].p, connection.entries[l + 1].p)) {
      check.violations.emplace_back(l, l + 1);
    }
  }
  check.multimaximal = check.violations.empty();
  return check;
}

}  // namespace cbd
