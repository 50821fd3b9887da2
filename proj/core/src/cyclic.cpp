#include "cbd/cyclic.hpp"

#include <algorithm>
#include <map>

namespace cbd {

std::optional<CyclicArrangement> detect_cyclic(const System& system) {
  const auto contexts = system.contexts();
  std::map<PropertyId, std::vector<const ContextDistribution*>> incidence;
  for (const auto& c : contexts) {
    if (c.arity() != 2) return std::nullopt;
    for (const auto& p : c.properties()) incidence[p].push_back(&c);
  }
  const std::size_t n = contexts.size();
  if (n < 2 || incidence.size() != n) return std::nullopt;
  for (const auto& [p, cs] : incidence) {
    if (cs.size() != 2) return std::nullopt;
  }

  auto other_property = [](const ContextDistribution& c, const PropertyId& p) {
    return c.properties()[0] == p ? c.properties()[1] : c.properties()[0];
  };

  const PropertyId& first = incidence.begin()->first;
  const auto& first_contexts = incidence.begin()->second;
  // Orient toward the smaller neighbour; on a tie (rank 2) take the smaller context.
  const ContextDistribution* start = first_contexts[0];
  const ContextDistribution* alt = first_contexts[1];
  const PropertyId a = other_property(*start, first);
  const PropertyId b = other_property(*alt, first);
  if (b < a || (a == b && alt->id() < start->id())) std::swap(start, alt);

  CyclicArrangement out;
  out.rank = n;
  PropertyId q = first;
  const ContextDistribution* c = start;
  for (std::size_t i = 0; i < n; ++i) {
    out.properties.push_back(q);
    out.contexts.push_back(c->id());
    q = other_property(*c, q);
    const auto& cs = incidence.at(q);
    c = cs[0] == c ? cs[1] : cs[0];
  }
  // A walk that closes early means several disjoint cycles.
  if (q != first || c != start) return std::nullopt;
  std::vector<PropertyId> seen = out.properties;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return std::nullopt;
  return out;
}

Rational odd_sign_max(std::span<const Rational> values) {
  if (values.empty()) throw ValidationError("odd_sign_max of an empty list");
  Rational total = 0;
  Rational smallest = abs(values[0]);
  std::size_t negatives = 0;
  bool has_zero = false;
  for (const auto& v : values) {
    total += abs(v);
    smallest = std::min(smallest, abs(v));
    if (v < 0) ++negatives;
    if (v == 0) has_zero = true;
  }
  // Taking every term at |v| needs an odd number of negative values; a zero
  // term can absorb the parity at no cost.
  if (negatives % 2 == 1 || has_zero) return total;
  return total - 2 * smallest;
}

CyclicVerdict cyclic_contextuality(const System& system, const CyclicArrangement& a) {
  const std::size_t n = a.rank;
  if (n < 2 || a.properties.size() != n || a.contexts.size() != n || system.contexts().size() != n) {
    throw ValidationError("arrangement does not match system");
  }
  auto distinct = [](auto labels) {
    std::sort(labels.begin(), labels.end());
    return std::adjacent_find(labels.begin(), labels.end()) == labels.end();
  };
  if (!distinct(a.properties) || !distinct(a.contexts)) throw ValidationError("arrangement repeats a label");
  std::vector<Rational> products;
  Rational discrepancy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const PropertyId& qi = a.properties[i];
    const PropertyId& qnext = a.properties[(i + 1) % n];
    if (!system.has_context(a.contexts[i])) throw ValidationError("arrangement names an unknown context");
    const auto& ci = system.context(a.contexts[i]);
    const auto& cprev = system.context(a.contexts[(i + n - 1) % n]);
    if (ci.arity() != 2 || !ci.measures(qi) || !ci.measures(qnext)) {
      throw ValidationError("context '" + ci.id().str() + "' does not measure its arranged pair");
    }
    if (!cprev.measures(qi)) throw ValidationError("context '" + cprev.id().str() + "' does not measure '" + qi.str() + "'");
    products.push_back(expectation(ci, qi, qnext));
    discrepancy += abs(expectation(ci, qi) - expectation(cprev, qi));
  }

  CyclicVerdict v;
  v.lhs = odd_sign_max(products);
  v.rhs = Rational(static_cast<long>(n) - 2) + discrepancy;
  v.slack = v.lhs - v.rhs;
  v.contextual = v.slack > 0;
  return v;
}

}  // namespace cbd
