#include "cbd/system.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cbd {
namespace {

std::string quoted(const std::string& s) { return "'" + s + "'"; }

// Re-indexes a tuple whose coordinate order is `from` into the coordinate
// order `to`, where `to[j] = from[perm[j]]`.
TupleIndex permute_tuple(TupleIndex tuple, std::span<const std::size_t> perm) {
  const std::size_t m = perm.size();
  TupleIndex out = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (outcome_at(tuple, m, perm[j]) == Outcome::minus) out |= coordinate_bit(m, j);
  }
  return out;
}

}  // namespace

TupleIndex to_tuple_index(std::span<const Outcome> outcomes) {
  TupleIndex t = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i] == Outcome::minus) t |= coordinate_bit(outcomes.size(), i);
  }
  return t;
}

TupleIndex to_tuple_index(std::initializer_list<Outcome> outcomes) {
  return to_tuple_index(std::span<const Outcome>(outcomes.begin(), outcomes.size()));
}

std::string tuple_to_string(TupleIndex tuple, std::size_t arity) {
  std::string out;
  for (std::size_t i = 0; i < arity; ++i) {
    if (i) out += ',';
    out += outcome_at(tuple, arity, i) == Outcome::plus ? "+1" : "-1";
  }
  return out;
}

TupleIndex parse_tuple(std::string_view text, std::size_t arity) {
  std::vector<Outcome> outcomes;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (token == "+1") {
      outcomes.push_back(Outcome::plus);
    } else if (token == "-1") {
      outcomes.push_back(Outcome::minus);
    } else {
      throw ParseError("invalid outcome tuple '" + std::string(text) + "'");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (outcomes.size() != arity) {
    throw ValidationError("tuple '" + std::string(text) + "' has arity " + std::to_string(outcomes.size()) +
                          ", expected " + std::to_string(arity));
  }
  return to_tuple_index(outcomes);
}

ContextDistribution::ContextDistribution(ContextId id, std::vector<PropertyId> properties,
                                         std::vector<Probability> table)
    : id_(std::move(id)) {
  const std::string where = "context " + quoted(id_.str());
  if (id_.str().empty()) throw ValidationError("context with empty identifier");
  if (properties.empty()) throw ValidationError(where + ": no properties");
  if (properties.size() > kMaxContextArity) {
    throw ValidationError(where + ": more than " + std::to_string(kMaxContextArity) + " properties");
  }
  for (const auto& p : properties) {
    if (p.str().empty()) throw ValidationError(where + ": property with empty identifier");
  }
  const std::size_t m = properties.size();
  if (table.size() != (std::size_t{1} << m)) {
    throw ValidationError(where + ": table has " + std::to_string(table.size()) + " cells, expected " +
                          std::to_string(std::size_t{1} << m));
  }

  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return properties[a] < properties[b]; });
  properties_.reserve(m);
  for (std::size_t j : perm) properties_.push_back(properties[j]);
  if (std::adjacent_find(properties_.begin(), properties_.end()) != properties_.end()) {
    throw ValidationError(where + ": duplicate property " +
                          quoted(std::adjacent_find(properties_.begin(), properties_.end())->str()));
  }

  Rational sum = 0;
  table_.resize(table.size());
  for (TupleIndex t = 0; t < table.size(); ++t) {
    sum += table[t].value();
    table_[permute_tuple(t, perm)] = std::move(table[t]);
  }
  if (sum != 1) throw ValidationError(where + ": table not normalized (sum " + to_string(sum) + ")");
}

ContextDistribution ContextDistribution::from_sparse(ContextId id, std::vector<PropertyId> properties,
                                                     const std::map<TupleIndex, Rational>& table) {
  const std::size_t m = properties.size();
  if (m > kMaxContextArity) {
    throw ValidationError("context " + quoted(id.str()) + ": more than " + std::to_string(kMaxContextArity) +
                          " properties");
  }
  std::vector<Probability> dense(std::size_t{1} << m);
  for (const auto& [tuple, p] : table) {
    if (tuple >= dense.size()) throw ValidationError("context " + quoted(id.str()) + ": tuple index out of range");
    dense[tuple] = Probability(p);
  }
  return ContextDistribution(std::move(id), std::move(properties), std::move(dense));
}

bool ContextDistribution::measures(const PropertyId& property) const {
  return std::binary_search(properties_.begin(), properties_.end(), property);
}

std::size_t ContextDistribution::coordinate_of(const PropertyId& property) const {
  const auto it = std::lower_bound(properties_.begin(), properties_.end(), property);
  if (it == properties_.end() || *it != property) {
    throw LookupError("property " + quoted(property.str()) + " not measured in context " + quoted(id_.str()));
  }
  return static_cast<std::size_t>(it - properties_.begin());
}

Rational ContextDistribution::plus_probability(const PropertyId& property) const {
  const TupleIndex bit = coordinate_bit(arity(), coordinate_of(property));
  Rational p = 0;
  for (TupleIndex t = 0; t < table_.size(); ++t) {
    if (!(t & bit)) p += table_[t].value();
  }
  return p;
}

System::System(std::string name, std::vector<ContextDistribution> contexts)
    : name_(std::move(name)), contexts_(std::move(contexts)) {
  if (contexts_.empty()) throw ValidationError("system " + quoted(name_) + " has no contexts");
  std::set<ContextId> seen;
  for (const auto& c : contexts_) {
    if (!seen.insert(c.id()).second) throw ValidationError("duplicate context " + quoted(c.id().str()));
  }
}

const ContextDistribution& System::context(const ContextId& id) const {
  for (const auto& c : contexts_) {
    if (c.id() == id) return c;
  }
  throw LookupError("no context " + quoted(id.str()) + " in system " + quoted(name_));
}

bool System::has_context(const ContextId& id) const {
  return std::any_of(contexts_.begin(), contexts_.end(), [&](const auto& c) { return c.id() == id; });
}

std::vector<PropertyId> System::properties() const {
  std::set<PropertyId> all;
  for (const auto& c : contexts_) all.insert(c.properties().begin(), c.properties().end());
  return {all.begin(), all.end()};
}

std::vector<Cell> System::cells() const {
  std::vector<Cell> out;
  for (const auto& c : contexts_) {
    for (const auto& p : c.properties()) out.push_back(Cell{p, c.id()});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t System::cell_count() const {
  std::size_t n = 0;
  for (const auto& c : contexts_) n += c.arity();
  return n;
}

ContextDistribution marginal(const ContextDistribution& d, std::span<const PropertyId> subset) {
  if (subset.empty()) throw ValidationError("marginal over an empty property set");
  std::vector<std::size_t> coords;
  coords.reserve(subset.size());
  for (const auto& p : subset) coords.push_back(d.coordinate_of(p));

  const std::size_t m = d.arity();
  const std::size_t k = coords.size();
  std::vector<Rational> sums(std::size_t{1} << k);
  for (TupleIndex t = 0; t < d.table().size(); ++t) {
    TupleIndex sub = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (outcome_at(t, m, coords[j]) == Outcome::minus) sub |= coordinate_bit(k, j);
    }
    sums[sub] += d.table()[t].value();
  }
  std::vector<Probability> table;
  table.reserve(sums.size());
  for (auto& s : sums) table.emplace_back(std::move(s));
  return ContextDistribution(d.id(), {subset.begin(), subset.end()}, std::move(table));
}

Rational expectation(const ContextDistribution& d, std::span<const PropertyId> properties) {
  if (properties.empty() || properties.size() > 2) {
    throw ValidationError("expectation takes one or two properties");
  }
  TupleIndex mask = 0;
  for (const auto& p : properties) mask ^= coordinate_bit(d.arity(), d.coordinate_of(p));
  Rational e = 0;
  for (TupleIndex t = 0; t < d.table().size(); ++t) {
    // The product of the selected outcomes is -1 iff an odd number of them are -1.
    if (__builtin_popcountll(t & mask) % 2) {
      e -= d.table()[t].value();
    } else {
      e += d.table()[t].value();
    }
  }
  return e;
}

Rational expectation(const ContextDistribution& d, const PropertyId& a) {
  return expectation(d, std::span<const PropertyId>(&a, 1));
}

Rational expectation(const ContextDistribution& d, const PropertyId& a, const PropertyId& b) {
  const PropertyId pair[] = {a, b};
  return expectation(d, pair);
}

Connection connection_of(const System& system, const PropertyId& property) {
  Connection c{property, {}};
  for (const auto& ctx : system.contexts()) {
    if (ctx.measures(property)) c.entries.push_back({ctx.id(), ctx.plus_probability(property)});
  }
  if (c.entries.empty()) throw LookupError("property " + quoted(property.str()) + " is not measured");
  std::sort(c.entries.begin(), c.entries.end(), [](const ConnectionEntry& a, const ConnectionEntry& b) {
    if (a.p != b.p) return a.p < b.p;
    return a.context < b.context;
  });
  return c;
}

std::vector<Connection> connections(const System& system) {
  std::vector<Connection> out;
  for (const auto& p : system.properties()) out.push_back(connection_of(system, p));
  return out;
}

ConnectednessReport connectedness_report(const System& system) {
  ConnectednessReport report;
  for (const auto& c : connections(system)) {
    Rational delta = c.entries.back().p - c.entries.front().p;
    if (delta != 0) report.consistently_connected = false;
    report.connections.push_back({c.property, std::move(delta)});
  }
  return report;
}

System delete_cell(const System& system, const PropertyId& property, const ContextId& context) {
  const auto& target = system.context(context);
  target.coordinate_of(property);
  std::vector<ContextDistribution> kept;
  for (const auto& c : system.contexts()) {
    if (c.id() != context) {
      kept.push_back(c);
      continue;
    }
    std::vector<PropertyId> rest;
    for (const auto& p : c.properties()) {
      if (p != property) rest.push_back(p);
    }
    if (!rest.empty()) kept.push_back(marginal(c, rest));
  }
  if (kept.empty()) throw ValidationError("cannot delete the only measurement of a system");
  return System(system.name(), std::move(kept));
}

System flip_property(const System& system, const PropertyId& property) {
  std::vector<ContextDistribution> out;
  for (const auto& c : system.contexts()) {
    if (!c.measures(property)) {
      out.push_back(c);
      continue;
    }
    const TupleIndex bit = coordinate_bit(c.arity(), c.coordinate_of(property));
    std::vector<Probability> table(c.table().size());
    for (TupleIndex t = 0; t < table.size(); ++t) table[t ^ bit] = c.table()[t];
    out.emplace_back(c.id(), std::vector<PropertyId>(c.properties().begin(), c.properties().end()), std::move(table));
  }
  return System(system.name(), std::move(out));
}

}  // namespace cbd
