#include "cbd/deterministic.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cbd {
namespace {

struct Tally {
  std::size_t ones = 0;
  std::size_t zeros = 0;
};

// True if the constraint can still be met given the current tally and scope size.
bool viable(const Predicate& pred, const Tally& t, std::size_t size) {
  const std::size_t open = size - t.ones - t.zeros;
  switch (pred.kind) {
    case Predicate::Kind::exactly_k:
      return t.ones <= pred.k && t.ones + open >= pred.k;
    case Predicate::Kind::at_most_k:
      return t.ones <= pred.k;
    case Predicate::Kind::all_equal:
      return pred.k == 1 ? t.zeros == 0 : t.ones == 0;
  }
  return false;
}

class Search {
 public:
  Search(const ConstraintSystem& cs, bool count_all) : cs_(cs), count_all_(count_all) {
    const std::size_t n = cs.properties().size();
    membership_.resize(n);
    for (std::size_t c = 0; c < cs.constraints().size(); ++c) {
      for (const auto& p : cs.constraints()[c].scope) membership_[cs.index_of(p)].push_back(c);
    }
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return membership_[a].size() > membership_[b].size(); });
    tallies_.resize(cs.constraints().size());
    values_.assign(n, false);
  }

  SearchResult run() {
    descend(0);
    SearchResult r;
    r.witness = witness_;
    if (count_all_) r.count = count_;
    return r;
  }

 private:
  // Returns true once the search can stop.
  bool descend(std::size_t depth) {
    if (depth == order_.size()) {
      ++count_;
      if (!witness_) witness_ = values_;
      return !count_all_;
    }
    const std::size_t p = order_[depth];
    for (const bool value : {false, true}) {
      values_[p] = value;
      bool ok = true;
      for (std::size_t c : membership_[p]) {
        auto& t = tallies_[c];
        value ? ++t.ones : ++t.zeros;
        if (!viable(cs_.constraints()[c].predicate, t, cs_.constraints()[c].scope.size())) ok = false;
      }
      const bool stop = ok && descend(depth + 1);
      for (std::size_t c : membership_[p]) {
        auto& t = tallies_[c];
        value ? --t.ones : --t.zeros;
      }
      if (stop) return true;
    }
    values_[p] = false;
    return false;
  }

  const ConstraintSystem& cs_;
  bool count_all_;
  std::vector<std::vector<std::size_t>> membership_;
  std::vector<std::size_t> order_;
  std::vector<Tally> tallies_;
  Assignment values_;
  std::optional<Assignment> witness_;
  std::uint64_t count_ = 0;
};

}  // namespace

ConstraintSystem::ConstraintSystem(std::vector<PropertyId> properties, std::vector<Constraint> constraints)
    : properties_(std::move(properties)), constraints_(std::move(constraints)) {
  std::set<PropertyId> known;
  for (const auto& p : properties_) {
    if (p.str().empty()) throw ValidationError("property with empty identifier");
    if (!known.insert(p).second) throw ValidationError("duplicate property '" + p.str() + "'");
  }
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const auto& c = constraints_[i];
    const std::string where = "constraint " + std::to_string(i);
    std::set<PropertyId> scope;
    for (const auto& p : c.scope) {
      if (!known.count(p)) throw ValidationError(where + ": unknown property '" + p.str() + "'");
      if (!scope.insert(p).second) throw ValidationError(where + ": property '" + p.str() + "' repeated in scope");
    }
    if (c.scope.empty()) throw ValidationError(where + ": empty scope");
    if (c.predicate.kind == Predicate::Kind::all_equal) {
      if (c.predicate.k > 1) throw ValidationError(where + ": all_equal value must be 0 or 1");
    } else if (c.predicate.k > c.scope.size()) {
      throw ValidationError(where + ": k = " + std::to_string(c.predicate.k) + " exceeds scope size " +
                            std::to_string(c.scope.size()));
    }
  }
}

std::size_t ConstraintSystem::index_of(const PropertyId& p) const {
  const auto it = std::find(properties_.begin(), properties_.end(), p);
  if (it == properties_.end()) throw LookupError("unknown property '" + p.str() + "'");
  return static_cast<std::size_t>(it - properties_.begin());
}

bool satisfies(const ConstraintSystem& cs, const Assignment& assignment) {
  if (assignment.size() != cs.properties().size()) throw DimensionError("assignment size differs from property count");
  for (const auto& c : cs.constraints()) {
    Tally t;
    for (const auto& p : c.scope) assignment[cs.index_of(p)] ? ++t.ones : ++t.zeros;
    if (!viable(c.predicate, t, c.scope.size())) return false;
  }
  return true;
}

SearchResult assignment_search(const ConstraintSystem& cs, bool count_all) {
  if (cs.properties().size() > kMaxSearchProperties) {
    throw SizeLimitError("constraint system has " + std::to_string(cs.properties().size()) +
                             " properties, over the search bound of " + std::to_string(kMaxSearchProperties),
                         cs.properties().size(), kMaxSearchProperties);
  }
  return Search(cs, count_all).run();
}

ParityCheck parity_check_ks4d(const ConstraintSystem& cs) {
  ParityCheck out;
  std::vector<std::size_t> occurrences(cs.properties().size());
  for (const auto& c : cs.constraints()) {
    if (c.predicate != Predicate::exactly(1)) continue;
    ++out.contexts;
    for (const auto& p : c.scope) ++occurrences[cs.index_of(p)];
  }
  for (std::size_t i = 0; i < occurrences.size(); ++i) {
    if (occurrences[i] != 2) {
      out.status = ParityCheck::Status::inapplicable;
      out.explanation = "property '" + cs.properties()[i].str() + "' lies in " + std::to_string(occurrences[i]) +
                        " exactly-1-true scopes, not 2";
      return out;
    }
  }
  if (out.contexts % 2 == 1) {
    out.status = ParityCheck::Status::contradiction;
    out.explanation = "true cells = 2 x (true properties) is even, but " + std::to_string(out.contexts) +
                      " exactly-1-true scopes require an odd number";
  } else {
    out.status = ParityCheck::Status::inconclusive;
    out.explanation = std::to_string(out.contexts) + " exactly-1-true scopes: parity gives no contradiction";
  }
  return out;
}

std::string to_string(ParityCheck::Status status) {
  switch (status) {
    case ParityCheck::Status::contradiction:
      return "contradiction";
    case ParityCheck::Status::inconclusive:
      return "inconclusive";
    case ParityCheck::Status::inapplicable:
      return "inapplicable";
  }
  return "inapplicable";
}

}  // namespace cbd
