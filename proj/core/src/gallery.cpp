#include "cbd/gallery.hpp"

#include <map>

namespace cbd {
namespace {

std::vector<PropertyId> property_labels(std::initializer_list<const char*> labels) {
  std::vector<PropertyId> out;
  for (const char* l : labels) out.emplace_back(l);
  return out;
}

std::vector<ContextId> context_labels(std::initializer_list<const char*> labels) {
  std::vector<ContextId> out;
  for (const char* l : labels) out.emplace_back(l);
  return out;
}

std::vector<PropertyId> numbered_properties(std::size_t n) {
  std::vector<PropertyId> out;
  for (std::size_t i = 1; i <= n; ++i) out.emplace_back("q" + std::to_string(i));
  return out;
}

std::vector<ContextId> numbered_contexts(std::size_t n) {
  std::vector<ContextId> out;
  for (std::size_t i = 1; i <= n; ++i) out.emplace_back("c" + std::to_string(i));
  return out;
}

std::vector<PairParams> expand(const std::vector<PairParams>& given, std::vector<PairParams> defaults) {
  if (given.empty()) return defaults;
  if (given.size() == 1) return std::vector<PairParams>(defaults.size(), given.front());
  if (given.size() != defaults.size()) {
    throw ValidationError("expected 1 or " + std::to_string(defaults.size()) + " context parameter sets, got " +
                          std::to_string(given.size()));
  }
  return given;
}

PairParams uniform(Rational product) { return {Rational(1, 2), Rational(1, 2), std::move(product)}; }

ConstraintSystem from_incidence(const std::vector<std::pair<std::string, std::vector<std::string>>>& rows,
                                const std::vector<std::string>& context_order) {
  std::vector<PropertyId> properties;
  std::map<std::string, std::vector<PropertyId>> members;
  for (const auto& [prop, contexts] : rows) {
    properties.emplace_back(prop);
    for (const auto& c : contexts) members[c].emplace_back(prop);
  }
  std::vector<Constraint> constraints;
  for (const auto& c : context_order) constraints.push_back({members.at(c), Predicate::exactly(1)});
  return ConstraintSystem(std::move(properties), std::move(constraints));
}

}  // namespace

ContextDistribution pair_context(ContextId id, PropertyId first, PropertyId second, const PairParams& params) {
  PairParams p = params;
  p.first_marginal.canonicalize();
  p.second_marginal.canonicalize();
  p.product.canonicalize();
  const Rational ea = 2 * p.first_marginal - 1;
  const Rational eb = 2 * p.second_marginal - 1;
  const Rational& eab = p.product;
  // Tuple order (first, second): ++, +-, -+, --.
  const Rational cells[4] = {(1 + ea + eb + eab) / 4, (1 + ea - eb - eab) / 4, (1 - ea + eb - eab) / 4,
                             (1 - ea - eb + eab) / 4};
  std::vector<Probability> table;
  for (const auto& c : cells) {
    if (c < 0 || c > 1) {
      throw ValidationError("context '" + id.str() + "': marginals (" + to_string(params.first_marginal) + ", " +
                            to_string(params.second_marginal) + ") with product expectation " +
                            to_string(params.product) + " are not realizable");
    }
    table.emplace_back(c);
  }
  return ContextDistribution(std::move(id), {std::move(first), std::move(second)}, std::move(table));
}

System build_cyclic(std::string name, const std::vector<PropertyId>& properties, const std::vector<ContextId>& contexts,
                    const std::vector<PairParams>& params) {
  const std::size_t n = params.size();
  if (n < 2 || properties.size() != n || contexts.size() != n) {
    throw ValidationError("cyclic system needs n >= 2 properties, contexts and parameter sets");
  }
  std::vector<ContextDistribution> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(pair_context(contexts[i], properties[i], properties[(i + 1) % n], params[i]));
  }
  return System(std::move(name), std::move(out));
}

System build_kcbs(const std::vector<PairParams>& params) {
  return build_cyclic("kcbs", numbered_properties(5), numbered_contexts(5),
                      expand(params, std::vector<PairParams>(5, uniform(Rational(-4, 5)))));
}

System build_epr_bb(const std::vector<PairParams>& params) {
  const Rational c(7, 10);
  return build_cyclic("epr-bb", numbered_properties(4), numbered_contexts(4),
                      expand(params, {uniform(c), uniform(c), uniform(c), uniform(-c)}));
}

System build_szlg(const std::vector<PairParams>& params) {
  return build_cyclic("szlg", numbered_properties(3), numbered_contexts(3),
                      expand(params, std::vector<PairParams>(3, uniform(Rational(-4, 5)))));
}

System build_magic_boxes(const std::vector<PairParams>& params) {
  return build_cyclic("magic-boxes", property_labels({"qa", "qb", "qc"}), context_labels({"cab", "cbc", "cca"}),
                      expand(params, std::vector<PairParams>(3, uniform(Rational(-1)))));
}

ConstraintSystem build_ks4d() {
  return from_incidence(
      {
          {"q0001", {"c1", "c2"}},    {"q0010", {"c1", "c5"}},    {"q1100", {"c1", "c3"}},
          {"q1-100", {"c1", "c7"}},   {"q0100", {"c2", "c5"}},    {"q1010", {"c2", "c8"}},
          {"q10-10", {"c2", "c4"}},   {"q1-11-1", {"c3", "c4"}},  {"q1-1-11", {"c3", "c6"}},
          {"q0011", {"c3", "c7"}},    {"q1111", {"c4", "c6"}},    {"q010-1", {"c4", "c8"}},
          {"q1001", {"c5", "c9"}},    {"q100-1", {"c5", "c6"}},   {"q01-10", {"c6", "c9"}},
          {"q11-11", {"c7", "c8"}},   {"q111-1", {"c7", "c9"}},   {"q-1111", {"c8", "c9"}},
      },
      {"c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8", "c9"});
}

ConstraintSystem build_ks3d() {
  // Context c_xyz collects observables orthogonal to (x, y, z); conditioning on
  // q_xyz = 1 forces each of them to 0.
  const std::vector<std::pair<std::string, std::vector<std::string>>> rows = {
      {"q100", {"c001", "c011", "c012"}},
      {"q010", {"c001", "c101", "c102", "c201"}},
      {"q110", {"c001", "c1-12"}},
      {"q1-10", {"c001", "c112"}},
      {"q-101", {"c101", "c121"}},
      {"q0-11", {"c011", "c211"}},
      {"q-112", {"c1-12"}},
      {"q-201", {"c1-12", "c102"}},
      {"q021", {"c1-12"}},
      {"q-211", {"c102", "c211"}},
      {"q-102", {"c211", "c201"}},
      {"q-1-12", {"c201", "c112"}},
      {"q0-21", {"c112", "c012"}},
      {"q1-21", {"c012", "c121"}},
      {"q0-12", {"c121"}},
  };
  const std::vector<std::string> context_order = {"c001", "c101", "c011", "c1-12", "c102",
                                                  "c211", "c201", "c112", "c012", "c121"};
  std::vector<PropertyId> properties;
  std::map<std::string, std::vector<PropertyId>> members;
  for (const auto& [prop, contexts] : rows) {
    properties.emplace_back(prop);
    for (const auto& c : contexts) members[c].emplace_back(prop);
  }
  std::vector<Constraint> constraints;
  for (const auto& c : context_order) constraints.push_back({members.at(c), Predicate::all_equal(0)});
  // The boxed triple is an orthogonal basis, so exactly one of them is 1.
  constraints.push_back({property_labels({"q100", "q021", "q0-12"}), Predicate::exactly(1)});
  return ConstraintSystem(std::move(properties), std::move(constraints));
}

const std::vector<GalleryEntry>& gallery_entries() {
  static const std::vector<GalleryEntry> entries = {
      {"kcbs", GalleryKind::probabilistic, "rank-5 cyclic system; default marginals 1/2, products -4/5", 5},
      {"epr-bb", GalleryKind::probabilistic, "rank-4 cyclic system; default marginals 1/2, products 7/10,7/10,7/10,-7/10", 4},
      {"szlg", GalleryKind::probabilistic, "rank-3 cyclic system; default marginals 1/2, products -4/5", 3},
      {"magic-boxes", GalleryKind::probabilistic, "three boxes opened in pairs; default Pr[A = -B] = 1, marginals 1/2", 3},
      {"ks-4d", GalleryKind::constraint, "18 properties in 9 four-element contexts, exactly one true per context", 0},
      {"ks-3d", GalleryKind::constraint, "15 properties, 10 conditioned contexts forcing 0, boxed basis exactly one true", 0},
  };
  return entries;
}

GalleryItem build(std::string_view key, const std::vector<PairParams>& params) {
  if (key == "kcbs") return build_kcbs(params);
  if (key == "epr-bb") return build_epr_bb(params);
  if (key == "szlg") return build_szlg(params);
  if (key == "magic-boxes") return build_magic_boxes(params);
  if (key == "ks-4d" || key == "ks-3d") {
    if (!params.empty()) throw ValidationError("gallery entry '" + std::string(key) + "' takes no parameters");
    return key == "ks-4d" ? GalleryItem(build_ks4d()) : GalleryItem(build_ks3d());
  }
  throw LookupError("unknown gallery key '" + std::string(key) + "'");
}

}  // namespace cbd
