#pragma once

// Built-in systems: the cyclic paradigms (KCBS, EPR-BB, SZLG, magic boxes) and
// the two Kochen-Specker incidence structures.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cbd/deterministic.hpp"
#include "cbd/system.hpp"

namespace cbd {

/// Parameters of context c_i = {q_i, q_{i+1}}: Pr[q_i = +1], Pr[q_{i+1} = +1]
/// and the product expectation <q_i q_{i+1}>.
struct PairParams {
  Rational first_marginal;
  Rational second_marginal;
  Rational product;
};

/// 2x2 table from two marginals and a product expectation:
/// Pr[+1,+1] = (1 + <A> + <B> + <AB>) / 4 and so on. Throws ValidationError
/// when a cell falls outside [0, 1].
ContextDistribution pair_context(ContextId id, PropertyId first, PropertyId second, const PairParams& params);

/// Cyclic system of rank params.size(). Labels are `properties[i]`, `contexts[i]`.
System build_cyclic(std::string name, const std::vector<PropertyId>& properties, const std::vector<ContextId>& contexts,
                    const std::vector<PairParams>& params);

enum class GalleryKind { probabilistic, constraint };

struct GalleryEntry {
  std::string key;
  GalleryKind kind;
  std::string description;
  std::size_t rank = 0;  ///< cyclic entries only
};

const std::vector<GalleryEntry>& gallery_entries();

using GalleryItem = std::variant<System, ConstraintSystem>;

/// Builds a gallery entry. For cyclic entries `params` is empty (defaults), one
/// element (broadcast to every context) or exactly one element per context.
/// Throws LookupError for an unknown key.
GalleryItem build(std::string_view key, const std::vector<PairParams>& params = {});

System build_kcbs(const std::vector<PairParams>& params = {});
System build_epr_bb(const std::vector<PairParams>& params = {});
System build_szlg(const std::vector<PairParams>& params = {});
/// Boxes qa, qb, qc opened in pairs; defaults to perfect anticorrelation with
/// symmetric marginals.
System build_magic_boxes(const std::vector<PairParams>& params = {});
ConstraintSystem build_ks4d();
ConstraintSystem build_ks3d();

}  // namespace cbd
