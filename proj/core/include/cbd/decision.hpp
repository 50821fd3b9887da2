#pragma once

// Contextuality as feasibility of the coupling polytope. Atoms are the 2^N
// joint outcomes of all N measurement cells; cells are ordered by (property,
// context) and cell c occupies bit N-1-c of the atom index, so ascending atoms
// are lexicographic with +1 first.
//
// Rows:
//   0                 normalization, sum of all atoms = 1
//   per context       one row per outcome tuple, equal to the context table
//   per connection    one row per consecutive pair (l, l+1) in the connection
//                     ordering: Pr[S_l = S_{l+1}] = 1 - (p_{l+1} - p_l) in cbd
//                     mode and = 1 in traditional mode
//
// Pairwise rows suffice: a coupling of a connection is multimaximal iff its
// consecutive pairs are maximal couplings.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cbd/simplex.hpp"
#include "cbd/system.hpp"

namespace cbd {

enum class Mode { traditional, cbd };

std::string to_string(Mode mode);
Mode parse_mode(std::string_view text);

inline constexpr std::size_t kDefaultMaxCells = 20;

struct LpRow {
  enum class Kind { normalization, context, pair };
  Kind kind = Kind::normalization;
  /// normalization/context rows: atom has coefficient 1 iff (atom & care) == value.
  TupleIndex care = 0;
  TupleIndex value = 0;
  /// pair rows: atom has coefficient 1 iff cells `first` and `second` agree.
  std::size_t first = 0;
  std::size_t second = 0;
  Rational rhs;
  std::string description;
};

class CouplingLP final : public ZeroOneMatrix {
 public:
  CouplingLP(const System& system, Mode mode);

  Mode mode() const noexcept { return mode_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const std::vector<LpRow>& constraint_rows() const noexcept { return rows_; }
  std::vector<Rational> rhs() const;
  std::size_t cell_count() const noexcept { return cells_.size(); }

  bool coefficient(std::size_t row, TupleIndex atom) const;

  std::size_t rows() const override { return rows_.size(); }
  std::size_t columns() const override { return std::size_t{1} << cells_.size(); }
  void column(std::size_t atom, std::vector<std::size_t>& out) const override;

 private:
  struct ContextBlock {
    std::size_t first_row;
    std::vector<std::size_t> cell_bits;  // bit position of each context coordinate
  };

  Mode mode_;
  std::vector<Cell> cells_;
  std::vector<LpRow> rows_;
  std::vector<ContextBlock> blocks_;
  std::size_t first_pair_row_ = 0;
};

/// Throws SizeLimitError when the system has more than `max_cells` cells.
CouplingLP build_lp(const System& system, Mode mode, std::size_t max_cells = kDefaultMaxCells);

/// A joint distribution over all measurement cells (sparse, nonzero atoms only).
struct SystemCoupling {
  std::vector<Cell> cells;
  std::map<TupleIndex, Rational> table;

  friend bool operator==(const SystemCoupling&, const SystemCoupling&) = default;
};

/// Multipliers y over the LP rows with y.A_atom <= 0 for every atom and y.b > 0.
struct FarkasCertificate {
  std::vector<Rational> multipliers;
};

enum class Method { cyclic_formula, lp };
std::string to_string(Method method);

struct Verdict {
  Mode mode = Mode::cbd;
  Method method = Method::lp;
  bool contextual = false;
  std::optional<SystemCoupling> witness;
  std::optional<FarkasCertificate> certificate;
  std::size_t iterations = 0;
};

struct DecisionOptions {
  std::size_t max_cells = kDefaultMaxCells;
};

/// Exact decision by the coupling LP. Exactly one of witness/certificate is set.
Verdict decide(const System& system, Mode mode, const DecisionOptions& options = {});

/// Throws DimensionError when the witness cells differ from the system's.
bool verify_witness(const System& system, Mode mode, const SystemCoupling& witness);

/// Throws DimensionError when the multiplier count differs from the LP row
/// count, SizeLimitError when the atom enumeration exceeds `max_cells`.
bool verify_certificate(const System& system, Mode mode, const FarkasCertificate& certificate,
                        std::size_t max_cells = kDefaultMaxCells);

/// Restriction of a system coupling to the cells of one property, in the
/// connection ordering.
std::map<TupleIndex, Rational> restrict_to_connection(const SystemCoupling& coupling, const Connection& connection);

}  // namespace cbd
