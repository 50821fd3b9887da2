#include "cbd/decision.hpp"

#include <algorithm>

namespace cbd {
namespace {

std::size_t cell_index(const std::vector<Cell>& cells, const PropertyId& p, const ContextId& c) {
  const Cell key{p, c};
  const auto it = std::lower_bound(cells.begin(), cells.end(), key);
  if (it == cells.end() || *it != key) throw LookupError("no cell (" + p.str() + ", " + c.str() + ")");
  return static_cast<std::size_t>(it - cells.begin());
}

}  // namespace

std::string to_string(Mode mode) { return mode == Mode::cbd ? "cbd" : "traditional"; }

Mode parse_mode(std::string_view text) {
  if (text == "cbd") return Mode::cbd;
  if (text == "traditional") return Mode::traditional;
  throw ParseError("unknown mode '" + std::string(text) + "'");
}

std::string to_string(Method method) { return method == Method::lp ? "lp" : "cyclic-formula"; }

CouplingLP::CouplingLP(const System& system, Mode mode) : mode_(mode), cells_(system.cells()) {
  const std::size_t n = cells_.size();
  if (n >= 63) throw SizeLimitError("system has too many cells to index atoms", n, 62);
  auto bit_of = [n](std::size_t cell) { return TupleIndex{1} << (n - 1 - cell); };

  rows_.push_back({LpRow::Kind::normalization, 0, 0, 0, 0, Rational(1), "normalization"});

  for (const auto& ctx : system.contexts()) {
    ContextBlock block{rows_.size(), {}};
    TupleIndex care = 0;
    for (const auto& p : ctx.properties()) {
      const std::size_t c = cell_index(cells_, p, ctx.id());
      block.cell_bits.push_back(n - 1 - c);
      care |= bit_of(c);
    }
    const std::size_t m = ctx.arity();
    for (TupleIndex t = 0; t < ctx.table().size(); ++t) {
      TupleIndex value = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (outcome_at(t, m, i) == Outcome::minus) value |= TupleIndex{1} << block.cell_bits[i];
      }
      rows_.push_back({LpRow::Kind::context, care, value, 0, 0, ctx.table()[t].value(),
                       "context " + ctx.id().str() + ": " + tuple_to_string(t, m)});
    }
    blocks_.push_back(std::move(block));
  }

  first_pair_row_ = rows_.size();
  for (const auto& conn : connections(system)) {
    for (std::size_t l = 0; l + 1 < conn.entries.size(); ++l) {
      const auto& lo = conn.entries[l];
      const auto& hi = conn.entries[l + 1];
      LpRow row;
      row.kind = LpRow::Kind::pair;
      row.first = cell_index(cells_, conn.property, lo.context);
      row.second = cell_index(cells_, conn.property, hi.context);
      row.rhs = mode == Mode::cbd ? Rational(1 - (hi.p - lo.p)) : Rational(1);
      row.description = "pair " + conn.property.str() + ": " + lo.context.str() + " = " + hi.context.str();
      rows_.push_back(std::move(row));
    }
  }
}

std::vector<Rational> CouplingLP::rhs() const {
  std::vector<Rational> b;
  b.reserve(rows_.size());
  for (const auto& r : rows_) b.push_back(r.rhs);
  return b;
}

bool CouplingLP::coefficient(std::size_t row, TupleIndex atom) const {
  const LpRow& r = rows_.at(row);
  if (r.kind != LpRow::Kind::pair) return (atom & r.care) == r.value;
  const std::size_t n = cells_.size();
  return ((atom >> (n - 1 - r.first)) & 1U) == ((atom >> (n - 1 - r.second)) & 1U);
}

void CouplingLP::column(std::size_t atom, std::vector<std::size_t>& out) const {
  out.clear();
  out.push_back(0);
  for (const auto& block : blocks_) {
    const std::size_t m = block.cell_bits.size();
    TupleIndex t = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if ((atom >> block.cell_bits[i]) & 1U) t |= TupleIndex{1} << (m - 1 - i);
    }
    out.push_back(block.first_row + t);
  }
  for (std::size_t r = first_pair_row_; r < rows_.size(); ++r) {
    if (coefficient(r, atom)) out.push_back(r);
  }
}

CouplingLP build_lp(const System& system, Mode mode, std::size_t max_cells) {
  const std::size_t n = system.cell_count();
  if (n > max_cells) {
    throw SizeLimitError("system has N = " + std::to_string(n) + " measurement cells, over the limit of " +
                             std::to_string(max_cells),
                         n, max_cells);
  }
  return CouplingLP(system, mode);
}

Verdict decide(const System& system, Mode mode, const DecisionOptions& options) {
  const CouplingLP lp = build_lp(system, mode, options.max_cells);
  const auto b = lp.rhs();
  LpResult result = find_feasible(lp, b);

  Verdict v;
  v.mode = mode;
  v.method = Method::lp;
  v.iterations = result.iterations;
  if (result.status == LpStatus::optimal) {
    v.contextual = false;
    SystemCoupling w{lp.cells(), {}};
    for (auto& [atom, mass] : result.solution) w.table.emplace(atom, std::move(mass));
    v.witness = std::move(w);
  } else {
    v.contextual = true;
    v.certificate = FarkasCertificate{std::move(result.farkas)};
  }
  return v;
}

bool verify_witness(const System& system, Mode mode, const SystemCoupling& witness) {
  const CouplingLP lp(system, mode);
  if (witness.cells != lp.cells()) throw DimensionError("witness cells differ from the system's measurement cells");
  const TupleIndex atoms = TupleIndex{1} << lp.cell_count();
  std::vector<Rational> lhs(lp.rows());
  std::vector<std::size_t> rows;
  for (const auto& [atom, mass] : witness.table) {
    if (atom >= atoms) throw DimensionError("witness atom out of range");
    if (mass < 0) return false;
    lp.column(atom, rows);
    for (std::size_t r : rows) lhs[r] += mass;
  }
  for (std::size_t r = 0; r < lp.rows(); ++r) {
    if (lhs[r] != lp.constraint_rows()[r].rhs) return false;
  }
  return true;
}

bool verify_certificate(const System& system, Mode mode, const FarkasCertificate& certificate, std::size_t max_cells) {
  const CouplingLP lp = build_lp(system, mode, max_cells);
  const auto& y = certificate.multipliers;
  if (y.size() != lp.rows()) {
    throw DimensionError("certificate has " + std::to_string(y.size()) + " multipliers, LP has " +
                         std::to_string(lp.rows()) + " rows");
  }
  Rational yb = 0;
  for (std::size_t r = 0; r < lp.rows(); ++r) yb += y[r] * lp.constraint_rows()[r].rhs;
  if (yb <= 0) return false;
  std::vector<std::size_t> rows;
  Rational ya;
  for (std::size_t atom = 0; atom < lp.columns(); ++atom) {
    lp.column(atom, rows);
    ya = 0;
    for (std::size_t r : rows) ya += y[r];
    if (ya > 0) return false;
  }
  return true;
}

std::map<TupleIndex, Rational> restrict_to_connection(const SystemCoupling& coupling, const Connection& connection) {
  const std::size_t n = coupling.cells.size();
  const std::size_t k = connection.entries.size();
  std::vector<std::size_t> bits;
  for (const auto& e : connection.entries) bits.push_back(n - 1 - cell_index(coupling.cells, connection.property, e.context));
  std::map<TupleIndex, Rational> out;
  for (const auto& [atom, mass] : coupling.table) {
    TupleIndex t = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if ((atom >> bits[i]) & 1U) t |= TupleIndex{1} << (k - 1 - i);
    }
    out[t] += mass;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace cbd
