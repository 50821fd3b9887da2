#pragma once

// Brute-force reference computations used to check the library. Each one is
// written from the definitions, not from the library's shortcuts.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "cbd/decision.hpp"
#include "cbd/simplex.hpp"
#include "cbd/system.hpp"

namespace cbd::testkit {

/// Largest Pr[S = S'] for marginals p, q, scanning every Pr[+1,+1] on a grid
/// fine enough to contain all vertices of the coupling segment.
inline Rational grid_max_pair_equality(const Rational& p, const Rational& q) {
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), p.get_den_mpz_t(), q.get_den_mpz_t());
  const long d = den.get_si();
  std::optional<Rational> best;
  for (long i = 0; i <= d; ++i) {
    Rational t(i, d);
    t.canonicalize();
    const Rational pm = p - t, mp = q - t, mm = 1 - p - q + t;
    if (pm < 0 || mp < 0 || mm < 0) continue;
    const Rational eq = t + mm;
    if (!best || eq > *best) best = eq;
  }
  return *best;
}

/// max of sum(s_i v_i) over sign vectors with an odd number of -1 signs.
inline Rational brute_odd_sign_max(const std::vector<Rational>& v) {
  const std::size_t n = v.size();
  std::optional<Rational> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (__builtin_popcountll(mask) % 2 == 0) continue;
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) s += (mask >> i & 1U) ? Rational(-v[i]) : v[i];
    if (!best || s > *best) best = s;
  }
  return *best;
}

/// Pr[all coordinates in `subset` agree] for a dense table over k coordinates
/// (bit k-1-i set means coordinate i is -1).
inline Rational table_subset_equality(const std::map<TupleIndex, Rational>& table, std::size_t k,
                                      const std::vector<std::size_t>& subset) {
  Rational total = 0;
  for (const auto& [x, mass] : table) {
    std::optional<bool> seen;
    bool agree = true;
    for (std::size_t i : subset) {
      const bool minus = (x >> (k - 1 - i)) & 1U;
      if (seen && *seen != minus) agree = false;
      seen = minus;
    }
    if (agree) total += mass;
  }
  return total;
}

/// Polytope of couplings of one connection that are maximal on every subset of
/// size >= 2 (the definition, not the consecutive-pair shortcut), or on every
/// pair when `pairs_only`. Rows: normalization, one marginal row per
/// coordinate, one row per constrained subset.
struct MultimaximalPolytope {
  DenseZeroOneMatrix matrix;
  std::vector<Rational> rhs;
};

inline MultimaximalPolytope multimaximal_polytope(const std::vector<Rational>& p, bool pairs_only = false) {
  const std::size_t k = p.size();
  const std::size_t atoms = std::size_t{1} << k;
  std::vector<std::vector<int>> rows;
  std::vector<Rational> rhs;
  rows.emplace_back(atoms, 1);
  rhs.emplace_back(1);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<int> r(atoms);
    for (std::size_t x = 0; x < atoms; ++x) r[x] = ((x >> (k - 1 - i)) & 1U) ? 0 : 1;
    rows.push_back(r);
    rhs.push_back(p[i]);
  }
  for (std::size_t mask = 1; mask < atoms; ++mask) {
    const int size = __builtin_popcountll(mask);
    if (size < 2 || (pairs_only && size != 2)) continue;
    std::vector<std::size_t> subset;
    Rational lo = 1, hi = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1U) {
        subset.push_back(i);
        lo = std::min(lo, p[i]);
        hi = std::max(hi, p[i]);
      }
    }
    std::vector<int> r(atoms);
    for (std::size_t x = 0; x < atoms; ++x) {
      std::map<TupleIndex, Rational> point{{x, Rational(1)}};
      r[x] = table_subset_equality(point, k, subset) == 1 ? 1 : 0;
    }
    rows.push_back(r);
    rhs.push_back(1 - (hi - lo));
  }
  return {DenseZeroOneMatrix(std::move(rows)), std::move(rhs)};
}

/// Range [min, max] of every atom's mass over the multimaximal polytope, or
/// nullopt if the polytope is empty.
inline std::optional<std::vector<std::pair<Rational, Rational>>> atom_ranges(const std::vector<Rational>& p,
                                                                                bool pairs_only = false) {
  const auto poly = multimaximal_polytope(p, pairs_only);
  const std::size_t atoms = std::size_t{1} << p.size();
  std::vector<std::pair<Rational, Rational>> out;
  for (std::size_t a = 0; a < atoms; ++a) {
    const auto lo = minimize(poly.matrix, poly.rhs, [a](std::size_t j) { return Rational(j == a ? 1 : 0); });
    if (lo.status != LpStatus::optimal) return std::nullopt;
    const auto hi = minimize(poly.matrix, poly.rhs, [a](std::size_t j) { return Rational(j == a ? -1 : 0); });
    out.emplace_back(lo.objective, -hi.objective);
  }
  return out;
}

/// Checks a system coupling against the definitions: nonnegative, total mass 1,
/// every context table reproduced, and in cbd mode every subset of every
/// connection maximally coupled (traditional: all measurements of a property
/// identical).
inline bool is_valid_coupling(const System& s, Mode mode, const SystemCoupling& w) {
  const auto cells = s.cells();
  if (w.cells != cells) return false;
  const std::size_t n = cells.size();
  Rational total = 0;
  for (const auto& [x, mass] : w.table) {
    if (mass < 0 || x >= (TupleIndex{1} << n)) return false;
    total += mass;
  }
  if (total != 1) return false;
  auto bit_of = [&](const PropertyId& q, const ContextId& c) {
    const auto it = std::find(cells.begin(), cells.end(), Cell{q, c});
    return n - 1 - static_cast<std::size_t>(it - cells.begin());
  };
  for (const auto& ctx : s.contexts()) {
    const std::size_t m = ctx.arity();
    std::vector<Rational> got(std::size_t{1} << m);
    for (const auto& [x, mass] : w.table) {
      TupleIndex t = 0;
      for (std::size_t i = 0; i < m; ++i) t = (t << 1) | ((x >> bit_of(ctx.properties()[i], ctx.id())) & 1U);
      got[t] += mass;
    }
    for (TupleIndex t = 0; t < got.size(); ++t) {
      if (got[t] != ctx.probability(t).value()) return false;
    }
  }
  for (const auto& q : s.properties()) {
    std::vector<std::size_t> bits;
    std::vector<Rational> ps;
    for (const auto& ctx : s.contexts()) {
      if (!ctx.measures(q)) continue;
      bits.push_back(bit_of(q, ctx.id()));
      ps.push_back(ctx.plus_probability(q));
    }
    const std::size_t k = bits.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
      if (__builtin_popcountll(mask) < 2) continue;
      Rational lo = 1, hi = 0, agree = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask >> i & 1U) {
          lo = std::min(lo, ps[i]);
          hi = std::max(hi, ps[i]);
        }
      }
      for (const auto& [x, mass] : w.table) {
        std::optional<bool> seen;
        bool same = true;
        for (std::size_t i = 0; i < k; ++i) {
          if (!(mask >> i & 1U)) continue;
          const bool minus = (x >> bits[i]) & 1U;
          if (seen && *seen != minus) same = false;
          seen = minus;
        }
        if (same) agree += mass;
      }
      const Rational target = mode == Mode::cbd ? Rational(1 - (hi - lo)) : Rational(1);
      if (agree != target) return false;
    }
  }
  return true;
}

/// Checks y.A_atom <= 0 for every atom and y.b > 0, evaluating each row from
/// its description (care/value mask or pair of cells) rather than the LP's own
/// column generator.
inline bool is_valid_certificate(const CouplingLP& lp, const FarkasCertificate& cert) {
  const auto& rows = lp.constraint_rows();
  if (cert.multipliers.size() != rows.size()) return false;
  Rational yb = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) yb += cert.multipliers[r] * rows[r].rhs;
  if (yb <= 0) return false;
  const std::size_t n = lp.cell_count();
  for (TupleIndex x = 0; x < (TupleIndex{1} << n); ++x) {
    Rational ya = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& row = rows[r];
      bool hit;
      if (row.kind == LpRow::Kind::pair) {
        hit = ((x >> (n - 1 - row.first)) & 1U) == ((x >> (n - 1 - row.second)) & 1U);
      } else {
        hit = (x & row.care) == row.value;
      }
      if (hit) ya += cert.multipliers[r];
    }
    if (ya > 0) return false;
  }
  return true;
}

}  // namespace cbd::testkit
