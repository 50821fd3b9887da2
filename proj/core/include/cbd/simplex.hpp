#pragma once

// Exact rational simplex for equality-form problems A x = b, x >= 0 whose
// constraint matrix has entries in {0, 1}. Columns are produced on demand so
// that 2^N-column coupling polytopes never have to be materialized.

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "cbd/rational.hpp"

namespace cbd {

/// Column oracle for a 0/1 matrix.
class ZeroOneMatrix {
 public:
  virtual ~ZeroOneMatrix() = default;
  virtual std::size_t rows() const = 0;
  virtual std::size_t columns() const = 0;
  /// Replaces `out` with the (ascending) row indices where column `j` holds a 1.
  virtual void column(std::size_t j, std::vector<std::size_t>& out) const = 0;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  /// Nonzero entries of the optimal (or feasible) point.
  std::map<std::size_t, Rational> solution;
  Rational objective;
  /// For infeasible problems: y with y.A_j <= 0 for every column and y.b > 0.
  std::vector<Rational> farkas;
  std::size_t iterations = 0;
};

/// Phase one only: a feasible point or a Farkas certificate.
LpResult find_feasible(const ZeroOneMatrix& a, std::span<const Rational> rhs);

/// Minimizes cost(j) * x_j over the polytope. `cost` is queried per column.
LpResult minimize(const ZeroOneMatrix& a, std::span<const Rational> rhs,
                  const std::function<Rational(std::size_t)>& cost);

/// A dense 0/1 matrix, mostly for tests and small problems.
class DenseZeroOneMatrix final : public ZeroOneMatrix {
 public:
  explicit DenseZeroOneMatrix(std::vector<std::vector<int>> rows);
  std::size_t rows() const override { return rows_.size(); }
  std::size_t columns() const override { return columns_; }
  void column(std::size_t j, std::vector<std::size_t>& out) const override;

 private:
  std::vector<std::vector<int>> rows_;
  std::size_t columns_ = 0;
};

}  // namespace cbd
