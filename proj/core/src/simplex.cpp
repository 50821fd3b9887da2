#include "cbd/simplex.hpp"

#include <cstdint>
#include <optional>

#include "cbd/error.hpp"

namespace cbd {
namespace {

// Revised simplex with an explicit dense basis inverse. Pricing is Dantzig's
// rule, falling back to Bland's rule during long degenerate stretches so the
// heavily degenerate coupling polytopes cannot make it cycle.
// Artificial column n + i is the unit vector of row i. Rows with b_i < 0 are
// negated internally (sign_[i] = -1).
class Solver {
 public:
  Solver(const ZeroOneMatrix& a, std::span<const Rational> rhs) : a_(a), m_(a.rows()), n_(a.columns()) {
    if (rhs.size() != m_) throw DimensionError("right-hand side length differs from row count");
    sign_.assign(m_, 1);
    xb_.resize(m_);
    basis_.resize(m_);
    binv_.assign(m_, std::vector<Rational>(m_));
    for (std::size_t i = 0; i < m_; ++i) {
      if (rhs[i] < 0) sign_[i] = -1;
      xb_[i] = sign_[i] * rhs[i];
      xb_[i].canonicalize();
      basis_[i] = n_ + i;
      binv_[i][i] = 1;
    }
    in_basis_.assign(n_ + m_, false);
    for (std::size_t i = 0; i < m_; ++i) in_basis_[n_ + i] = true;
  }

  LpResult feasibility() {
    LpResult result;
    cost_ = [this](std::size_t j) { return Rational(j >= n_ ? 1 : 0); };
    zero_structural_costs_ = true;
    refresh_basis_costs();
    run(result);
    Rational infeasibility = 0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] >= n_) infeasibility += xb_[r];
    }
    if (infeasibility > 0) {
      result.status = LpStatus::infeasible;
      result.objective = infeasibility;
      const auto y = duals();
      result.farkas.resize(m_);
      for (std::size_t i = 0; i < m_; ++i) result.farkas[i] = sign_[i] * y[i];
      return result;
    }
    result.status = LpStatus::optimal;
    collect(result);
    return result;
  }

  LpResult optimize(const std::function<Rational(std::size_t)>& cost) {
    LpResult result = feasibility();
    if (result.status == LpStatus::infeasible) return result;
    drive_out_artificials();
    cost_ = [&cost, this](std::size_t j) { return j >= n_ ? Rational(0) : cost(j); };
    zero_structural_costs_ = false;
    refresh_basis_costs();
    if (!run(result)) {
      result.status = LpStatus::unbounded;
      result.solution.clear();
      return result;
    }
    result.status = LpStatus::optimal;
    collect(result);
    return result;
  }

 private:
  void column(std::size_t j, std::vector<std::size_t>& out) const {
    if (j >= n_) {
      out.assign(1, j - n_);
    } else {
      a_.column(j, out);
    }
  }

  // Binv * A_j.
  std::vector<Rational> transformed(std::size_t j) const {
    std::vector<std::size_t> rows;
    column(j, rows);
    std::vector<Rational> u(m_);
    for (std::size_t i : rows) {
      for (std::size_t r = 0; r < m_; ++r) {
        if (binv_[r][i] == 0) continue;
        if (sign_[i] > 0) {
          u[r] += binv_[r][i];
        } else {
          u[r] -= binv_[r][i];
        }
      }
    }
    return u;
  }

  std::vector<Rational> duals() const {
    std::vector<Rational> y(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (cb_[r] == 0) continue;
      for (std::size_t i = 0; i < m_; ++i) y[i] += cb_[r] * binv_[r][i];
    }
    return y;
  }

  void refresh_basis_costs() {
    cb_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) cb_[r] = cost_(basis_[r]);
  }

  // Entering column: most negative reduced cost (Dantzig), or the first
  // negative one (Bland) while `bland` is set.
  std::optional<std::size_t> entering(const std::vector<Rational>& y, bool bland) const {
    if (zero_structural_costs_) return entering_integer(y, bland);
    std::vector<std::size_t> rows;
    std::optional<std::size_t> best;
    Rational best_d;
    Rational d;
    for (std::size_t j = 0; j < n_; ++j) {
      if (in_basis_[j]) continue;
      a_.column(j, rows);
      d = cost_(j);
      for (std::size_t i : rows) {
        if (sign_[i] > 0) {
          d -= y[i];
        } else {
          d += y[i];
        }
      }
      if (d < 0 && (!best || d < best_d)) {
        best = j;
        best_d = d;
        if (bland) break;
      }
    }
    return best;
  }

  // Same as entering() when every structural cost is zero: reduced costs are
  // -y.A_j, priced on y scaled to a common denominator.
  std::optional<std::size_t> entering_integer(const std::vector<Rational>& y, bool bland) const {
    mpz_class den = 1;
    for (const auto& v : y) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    std::vector<mpz_class> scaled(m_);
    bool small = true;
    const mpz_class limit = mpz_class(1) << 40;
    for (std::size_t i = 0; i < m_; ++i) {
      scaled[i] = sign_[i] * y[i].get_num() * (den / y[i].get_den());
      if (abs(scaled[i]) > limit) small = false;
    }
    std::vector<std::size_t> rows;
    std::optional<std::size_t> best;
    if (small && m_ < (std::size_t{1} << 20)) {
      std::vector<std::int64_t> fast(m_);
      for (std::size_t i = 0; i < m_; ++i) fast[i] = scaled[i].get_si();
      std::int64_t best_sum = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (in_basis_[j]) continue;
        a_.column(j, rows);
        std::int64_t sum = 0;
        for (std::size_t i : rows) sum += fast[i];
        if (sum > best_sum) {
          best = j;
          best_sum = sum;
          if (bland) break;
        }
      }
      return best;
    }
    mpz_class best_sum = 0;
    mpz_class sum;
    for (std::size_t j = 0; j < n_; ++j) {
      if (in_basis_[j]) continue;
      a_.column(j, rows);
      sum = 0;
      for (std::size_t i : rows) sum += scaled[i];
      if (sum > best_sum) {
        best = j;
        best_sum = sum;
        if (bland) break;
      }
    }
    return best;
  }

  void pivot(std::size_t row, std::size_t j, const std::vector<Rational>& u) {
    const Rational pivot_value = u[row];
    for (auto& v : binv_[row]) v /= pivot_value;
    xb_[row] /= pivot_value;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == row || u[r] == 0) continue;
      const Rational f = u[r];
      for (std::size_t i = 0; i < m_; ++i) {
        if (binv_[row][i] != 0) binv_[r][i] -= f * binv_[row][i];
      }
      xb_[r] -= f * xb_[row];
    }
    in_basis_[basis_[row]] = false;
    basis_[row] = j;
    in_basis_[j] = true;
    cb_[row] = cost_(j);
  }

  // Returns false when the objective is unbounded below.
  bool run(LpResult& result) {
    std::size_t degenerate_streak = 0;
    while (true) {
      const auto y = duals();
      const auto j = entering(y, degenerate_streak >= kBlandAfter);
      if (!j) return true;
      const auto u = transformed(*j);
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t r = 0; r < m_; ++r) {
        if (u[r] <= 0) continue;
        Rational ratio = xb_[r] / u[r];
        if (!leave || ratio < best || (ratio == best && basis_[r] < basis_[*leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (!leave) return false;
      degenerate_streak = best == 0 ? degenerate_streak + 1 : 0;
      pivot(*leave, *j, u);
      ++result.iterations;
    }
  }

  // After a zero-infeasibility phase one, swaps basic artificials (all at level
  // zero) for structural columns wherever the row is not redundant.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (in_basis_[j]) continue;
        const auto u = transformed(j);
        if (u[r] != 0) {
          pivot(r, j, u);
          break;
        }
      }
    }
  }

  void collect(LpResult& result) const {
    result.solution.clear();
    result.objective = 0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_ && xb_[r] != 0) {
        result.solution[basis_[r]] = xb_[r];
        result.objective += cost_(basis_[r]) * xb_[r];
      }
    }
  }

  const ZeroOneMatrix& a_;
  std::size_t m_;
  std::size_t n_;
  std::vector<int> sign_;
  std::vector<Rational> xb_;
  std::vector<Rational> cb_;
  std::vector<std::size_t> basis_;
  std::vector<bool> in_basis_;
  std::vector<std::vector<Rational>> binv_;
  std::function<Rational(std::size_t)> cost_;
  bool zero_structural_costs_ = false;

  // Consecutive degenerate pivots tolerated before switching to Bland's rule,
  // which cannot cycle.
  static constexpr std::size_t kBlandAfter = 32;
};

}  // namespace

LpResult find_feasible(const ZeroOneMatrix& a, std::span<const Rational> rhs) {
  return Solver(a, rhs).feasibility();
}

LpResult minimize(const ZeroOneMatrix& a, std::span<const Rational> rhs,
                  const std::function<Rational(std::size_t)>& cost) {
  return Solver(a, rhs).optimize(cost);
}

DenseZeroOneMatrix::DenseZeroOneMatrix(std::vector<std::vector<int>> rows) : rows_(std::move(rows)) {
  columns_ = rows_.empty() ? 0 : rows_.front().size();
  for (const auto& r : rows_) {
    if (r.size() != columns_) throw DimensionError("ragged matrix");
    for (int v : r) {
      if (v != 0 && v != 1) throw ValidationError("matrix entries must be 0 or 1");
    }
  }
}

void DenseZeroOneMatrix::column(std::size_t j, std::vector<std::size_t>& out) const {
  out.clear();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i][j]) out.push_back(i);
  }
}

}  // namespace cbd
