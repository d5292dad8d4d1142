#include "polyra/linear_program.hpp"

#include <cmath>
#include <limits>

#include "polyra/error.hpp"

namespace polyra {
namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-7;

// Tableau over variables y >= 0 with rows of the form sum a_ij y_j = b_i,
// b_i >= 0. The last row holds reduced costs of the current objective.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return cells_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& cost(std::size_t c) { return at(rows_, c); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
    }
    basis_[pr] = pc;
  }

  // Minimizes the cost row over columns [0, usable). Returns false if unbounded.
  bool optimize(std::size_t usable) {
    for (std::size_t iter = 0; iter < 50000; ++iter) {
      std::size_t enter = usable;
      for (std::size_t c = 0; c < usable; ++c) {
        if (cost(c) < -kPivotTol) {
          enter = c;
          break;
        }
      }
      if (enter == usable) return true;
      std::size_t leave = rows_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        if (a <= kPivotTol) continue;
        const double ratio = rhs(r) / a;
        const bool tie = leave != rows_ && std::abs(ratio - best) <= 1e-12 && basis_[r] < basis_[leave];
        if (ratio < best - 1e-12 || tie) {
          best = ratio;
          leave = r;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
    throw NumericError("simplex did not converge");
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> cells_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  if (lp.lower.size() != n || lp.upper.size() != n)
    throw DataError("linear program bounds must match the variable count");
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(lp.lower[j]) || !std::isfinite(lp.upper[j]))
      throw NumericError("linear program needs finite variable bounds");
    if (lp.lower[j] > lp.upper[j]) return {};
  }

  // Shift x = lower + y, add y_j <= upper_j - lower_j rows.
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    require_dim(n, lp.rows[i].size());
    double shifted = lp.rhs[i];
    for (std::size_t j = 0; j < n; ++j) shifted -= lp.rows[i][j] * lp.lower[j];
    a.push_back(lp.rows[i]);
    b.push_back(shifted);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> row(n, 0.0);
    row[j] = 1.0;
    a.push_back(std::move(row));
    b.push_back(lp.upper[j] - lp.lower[j]);
  }

  const std::size_t m = a.size();
  std::size_t n_art = 0;
  for (double v : b) n_art += v < 0.0 ? 1 : 0;
  // Columns: y (n), slack/surplus (m), artificial (n_art).
  const std::size_t cols = n + m + n_art;
  Tableau t(m, cols);
  std::size_t art = n + m;
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = sign * a[i][j];
    t.at(i, n + i) = sign;
    t.rhs(i) = sign * b[i];
    if (sign < 0.0) {
      t.at(i, art) = 1.0;
      t.basis()[i] = art++;
    } else {
      t.basis()[i] = n + i;
    }
  }

  if (n_art > 0) {
    // Phase 1: minimize the sum of artificials.
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis()[i] < n + m) continue;
      for (std::size_t c = 0; c <= cols; ++c)
        if (c < n + m || c == cols) t.at(m, c) -= t.at(i, c);
    }
    t.optimize(cols);
    if (-t.rhs(m) > kFeasTol) return {};
    // Drive remaining artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis()[i] < n + m) continue;
      for (std::size_t c = 0; c < n + m; ++c) {
        if (std::abs(t.at(i, c)) > kPivotTol) {
          t.pivot(i, c);
          break;
        }
      }
    }
  }

  // Phase 2: minimize -objective over y and slacks only.
  for (std::size_t c = 0; c <= cols; ++c) t.at(m, c) = 0.0;
  for (std::size_t j = 0; j < n; ++j) t.cost(j) = -lp.objective[j];
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t bc = t.basis()[i];
    const double f = t.at(m, bc);
    if (f == 0.0) continue;
    for (std::size_t c = 0; c <= cols; ++c) t.at(m, c) -= f * t.at(i, c);
  }
  // Bounded by the box rows, so optimize cannot report unbounded.
  t.optimize(n + m);

  LpSolution out;
  out.status = LpSolution::Status::Optimal;
  out.x = lp.lower;
  for (std::size_t i = 0; i < m; ++i)
    if (t.basis()[i] < n) out.x[t.basis()[i]] += t.rhs(i);
  out.value = dot(lp.objective, out.x);
  return out;
}

bool is_feasible(const std::vector<Halfspace>& constraints, const BoundingBox& box) {
  LinearProgram lp;
  const std::size_t dim = box.size();
  lp.objective.assign(dim, 0.0);
  for (const auto& r : box) {
    lp.lower.push_back(r.lo);
    lp.upper.push_back(r.hi);
  }
  for (const auto& h : constraints) {
    require_dim(dim, h.dim());
    lp.rows.push_back(h.normal());
    lp.rhs.push_back(h.bound());
  }
  return solve(lp).feasible();
}

std::optional<ChebyshevBall> chebyshev_center(const std::vector<Halfspace>& constraints,
                                              const BoundingBox& box) {
  const std::size_t dim = box.size();
  LinearProgram lp;
  lp.objective.assign(dim + 1, 0.0);
  lp.objective[dim] = 1.0;
  double max_radius = 0.0;
  for (const auto& r : box) {
    lp.lower.push_back(r.lo);
    lp.upper.push_back(r.hi);
    max_radius = std::max(max_radius, r.hi - r.lo);
  }
  lp.lower.push_back(0.0);
  lp.upper.push_back(max_radius);
  for (const auto& h : constraints) {
    require_dim(dim, h.dim());
    std::vector<double> row = h.normal();
    row.push_back(std::sqrt(dot(h.normal(), h.normal())));
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(h.bound());
  }
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<double> up(dim + 1, 0.0);
    up[j] = 1.0;
    up[dim] = 1.0;
    lp.rows.push_back(up);
    lp.rhs.push_back(box[j].hi);
    std::vector<double> down(dim + 1, 0.0);
    down[j] = -1.0;
    down[dim] = 1.0;
    lp.rows.push_back(down);
    lp.rhs.push_back(-box[j].lo);
  }
  const LpSolution sol = solve(lp);
  if (!sol.feasible()) return std::nullopt;
  ChebyshevBall ball;
  ball.center.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(dim));
  ball.radius = sol.x[dim];
  return ball;
}

}  // namespace polyra
