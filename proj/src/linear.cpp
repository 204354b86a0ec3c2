#include "magt/linear.hpp"

#include <cmath>
#include <stdexcept>

namespace magt {

std::optional<std::vector<double>> solve_linear(const std::vector<double>& a,
                                                const std::vector<double>& b, int n,
                                                double pivot_tol) {
  if (a.size() != static_cast<std::size_t>(n) * n || b.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("solve_linear: dimension mismatch");
  }
  std::vector<double> m = a;
  std::vector<double> rhs = b;
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;

  auto at = [&](int r, int c) -> double& {
    return m[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(c)];
  };

  for (int col = 0; col < n; ++col) {
    int best = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(at(r, col)) > std::abs(at(best, col))) best = r;
    }
    if (std::abs(at(best, col)) < pivot_tol) return std::nullopt;
    if (best != col) {
      for (int c = 0; c < n; ++c) std::swap(at(best, c), at(col, c));
      std::swap(rhs[static_cast<std::size_t>(best)], rhs[static_cast<std::size_t>(col)]);
    }
    for (int r = col + 1; r < n; ++r) {
      double f = at(r, col) / at(col, col);
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) at(r, c) -= f * at(col, c);
      rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
    }
  }

  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double sum = rhs[static_cast<std::size_t>(r)];
    for (int c = r + 1; c < n; ++c) sum -= at(r, c) * x[static_cast<std::size_t>(c)];
    x[static_cast<std::size_t>(r)] = sum / at(r, r);
  }
  return x;
}

std::optional<std::vector<double>> solve_least_squares(const std::vector<double>& a,
                                                       const std::vector<double>& b,
                                                       int m, int n, double pivot_tol) {
  if (a.size() != static_cast<std::size_t>(m) * n || b.size() != static_cast<std::size_t>(m)) {
    throw std::invalid_argument("solve_least_squares: dimension mismatch");
  }
  std::vector<double> ata(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> atb(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      double aij = a[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)];
      atb[static_cast<std::size_t>(j)] += aij * b[static_cast<std::size_t>(i)];
      for (int k = 0; k < n; ++k) {
        ata[static_cast<std::size_t>(j) * n + static_cast<std::size_t>(k)] +=
            aij * a[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(k)];
      }
    }
  }
  return solve_linear(ata, atb, n, pivot_tol);
}

SimplexResult simplex_max(const std::vector<double>& c, const std::vector<double>& a,
                          const std::vector<double>& b, int m, int n) {
  if (c.size() != static_cast<std::size_t>(n) ||
      a.size() != static_cast<std::size_t>(m) * n ||
      b.size() != static_cast<std::size_t>(m)) {
    throw std::invalid_argument("simplex_max: dimension mismatch");
  }
  for (double bi : b) {
    if (bi < 0.0) throw std::invalid_argument("simplex_max requires b >= 0");
  }

  const int cols = n + m + 1;  // vars, slacks, rhs
  std::vector<double> t(static_cast<std::size_t>(m + 1) * cols, 0.0);
  auto at = [&](int r, int col) -> double& {
    return t[static_cast<std::size_t>(r) * cols + static_cast<std::size_t>(col)];
  };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) at(i, j) = a[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)];
    at(i, n + i) = 1.0;
    at(i, n + m) = b[static_cast<std::size_t>(i)];
  }
  for (int j = 0; j < n; ++j) at(m, j) = -c[static_cast<std::size_t>(j)];

  std::vector<int> basis(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  const double eps = 1e-10;
  while (true) {
    // Bland: entering variable = lowest index with negative reduced cost.
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (at(m, j) < -eps) { enter = j; break; }
    }
    if (enter < 0) break;

    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      if (at(i, enter) > eps) {
        double ratio = at(i, n + m) / at(i, enter);
        if (leave < 0 || ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 &&
             basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) {
      SimplexResult res;
      res.status = SimplexResult::Status::Unbounded;
      return res;
    }

    double pivot = at(leave, enter);
    for (int j = 0; j < cols; ++j) at(leave, j) /= pivot;
    for (int r = 0; r <= m; ++r) {
      if (r == leave) continue;
      double f = at(r, enter);
      if (f == 0.0) continue;
      for (int j = 0; j < cols; ++j) at(r, j) -= f * at(leave, j);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  SimplexResult res;
  res.status = SimplexResult::Status::Optimal;
  res.value = at(m, n + m);
  res.x.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < m; ++i) {
    if (basis[static_cast<std::size_t>(i)] < n) {
      res.x[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] = at(i, n + m);
    }
  }
  res.dual.assign(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) res.dual[static_cast<std::size_t>(i)] = at(m, n + i);
  return res;
}

}  // namespace magt
