#pragma once

#include <optional>
#include <vector>

namespace magt {

// Solve the square system A x = b by Gaussian elimination with partial
// pivoting. A is row-major n*n. Returns nullopt when the matrix is singular
// (pivot below tolerance).
std::optional<std::vector<double>> solve_linear(const std::vector<double>& a,
                                                const std::vector<double>& b, int n,
                                                double pivot_tol = 1e-12);

// Least-squares solution of an m*n system via normal equations; nullopt when
// A^T A is singular.
std::optional<std::vector<double>> solve_least_squares(const std::vector<double>& a,
                                                       const std::vector<double>& b,
                                                       int m, int n,
                                                       double pivot_tol = 1e-12);

struct SimplexResult {
  enum class Status { Optimal, Unbounded };
  Status status = Status::Optimal;
  double value = 0.0;
  std::vector<double> x;     // primal solution
  std::vector<double> dual;  // one multiplier per constraint
};

// Maximize c.x subject to A x <= b, x >= 0, where every b[i] >= 0 (the slack
// basis is the starting point; no phase-1 needed). Bland's rule, so it
// terminates. A is row-major m*n.
SimplexResult simplex_max(const std::vector<double>& c, const std::vector<double>& a,
                          const std::vector<double>& b, int m, int n);

}  // namespace magt
