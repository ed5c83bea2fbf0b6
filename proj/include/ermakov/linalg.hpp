#pragma once

#include <vector>

namespace ermakov {

// Dense helpers for the small systems that appear here (n <= ~10).
using Matrix = std::vector<std::vector<double>>;

// Solves A x = b in place via partially pivoted LU; returns false when A is
// numerically singular.
bool lu_solve(Matrix a, std::vector<double> b, std::vector<double>& x);

double determinant(Matrix a);

struct LeastSquaresFit {
  std::vector<double> coefficients;  // zero for dropped columns
  std::vector<int> dropped;          // indices of rank-deficient columns
  double residual_rms = 0.0;
};

// Column-scaled normal-equation least squares min |R c - y|. Columns whose
// scaled pivot falls below pivot_tol are dropped (coefficient pinned to 0)
// instead of poisoning the solve.
LeastSquaresFit least_squares(const std::vector<std::vector<double>>& rows,
                              const std::vector<double>& rhs, double pivot_tol = 1e-10);

}  // namespace ermakov
