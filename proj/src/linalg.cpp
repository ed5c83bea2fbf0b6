#include "ermakov/linalg.hpp"

#include <cmath>
#include <cstddef>

namespace ermakov {

bool lu_solve(Matrix a, std::vector<double> b, std::vector<double>& x) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    if (std::fabs(a[pivot][col]) < 1e-300) return false;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return true;
}

double determinant(Matrix a) {
  const std::size_t n = a.size();
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    if (std::fabs(a[pivot][col]) == 0.0) return 0.0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

LeastSquaresFit least_squares(const std::vector<std::vector<double>>& rows,
                              const std::vector<double>& rhs, double pivot_tol) {
  LeastSquaresFit fit;
  if (rows.empty()) return fit;
  const std::size_t m = rows.size();
  const std::size_t k = rows.front().size();

  // column scaling by RMS, so pivot_tol is meaningful across mixed magnitudes
  std::vector<double> scale(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += rows[i][j] * rows[i][j];
    scale[j] = std::sqrt(acc / static_cast<double>(m));
  }

  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < k; ++j) {
    if (scale[j] > pivot_tol) {
      keep.push_back(j);
    } else {
      fit.dropped.push_back(static_cast<int>(j));
    }
  }

  fit.coefficients.assign(k, 0.0);
  while (!keep.empty()) {
    const std::size_t kk = keep.size();
    Matrix gram(kk, std::vector<double>(kk, 0.0));
    std::vector<double> target(kk, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t a = 0; a < kk; ++a) {
        const double ra = rows[i][keep[a]] / scale[keep[a]];
        target[a] += ra * rhs[i];
        for (std::size_t b = a; b < kk; ++b) {
          gram[a][b] += ra * rows[i][keep[b]] / scale[keep[b]];
        }
      }
    }
    for (std::size_t a = 0; a < kk; ++a) {
      for (std::size_t b = 0; b < a; ++b) gram[a][b] = gram[b][a];
    }

    // Cholesky with a rank check; on failure drop the offending column and retry.
    Matrix chol(kk, std::vector<double>(kk, 0.0));
    std::ptrdiff_t bad = -1;
    for (std::size_t i = 0; i < kk && bad < 0; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double acc = gram[i][j];
        for (std::size_t p = 0; p < j; ++p) acc -= chol[i][p] * chol[j][p];
        if (i == j) {
          if (acc < pivot_tol * std::max(1.0, gram[i][i])) {
            bad = static_cast<std::ptrdiff_t>(i);
            break;
          }
          chol[i][i] = std::sqrt(acc);
        } else {
          chol[i][j] = acc / chol[j][j];
        }
      }
    }
    if (bad >= 0) {
      fit.dropped.push_back(static_cast<int>(keep[static_cast<std::size_t>(bad)]));
      keep.erase(keep.begin() + bad);
      continue;
    }

    // forward/back substitution
    std::vector<double> y(kk, 0.0);
    for (std::size_t i = 0; i < kk; ++i) {
      double acc = target[i];
      for (std::size_t p = 0; p < i; ++p) acc -= chol[i][p] * y[p];
      y[i] = acc / chol[i][i];
    }
    std::vector<double> c(kk, 0.0);
    for (std::size_t i = kk; i-- > 0;) {
      double acc = y[i];
      for (std::size_t p = i + 1; p < kk; ++p) acc -= chol[p][i] * c[p];
      c[i] = acc / chol[i][i];
    }
    for (std::size_t a = 0; a < kk; ++a) fit.coefficients[keep[a]] = c[a] / scale[keep[a]];
    break;
  }

  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double pred = 0.0;
    for (std::size_t j = 0; j < k; ++j) pred += rows[i][j] * fit.coefficients[j];
    rss += (pred - rhs[i]) * (pred - rhs[i]);
  }
  fit.residual_rms = std::sqrt(rss / static_cast<double>(m));
  return fit;
}

}  // namespace ermakov
