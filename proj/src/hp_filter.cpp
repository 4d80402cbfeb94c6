#include "clubconv/hp_filter.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace clubconv {

// (I + lambda * D'D) tau = y with D the second-difference operator. The system
// is pentadiagonal; a dense solve is fine at the panel lengths involved.
std::vector<double> hp_trend(const std::vector<double>& series, double lambda) {
  const int n = static_cast<int>(series.size());
  if (lambda <= 0 || n < 3) return series;

  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i) A(i, i) = 1.0;
  for (int k = 0; k + 2 < n; ++k) {
    const double row[3] = {1.0, -2.0, 1.0};
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q) A(k + p, k + q) += lambda * row[p] * row[q];
  }

  std::vector<double> x = series;
  // Gaussian elimination without pivoting; the matrix is SPD.
  for (int c = 0; c < n; ++c) {
    const double piv = A(c, c);
    for (int r = c + 1; r < n && r <= c + 2; ++r) {
      const double f = A(r, c) / piv;
      if (f == 0) continue;
      for (int j = c; j < n && j <= c + 4; ++j) A(r, j) -= f * A(c, j);
      x[r] -= f * x[c];
    }
  }
  for (int c = n - 1; c >= 0; --c) {
    double v = x[c];
    for (int j = c + 1; j < n && j <= c + 4; ++j) v -= A(c, j) * x[j];
    x[c] = v / A(c, c);
  }
  return x;
}

}  // namespace clubconv
