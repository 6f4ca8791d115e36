#include "dcov/distance.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "dcov/error.hpp"
#include "dcov/summation.hpp"

namespace dcov {

DistanceMatrix DistanceMatrix::from_values(Matrix values) {
  const std::size_t n = values.rows();
  if (n == 0 || values.cols() != n) throw InvalidInput("distance matrix must be square and non-empty");
  for (std::size_t k = 0; k < n; ++k) {
    if (values(k, k) != 0.0)
      throw InvalidInput("distance matrix diagonal must be zero (row " + std::to_string(k) + ")");
    for (std::size_t l = 0; l < n; ++l) {
      const double v = values(k, l);
      if (!std::isfinite(v) || v < 0.0)
        throw InvalidInput("distance entries must be finite and non-negative");
      if (v != values(l, k)) throw InvalidInput("distance matrix must be symmetric");
    }
  }
  return DistanceMatrix(std::move(values));
}

DistanceMatrix pairwise_distances(const Sample& s, Threads threads) {
  const std::size_t n = s.n();
  const std::size_t d = s.d();
  Matrix out(n, n);
  // Row k owns the cells (k, l) and (l, k) for l > k.
  parallel_for(n, threads, [&](std::size_t k) {
    const auto xk = s.observation(k);
    out(k, k) = 0.0;
    for (std::size_t l = k + 1; l < n; ++l) {
      const auto xl = s.observation(l);
      double ss = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double diff = xk[j] - xl[j];
        ss += diff * diff;
      }
      const double dist = std::sqrt(ss);
      out(k, l) = dist;
      out(l, k) = dist;
    }
  });
  return DistanceMatrix(std::move(out));
}

Matrix double_center(const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InvalidInput("double centering needs a square matrix");
  std::vector<double> row_sums(n);
  for (std::size_t k = 0; k < n; ++k) row_sums[k] = compensated_sum(m.row(k));
  const double grand = compensated_sum(row_sums) / (static_cast<double>(n) * static_cast<double>(n));

  // Symmetric input: column means equal row means.
  std::vector<double> means(n);
  for (std::size_t k = 0; k < n; ++k) means[k] = row_sums[k] / static_cast<double>(n);

  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k; l < n; ++l) {
      const double v = m(k, l) - means[k] - means[l] + grand;
      out(k, l) = v;
      out(l, k) = v;
    }
  return out;
}

CenteredDistanceMatrix double_center(const DistanceMatrix& dm) {
  return CenteredDistanceMatrix(double_center(dm.values()));
}

CenteredDistanceMatrix centered_distances(const Sample& s, Threads threads) {
  return double_center(pairwise_distances(s, threads));
}

}  // namespace dcov
