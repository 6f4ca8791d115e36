#ifndef DCOV_DISTANCE_HPP
#define DCOV_DISTANCE_HPP

#include <cstddef>

#include "dcov/matrix.hpp"
#include "dcov/parallel.hpp"
#include "dcov/sample.hpp"

namespace dcov {

/// Symmetric n x n matrix of Euclidean interpoint distances with a zero diagonal.
class DistanceMatrix {
 public:
  /// Validates symmetry, zero diagonal and non-negativity of an existing matrix.
  static DistanceMatrix from_values(Matrix values);

  std::size_t n() const noexcept { return values_.rows(); }
  const Matrix& values() const noexcept { return values_; }
  double operator()(std::size_t k, std::size_t l) const noexcept { return values_(k, l); }

 private:
  explicit DistanceMatrix(Matrix values) : values_(std::move(values)) {}
  friend DistanceMatrix pairwise_distances(const Sample&, Threads);

  Matrix values_;
};

/// Double-centered distance matrix: every row and column sums to zero.
class CenteredDistanceMatrix {
 public:
  std::size_t n() const noexcept { return values_.rows(); }
  const Matrix& values() const noexcept { return values_; }
  double operator()(std::size_t k, std::size_t l) const noexcept { return values_(k, l); }

 private:
  explicit CenteredDistanceMatrix(Matrix values) : values_(std::move(values)) {}
  friend CenteredDistanceMatrix double_center(const DistanceMatrix&);

  Matrix values_;
};

/// values(k, l) = |x_k - x_l|. Rows may be filled in parallel; the result does
/// not depend on the worker count.
DistanceMatrix pairwise_distances(const Sample& s, Threads threads = {});

/// A_kl = a_kl - mean(row k) - mean(column l) + grand mean.
CenteredDistanceMatrix double_center(const DistanceMatrix& dm);

/// Same centering rule applied to any symmetric square matrix.
Matrix double_center(const Matrix& symmetric);

/// Convenience: double_center(pairwise_distances(s)).
CenteredDistanceMatrix centered_distances(const Sample& s, Threads threads = {});

}  // namespace dcov

#endif  // DCOV_DISTANCE_HPP
