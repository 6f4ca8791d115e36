#ifndef DCOV_MATRIX_TOOLS_HPP
#define DCOV_MATRIX_TOOLS_HPP

#include <cstddef>
#include <vector>

#include "dcov/estimators.hpp"
#include "dcov/matrix.hpp"
#include "dcov/parallel.hpp"

namespace dcov {

/// Pairwise distance correlations between the scalar columns of a data matrix.
struct DcorMatrix {
  Matrix values;
  Variant variant = Variant::Naive;
  std::size_t n = 0;
  /// Columns whose distance variance is not positive. Their off-diagonal
  /// entries are 0.
  std::vector<std::size_t> degenerate;
};

/// Leading eigenpairs, eigenvalues descending. Column j of eigenvectors
/// belongs to eigenvalue j. Each eigenvector is oriented so its component
/// sum is non-negative (first non-zero component positive on a tie).
struct EigenResult {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

/// Entry (i, j) is the distance correlation of columns i and j; the diagonal
/// is 1. Each column's centered distance matrix is built once.
DcorMatrix dcor_matrix(const Matrix& data, Variant variant, Threads threads = {});

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations,
/// iterated until the off-diagonal Frobenius norm is at most 1e-12 * ||M||_F.
/// Throws if any |m_ij - m_ji| exceeds 1e-10.
EigenResult symmetric_eigen(const Matrix& m);

/// The k leading eigenpairs of a dependence matrix, 1 <= k <= p.
EigenResult top_eigen(const DcorMatrix& m, std::size_t k);
EigenResult top_eigen(const Matrix& m, std::size_t k);

}  // namespace dcov

#endif  // DCOV_MATRIX_TOOLS_HPP
