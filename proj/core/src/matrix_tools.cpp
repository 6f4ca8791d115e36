#include "dcov/matrix_tools.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dcov/distance.hpp"
#include "dcov/error.hpp"
#include "dcov/sample.hpp"

namespace dcov {

DcorMatrix dcor_matrix(const Matrix& data, Variant variant, Threads threads) {
  const std::size_t n = data.rows();
  const std::size_t p = data.cols();
  if (n < 2 || p < 2) throw InvalidInput("dependence matrix needs n >= 2 and p >= 2");

  std::vector<std::optional<CenteredDistanceMatrix>> centered(p);
  std::vector<double> var(p);
  parallel_for(p, threads, [&](std::size_t j) {
    const auto col = data.column(j);
    centered[j] = centered_distances(Sample::from_values(col));
    var[j] = dvar2(*centered[j], variant);
  });

  DcorMatrix out{Matrix(p, p), variant, n, {}};
  for (std::size_t j = 0; j < p; ++j) {
    out.values(j, j) = 1.0;
    if (!(var[j] > 0.0)) out.degenerate.push_back(j);
  }
  parallel_for(p, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      const double c = dcov2(*centered[i], *centered[j], variant);
      const double r = dcor_from_moments(c, var[i], var[j], variant);
      out.values(i, j) = r;
      out.values(j, i) = r;
    }
  });
  return out;
}

namespace {

double frobenius(const Matrix& m) {
  double s = 0.0;
  for (double v : m.data()) s += v * v;
  return std::sqrt(s);
}

double off_diagonal_norm(const Matrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

void orient(Matrix& vecs, std::size_t col) {
  double sum = 0.0;
  double first = 0.0;
  for (std::size_t i = 0; i < vecs.rows(); ++i) {
    sum += vecs(i, col);
    if (first == 0.0) first = vecs(i, col);
  }
  const double tol = 1e-12;
  const bool flip = sum < -tol || (std::fabs(sum) <= tol && first < 0.0);
  if (flip)
    for (std::size_t i = 0; i < vecs.rows(); ++i) vecs(i, col) = -vecs(i, col);
}

}  // namespace

EigenResult symmetric_eigen(const Matrix& m) {
  const std::size_t p = m.rows();
  if (p == 0 || m.cols() != p) throw InvalidInput("eigendecomposition needs a square non-empty matrix");
  Matrix a(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      if (!std::isfinite(m(i, j))) throw InvalidInput("matrix has non-finite entries");
      if (std::fabs(m(i, j) - m(j, i)) > 1e-10)
        throw InvalidInput("matrix is not symmetric at (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")");
      a(i, j) = 0.5 * (m(i, j) + m(j, i));
    }

  Matrix v = Matrix::identity(p);
  const double target = 1e-12 * frobenius(a);
  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (++sweep > kMaxSweeps) throw std::runtime_error("Jacobi eigensolver did not converge");
    for (std::size_t i = 0; i + 1 < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j) {
        const double aij = a(i, j);
        if (aij == 0.0) continue;
        // Rotation zeroing a(i, j).
        const double theta = (a(j, j) - a(i, i)) / (2.0 * aij);
        const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < p; ++k) {
          const double aki = a(k, i);
          const double akj = a(k, j);
          a(k, i) = c * aki - s * akj;
          a(k, j) = s * aki + c * akj;
        }
        for (std::size_t k = 0; k < p; ++k) {
          const double aik = a(i, k);
          const double ajk = a(j, k);
          a(i, k) = c * aik - s * ajk;
          a(j, k) = s * aik + c * ajk;
        }
        for (std::size_t k = 0; k < p; ++k) {
          const double vki = v(k, i);
          const double vkj = v(k, j);
          v(k, i) = c * vki - s * vkj;
          v(k, j) = s * vki + c * vkj;
        }
      }
  }

  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  EigenResult out{std::vector<double>(p), Matrix(p, p)};
  for (std::size_t c = 0; c < p; ++c) {
    out.eigenvalues[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < p; ++r) out.eigenvectors(r, c) = v(r, order[c]);
    orient(out.eigenvectors, c);
  }
  return out;
}

EigenResult top_eigen(const Matrix& m, std::size_t k) {
  if (k < 1 || k > m.rows())
    throw InvalidInput("requested " + std::to_string(k) + " eigenpairs from a " +
                       std::to_string(m.rows()) + "x" + std::to_string(m.rows()) + " matrix");
  EigenResult full = symmetric_eigen(m);
  if (k == m.rows()) return full;
  EigenResult out{std::vector<double>(full.eigenvalues.begin(), full.eigenvalues.begin() + k),
                  Matrix(m.rows(), k)};
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < k; ++c) out.eigenvectors(r, c) = full.eigenvectors(r, c);
  return out;
}

EigenResult top_eigen(const DcorMatrix& m, std::size_t k) { return top_eigen(m.values, k); }

}  // namespace dcov
