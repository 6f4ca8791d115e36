#ifndef DCOV_ESTIMATORS_HPP
#define DCOV_ESTIMATORS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "dcov/distance.hpp"
#include "dcov/matrix.hpp"
#include "dcov/sample.hpp"

namespace dcov {

/// Naive averages all n^2 products of centered entries. NoDiag drops the k == l
/// terms and averages the remaining n(n-1).
enum class Variant { Naive, NoDiag };

std::string_view to_string(Variant v) noexcept;
std::optional<Variant> parse_variant(std::string_view name) noexcept;

struct DependenceEstimate {
  double dcov2 = 0.0;
  double dcor = 0.0;
  double dvar2_x = 0.0;
  double dvar2_y = 0.0;
  Variant variant = Variant::Naive;
  std::size_t n = 0;
  std::size_t dx = 0;
  std::size_t dy = 0;
};

/// Squared distance covariance of two centered matrices.
///
/// Summation runs row-major over (k, l): each row is accumulated with
/// compensated summation, then the row totals are reduced in row order.
/// The result is therefore bit-identical for dcov2(a, b) and dcov2(b, a).
double dcov2(const CenteredDistanceMatrix& a, const CenteredDistanceMatrix& b, Variant v);

/// Same as dcov2(a, b) with b's rows and columns relabelled: sums
/// A_kl * B_{perm[k], perm[l]}. perm must be a permutation of [0, n).
double dcov2_permuted(const CenteredDistanceMatrix& a, const CenteredDistanceMatrix& b,
                      std::span<const std::size_t> perm, Variant v);

double dvar2(const CenteredDistanceMatrix& a, Variant v);

/// Scales a covariance by its variances. Zero when either variance is not
/// positive. The NoDiag form is the signed square root sign(r) * sqrt(|r|).
double dcor_from_moments(double dcov2, double dvar2_x, double dvar2_y, Variant v) noexcept;

/// Full pipeline: distances, centering, moments. Requires n >= 2.
DependenceEstimate dcor(const PairedSample& p, Variant v);

/// Product-moment correlation. Returns 0 if either input has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// p x p Pearson correlation matrix of the columns of data.
Matrix correlation_matrix(const Matrix& data);

/// Pearson correlation between the strictly upper triangles of the two
/// studies' column correlation matrices. Columns must be aligned, p >= 3.
double cor_of_cors(const Matrix& study1, const Matrix& study2);

}  // namespace dcov

#endif  // DCOV_ESTIMATORS_HPP
