#include "dcov/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "dcov/error.hpp"
#include "dcov/summation.hpp"

namespace dcov {

std::string_view to_string(Variant v) noexcept {
  return v == Variant::Naive ? "naive" : "nodiag";
}

std::optional<Variant> parse_variant(std::string_view name) noexcept {
  if (name == "naive") return Variant::Naive;
  if (name == "nodiag") return Variant::NoDiag;
  return std::nullopt;
}

namespace {

void check_sizes(std::size_t na, std::size_t nb, Variant v) {
  if (na != nb)
    throw SizeMismatch("centered matrices differ in size (" + std::to_string(na) + " vs " +
                       std::to_string(nb) + ")");
  if (na == 0) throw InvalidInput("empty centered matrix");
  if (v == Variant::NoDiag && na < 2)
    throw InvalidInput("diagonal-excluded estimator needs n >= 2");
}

double normalize(double total, std::size_t n, Variant v) noexcept {
  const double nn = static_cast<double>(n);
  return v == Variant::Naive ? total / (nn * nn) : total / (nn * (nn - 1.0));
}

// Row-major product sum; getb(k, l) supplies the second factor.
template <typename GetB>
double product_sum(const CenteredDistanceMatrix& a, GetB getb, Variant v) {
  const std::size_t n = a.n();
  CompensatedSum total;
  for (std::size_t k = 0; k < n; ++k) {
    CompensatedSum row;
    const auto ak = a.values().row(k);
    for (std::size_t l = 0; l < n; ++l) {
      if (v == Variant::NoDiag && l == k) continue;
      row.add(ak[l] * getb(k, l));
    }
    total.add(row.value());
  }
  return total.value();
}

}  // namespace

double dcov2(const CenteredDistanceMatrix& a, const CenteredDistanceMatrix& b, Variant v) {
  check_sizes(a.n(), b.n(), v);
  const Matrix& bv = b.values();
  const double s = product_sum(a, [&](std::size_t k, std::size_t l) { return bv(k, l); }, v);
  return normalize(s, a.n(), v);
}

double dcov2_permuted(const CenteredDistanceMatrix& a, const CenteredDistanceMatrix& b,
                      std::span<const std::size_t> perm, Variant v) {
  check_sizes(a.n(), b.n(), v);
  if (perm.size() != a.n()) throw SizeMismatch("permutation length differs from sample size");
  const Matrix& bv = b.values();
  const double s =
      product_sum(a, [&](std::size_t k, std::size_t l) { return bv(perm[k], perm[l]); }, v);
  return normalize(s, a.n(), v);
}

double dvar2(const CenteredDistanceMatrix& a, Variant v) { return dcov2(a, a, v); }

double dcor_from_moments(double dcov2, double dvar2_x, double dvar2_y, Variant v) noexcept {
  if (!(dvar2_x > 0.0) || !(dvar2_y > 0.0)) return 0.0;
  const double ratio = dcov2 / std::sqrt(dvar2_x * dvar2_y);
  if (v == Variant::Naive) return std::sqrt(std::clamp(ratio, 0.0, 1.0));
  return std::copysign(std::sqrt(std::fabs(ratio)), ratio);
}

DependenceEstimate dcor(const PairedSample& p, Variant v) {
  if (p.n() < 2) throw InvalidInput("distance correlation needs n >= 2");
  const auto a = centered_distances(p.x());
  const auto b = centered_distances(p.y());
  DependenceEstimate e;
  e.variant = v;
  e.n = p.n();
  e.dx = p.x().d();
  e.dy = p.y().d();
  e.dcov2 = dcov2(a, b, v);
  e.dvar2_x = dvar2(a, v);
  e.dvar2_y = dvar2(b, v);
  e.dcor = dcor_from_moments(e.dcov2, e.dvar2_x, e.dvar2_y, v);
  return e;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw SizeMismatch("pearson inputs differ in length (" + std::to_string(x.size()) + " vs " +
                       std::to_string(y.size()) + ")");
  const std::size_t n = x.size();
  if (n < 2) throw InvalidInput("pearson needs at least two observations");
  const double mx = compensated_sum(x) / static_cast<double>(n);
  const double my = compensated_sum(y) / static_cast<double>(n);
  CompensatedSum sxy, sxx, syy;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy.add(dx * dy);
    sxx.add(dx * dx);
    syy.add(dy * dy);
  }
  if (!(sxx.value() > 0.0) || !(syy.value() > 0.0)) return 0.0;
  const double r = sxy.value() / std::sqrt(sxx.value() * syy.value());
  return std::clamp(r, -1.0, 1.0);
}

Matrix correlation_matrix(const Matrix& data) {
  const std::size_t p = data.cols();
  std::vector<std::vector<double>> cols(p);
  for (std::size_t j = 0; j < p; ++j) cols[j] = data.column(j);
  Matrix r(p, p);
  for (std::size_t i = 0; i < p; ++i) {
    r(i, i) = 1.0;
    for (std::size_t j = i + 1; j < p; ++j) {
      const double c = pearson(cols[i], cols[j]);
      r(i, j) = c;
      r(j, i) = c;
    }
  }
  return r;
}

double cor_of_cors(const Matrix& study1, const Matrix& study2) {
  if (study1.cols() != study2.cols())
    throw SizeMismatch("studies must measure the same variables (" +
                       std::to_string(study1.cols()) + " vs " + std::to_string(study2.cols()) +
                       " columns)");
  const std::size_t p = study1.cols();
  if (p < 3) throw InvalidInput("correlation of correlations needs p >= 3 variables");
  if (study1.rows() < 2 || study2.rows() < 2)
    throw InvalidInput("each study needs at least two observations");
  const Matrix r1 = correlation_matrix(study1);
  const Matrix r2 = correlation_matrix(study2);
  std::vector<double> u1, u2;
  u1.reserve(p * (p - 1) / 2);
  u2.reserve(p * (p - 1) / 2);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) {
      u1.push_back(r1(i, j));
      u2.push_back(r2(i, j));
    }
  return pearson(u1, u2);
}

}  // namespace dcov
