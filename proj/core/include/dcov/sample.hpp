#ifndef DCOV_SAMPLE_HPP
#define DCOV_SAMPLE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "dcov/matrix.hpp"

namespace dcov {

/// n observations of a d-dimensional vector; rows are observations.
/// Construction rejects empty shapes and non-finite entries.
class Sample {
 public:
  explicit Sample(Matrix data);

  /// n x 1 sample from a scalar series.
  static Sample from_values(std::span<const double> values);

  std::size_t n() const noexcept { return data_.rows(); }
  std::size_t d() const noexcept { return data_.cols(); }
  const Matrix& data() const noexcept { return data_; }
  std::span<const double> observation(std::size_t k) const noexcept { return data_.row(k); }

 private:
  Matrix data_;
};

/// Paired observations (x_k, y_k). Dimensions of x and y may differ.
class PairedSample {
 public:
  PairedSample(Sample x, Sample y);

  std::size_t n() const noexcept { return x_.n(); }
  const Sample& x() const noexcept { return x_; }
  const Sample& y() const noexcept { return y_; }

 private:
  Sample x_;
  Sample y_;
};

}  // namespace dcov

#endif  // DCOV_SAMPLE_HPP
