#include "dcov/sample.hpp"

#include <cmath>
#include <string>

#include "dcov/error.hpp"

namespace dcov {

Sample::Sample(Matrix data) : data_(std::move(data)) {
  if (data_.rows() == 0 || data_.cols() == 0)
    throw InvalidInput("sample must have at least one observation and one dimension");
  for (std::size_t r = 0; r < data_.rows(); ++r)
    for (std::size_t c = 0; c < data_.cols(); ++c)
      if (!std::isfinite(data_(r, c)))
        throw InvalidInput("non-finite sample entry at row " + std::to_string(r) + ", column " +
                           std::to_string(c));
}

Sample Sample::from_values(std::span<const double> values) {
  Matrix m(values.size(), 1);
  for (std::size_t i = 0; i < values.size(); ++i) m(i, 0) = values[i];
  return Sample(std::move(m));
}

PairedSample::PairedSample(Sample x, Sample y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.n() != y_.n())
    throw SizeMismatch("paired samples need equal observation counts (" + std::to_string(x_.n()) +
                       " vs " + std::to_string(y_.n()) + ")");
}

}  // namespace dcov
