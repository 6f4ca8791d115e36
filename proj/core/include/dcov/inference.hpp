#ifndef DCOV_INFERENCE_HPP
#define DCOV_INFERENCE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "dcov/distance.hpp"
#include "dcov/estimators.hpp"
#include "dcov/parallel.hpp"
#include "dcov/sample.hpp"

namespace dcov {

enum class Statistic { Dcor, Dcov2 };

std::string_view to_string(Statistic s) noexcept;
std::optional<Statistic> parse_statistic(std::string_view name) noexcept;

struct PermTestConfig {
  std::size_t replicates = 199;
  std::uint64_t seed = 0;
  Variant variant = Variant::Naive;
  Statistic statistic = Statistic::Dcor;
  Threads threads{};
};

struct PermTestResult {
  double observed = 0.0;
  double p_value = 1.0;
  std::size_t replicates = 0;
  std::size_t exceed_count = 0;
  std::uint64_t seed = 0;
};

/// Permutation test of independence.
///
/// Replicate r relabels the rows of Y with a Fisher-Yates permutation drawn
/// from Rng::substream(seed, {r}), so the result does not depend on the
/// worker count. Ties count as exceedances and the p-value is
/// (1 + exceed_count) / (1 + replicates).
PermTestResult permutation_test(const PairedSample& p, const PermTestConfig& cfg);

/// Same test on precomputed centered distance matrices of X and Y.
PermTestResult permutation_test(const CenteredDistanceMatrix& a, const CenteredDistanceMatrix& b,
                                const PermTestConfig& cfg);

}  // namespace dcov

#endif  // DCOV_INFERENCE_HPP
