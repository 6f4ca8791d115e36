#ifndef DCOV_SIMULATION_HPP
#define DCOV_SIMULATION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dcov/estimators.hpp"
#include "dcov/inference.hpp"
#include "dcov/matrix.hpp"
#include "dcov/parallel.hpp"
#include "dcov/random.hpp"
#include "dcov/sample.hpp"

namespace dcov {

/// Synthetic designs.
///
///   GaussianIID      single n x dx sample of iid N(0, 1); use generate_sample().
///   IndependentPair  X ~ N(0, I_dx), Y ~ N(0, I_dy), independent.
///   OrthogonalPair   X ~ N(0, I_d), Y = s * X Q + c with Q a random orthogonal
///                    d x d matrix. params = {s, c}, defaults {1, 0}; dx == dy.
///   MonotonePair     scalar X ~ N(0, 1), Y = exp(X). A monotone, nonlinear
///                    stand-in for a bivariate exponential design.
///   NonmonotonePair  scalar X ~ N(0, 1), Y = cos(w X). params = {w}, default 4.
enum class GeneratorKind { GaussianIID, IndependentPair, OrthogonalPair, MonotonePair, NonmonotonePair };

std::string_view to_string(GeneratorKind k) noexcept;
std::optional<GeneratorKind> parse_generator_kind(std::string_view name) noexcept;

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::IndependentPair;
  std::size_t n = 0;
  std::size_t dx = 1;
  std::size_t dy = 1;
  std::vector<double> params;
  std::uint64_t seed = 0;
};

/// Deterministic in spec (including seed). Rejects GaussianIID.
PairedSample generate(const GeneratorSpec& spec);

/// GaussianIID only: n x dx standard normal sample.
Sample generate_sample(const GeneratorSpec& spec);

/// Random d x d orthogonal matrix: Gram-Schmidt (applied twice) on a
/// Gaussian matrix.
Matrix random_orthogonal(Rng& rng, std::size_t d);

struct BiasStudyConfig {
  std::vector<std::size_t> n_grid;
  std::vector<std::size_t> p_grid;
  std::size_t replicates = 500;
  std::vector<Variant> variants{Variant::Naive, Variant::NoDiag};
  std::uint64_t seed = 0;
};

struct BiasStudyRow {
  std::size_t n = 0;
  std::size_t p = 0;
  Variant variant = Variant::Naive;
  double mean_dcor = 0.0;
  double mean_dcov2 = 0.0;
  double sd_dcov2 = 0.0;
  std::size_t replicates = 0;
};

/// One row per (n, p, variant), ordered n-major, then p, then variant in
/// config order. Cell (i, j) is cell index i * p_grid.size() + j; replicate r
/// of that cell draws its data from Rng::substream(seed, {cell, r}).
std::vector<BiasStudyRow> bias_study(const BiasStudyConfig& cfg, Threads threads = {});

struct PowerStudyConfig {
  BiasStudyConfig grid;
  GeneratorKind kind = GeneratorKind::IndependentPair;
  std::vector<double> params;
  double alpha = 0.05;
  std::size_t permutations = 199;
  Statistic statistic = Statistic::Dcor;
};

struct PowerStudyRow {
  std::size_t n = 0;
  std::size_t p = 0;
  Variant variant = Variant::Naive;
  double rejection_rate = 0.0;
  std::size_t replicates = 0;
};

/// Fraction of permutation tests with p-value <= alpha, per (n, p, variant).
/// Every dataset is tested under each configured variant.
std::vector<PowerStudyRow> power_study(const PowerStudyConfig& cfg, Threads threads = {});

}  // namespace dcov

#endif  // DCOV_SIMULATION_HPP
