#include "dcov/inference.hpp"

#include <numeric>
#include <string>
#include <vector>

#include "dcov/error.hpp"
#include "dcov/random.hpp"

namespace dcov {

std::string_view to_string(Statistic s) noexcept { return s == Statistic::Dcor ? "dcor" : "dcov2"; }

std::optional<Statistic> parse_statistic(std::string_view name) noexcept {
  if (name == "dcor") return Statistic::Dcor;
  if (name == "dcov2") return Statistic::Dcov2;
  return std::nullopt;
}

PermTestResult permutation_test(const CenteredDistanceMatrix& a, const CenteredDistanceMatrix& b,
                                const PermTestConfig& cfg) {
  const std::size_t n = a.n();
  if (b.n() != n) throw SizeMismatch("X and Y centered matrices differ in size");
  if (n < 3) throw InvalidInput("permutation test needs n >= 3, got " + std::to_string(n));
  if (cfg.replicates < 1) throw InvalidInput("permutation test needs at least one replicate");

  const Variant v = cfg.variant;
  const double var_x = cfg.statistic == Statistic::Dcor ? dvar2(a, v) : 0.0;
  const double var_y = cfg.statistic == Statistic::Dcor ? dvar2(b, v) : 0.0;
  auto statistic = [&](std::span<const std::size_t> perm) {
    const double c = dcov2_permuted(a, b, perm, v);
    return cfg.statistic == Statistic::Dcor ? dcor_from_moments(c, var_x, var_y, v) : c;
  };

  std::vector<std::size_t> identity(n);
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  const double observed = statistic(identity);

  std::vector<unsigned char> exceeded(cfg.replicates, 0);
  parallel_for(cfg.replicates, cfg.threads, [&](std::size_t r) {
    Rng rng = Rng::substream(cfg.seed, {static_cast<std::uint64_t>(r)});
    std::vector<std::size_t> perm(n);
    random_permutation(rng, perm);
    exceeded[r] = statistic(perm) >= observed ? 1 : 0;
  });

  PermTestResult res;
  res.observed = observed;
  res.replicates = cfg.replicates;
  res.seed = cfg.seed;
  res.exceed_count = std::accumulate(exceeded.begin(), exceeded.end(), std::size_t{0});
  res.p_value = static_cast<double>(1 + res.exceed_count) / static_cast<double>(1 + res.replicates);
  return res;
}

PermTestResult permutation_test(const PairedSample& p, const PermTestConfig& cfg) {
  if (p.n() < 3) throw InvalidInput("permutation test needs n >= 3, got " + std::to_string(p.n()));
  return permutation_test(centered_distances(p.x(), cfg.threads),
                          centered_distances(p.y(), cfg.threads), cfg);
}

}  // namespace dcov
