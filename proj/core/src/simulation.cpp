#include "dcov/simulation.hpp"

#include <cmath>
#include <string>

#include "dcov/distance.hpp"
#include "dcov/error.hpp"
#include "dcov/summation.hpp"

namespace dcov {

std::string_view to_string(GeneratorKind k) noexcept {
  switch (k) {
    case GeneratorKind::GaussianIID: return "gaussian";
    case GeneratorKind::IndependentPair: return "independent";
    case GeneratorKind::OrthogonalPair: return "orthogonal";
    case GeneratorKind::MonotonePair: return "monotone";
    case GeneratorKind::NonmonotonePair: return "nonmonotone";
  }
  return "unknown";
}

std::optional<GeneratorKind> parse_generator_kind(std::string_view name) noexcept {
  for (auto k : {GeneratorKind::GaussianIID, GeneratorKind::IndependentPair,
                 GeneratorKind::OrthogonalPair, GeneratorKind::MonotonePair,
                 GeneratorKind::NonmonotonePair})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

namespace {

Matrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (double& v : m.data()) v = rng.normal();
  return m;
}

void require_params(const GeneratorSpec& spec, std::size_t max_count) {
  if (spec.params.size() > max_count)
    throw InvalidInput(std::string(to_string(spec.kind)) + " generator takes at most " +
                       std::to_string(max_count) + " parameter(s)");
  for (double p : spec.params)
    if (!std::isfinite(p)) throw InvalidInput("generator parameters must be finite");
}

void require_scalar(const GeneratorSpec& spec) {
  if (spec.dx != 1 || spec.dy != 1)
    throw InvalidInput(std::string(to_string(spec.kind)) + " generator is scalar: dx = dy = 1");
}

void validate(const GeneratorSpec& spec) {
  if (spec.n < 1) throw InvalidInput("generator needs n >= 1");
  if (spec.dx < 1 || spec.dy < 1) throw InvalidInput("generator dimensions must be >= 1");
}

}  // namespace

Matrix random_orthogonal(Rng& rng, std::size_t d) {
  Matrix q = gaussian_matrix(rng, d, d);
  for (std::size_t j = 0; j < d; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        double dot = 0.0;
        for (std::size_t r = 0; r < d; ++r) dot += q(r, i) * q(r, j);
        for (std::size_t r = 0; r < d; ++r) q(r, j) -= dot * q(r, i);
      }
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < d; ++r) norm += q(r, j) * q(r, j);
    norm = std::sqrt(norm);
    if (!(norm > 1e-8)) throw std::runtime_error("degenerate Gaussian draw in random_orthogonal");
    for (std::size_t r = 0; r < d; ++r) q(r, j) /= norm;
  }
  return q;
}

Sample generate_sample(const GeneratorSpec& spec) {
  validate(spec);
  if (spec.kind != GeneratorKind::GaussianIID)
    throw InvalidInput("generate_sample only serves the gaussian kind");
  require_params(spec, 0);
  Rng rng(spec.seed);
  return Sample(gaussian_matrix(rng, spec.n, spec.dx));
}

PairedSample generate(const GeneratorSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  switch (spec.kind) {
    case GeneratorKind::GaussianIID:
      throw InvalidInput("gaussian kind yields a single sample; use generate_sample");
    case GeneratorKind::IndependentPair: {
      require_params(spec, 0);
      Matrix x = gaussian_matrix(rng, spec.n, spec.dx);
      Matrix y = gaussian_matrix(rng, spec.n, spec.dy);
      return {Sample(std::move(x)), Sample(std::move(y))};
    }
    case GeneratorKind::OrthogonalPair: {
      require_params(spec, 2);
      if (spec.dx != spec.dy) throw InvalidInput("orthogonal generator needs dx == dy");
      const double scale = spec.params.size() > 0 ? spec.params[0] : 1.0;
      const double shift = spec.params.size() > 1 ? spec.params[1] : 0.0;
      if (!(scale > 0.0)) throw InvalidInput("orthogonal generator scale must be > 0");
      const std::size_t d = spec.dx;
      Matrix x = gaussian_matrix(rng, spec.n, d);
      const Matrix q = random_orthogonal(rng, d);
      Matrix y(spec.n, d);
      for (std::size_t k = 0; k < spec.n; ++k)
        for (std::size_t j = 0; j < d; ++j) {
          double acc = 0.0;
          for (std::size_t i = 0; i < d; ++i) acc += x(k, i) * q(i, j);
          y(k, j) = scale * acc + shift;
        }
      return {Sample(std::move(x)), Sample(std::move(y))};
    }
    case GeneratorKind::MonotonePair: {
      require_params(spec, 0);
      require_scalar(spec);
      Matrix x = gaussian_matrix(rng, spec.n, 1);
      Matrix y(spec.n, 1);
      for (std::size_t k = 0; k < spec.n; ++k) y(k, 0) = std::exp(x(k, 0));
      return {Sample(std::move(x)), Sample(std::move(y))};
    }
    case GeneratorKind::NonmonotonePair: {
      require_params(spec, 1);
      require_scalar(spec);
      const double w = spec.params.empty() ? 4.0 : spec.params[0];
      Matrix x = gaussian_matrix(rng, spec.n, 1);
      Matrix y(spec.n, 1);
      for (std::size_t k = 0; k < spec.n; ++k) y(k, 0) = std::cos(w * x(k, 0));
      return {Sample(std::move(x)), Sample(std::move(y))};
    }
  }
  throw InvalidInput("unknown generator kind");
}

namespace {

void validate(const BiasStudyConfig& cfg) {
  if (cfg.n_grid.empty() || cfg.p_grid.empty()) throw InvalidInput("study grids must be non-empty");
  if (cfg.variants.empty()) throw InvalidInput("study needs at least one estimator variant");
  if (cfg.replicates < 1) throw InvalidInput("study needs at least one replicate");
  for (auto n : cfg.n_grid)
    if (n < 2) throw InvalidInput("study sample sizes must be >= 2");
  for (auto p : cfg.p_grid)
    if (p < 1) throw InvalidInput("study dimensions must be >= 1");
}

struct ReplicateSeeds {
  std::uint64_t data;
  std::uint64_t perm;
};

ReplicateSeeds replicate_seeds(std::uint64_t seed, std::size_t cell, std::size_t rep) {
  Rng rng = Rng::substream(seed, {cell, rep});
  const std::uint64_t data = rng.next();
  return {data, rng.next()};
}

}  // namespace

std::vector<BiasStudyRow> bias_study(const BiasStudyConfig& cfg, Threads threads) {
  validate(cfg);
  const std::size_t nv = cfg.variants.size();
  const std::size_t reps = cfg.replicates;
  std::vector<BiasStudyRow> rows;
  for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni)
    for (std::size_t pi = 0; pi < cfg.p_grid.size(); ++pi) {
      const std::size_t cell = ni * cfg.p_grid.size() + pi;
      const std::size_t n = cfg.n_grid[ni];
      const std::size_t p = cfg.p_grid[pi];

      // [replicate][variant]
      std::vector<double> dcors(reps * nv), dcovs(reps * nv);
      parallel_for(reps, threads, [&](std::size_t r) {
        GeneratorSpec spec{GeneratorKind::IndependentPair, n, p, p, {}, replicate_seeds(cfg.seed, cell, r).data};
        const PairedSample data = generate(spec);
        const auto a = centered_distances(data.x());
        const auto b = centered_distances(data.y());
        for (std::size_t v = 0; v < nv; ++v) {
          const Variant var = cfg.variants[v];
          const double c = dcov2(a, b, var);
          dcovs[r * nv + v] = c;
          dcors[r * nv + v] = dcor_from_moments(c, dvar2(a, var), dvar2(b, var), var);
        }
      });

      for (std::size_t v = 0; v < nv; ++v) {
        CompensatedSum sum_dcor, sum_dcov;
        for (std::size_t r = 0; r < reps; ++r) {
          sum_dcor.add(dcors[r * nv + v]);
          sum_dcov.add(dcovs[r * nv + v]);
        }
        const double mean_dcov = sum_dcov.value() / static_cast<double>(reps);
        CompensatedSum ss;
        for (std::size_t r = 0; r < reps; ++r) {
          const double dev = dcovs[r * nv + v] - mean_dcov;
          ss.add(dev * dev);
        }
        BiasStudyRow row;
        row.n = n;
        row.p = p;
        row.variant = cfg.variants[v];
        row.mean_dcor = sum_dcor.value() / static_cast<double>(reps);
        row.mean_dcov2 = mean_dcov;
        row.sd_dcov2 = reps > 1 ? std::sqrt(ss.value() / static_cast<double>(reps - 1)) : 0.0;
        row.replicates = reps;
        rows.push_back(row);
      }
    }
  return rows;
}

std::vector<PowerStudyRow> power_study(const PowerStudyConfig& cfg, Threads threads) {
  validate(cfg.grid);
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
  if (cfg.permutations < 1) throw InvalidInput("power study needs at least one permutation");
  if (cfg.kind == GeneratorKind::GaussianIID)
    throw InvalidInput("power study needs a paired generator kind");
  for (auto n : cfg.grid.n_grid)
    if (n < 3) throw InvalidInput("power study sample sizes must be >= 3");

  const auto& g = cfg.grid;
  const std::size_t nv = g.variants.size();
  const std::size_t reps = g.replicates;
  std::vector<PowerStudyRow> rows;
  for (std::size_t ni = 0; ni < g.n_grid.size(); ++ni)
    for (std::size_t pi = 0; pi < g.p_grid.size(); ++pi) {
      const std::size_t cell = ni * g.p_grid.size() + pi;
      const std::size_t n = g.n_grid[ni];
      const std::size_t p = g.p_grid[pi];
      std::vector<unsigned char> rejected(reps * nv, 0);
      parallel_for(reps, threads, [&](std::size_t r) {
        const auto seeds = replicate_seeds(g.seed, cell, r);
        GeneratorSpec spec{cfg.kind, n, p, p, cfg.params, seeds.data};
        const PairedSample data = generate(spec);
        const auto a = centered_distances(data.x());
        const auto b = centered_distances(data.y());
        for (std::size_t v = 0; v < nv; ++v) {
          PermTestConfig tc;
          tc.replicates = cfg.permutations;
          tc.seed = seeds.perm;
          tc.variant = g.variants[v];
          tc.statistic = cfg.statistic;
          const auto res = permutation_test(a, b, tc);
          rejected[r * nv + v] = res.p_value <= cfg.alpha ? 1 : 0;
        }
      });
      for (std::size_t v = 0; v < nv; ++v) {
        std::size_t count = 0;
        for (std::size_t r = 0; r < reps; ++r) count += rejected[r * nv + v];
        rows.push_back({n, p, g.variants[v],
                        static_cast<double>(count) / static_cast<double>(reps), reps});
      }
    }
  return rows;
}

}  // namespace dcov
