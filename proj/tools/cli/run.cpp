#include "cli/run.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <utility>

#include "dcov/dcov.hpp"

namespace dcov::cli {

namespace {

constexpr const char* kUsage =
    "usage: dcov <dcor|test|matrix|eigen|bias-study|power-study|generate> [options], see dcov --help";

/// Flat key/value record printed as a one-level JSON object.
class Record {
 public:
  void add(std::string key, double v) { items_.emplace_back(std::move(key), format_double(v)); }
  void add(std::string key, std::size_t v) { items_.emplace_back(std::move(key), std::to_string(v)); }
  void add(std::string key, std::uint64_t v, bool) {
    items_.emplace_back(std::move(key), std::to_string(v));
  }
  void add(std::string key, std::string_view v) {
    items_.emplace_back(std::move(key), "\"" + std::string(v) + "\"");
  }

  void write(std::ostream& os) const {
    os << "{\n";
    for (std::size_t i = 0; i < items_.size(); ++i)
      os << "  \"" << items_[i].first << "\": " << items_[i].second
         << (i + 1 < items_.size() ? ",\n" : "\n");
    os << "}\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

struct InputOptions {
  std::string file;
  bool no_header = false;
  bool transpose = false;

  CsvOptions csv() const { return {!no_header, transpose}; }
};

struct PairOptions {
  InputOptions input;
  std::string y_file;
  std::string x_cols;
  std::string y_cols;
  std::string variant = "naive";
};

struct Options {
  unsigned threads = 0;
  std::string out;

  PairOptions pair;
  std::size_t replicates = 199;
  std::optional<std::uint64_t> seed;
  std::string statistic = "dcor";

  InputOptions matrix_in;
  std::string matrix_variant = "naive";

  InputOptions eigen_in;
  bool eigen_from_data = false;
  std::string eigen_variant = "naive";
  std::size_t eigen_k = 0;

  std::vector<std::size_t> n_grid;
  std::vector<std::size_t> p_grid{1};
  std::size_t study_replicates = 500;
  std::vector<std::string> variants{"naive", "nodiag"};
  std::string kind = "independent";
  std::vector<double> params;
  double alpha = 0.05;
  std::size_t permutations = 199;

  std::size_t gen_n = 0;
  std::size_t gen_dx = 1;
  std::size_t gen_dy = 1;
};

Variant variant_or_throw(const std::string& s) {
  if (auto v = parse_variant(s)) return *v;
  throw InvalidInput("unknown variant '" + s + "' (expected naive or nodiag)");
}

GeneratorKind kind_or_throw(const std::string& s) {
  if (auto k = parse_generator_kind(s)) return *k;
  throw InvalidInput("unknown generator kind '" + s +
                     "' (expected gaussian, independent, orthogonal, monotone or nonmonotone)");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

Matrix take_columns(const Matrix& m, const std::vector<std::size_t>& cols) {
  Matrix out(m.rows(), cols.size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) out(r, j) = m(r, cols[j]);
  return out;
}

std::vector<std::size_t> all_columns(std::size_t p) {
  std::vector<std::size_t> c(p);
  for (std::size_t j = 0; j < p; ++j) c[j] = j;
  return c;
}

PairedSample load_pair(const PairOptions& o) {
  const Dataset xs = read_csv(o.input.file, o.input.csv());
  if (o.y_file.empty()) {
    if (o.x_cols.empty() || o.y_cols.empty())
      throw InvalidInput("single-file mode needs both --x and --y column selections");
    return {Sample(take_columns(xs.matrix, select_columns(o.x_cols, xs.column_names))),
            Sample(take_columns(xs.matrix, select_columns(o.y_cols, xs.column_names)))};
  }
  const Dataset ys = read_csv(o.y_file, o.input.csv());
  const auto xc = o.x_cols.empty() ? all_columns(xs.matrix.cols()) : select_columns(o.x_cols, xs.column_names);
  const auto yc = o.y_cols.empty() ? all_columns(ys.matrix.cols()) : select_columns(o.y_cols, ys.column_names);
  return {Sample(take_columns(xs.matrix, xc)), Sample(take_columns(ys.matrix, yc))};
}

void cmd_dcor(const Options& o, std::ostream& os) {
  const Variant v = variant_or_throw(o.pair.variant);
  const PairedSample p = load_pair(o.pair);
  const DependenceEstimate e = dcor(p, v);
  Record r;
  r.add("variant", to_string(e.variant));
  r.add("n", e.n);
  r.add("dx", e.dx);
  r.add("dy", e.dy);
  r.add("dcov2", e.dcov2);
  r.add("dvar2_x", e.dvar2_x);
  r.add("dvar2_y", e.dvar2_y);
  r.add("dcor", e.dcor);
  r.write(os);
}

void cmd_test(const Options& o, std::ostream& os) {
  PermTestConfig cfg;
  cfg.variant = variant_or_throw(o.pair.variant);
  auto stat = parse_statistic(o.statistic);
  if (!stat) throw InvalidInput("unknown statistic '" + o.statistic + "' (expected dcor or dcov2)");
  cfg.statistic = *stat;
  cfg.replicates = o.replicates;
  cfg.seed = resolve_seed(o.seed);
  cfg.threads = Threads{o.threads};
  const PairedSample p = load_pair(o.pair);
  const PermTestResult res = permutation_test(p, cfg);
  Record r;
  r.add("variant", to_string(cfg.variant));
  r.add("statistic", to_string(cfg.statistic));
  r.add("n", p.n());
  r.add("dx", p.x().d());
  r.add("dy", p.y().d());
  r.add("observed", res.observed);
  r.add("replicates", res.replicates);
  r.add("exceed_count", res.exceed_count);
  r.add("p_value", res.p_value);
  r.add("seed", res.seed, true);
  r.write(os);
}

void warn_degenerate(const DcorMatrix& m, const std::vector<std::string>& names, std::ostream& err) {
  if (m.degenerate.empty()) return;
  err << "dcov: warning: degenerate (constant) columns:";
  for (std::size_t j : m.degenerate) err << ' ' << names[j];
  err << '\n';
}

void cmd_matrix(const Options& o, std::ostream& os, std::ostream& err) {
  const Variant v = variant_or_throw(o.matrix_variant);
  const Dataset ds = read_csv(o.matrix_in.file, o.matrix_in.csv());
  const DcorMatrix m = dcor_matrix(ds.matrix, v, Threads{o.threads});
  warn_degenerate(m, ds.column_names, err);
  write_csv(os, ds.column_names, m.values);
}

void cmd_eigen(const Options& o, std::ostream& os, std::ostream& err) {
  const Dataset ds = read_csv(o.eigen_in.file, o.eigen_in.csv());
  Matrix m;
  if (o.eigen_from_data) {
    const DcorMatrix dm = dcor_matrix(ds.matrix, variant_or_throw(o.eigen_variant), Threads{o.threads});
    warn_degenerate(dm, ds.column_names, err);
    m = dm.values;
  } else {
    if (ds.matrix.rows() != ds.matrix.cols())
      throw InvalidInput("eigen input must be a square matrix (got " + std::to_string(ds.matrix.rows()) +
                         "x" + std::to_string(ds.matrix.cols()) + "); use --data for raw samples");
    m = ds.matrix;
  }
  const std::size_t k = o.eigen_k == 0 ? m.rows() : o.eigen_k;
  const EigenResult er = top_eigen(m, k);
  std::vector<std::string> header{"component", "eigenvalue"};
  header.insert(header.end(), ds.column_names.begin(), ds.column_names.end());
  Matrix rows(k, 2 + m.rows());
  for (std::size_t c = 0; c < k; ++c) {
    rows(c, 0) = static_cast<double>(c + 1);
    rows(c, 1) = er.eigenvalues[c];
    for (std::size_t i = 0; i < m.rows(); ++i) rows(c, 2 + i) = er.eigenvectors(i, c);
  }
  write_csv(os, header, rows);
}

BiasStudyConfig study_grid(const Options& o, std::uint64_t seed) {
  BiasStudyConfig cfg;
  cfg.n_grid = o.n_grid;
  cfg.p_grid = o.p_grid;
  cfg.replicates = o.study_replicates;
  cfg.variants.clear();
  for (const auto& s : o.variants) cfg.variants.push_back(variant_or_throw(s));
  cfg.seed = seed;
  return cfg;
}

void cmd_bias_study(const Options& o, std::ostream& os) {
  const std::uint64_t seed = resolve_seed(o.seed);
  const auto rows = bias_study(study_grid(o, seed), Threads{o.threads});
  os << "n,p,variant,mean_dcor,mean_dcov2,sd_dcov2,replicates,seed\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.p << ',' << to_string(r.variant) << ',' << format_double(r.mean_dcor) << ','
       << format_double(r.mean_dcov2) << ',' << format_double(r.sd_dcov2) << ',' << r.replicates << ','
       << seed << '\n';
}

void cmd_power_study(const Options& o, std::ostream& os) {
  const std::uint64_t seed = resolve_seed(o.seed);
  PowerStudyConfig cfg;
  cfg.grid = study_grid(o, seed);
  cfg.kind = kind_or_throw(o.kind);
  cfg.params = o.params;
  cfg.alpha = o.alpha;
  cfg.permutations = o.permutations;
  auto stat = parse_statistic(o.statistic);
  if (!stat) throw InvalidInput("unknown statistic '" + o.statistic + "' (expected dcor or dcov2)");
  cfg.statistic = *stat;
  const auto rows = power_study(cfg, Threads{o.threads});
  os << "n,p,variant,kind,alpha,rejection_rate,replicates,seed\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.p << ',' << to_string(r.variant) << ',' << to_string(cfg.kind) << ','
       << format_double(cfg.alpha) << ',' << format_double(r.rejection_rate) << ',' << r.replicates << ','
       << seed << '\n';
}

void cmd_generate(const Options& o, std::ostream& os) {
  GeneratorSpec spec;
  spec.kind = kind_or_throw(o.kind);
  spec.n = o.gen_n;
  spec.dx = o.gen_dx;
  spec.dy = o.gen_dy;
  spec.params = o.params;
  spec.seed = *o.seed;
  std::vector<std::string> header;
  for (std::size_t j = 0; j < spec.dx; ++j) header.push_back("x" + std::to_string(j + 1));
  if (spec.kind == GeneratorKind::GaussianIID) {
    write_csv(os, header, generate_sample(spec).data());
    return;
  }
  const PairedSample p = generate(spec);
  for (std::size_t j = 0; j < p.y().d(); ++j) header.push_back("y" + std::to_string(j + 1));
  Matrix joined(p.n(), p.x().d() + p.y().d());
  for (std::size_t k = 0; k < p.n(); ++k) {
    for (std::size_t j = 0; j < p.x().d(); ++j) joined(k, j) = p.x().data()(k, j);
    for (std::size_t j = 0; j < p.y().d(); ++j) joined(k, p.x().d() + j) = p.y().data()(k, j);
  }
  write_csv(os, header, joined);
}

void add_input(CLI::App* sub, InputOptions& in) {
  sub->add_option("file", in.file, "Input CSV file")->required();
  sub->add_flag("--no-header", in.no_header, "First line is data, not column names");
  sub->add_flag("--transpose", in.transpose, "Input stores one variable per row");
}

void add_pair(CLI::App* sub, Options& o) {
  add_input(sub, o.pair.input);
  sub->add_option("--y-file", o.pair.y_file, "Second CSV holding Y (X comes from the first file)");
  sub->add_option("--x", o.pair.x_cols, "X columns: names or 1-based indices/ranges, comma separated");
  sub->add_option("--y", o.pair.y_cols, "Y columns: names or 1-based indices/ranges, comma separated");
  sub->add_option("--variant", o.pair.variant, "Estimator: naive or nodiag");
}

void add_grid(CLI::App* sub, Options& o) {
  sub->add_option("--n", o.n_grid, "Sample sizes, comma separated")->delimiter(',')->required();
  sub->add_option("--p", o.p_grid, "Dimensions, comma separated")->delimiter(',');
  sub->add_option("--replicates", o.study_replicates, "Datasets per cell");
  sub->add_option("--variants", o.variants, "Estimators, comma separated")->delimiter(',');
  sub->add_option("--seed", o.seed, "Seed (auto-chosen and reported when omitted)");
}

}  // namespace

std::vector<std::size_t> select_columns(const std::string& selector,
                                        const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  std::stringstream ss(selector);
  std::string tok;
  auto parse_index = [&](std::string_view s, std::size_t& v) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
  };
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    if (auto it = std::find(names.begin(), names.end(), tok); it != names.end()) {
      out.push_back(static_cast<std::size_t>(it - names.begin()));
      continue;
    }
    std::size_t lo = 0, hi = 0;
    const auto dash = tok.find('-');
    const bool ok = dash == std::string::npos
                        ? (parse_index(tok, lo) && (hi = lo, true))
                        : parse_index(std::string_view(tok).substr(0, dash), lo) &&
                              parse_index(std::string_view(tok).substr(dash + 1), hi);
    if (!ok) throw InvalidInput("unknown column '" + tok + "'");
    if (lo < 1 || hi < lo || hi > names.size())
      throw InvalidInput("column range '" + tok + "' outside 1.." + std::to_string(names.size()));
    for (std::size_t j = lo; j <= hi; ++j) out.push_back(j - 1);
  }
  if (out.empty()) throw InvalidInput("empty column selection '" + selector + "'");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distance covariance and correlation toolkit", "dcov"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--threads", o.threads, "Worker cap (0 = all hardware threads)");

  auto* s_dcor = app.add_subcommand("dcor", "Distance covariance/correlation of two column sets");
  add_pair(s_dcor, o);
  s_dcor->add_option("--out", o.out, "Write results here instead of stdout");

  auto* s_test = app.add_subcommand("test", "Permutation test of independence");
  add_pair(s_test, o);
  s_test->add_option("--replicates", o.replicates, "Permutation replicates B");
  s_test->add_option("--seed", o.seed, "Seed (auto-chosen and reported when omitted)");
  s_test->add_option("--statistic", o.statistic, "Test statistic: dcor or dcov2");
  s_test->add_option("--out", o.out, "Write results here instead of stdout");

  auto* s_matrix = app.add_subcommand("matrix", "Pairwise dependence matrix of scalar columns");
  add_input(s_matrix, o.matrix_in);
  s_matrix->add_option("--variant", o.matrix_variant, "Estimator: naive or nodiag");
  s_matrix->add_option("--out", o.out, "Write results here instead of stdout");

  auto* s_eigen = app.add_subcommand("eigen", "Eigendecomposition of a dependence matrix");
  add_input(s_eigen, o.eigen_in);
  s_eigen->add_flag("--data", o.eigen_from_data, "Input is raw data; build the dependence matrix first");
  s_eigen->add_option("--variant", o.eigen_variant, "Estimator used with --data: naive or nodiag");
  s_eigen->add_option("--k", o.eigen_k, "Number of leading components (default all)");
  s_eigen->add_option("--out", o.out, "Write results here instead of stdout");

  auto* s_bias = app.add_subcommand("bias-study", "Monte Carlo bias of the estimators under independence");
  add_grid(s_bias, o);
  s_bias->add_option("--out", o.out, "Write results here instead of stdout");

  auto* s_power = app.add_subcommand("power-study", "Rejection rates of the permutation test");
  add_grid(s_power, o);
  s_power->add_option("--kind", o.kind, "Design: independent, orthogonal, monotone or nonmonotone");
  s_power->add_option("--param", o.params, "Generator parameter (repeatable)");
  s_power->add_option("--alpha", o.alpha, "Test level");
  s_power->add_option("--permutations", o.permutations, "Permutation replicates per test");
  s_power->add_option("--statistic", o.statistic, "Test statistic: dcor or dcov2");
  s_power->add_option("--out", o.out, "Write results here instead of stdout");

  auto* s_gen = app.add_subcommand("generate", "Write a synthetic sample as CSV");
  s_gen->add_option("--kind", o.kind, "gaussian, independent, orthogonal, monotone or nonmonotone")->required();
  s_gen->add_option("--n", o.gen_n, "Observations")->required();
  s_gen->add_option("--dx", o.gen_dx, "X dimension");
  s_gen->add_option("--dy", o.gen_dy, "Y dimension");
  s_gen->add_option("--param", o.params, "Generator parameter (repeatable)");
  s_gen->add_option("--seed", o.seed, "Seed")->required();
  s_gen->add_option("--out", o.out, "Write results here instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "dcov: error: " << e.what() << " (" << kUsage << ")\n";
    return kExitUsage;
  }

  try {
    std::ostringstream buf;
    if (s_dcor->parsed()) cmd_dcor(o, buf);
    else if (s_test->parsed()) cmd_test(o, buf);
    else if (s_matrix->parsed()) cmd_matrix(o, buf, err);
    else if (s_eigen->parsed()) cmd_eigen(o, buf, err);
    else if (s_bias->parsed()) cmd_bias_study(o, buf);
    else if (s_power->parsed()) cmd_power_study(o, buf);
    else if (s_gen->parsed()) cmd_generate(o, buf);

    if (o.out.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(o.out, std::ios::binary);
      if (!f) throw InvalidInput("cannot write '" + o.out + "'");
      f << buf.str();
      if (!f) throw InvalidInput("failed writing '" + o.out + "'");
    }
  } catch (const std::exception& e) {
    err << "dcov: error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace dcov::cli
