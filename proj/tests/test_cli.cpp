#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/csv.hpp"
#include "cli/run.hpp"
#include "dcov/dcov.hpp"

using namespace dcov;
using namespace dcov::cli;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("dcov_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name, std::ios::binary) << text;
    return file(name);
  }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Extracts a numeric value from the key/value record.
double field(const std::string& record, const std::string& key) {
  const auto pos = record.find("\"" + key + "\": ");
  if (pos == std::string::npos) throw std::runtime_error("missing key " + key);
  return std::stod(record.substr(pos + key.size() + 4));
}

}  // namespace

TEST(Csv, MinimalWithHeader) {
  const auto ds = parse_csv("a,b\n1,2\n");
  EXPECT_EQ(ds.matrix, (Matrix{{1, 2}}));
  EXPECT_EQ(ds.column_names, (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(ds.rows_are_samples);
}

TEST(Csv, Transpose) {
  const auto ds = parse_csv("a,b\n1,2\n", {true, true});
  EXPECT_EQ(ds.matrix, (Matrix{{1}, {2}}));
  EXPECT_EQ(ds.column_names, std::vector<std::string>{"V1"});
}

TEST(Csv, NoHeaderCrlfAndQuotes) {
  const auto ds = parse_csv("1, 2.5e1\r\n-3,+4\r\n\r\n", {false, false});
  EXPECT_EQ(ds.matrix, (Matrix{{1, 25}, {-3, 4}}));
  EXPECT_EQ(ds.column_names, (std::vector<std::string>{"V1", "V2"}));
  const auto q = parse_csv("\"gene, one\",\"b\"\"x\"\n1,2\n");
  EXPECT_EQ(q.column_names, (std::vector<std::string>{"gene, one", "b\"x"}));
}

TEST(Csv, Errors) {
  auto message = [](const std::string& text, CsvOptions o = {}) {
    try {
      parse_csv(text, o);
    } catch (const InvalidInput& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("a,b\n1,2\n3\n").find("line 3"), std::string::npos);
  const auto nonnum = message("a,b\n1,2\n3,x\n");
  EXPECT_NE(nonnum.find("line 3"), std::string::npos) << nonnum;
  EXPECT_NE(nonnum.find("column 'b'"), std::string::npos) << nonnum;
  const auto nan = message("a,b\n1,NaN\n");
  EXPECT_NE(nan.find("non-finite"), std::string::npos) << nan;
  EXPECT_NE(nan.find("column 'b'"), std::string::npos) << nan;
  EXPECT_NE(message("a,b\n1,inf\n").find("non-finite"), std::string::npos);
  EXPECT_NE(message("a,a\n1,2\n").find("duplicate"), std::string::npos);
  EXPECT_NE(message("a,b\n").find("no data"), std::string::npos);
  EXPECT_NE(message("a,b\n1,1,000\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("a,b\n1,\n").find("non-numeric"), std::string::npos);
  EXPECT_THROW(read_csv("/nonexistent/file.csv"), InvalidInput);
}

TEST(Csv, GenerateRoundTripIsExact) {
  // 17 significant digits reproduce every double bit for bit.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = generate({GeneratorKind::OrthogonalPair, 30, 3, 3, {1e-3 * (seed + 1), 1e5}, seed});
    std::ostringstream os;
    write_csv(os, {"x1", "x2", "x3"}, p.y().data());
    EXPECT_EQ(parse_csv(os.str()).matrix, p.y().data());
  }
}

TEST(SelectColumns, NamesIndicesAndRanges) {
  const std::vector<std::string> names{"a", "b", "c", "d"};
  EXPECT_EQ(select_columns("a,c", names), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(select_columns("2-4", names), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(select_columns("d,1", names), (std::vector<std::size_t>{3, 0}));
  EXPECT_THROW(select_columns("e", names), InvalidInput);
  EXPECT_THROW(select_columns("0", names), InvalidInput);
  EXPECT_THROW(select_columns("3-5", names), InvalidInput);
  EXPECT_THROW(select_columns("", names), InvalidInput);
}

TEST(Cli, DcorOnDuplicatedColumnsIsOne) {
  TempDir tmp;
  const auto f = tmp.write("d.csv", "x1,x2,y1,y2\n1,2,1,2\n0.5,3,0.5,3\n-1,4,-1,4\n7,0,7,0\n");
  const auto r = run_cli({"dcor", f, "--x", "x1,x2", "--y", "y1,y2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(field(r.out, "dcor"), 1.0);
  EXPECT_NE(r.out.find("\"variant\": \"naive\""), std::string::npos);
}

TEST(Cli, DcorMatchesLibraryBitForBit) {
  TempDir tmp;
  const auto gen = run_cli({"generate", "--kind", "independent", "--n", "25", "--dx", "2", "--dy", "3", "--seed", "4",
                            "--out", tmp.file("g.csv")});
  ASSERT_EQ(gen.code, 0) << gen.err;
  const auto ds = read_csv(tmp.file("g.csv"));
  Matrix x(25, 2), y(25, 3);
  for (std::size_t k = 0; k < 25; ++k) {
    for (std::size_t j = 0; j < 2; ++j) x(k, j) = ds.matrix(k, j);
    for (std::size_t j = 0; j < 3; ++j) y(k, j) = ds.matrix(k, 2 + j);
  }
  const auto e = dcor(PairedSample(Sample(x), Sample(y)), Variant::NoDiag);
  const auto r = run_cli({"dcor", tmp.file("g.csv"), "--x", "1-2", "--y", "y1,y2,y3", "--variant", "nodiag"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(field(r.out, "dcor"), e.dcor);
  EXPECT_EQ(field(r.out, "dcov2"), e.dcov2);
  EXPECT_EQ(field(r.out, "dvar2_x"), e.dvar2_x);

  // Generated data re-read equals the in-memory generator output.
  const auto p = generate({GeneratorKind::IndependentPair, 25, 2, 3, {}, 4});
  EXPECT_EQ(x, p.x().data());
  EXPECT_EQ(y, p.y().data());
}

TEST(Cli, DcorTwoFiles) {
  TempDir tmp;
  const auto fx = tmp.write("x.csv", "a\n1\n2\n4\n");
  const auto fy = tmp.write("y.csv", "b\n1\n2\n4\n");
  const auto r = run_cli({"dcor", fx, "--y-file", fy});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(field(r.out, "dcor"), 1.0);
}

TEST(Cli, TestOnOrthogonalPairHasMinimalPValue) {
  TempDir tmp;
  ASSERT_EQ(run_cli({"generate", "--kind", "orthogonal", "--n", "30", "--dx", "3", "--dy", "3", "--seed", "11",
                     "--out", tmp.file("o.csv")})
                .code,
            0);
  const auto r = run_cli({"test", tmp.file("o.csv"), "--x", "1-3", "--y", "4-6", "--replicates", "199", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(field(r.out, "p_value"), 1.0 / 200.0);
  EXPECT_EQ(field(r.out, "exceed_count"), 0.0);
  EXPECT_EQ(field(r.out, "seed"), 5.0);
}

TEST(Cli, TestReportsAutoSeed) {
  TempDir tmp;
  const auto f = tmp.write("d.csv", "a,b\n1,3\n2,1\n3,4\n4,1\n5,5\n");
  const auto r = run_cli({"test", f, "--x", "a", "--y", "b", "--replicates", "9"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"seed\": "), std::string::npos);
}

TEST(Cli, MatrixThenEigenMatchesLibrary) {
  TempDir tmp;
  ASSERT_EQ(run_cli({"generate", "--kind", "gaussian", "--n", "10", "--dx", "20", "--seed", "3", "--out",
                     tmp.file("g.csv")})
                .code,
            0);
  const auto m = run_cli({"matrix", tmp.file("g.csv"), "--out", tmp.file("m.csv")});
  ASSERT_EQ(m.code, 0) << m.err;
  const auto e = run_cli({"eigen", tmp.file("m.csv"), "--k", "2"});
  ASSERT_EQ(e.code, 0) << e.err;
  const auto piped = run_cli({"eigen", tmp.file("g.csv"), "--data", "--k", "2"});
  ASSERT_EQ(piped.code, 0) << piped.err;
  EXPECT_EQ(e.out, piped.out);

  const Sample s = generate_sample({GeneratorKind::GaussianIID, 10, 20, 1, {}, 3});
  const auto dm = dcor_matrix(s.data(), Variant::Naive);
  EXPECT_EQ(read_csv(tmp.file("m.csv")).matrix, dm.values);
  const auto er = top_eigen(dm, 2);
  const auto table = parse_csv(e.out);
  ASSERT_EQ(table.matrix.rows(), 2u);
  EXPECT_EQ(table.column_names[0], "component");
  EXPECT_EQ(table.column_names[2], "x1");
  for (std::size_t c = 0; c < 2; ++c) {
    EXPECT_EQ(table.matrix(c, 1), er.eigenvalues[c]);
    for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(table.matrix(c, 2 + i), er.eigenvectors(i, c));
  }
}

TEST(Cli, MatrixWarnsOnConstantColumn) {
  TempDir tmp;
  const auto f = tmp.write("c.csv", "a,b,c\n1,5,2\n2,5,1\n3,5,7\n");
  const auto r = run_cli({"matrix", f});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("b"), std::string::npos);
  EXPECT_EQ(parse_csv(r.out).matrix(0, 1), 0.0);
}

TEST(Cli, BiasStudyMatchesLibrary) {
  const auto r = run_cli({"bias-study", "--n", "10,20", "--p", "1,3", "--replicates", "20", "--seed", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = bias_study({{10, 20}, {1, 3}, 20, {Variant::Naive, Variant::NoDiag}, 8});
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,p,variant,mean_dcor,mean_dcov2,sd_dcov2,replicates,seed");
  for (const auto& row : rows) {
    ASSERT_TRUE(std::getline(in, line));
    std::ostringstream expect;
    expect << row.n << ',' << row.p << ',' << to_string(row.variant) << ',' << format_double(row.mean_dcor) << ','
           << format_double(row.mean_dcov2) << ',' << format_double(row.sd_dcov2) << ",20,8";
    EXPECT_EQ(line, expect.str());
  }
}

TEST(Cli, PowerStudy) {
  const auto r = run_cli({"power-study", "--n", "20", "--p", "2", "--kind", "orthogonal", "--replicates", "10",
                          "--permutations", "49", "--seed", "1", "--variants", "naive"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "n,p,variant,kind,alpha,rejection_rate,replicates,seed\n"
                   "20,2,naive,orthogonal,0.050000000000000003,1,10,1\n");
}

TEST(Cli, ByteIdenticalReruns) {
  TempDir tmp;
  for (int i = 0; i < 2; ++i) {
    ASSERT_EQ(run_cli({"bias-study", "--n", "8", "--p", "2", "--replicates", "30", "--seed", "2", "--threads", "3",
                       "--out", tmp.file("b" + std::to_string(i) + ".csv")})
                  .code,
              0);
  }
  EXPECT_EQ(slurp(tmp.file("b0.csv")), slurp(tmp.file("b1.csv")));
}

TEST(Cli, UsageErrorsExitTwoWithOneLine) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {}, {"bogus"}, {"dcor", "f.csv", "--frobnicate"}, {"generate", "--kind", "independent", "--n", "5"}}) {
    const auto r = run_cli(args);
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_EQ(count_lines(r.err), 1u) << r.err;
    EXPECT_NE(r.err.find("usage"), std::string::npos);
  }
}

TEST(Cli, ComputationErrorsExitOneWithOneLine) {
  TempDir tmp;
  const auto nan = tmp.write("nan.csv", "a,b\n1,NaN\n2,3\n");
  const auto small = tmp.write("s.csv", "a,b\n1,2\n2,3\n");
  const auto tall = tmp.write("t.csv", "a,b\n1,2\n2,3\n4,4\n");
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"dcor", "/nonexistent.csv", "--x", "1", "--y", "2"},
           {"dcor", nan, "--x", "a", "--y", "b"},
           {"dcor", small, "--x", "a"},
           {"dcor", small, "--x", "a", "--y", "zz"},
           {"dcor", small, "--x", "a", "--y", "b", "--variant", "unbiased"},
           {"test", small, "--x", "a", "--y", "b"},
           {"eigen", tall},
           {"generate", "--kind", "monotone", "--n", "5", "--dx", "2", "--seed", "1"},
           {"power-study", "--n", "10", "--alpha", "2", "--seed", "1"}}) {
    const auto r = run_cli(args);
    EXPECT_EQ(r.code, kExitFailure) << args[0];
    EXPECT_EQ(count_lines(r.err), 1u) << r.err;
  }
}

TEST(Cli, HelpExitsZero) {
  const auto r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("bias-study"), std::string::npos);
}
