#include "cli.hpp"

#include <dfree/constructions.hpp>
#include <dfree/io.hpp>
#include <dfree/lattice.hpp>
#include <dfree/mnm.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

using namespace dfree;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("dfree_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path file(const std::string& name) const { return path_ / name; }
  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(file(name)) << content;
    return file(name).string();
  }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST(Cli, BoundCurveMax) {
  const auto r = run({"bound-curve", "--max"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("value 2.207106781186"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("Cstar 0.146446609406"), std::string::npos) << r.out;
  const auto j = nlohmann::json::parse(run({"bound-curve", "--max", "--format", "json"}).out);
  EXPECT_NEAR(std::stod(j.at("value").get<std::string>()), (3 + std::sqrt(2.0)) / 2, 1e-12);
  EXPECT_NEAR(std::stod(j.at("cstar").get<std::string>()), (2 - std::sqrt(2.0)) / 4, 1e-10);
}

TEST(Cli, LubellOfConstruction) {
  const auto r = run({"lubell", "--construct", "even-odd", "--n", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(first_line(r.out), "7/3");
  const auto j = nlohmann::json::parse(run({"lubell", "--construct", "even-odd", "--n", "4", "--format", "json"}).out);
  EXPECT_EQ(j.at("lubell"), "7/3");
  EXPECT_EQ(j.at("diamond_free"), true);
  EXPECT_EQ(first_line(run({"lubell", "--construct", "canonical", "--n", "4", "--A", "1,2"}).out), "7/3");
  EXPECT_EQ(first_line(run({"lubell", "--construct", "product", "--n", "6", "--X", "1", "--C", "2,3"}).out), "2/15");
  EXPECT_EQ(first_line(run({"lubell", "--construct", "two-middle-levels", "--n", "5"}).out), "2");
}

TEST(Cli, SearchSperner) {
  const auto r = run({"search", "--n", "3", "--pattern", "chain:2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(first_line(r.out), "optimum 3");
  const auto j = nlohmann::json::parse(run({"search", "--n", "2", "--pattern", "diamond", "--format", "json"}).out);
  EXPECT_EQ(j.at("optimum"), "3");
  const auto lub = nlohmann::json::parse(run({"search", "--n", "2", "--pattern", "diamond", "--objective", "lubell",
                                              "--require-empty-set", "--format", "json"})
                                             .out);
  EXPECT_EQ(lub.at("optimum"), "5/2");
}

TEST(Cli, ConstructRoundTrips) {
  TempDir dir;
  for (const std::vector<std::string>& spec :
       {std::vector<std::string>{"--kind", "even-odd", "--n", "6"},
        std::vector<std::string>{"--kind", "canonical", "--n", "5", "--A", "1,4"},
        std::vector<std::string>{"--kind", "two-middle-levels", "--n", "4"},
        std::vector<std::string>{"--kind", "product", "--n", "6", "--X", "1,2", "--C", "3,5"}}) {
    for (const std::string format : {"text", "json"}) {
      std::vector<std::string> args{"construct"};
      args.insert(args.end(), spec.begin(), spec.end());
      args.insert(args.end(), {"--format", format});
      const auto made = run(args);
      ASSERT_EQ(made.code, 0) << made.err;
      const std::string path = dir.write("family." + format, made.out);
      const Family fam = io::parse_any(made.out);
      const auto l = run({"lubell", path});
      ASSERT_EQ(l.code, 0) << l.err;
      EXPECT_EQ(first_line(l.out), to_string(lubell(fam)));
      const auto m = run({"mnm", path});
      ASSERT_EQ(m.code, 0) << m.err;
      EXPECT_EQ(first_line(m.out), to_string(count_mnm(fam)));
      // emitted text re-serializes byte-identically
      const std::string again = format == "text" ? io::to_text(fam) : io::to_json(fam).dump(2) + "\n";
      EXPECT_EQ(again, made.out);
    }
  }
}

TEST(Cli, VerificationSummaries) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"verify-lemma", "--x-steps", "11", "--c-steps", "11", "--a-steps", "5", "--atilde-steps", "5"},
        std::vector<std::string>{"verify-lemma9", "--n", "3", "--nprime", "1"},
        std::vector<std::string>{"verify-lemma12", "--n-lo", "3", "--n-hi", "5", "--samples", "20"},
        std::vector<std::string>{"verify-props", "--random", "5", "--seed", "3"},
        std::vector<std::string>{"derive-children", "--random", "5", "--seed", "4", "--case", "no-singleton"}}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << args[0] << " " << r.err;
    EXPECT_EQ(first_line(r.out).substr(0, 5), "PASS ") << args[0];
  }
}

TEST(Cli, ScenarioFiles) {
  TempDir dir;
  const std::string path = dir.write("s.txt", "n=4\nnprime=2\nX=\nF=\n1\n2\n1,3\n1,4\n2,3\n2,4\n3,4\nXFAM=\n");
  const auto r = run({"verify-props", path, "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("pass"), true);
  const auto kids = run({"derive-children", path});
  EXPECT_EQ(kids.code, 0) << kids.err;
  const std::string lam = dir.write("lam.txt", "n=3\nX=\nF=\n1\n2\n1,2\nXFAM=\n");
  EXPECT_EQ(run({"verify-props", lam}).code, 2);
  const std::string mixed = dir.write("mixed.txt", "n=6\nX=1,2\nF=\nXFAM=\n1\n2,4\n");
  EXPECT_EQ(run({"derive-children", mixed}).code, 2);
  EXPECT_EQ(run({"verify-props", mixed}).code, 0);
}

TEST(Cli, MiscCommands) {
  EXPECT_EQ(run({"tail-mass", "--n", "4"}).out.substr(0, 2), "0\n");
  const auto curve = run({"bound-curve", "--x", "0.6", "--c", "0.9"});
  EXPECT_EQ(curve.code, 0);
  EXPECT_EQ(curve.out.substr(0, 4), "0.4 ");
  const auto fig = run({"bound-curve", "--figure", "f-vs-c", "--samples", "5"});
  EXPECT_EQ(fig.code, 0);
  EXPECT_EQ(first_line(fig.out), "series,abscissa,value");
  const auto mc = run({"mc", "--generator", "canonical", "--n", "10", "--a", "0.3", "--samples", "1", "--format", "json"});
  ASSERT_EQ(mc.code, 0) << mc.err;
  EXPECT_EQ(nlohmann::json::parse(mc.out).at("stderr_defined"), false);
}

TEST(Cli, Deterministic) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"mc", "--generator", "even-odd", "--n", "100", "--samples", "5000", "--seed", "9"},
        std::vector<std::string>{"verify-props", "--random", "6", "--seed", "12", "--format", "json"},
        std::vector<std::string>{"search", "--n", "4", "--pattern", "diamond", "--shuffle", "--seed", "3"},
        std::vector<std::string>{"verify-lemma12", "--samples", "30", "--seed", "5"}}) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out) << args[0];
  }
}

TEST(Cli, OutputFileAndEnvironment) {
  TempDir dir;
  const auto direct = run({"construct", "--kind", "even-odd", "--n", "4", "--output", dir.file("a.txt").string()});
  ASSERT_EQ(direct.code, 0) << direct.err;
  EXPECT_TRUE(direct.out.empty());
  EXPECT_EQ(slurp(dir.file("a.txt")), io::to_text(even_odd_family(4)));
  ::setenv(cli::kOutputDirEnv, dir.file("").string().c_str(), 1);
  const auto rel = run({"construct", "--kind", "even-odd", "--n", "4", "--output", "b.txt"});
  ::unsetenv(cli::kOutputDirEnv);
  ASSERT_EQ(rel.code, 0) << rel.err;
  EXPECT_EQ(slurp(dir.file("b.txt")), io::to_text(even_odd_family(4)));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"--version"}).code, 0);
  EXPECT_EQ(first_line(run({"--version"}).out), DFREE_VERSION);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"lubell", "--bogus"}).code, 2);
  EXPECT_EQ(run({"search", "--n", "3"}).code, 2);
  EXPECT_EQ(run({"search", "--n", "3", "--pattern", "kite"}).code, 2);
  EXPECT_EQ(run({"lubell", "/nonexistent/family.txt"}).code, 2);
  EXPECT_EQ(run({"mc", "--generator", "nope", "--n", "10"}).code, 2);
  EXPECT_EQ(run({"lubell", "--construct", "even-odd", "--n", "1"}).code, 2);
  EXPECT_EQ(run({"bound-curve", "--x", "1.5", "--c", "0.1"}).code, 2);
  EXPECT_EQ(run({"search", "--n", "7", "--pattern", "diamond"}).code, 3);
  EXPECT_EQ(run({"lubell", "--construct", "even-odd", "--n", "40"}).code, 3);
  EXPECT_EQ(run({"verify-lemma9", "--n", "6"}).code, 3);
  const auto bad = run({"search", "--n", "7", "--pattern", "diamond"});
  EXPECT_TRUE(bad.out.empty());
  EXPECT_FALSE(bad.err.empty());
}
