#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using sheafcsp::cli::run;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sheafcsp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int call(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
  }
  static std::string without_timing(std::string json) {
    return std::regex_replace(json, std::regex(R"(,"ms":[0-9.e+-]+)"), "");
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

}  // namespace

TEST_F(Cli, SolvableAffineAccepts) {
  const auto pre = path("sat");
  ASSERT_EQ(call({"gen", "affine", "--q", "2", "--vars", "6", "--eqs", "6", "--planted", "--seed", "3",
                  "--out", pre}),
            0);
  EXPECT_EQ(call({"decide-csp", "--k", "3", "--method", "cohomological", pre + ".A.json", pre + ".B.json"}),
            0);
  EXPECT_NE(out_.str().find("\"verdict\":\"accept\""), std::string::npos);
}

TEST_F(Cli, TseitinSeparatesUnderCompare) {
  const auto pre = path("t");
  ASSERT_EQ(call({"gen", "tseitin", "--graph", "k4", "--odd", "--out", pre}), 0);
  EXPECT_EQ(call({"decide-csp", "--k", "3", "--compare", pre + ".A.json", pre + ".B.json", "--out",
                  path("r.json")}),
            1);
  const auto report = slurp(path("r.json"));
  EXPECT_NE(report.find(R"("compare":{"classical":{"verdict":"accept")"), std::string::npos) << report;
  EXPECT_NE(report.find(R"("cohomological":{"verdict":"reject")"), std::string::npos);
  EXPECT_EQ(call({"decide-csp", "--k", "3", "--method", "classical", pre + ".A.json", pre + ".B.json"}),
            0);
}

TEST_F(Cli, MissingFileIsAnError) {
  EXPECT_EQ(call({"decide-csp", path("nope.json"), path("nope.json")}), 2);
  EXPECT_NE(err_.str().find("cannot open"), std::string::npos);
}

TEST_F(Cli, BadArgumentsAreErrors) {
  EXPECT_EQ(call({}), 2);
  EXPECT_EQ(call({"decide-csp", "--k", "0", "a", "b"}), 2);
  EXPECT_EQ(call({"decide-csp", "--method", "magic", "a", "b"}), 2);
  EXPECT_EQ(call({"gen", "graph", "--kind", "regular", "--n", "5", "--d", "3", "--seed", "1"}), 2);
  EXPECT_EQ(call({"gen", "affine", "--q", "3"}), 2);  // no seed
  EXPECT_EQ(call({"--help"}), 0);
}

TEST_F(Cli, CfiTwinsDifferByMethod) {
  const auto pre = path("cfi");
  ASSERT_EQ(call({"gen", "cfi", "--q", "2", "--graph", "k4", "--twist-total", "1", "--out", pre}), 0);
  EXPECT_EQ(call({"decide-iso", "--k", "2", pre + ".A.json", pre + ".B.json"}), 1);
  EXPECT_EQ(call({"decide-iso", "--k", "2", "--method", "classical", pre + ".A.json", pre + ".B.json"}), 0);
  EXPECT_EQ(call({"decide-iso", "--k", "2", pre + ".A.json", pre + ".A.json"}), 0);
}

TEST_F(Cli, GraphFileWithTwists) {
  std::ofstream(path("g.txt")) << "# triangle\n3\n0 1\n1 2\n0 2\ntwist 0 1 1\n";
  ASSERT_EQ(call({"gen", "cfi", "--q", "2", "--graph", path("g.txt"), "--out", path("tri")}), 0);
  EXPECT_EQ(call({"decide-iso", "--k", "2", path("tri.A.json"), path("tri.B.json")}), 1);
}

TEST_F(Cli, SizeMismatchRejectsWithReason) {
  ASSERT_EQ(call({"gen", "cfi", "--q", "2", "--graph", "k3", "--twist-total", "0", "--out", path("s")}), 0);
  ASSERT_EQ(call({"gen", "cfi", "--q", "2", "--graph", "k4", "--twist-total", "0", "--out", path("l")}), 0);
  EXPECT_EQ(call({"decide-iso", path("s.A.json"), path("l.A.json")}), 1);
  EXPECT_NE(out_.str().find("\"reason\":\"size\""), std::string::npos);
}

TEST_F(Cli, GenIsReproducible) {
  ASSERT_EQ(call({"gen", "affine", "--q", "4", "--vars", "8", "--eqs", "10", "--seed", "7", "--out", path("x")}), 0);
  ASSERT_EQ(call({"gen", "affine", "--q", "4", "--vars", "8", "--eqs", "10", "--seed", "7", "--out", path("y")}), 0);
  EXPECT_EQ(slurp(path("x.A.json")), slurp(path("y.A.json")));
  EXPECT_EQ(slurp(path("x.B.json")), slurp(path("y.B.json")));
  ASSERT_EQ(call({"gen", "graph", "--kind", "regular", "--n", "8", "--d", "3", "--seed", "2"}), 0);
  const auto g1 = out_.str();
  ASSERT_EQ(call({"gen", "graph", "--kind", "regular", "--n", "8", "--d", "3", "--seed", "2"}), 0);
  EXPECT_EQ(out_.str(), g1);
}

TEST_F(Cli, DensityZeroAndModulusWarning) {
  ASSERT_EQ(call({"gen", "affine", "--q", "6", "--vars", "5", "--density", "0", "--seed", "1", "--out",
                  path("z")}),
            0);
  EXPECT_NE(err_.str().find("not a prime power"), std::string::npos);
  EXPECT_NE(slurp(path("z.A.json")).find("\"relations\":{}"), std::string::npos);
}

TEST_F(Cli, WideTseitinWarns) {
  ASSERT_EQ(call({"gen", "tseitin", "--graph", "k5", "--out", path("w")}), 0);
  EXPECT_NE(err_.str().find("more than k"), std::string::npos);
}

TEST_F(Cli, ReportsAreReproducible) {
  const auto pre = path("t");
  ASSERT_EQ(call({"gen", "tseitin", "--graph", "k4", "--odd", "--out", pre}), 0);
  call({"decide-csp", "--compare", pre + ".A.json", pre + ".B.json"});
  const auto first = without_timing(out_.str());
  call({"decide-csp", "--compare", pre + ".A.json", pre + ".B.json"});
  EXPECT_EQ(without_timing(out_.str()), first);
  EXPECT_EQ(first.find("\"ms\""), std::string::npos);
}

TEST_F(Cli, BenchEmptyManifest) {
  std::ofstream(path("m.json")) << R"({"instances":[]})";
  EXPECT_EQ(call({"bench", path("m.json")}), 0);
  EXPECT_EQ(out_.str(), "name,problem,method,k,verdict,iterations,max_rows,max_cols,sections,ms,oracle,agree,error\n");
}

TEST_F(Cli, BenchAgreesWithOracle) {
  std::ostringstream manifest;
  manifest << R"({"k":3,"methods":["cohomological","classical"],"instances":[)";
  for (int i = 0; i < 6; ++i) {
    const auto pre = "z4_" + std::to_string(i);
    std::vector<std::string> args{"gen", "affine", "--q", "4", "--vars", "7", "--eqs", "7", "--seed",
                                  std::to_string(i), "--out", path(pre)};
    if (i % 2 == 0) args.push_back("--planted");
    ASSERT_EQ(call(args), 0);
    manifest << (i ? "," : "") << R"({"name":")" << pre << R"(","a":")" << pre << R"(.A.json","b":")" << pre
             << R"(.B.json"})";
  }
  ASSERT_EQ(call({"gen", "tseitin", "--graph", "k4", "--odd", "--out", path("ts")}), 0);
  manifest << R"(,{"name":"tseitin","a":"ts.A.json","b":"ts.B.json"})";
  manifest << R"(,{"name":"broken","a":"missing.json","b":"ts.B.json"}]})";
  std::ofstream(path("m.json")) << manifest.str();
  ASSERT_EQ(call({"bench", path("m.json"), "--budget", "1000000", "--jobs", "3", "--out", path("b.csv")}), 0);
  std::istringstream csv(slurp(path("b.csv")));
  std::string line;
  std::getline(csv, line);
  int rows = 0;
  bool classical_fooled = false;
  bool saw_error = false;
  while (std::getline(csv, line)) {
    ++rows;
    if (line.rfind("broken", 0) == 0) {
      saw_error = line.find(",error,") != std::string::npos;
      continue;
    }
    if (line.find(",cohomological,") != std::string::npos) {
      EXPECT_NE(line.find(",yes,"), std::string::npos) << line;
    }
    if (line.rfind("tseitin,csp,classical,3,accept", 0) == 0) classical_fooled = line.find(",no,") != std::string::npos;
  }
  EXPECT_EQ(rows, 16);
  EXPECT_TRUE(classical_fooled);
  EXPECT_TRUE(saw_error);
}
