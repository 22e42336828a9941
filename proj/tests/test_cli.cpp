#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "gsp/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Outcome r;
  r.code = gsp::cli::cli_dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& name) { return (fs::path(GSP_TEST_DATA) / name).string(); }
std::string tmp(const std::string& name) { return (fs::path(GSP_TEST_TMPDIR) / ("cli_" + name)).string(); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find_first_of("\r\n")); }

}  // namespace

TEST(Cli, GoldenExamplePrintsEveryStage) {
  const Outcome r = run({"golden-example"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* title : {"A (5x5)", "V (5x5)", "Phi (5x3)", "U^-1 (3x3)", "A_M (3x3)", "x_M - A_M x_M"}) {
    EXPECT_NE(r.out.find(title), std::string::npos) << title;
  }
  EXPECT_NE(r.out.find("sampled vertices (1-based): 1,2,4"), std::string::npos);
  EXPECT_NE(r.out.find("-0.0745"), std::string::npos);
  EXPECT_NE(r.out.find("0.2876"), std::string::npos);
}

TEST(Cli, ErSuccessIsDeterministic) {
  const std::vector<std::string> args{"er-success", "--n", "20", "--k", "3", "--p-grid", "0.1:0.3:0.1",
                                      "--trials", "6", "--seed", "4"};
  const Outcome a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(first_line(a.out), "p,rate");
  EXPECT_EQ(a.out, run(args).out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 4);
}

TEST(Cli, UnknownFlagAndCommand) {
  const Outcome flag = run({"decompose", "--bogus"});
  EXPECT_EQ(flag.code, 1);
  EXPECT_NE(flag.err.find("BadFlag"), std::string::npos);
  EXPECT_NE(flag.err.find("Usage"), std::string::npos);
  const Outcome cmd = run({"frobnicate"});
  EXPECT_EQ(cmd.code, 1);
  EXPECT_NE(cmd.err.find("UnknownCommand"), std::string::npos);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"design", "--er-n", "10"}).code, 1);  // --k is required
  EXPECT_EQ(run({"decompose"}).code, 1);               // no graph source
}

TEST(Cli, HelpAndVersion) {
  const Outcome h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  for (const char* c : {"decompose", "interpolate", "filterbank", "classify", "golden-example"}) {
    EXPECT_NE(h.out.find(c), std::string::npos);
  }
  EXPECT_EQ(run({"interpolate", "--help"}).code, 0);
  EXPECT_NE(run({"--version"}).out.find("0.1.0"), std::string::npos);
}

TEST(Cli, DefectiveGraphExitsTwo) {
  const Outcome r = run({"decompose", "--graph", data("jordan.mtx"), "--no-normalize"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Defective"), std::string::npos);
}

TEST(Cli, ValidationErrorsExitOne) {
  EXPECT_EQ(run({"decompose", "--graph", "/nonexistent.mtx"}).code, 1);
  EXPECT_EQ(run({"er-success", "--p-grid", "0.5:0.1:0.1"}).code, 1);
  EXPECT_EQ(run({"design", "--er-n", "10", "--k", "11"}).code, 1);
  EXPECT_EQ(run({"cyclic-demo", "--n", "7"}).code, 1);
  EXPECT_EQ(run({"decompose", "--er-n", "5", "--format", "xml"}).code, 1);
}

TEST(Cli, DecomposeFiveNode) {
  const Outcome r = run({"decompose", "--graph", data("five_node.csv"), "--no-normalize"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(first_line(r.out), "slot,eigenvalue_re,eigenvalue_im");
  std::istringstream in(r.out);
  const auto cols = gsp::io::read_signal_csv(in);
  ASSERT_EQ(cols.size(), 3u);
  EXPECT_NEAR(cols[1].second(0), 1.0, 1e-12);
  EXPECT_NEAR(cols[1].second(4), -0.829035782474667, 1e-12);
  EXPECT_NE(r.err.find("reconstruction error"), std::string::npos);
}

TEST(Cli, ConfigFileAndPrecedence) {
  const std::string cfg = tmp("cfg.json");
  std::ofstream(cfg) << R"({"er-n": 12, "k": 3, "m": 5, "policy": "greedy"})";
  const Outcome a = run({"design", "--config", cfg});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 6);
  const Outcome b = run({"design", "--config", cfg, "--m", "4"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(std::count(b.out.begin(), b.out.end(), '\n'), 5);
  const Outcome c = run({"design", "--er-n", "12", "--k", "3", "--m", "5"});
  EXPECT_EQ(c.out, a.out);
  const std::string bad = tmp("bad.json");
  std::ofstream(bad) << R"({"er-n": 12, "k": 3, "colour": "blue"})";
  const Outcome d = run({"design", "--config", bad});
  EXPECT_EQ(d.code, 1);
  EXPECT_NE(d.err.find("colour"), std::string::npos);
  const std::string broken = tmp("broken.json");
  std::ofstream(broken) << "{";
  EXPECT_EQ(run({"design", "--config", broken}).code, 1);
}

TEST(Cli, OutWritesFile) {
  const std::string path = tmp("demo.csv");
  fs::remove(path);
  const Outcome r = run({"cyclic-demo", "--n", "6", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(path), "0,0,1\n1,0,0\n0,1,0\n");
  const std::string mtx = tmp("demo.mtx");
  ASSERT_EQ(run({"cyclic-demo", "--n", "6", "--out", mtx}).code, 0);
  const gsp::Matrix m = gsp::io::read_matrix(mtx, gsp::io::MatrixFormat::MatrixMarket);
  EXPECT_EQ(m(0, 2), gsp::Complex(1.0));
}

TEST(Cli, SampleAndInterpolateRoundTrip) {
  const std::string sig = tmp("x.csv");
  std::ofstream(sig) << "x\n0.2876\n0.3203\n0.1843\n0.0512\n0.1696\n";
  const Outcome s = run({"sample", "--signal", sig, "--indices", "0,1,3"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(first_line(s.out), "sample,vertex,value");
  EXPECT_NE(s.out.find("2,3,0.0512"), std::string::npos);
  const Outcome i = run({"interpolate", "--graph", data("five_node.csv"), "--no-normalize", "--k", "3", "--indices",
                     "0,1,3"});
  ASSERT_EQ(i.code, 0) << i.err;
  EXPECT_EQ(first_line(i.out), "vertex,original,recovered,error");
  std::istringstream in(i.out);
  const auto cols = gsp::io::read_signal_csv(in);
  EXPECT_LT(cols.back().second.cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Cli, EverySubcommandTakesCommonFlags) {
  const std::string sig = tmp("x8.csv");
  std::ofstream(sig) << "x\n1\n2\n3\n4\n5\n6\n7\n8\n";
  const std::vector<std::vector<std::string>> cmds{
      {"decompose", "--er-n", "8"},
      {"sample", "--signal", sig, "--m", "3"},
      {"interpolate", "--er-n", "8", "--k", "2"},
      {"design", "--er-n", "8", "--k", "2", "--policy", "brute"},
      {"er-success", "--n", "10", "--k", "2", "--p-grid", "0.5:0.5:0.1", "--trials", "3"},
      {"frame-bound", "--er-n", "12", "--k", "2", "--m", "6", "--trials", "3"},
      {"cyclic-demo", "--n", "4"},
      {"filterbank", "--er-n", "8", "--widths", "3,5"},
      {"classify", "--per-cluster", "15", "--neighbors", "5"},
      {"golden-example"},
  };
  for (auto args : cmds) {
    const std::string name = args.front();
    args.insert(args.end(), {"--seed", "3", "--format", "csv", "--out", tmp(name + ".out")});
    const Outcome r = run(args);
    EXPECT_EQ(r.code, 0) << name << ": " << r.err;
  }
}

TEST(Cli, SeedChangesRandomOutput) {
  const std::string sig = tmp("x8b.csv");
  std::ofstream(sig) << "x\n1\n2\n3\n4\n5\n6\n7\n8\n";
  const Outcome a = run({"sample", "--signal", sig, "--m", "4", "--seed", "1"});
  const Outcome b = run({"sample", "--signal", sig, "--m", "4", "--seed", "2"});
  EXPECT_EQ(a.out, run({"sample", "--signal", sig, "--m", "4", "--seed", "1"}).out);
  EXPECT_NE(a.out, b.out);
}
