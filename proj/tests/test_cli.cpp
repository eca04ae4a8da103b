#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "tnn/experiments.hpp"
#include "tnn/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

const fs::path& workdir() {
  static const fs::path dir = [] {
    auto p = fs::temp_directory_path() / "tnn_cli_test";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

Run tnn_cli(const std::string& args) {
  const fs::path log = workdir() / "stdout.txt";
  const std::string cmd = "cd '" + workdir().string() + "' && '" TNN_CLI "' " + args + " > '" + log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream is(log);
  std::stringstream ss;
  ss << is.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::size_t count_lines(const fs::path& p) {
  std::ifstream is(p);
  std::size_t n = 0;
  for (std::string line; std::getline(is, line);) ++n;
  return n;
}

}  // namespace

TEST(Cli, SynthPrintsMultiRank) {
  const auto r = tnn_cli("synth --dims 8,7,5 --rank 2 --seed 3 --out s.tt3d");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("multi-rank: 2 2 2 2 2"), std::string::npos) << r.out;
  EXPECT_EQ(tnn::io::load_tensor(workdir() / "s.tt3d"), tnn::synth_low_multirank(8, 7, 5, 2, 3));
}

TEST(Cli, FullMaskRoundTripIsBitExact) {
  ASSERT_EQ(tnn_cli("synth --dims 8,7,5 --rank 2 --seed 4 --out rt.tt3d").code, 0);
  ASSERT_EQ(tnn_cli("mask --dims 8,7,5 --all --out all.ttm1").code, 0);
  const auto r = tnn_cli("complete rt.tt3d --mask all.ttm1 --out rt_out/x.tt3d --quiet");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(slurp(workdir() / "rt.tt3d"), slurp(workdir() / "rt_out" / "x.tt3d"));
}

TEST(Cli, CompleteWritesReportAndMetrics) {
  ASSERT_EQ(tnn_cli("synth --dims 10,9,6 --rank 2 --seed 5 --out c.tt3d").code, 0);
  const auto r = tnn_cli("complete c.tt3d --mask bernoulli:p=0.5,seed=1 --truth c.tt3d --out c_out/x.tt3d "
                         "--frames-out c_out/frames --max-iters 30");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto dir = workdir() / "c_out";
  ASSERT_TRUE(fs::exists(dir / "report.csv"));
  std::ifstream rep(dir / "report.csv");
  std::string header;
  std::getline(rep, header);
  EXPECT_EQ(header, "iteration,residual,rho");
  EXPECT_EQ(tnn::io::load_tensor(dir / "x.tt3d").dims(), (tnn::Dims{10, 9, 6}));
  // one header line plus one row per iteration; the summary echoes the count
  const std::size_t rows = count_lines(dir / "report.csv") - 1;
  EXPECT_NE(r.out.find("iterations=" + std::to_string(rows) + " "), std::string::npos) << r.out;
  EXPECT_EQ(count_lines(dir / "metrics.csv"), 1 + 6 + 1u);
  EXPECT_TRUE(fs::exists(dir / "frames" / "frame_0005.pgm"));
}

TEST(Cli, RegularizersDifferButAgreeOnObservedEntries) {
  ASSERT_EQ(tnn_cli("synth --dims 10,9,6 --rank 2 --seed 6 --out g.tt3d").code, 0);
  ASSERT_EQ(tnn_cli("complete g.tt3d --mask bernoulli:p=0.5,seed=2 --regularizer ttnn --out g1/x.tt3d --quiet --max-iters 40").code, 0);
  ASSERT_EQ(tnn_cli("complete g.tt3d --mask bernoulli:p=0.5,seed=2 --regularizer mnn3 --out g2/x.tt3d --quiet --max-iters 40").code, 0);
  const auto a = tnn::io::load_tensor(workdir() / "g1" / "x.tt3d");
  const auto b = tnn::io::load_tensor(workdir() / "g2" / "x.tt3d");
  const auto m = tnn::io::load_tensor(workdir() / "g.tt3d");
  const auto omega = tnn::bernoulli_mask(m.dims(), 0.5, 2);
  EXPECT_NE(a, b);
  for (std::size_t n = 0; n < m.size(); ++n) {
    if (omega.bits()[n]) {
      ASSERT_EQ(a.data()[n], m.data()[n]);
      ASSERT_EQ(b.data()[n], m.data()[n]);
    }
  }
}

TEST(Cli, ExitCodes) {
  ASSERT_EQ(tnn_cli("synth --dims 4,4,3 --rank 1 --out e.tt3d").code, 0);
  const auto missing = tnn_cli("complete e.tt3d");
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.out.find("--mask"), std::string::npos);
  EXPECT_EQ(tnn_cli("complete e.tt3d --mask bernoulli:p=2").code, 1);
  EXPECT_EQ(tnn_cli("complete e.tt3d --mask bernoulli:p=0.5 --eta 0.9").code, 1);
  EXPECT_EQ(tnn_cli("complete absent.tt3d --mask bernoulli:p=0.5").code, 2);
  ASSERT_EQ(tnn_cli("mask --dims 3,3,3 --mask bernoulli:p=0.5,seed=1 --out small.ttm1").code, 0);
  EXPECT_EQ(tnn_cli("complete e.tt3d --mask small.ttm1").code, 2);
  EXPECT_EQ(tnn_cli("frobnicate").code, 1);
  const auto help = tnn_cli("--help");
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("4  oracle check failed"), std::string::npos);
}

TEST(Cli, MetricsSchema) {
  ASSERT_EQ(tnn_cli("synth --dims 4,4,3 --rank 1 --out m.tt3d").code, 0);
  const auto r = tnn_cli("metrics m.tt3d m.tt3d");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "frame,rse_db\n0,-inf\n1,-inf\n2,-inf\nirse,inf\n");
}

TEST(Cli, OracleBudgetAndSelfTest) {
  const auto full = tnn_cli("oracle");
  EXPECT_EQ(full.code, 0) << full.out;
  EXPECT_NE(full.out.find("prox scaling winner: parseval"), std::string::npos);
  const auto none = tnn_cli("oracle --budget 0");
  EXPECT_EQ(none.code, 0);
  EXPECT_NE(none.out.find("SKIPPED"), std::string::npos);
  EXPECT_EQ(tnn_cli("oracle --corrupt-fixture").code, 4);
}
