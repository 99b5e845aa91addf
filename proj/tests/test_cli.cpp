// Runs the coxsr executable end to end.
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "coxsr/ingest.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("coxsr_cli_") +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome run(const std::string& args) const {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string command = std::string("\"") + COXSR_CLI + "\" " + args + " > \"" +
                                out.string() + "\" 2> \"" + err.string() + "\"";
    Outcome r;
    const int raw = std::system(command.c_str());
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const char* kAepFlags = "--r0 0.0283 --as 0.2880 --sigma 0.9554 --tauc 1.7";

}  // namespace

TEST_F(Cli, SimulateWritesDatasetAndMeta) {
  const Outcome r = run(std::string("simulate ") + kAepFlags + " --days 2 --seed 42 -o " +
                    path("aep.csv"));
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("total_trades="), std::string::npos);
  EXPECT_TRUE(fs::exists(path("aep.meta.json")));
  const auto ticks = coxsr::parse_ticks(fs::path(path("aep.csv")));
  EXPECT_FALSE(ticks.empty());
  EXPECT_EQ(ticks.front().symbol, "SYN");
  const coxsr::DatasetMeta meta = coxsr::read_meta(path("aep.meta.json"));
  EXPECT_EQ(meta.seed, 42u);
  EXPECT_EQ(meta.session.days, 2);
  EXPECT_EQ(meta.params.sigma, 0.9554);
}

TEST_F(Cli, SimulateIsByteIdentical) {
  ASSERT_EQ(run(std::string("simulate ") + kAepFlags + " --days 2 --seed 7 -o " + path("a.csv"))
                .status,
            0);
  ASSERT_EQ(run(std::string("simulate ") + kAepFlags + " --days 2 --seed 7 -o " + path("b.csv"))
                .status,
            0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(Cli, SimulateRequiresSeed) {
  const Outcome r = run(std::string("simulate ") + kAepFlags + " -o " + path("x.csv"));
  EXPECT_NE(r.status, 0);
  EXPECT_FALSE(fs::exists(path("x.csv")));
}

TEST_F(Cli, SimulateRejectsInvalidParameters) {
  const Outcome r = run("simulate --r0 -1 --seed 1 -o " + path("x.csv"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("coxsr: error["), std::string::npos);
}

TEST_F(Cli, FitWritesReportAndSnrReadsIt) {
  ASSERT_EQ(run(std::string("simulate ") + kAepFlags + " --days 3 --seed 42 --symbol AEP -o " +
                path("aep.csv"))
                .status,
            0);
  const Outcome fit = run("fit -i " + path("aep.csv") + " -o " + path("report.json") +
                      " --seed 42 --tau-max 10 --tau-count 12");
  ASSERT_EQ(fit.status, 0) << fit.err;
  EXPECT_NE(fit.out.find("tau_c*r0="), std::string::npos);
  EXPECT_NE(fit.out.find("verdict="), std::string::npos);
  const coxsr::FitReport report = coxsr::read_report(path("report.json"));
  EXPECT_EQ(report.provenance.session.days, 3);
  EXPECT_EQ(report.provenance.seed, 42u);
  EXPECT_EQ(report.provenance.tau_grid.size(), 12u);

  const Outcome snr = run("snr --report " + path("report.json") + " -o " + path("snr.csv"));
  ASSERT_EQ(snr.status, 0) << snr.err;
  EXPECT_NE(snr.out.find("current_sigma="), std::string::npos);
  EXPECT_EQ(line_count(slurp(path("snr.csv"))), 302u);
}

TEST_F(Cli, FitReportsParseErrors) {
  std::ofstream(path("bad.csv")) << "day,t,symbol\n0,1,A\nnope\n";
  const Outcome r = run("fit -i " + path("bad.csv") + " --seed 1");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("coxsr: error[parse]"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("3"), std::string::npos);
}

TEST_F(Cli, FitOnEmptyFileIsBinningError) {
  std::ofstream(path("empty.csv")) << "day,t,symbol\n";
  const Outcome r = run("fit -i " + path("empty.csv") + " --seed 1");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("coxsr: error[binning]: "), std::string::npos) << r.err;
  // The stage is named once, in the brackets.
  EXPECT_EQ(r.err.find("binning: "), std::string::npos) << r.err;
}

TEST_F(Cli, SnrVerdicts) {
  const Outcome aep = run("snr --r0 0.0283 --as 0.2880 --tauc 1.7 -o " + path("aep.csv"));
  ASSERT_EQ(aep.status, 0) << aep.err;
  EXPECT_NE(aep.out.find("argmax_sigma=1.24"), std::string::npos) << aep.out;
  EXPECT_NE(aep.out.find("verdict=SR"), std::string::npos);
  const std::string csv = slurp(path("aep.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "sigma,snr_raw,snr_normalized");

  const Outcome f = run("snr --r0 0.0947 --as 0.2194 --tauc 26.5 --sigma-max 2 --sigma-step 0.1 -o " +
                    path("f.csv"));
  ASSERT_EQ(f.status, 0) << f.err;
  EXPECT_NE(f.out.find("argmax_sigma=none"), std::string::npos);
  EXPECT_NE(f.out.find("verdict=no-SR"), std::string::npos);
  EXPECT_EQ(line_count(slurp(path("f.csv"))), 22u);
}

TEST_F(Cli, SnrNeedsParameters) {
  const Outcome r = run("snr --r0 0.1 -o " + path("x.csv"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("error[config]"), std::string::npos);
}

TEST_F(Cli, AcfEmpiricalAndModel) {
  ASSERT_EQ(run(std::string("simulate ") + kAepFlags + " --days 1 --seed 3 -o " + path("d.csv"))
                .status,
            0);
  const Outcome r = run("acf -i " + path("d.csv") + " -o " + path("emp.csv") + " --model-output " +
                    path("mc.csv") + " " + kAepFlags + " --seed 3 --replicas 2 --max-lag 20");
  ASSERT_EQ(r.status, 0) << r.err;
  const std::string emp = slurp(path("emp.csv"));
  EXPECT_EQ(emp.substr(0, emp.find('\n')), "lag_s,value,noise_floor");
  EXPECT_EQ(line_count(emp), 21u);
  EXPECT_EQ(line_count(slurp(path("mc.csv"))), 21u);

  const Outcome again = run("acf --model-output " + path("mc2.csv") + " " + kAepFlags +
                        " --days 1 --seed 3 --replicas 2 --max-lag 20");
  ASSERT_EQ(again.status, 0) << again.err;
  EXPECT_EQ(slurp(path("mc.csv")), slurp(path("mc2.csv")));
}

TEST_F(Cli, AcfModelNeedsSeed) {
  const Outcome r = run(std::string("acf --model-output ") + path("mc.csv") + " " + kAepFlags);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("--seed"), std::string::npos);
}
