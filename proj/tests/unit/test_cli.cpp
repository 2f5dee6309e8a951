#ifdef ROTOSPIN_HAVE_CLI

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"
#include "rotospin/scan.hpp"

namespace fs = std::filesystem;
using rotospin::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rotospin_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

std::string kv(const std::string& out, const std::string& key) {
  std::istringstream in(out);
  std::string line;
  const std::string prefix = key + " = ";
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  }
  return {};
}

}  // namespace

TEST_F(Cli, PointTorqueExample) {
  const auto r = cli({"point", "--normalized", "--gamma", "0.1", "--tau", "0", "--pol", "lcp",
                      "--omega", "0.5", "--Omega", "0.2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(kv(r.out, "torque")), 0.0396, 5e-5);
  EXPECT_EQ(kv(r.out, "torque"), "0.039588281868566895");
  EXPECT_EQ(kv(r.out, "balance_ok"), "true");
  EXPECT_NE(r.out.find("balance_check"), std::string::npos);  // table part
}

TEST_F(Cli, PointFormats) {
  const std::vector<std::string> base = {"point", "--gamma", "0.1", "--omega", "0.5", "--Omega", "0.2"};
  auto args = base;
  args.insert(args.end(), {"--format", "kv"});
  EXPECT_EQ(cli(args).out.find("balance_check"), std::string::npos);
  args = base;
  args.insert(args.end(), {"--format", "table"});
  EXPECT_EQ(kv(cli(args).out, "torque"), "");
  args = base;
  args.insert(args.end(), {"--format", "json"});
  EXPECT_EQ(cli(args).code, 2);
}

TEST_F(Cli, PointWritesToConfiguredPath) {
  const auto cfg = write("p.cfg", "[drive]\nomega = 0.5\n[rotation]\nOmega = 0.2\n[output]\npath = " +
                                      path("p.txt") + "\n");
  const auto r = cli({"point", "--config", cfg, "--gamma", "0.1", "--format", "kv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(kv(slurp(path("p.txt")), "torque"), "0.039588281868566895");
  EXPECT_EQ(kv(r.out, "torque"), "");
}

TEST_F(Cli, PointTorqueVanishesAtMatchedRotation) {
  const auto r = cli({"point", "--gamma", "0.1", "--tau", "0", "--omega", "0.5", "--Omega", "0.5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(kv(r.out, "torque"), "0");
}

TEST_F(Cli, SingularResonanceExitsThree) {
  const auto r = cli({"point", "--gamma", "0.1", "--tau", "0", "--omega", "1", "--Omega", "1"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("singular"), std::string::npos);
  EXPECT_EQ(cli({"point", "--gamma", "0", "--tau", "0", "--omega", "1"}).code, 3);
}

TEST_F(Cli, MalformedConfigIsLineAnchored) {
  const auto cfg = write("bad.cfg", "[model]\ngamma = 0.1\nthis is not a pair\n");
  const auto r = cli({"point", "--config", cfg, "--omega", "0.5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;

  const auto typo = write("typo.cfg", "[model]\ngamma = 0.1\n[drive]\nomgea = 0.5\n");
  const auto t = cli({"point", "--config", typo});
  EXPECT_EQ(t.code, 2);
  EXPECT_NE(t.err.find("line 4"), std::string::npos) << t.err;

  const auto num = write("num.cfg", "[drive]\nomega = half\n");
  const auto n = cli({"point", "--config", num});
  EXPECT_EQ(n.code, 2);
  EXPECT_NE(n.err.find("line 2"), std::string::npos) << n.err;
}

TEST_F(Cli, ConfigErrors) {
  EXPECT_EQ(cli({"point", "--gamma", "0.1"}).code, 2);  // no drive.omega
  EXPECT_EQ(cli({"point", "--bogus"}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"point", "--config", path("missing.cfg"), "--omega", "1"}).code, 2);
  EXPECT_EQ(cli({"point", "--preset", "fig9", "--omega", "1"}).code, 2);
  // two model sources
  EXPECT_EQ(cli({"point", "--physical", "--drude-sphere", "--plasma-frequency", "1.37e16",
                 "--radius", "1e-6", "--coupling", "1", "--omega", "1e15"})
                .code,
            2);
  // tau is derived in physical mode
  EXPECT_EQ(cli({"point", "--physical", "--omega0", "1e15", "--coupling", "1e30", "--tau", "1",
                 "--omega", "1e15"})
                .code,
            2);
  EXPECT_EQ(cli({"point", "--gamma", "-1", "--omega", "1"}).code, 2);
}

TEST_F(Cli, FlagsOverrideFileOverridesPreset) {
  const auto cfg = write("run.cfg", "[model]\ngamma = 0.1\ntau = 0\n[drive]\nomega = 0.3\n[rotation]\nOmega = 0.2\n");
  const auto file_only = cli({"point", "--config", cfg});
  const auto flagged = cli({"point", "--config", cfg, "--omega", "0.5"});
  EXPECT_EQ(kv(flagged.out, "torque"), "0.039588281868566895");
  EXPECT_NE(kv(file_only.out, "torque"), kv(flagged.out, "torque"));
  // fig3a sets tau = 1e-4; the file sets tau = 0
  const auto over = cli({"point", "--preset", "fig3a", "--config", cfg, "--omega", "0.5"});
  EXPECT_EQ(kv(over.out, "sigma_elastic"), "0");
}

TEST_F(Cli, PhysicalDrudeSpherePoint) {
  const auto r = cli({"point", "--physical", "--drude-sphere", "--plasma-frequency", "1.37e16",
                      "--gamma", "1.07e14", "--radius", "1e-6", "--omega", "3e15", "--Omega",
                      "1e9", "--intensity", "1e10", "--sphere-doubling"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(kv(r.out, "units"), "cgs");
  EXPECT_EQ(std::stod(kv(r.out, "torque_sphere")), 2 * std::stod(kv(r.out, "torque")));
}

TEST_F(Cli, ScanWritesCsvAndSidecarDeterministically) {
  const std::vector<std::string> args = {"scan", "--preset", "fig2", "--omega-count", "40",
                                         "--Omega-count", "30", "--output"};
  auto a = args;
  a.push_back(path("a.csv"));
  auto b = args;
  b.push_back(path("b.csv"));
  ::setenv("ROTOSPIN_THREADS", "1", 1);
  EXPECT_EQ(cli(a).code, 0);
  ::setenv("ROTOSPIN_THREADS", "4", 1);
  EXPECT_EQ(cli(b).code, 0);
  ::unsetenv("ROTOSPIN_THREADS");
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_EQ(slurp(path("a.csv.meta")), slurp(path("b.csv.meta")));

  std::ifstream in(path("a.csv"));
  const auto rows = rotospin::read_scan_csv(in);
  ASSERT_EQ(rows.size(), 1200u);
  const auto meta = slurp(path("a.csv.meta"));
  EXPECT_NE(meta.find("units = fig2"), std::string::npos);
  EXPECT_NE(meta.find("rows = 1200"), std::string::npos);
  for (const auto& row : rows) {
    // undo the fig2 scaling: mech/abs/ext by gamma = 0.1, scattering by tau = 1e-4
    const auto& s = row.sections;
    rotospin::CrossSectionSet raw{s.mechanical * 0.1, s.absorption * 0.1, s.elastic * 1e-4,
                                  s.inelastic_plus * 1e-4, s.inelastic_minus * 1e-4,
                                  s.extinction * 0.1};
    EXPECT_LE(std::abs(rotospin::energy_balance_residual(raw)), 1e-10 * raw.partial_scale());
  }
}

TEST_F(Cli, ScanToStdout) {
  const auto r = cli({"scan", "--gamma", "0.1", "--tau", "1e-4", "--omega-count", "3",
                      "--Omega-count", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), rotospin::kScanCsvHeader);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 7);
}

TEST_F(Cli, SpectrumFig3aHasGainBelowTwiceResonance) {
  ASSERT_EQ(cli({"spectrum", "--preset", "fig3a", "--output", path("s.csv")}).code, 0);
  std::ifstream in(path("s.csv"));
  const auto rows = rotospin::read_scan_csv(in);
  ASSERT_EQ(rows.size(), 601u);
  for (const auto& row : rows) {
    EXPECT_EQ(row.rotation, 2.0);
    if (row.frequency > 0 && row.frequency < 2) EXPECT_LT(row.sections.extinction, 0.0);
    if (row.frequency > 2) EXPECT_GT(row.sections.extinction, 0.0);
  }
}

TEST_F(Cli, SpinupCsv) {
  const auto r = cli({"spinup", "--gamma", "0.1", "--tau", "1e-4", "--omega", "0.5",
                      "--Omega-target", "0.3", "--shape", "custom", "--moment-of-inertia", "2.5",
                      "--output", path("t.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(kv(r.out, "termination"), "target");
  const auto text = slurp(path("t.csv"));
  EXPECT_EQ(text.substr(0, 8), "t,Omega\n");
  EXPECT_NE(text.find(",0.29999999999999999\n"), std::string::npos);
  EXPECT_EQ(cli({"spinup", "--gamma", "0.1", "--omega", "0.5", "--Omega-target", "0.3"}).code, 2);
}

TEST_F(Cli, ThermalCsv) {
  const auto r = cli({"thermal", "--gamma", "0.1", "--omega", "0.5", "--T0", "300", "--C-rad",
                      "1e-20", "--intensity-min", "1", "--intensity-max", "1e6",
                      "--intensity-count", "7", "--output", path("h.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto text = slurp(path("h.csv"));
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 8);
  EXPECT_EQ(text.substr(0, text.find('\n')), "intensity,sigma_abs,absorbed_power,T_eq");
}

TEST_F(Cli, AmplifyCsv) {
  const auto cfg = write("amp.cfg",
                         "[model]\ngamma = 0.1\ntau = 1e-4\n[drive]\nomega = 0.6\n"
                         "[medium]\ndensity = 100\nlength = 0.05\n"
                         "[member]\nrotation = 1.2\n[member]\nrotation = 2\nweight = 3\n");
  const auto r = cli({"amplify", "--config", cfg, "--samples", "11", "--I0", "2", "--output",
                      path("z.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(kv(r.out, "regime"), "amplifying");
  const double g = std::stod(kv(r.out, "gain"));
  std::ifstream in(path("z.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "z,I");
  double z = 0, I = 0;
  char comma;
  int n = 0;
  while (in >> z >> comma >> I) {
    EXPECT_NEAR(I, 2 * std::exp(g * z), 1e-12 * I);
    ++n;
  }
  EXPECT_EQ(n, 11);
}

TEST_F(Cli, Validate) {
  const auto r = cli({"validate"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find(" passed, 0 failed"), std::string::npos);
}

TEST_F(Cli, Help) {
  const auto r = cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("spectrum"), std::string::npos);
}

TEST_F(Cli, ThreadBudget) {
  ::setenv("ROTOSPIN_THREADS", "1", 1);
  EXPECT_EQ(rotospin::cli::thread_budget(), 1);
  ::setenv("ROTOSPIN_THREADS", "junk", 1);
  EXPECT_GE(rotospin::cli::thread_budget(), 1);
  ::unsetenv("ROTOSPIN_THREADS");
}

TEST_F(Cli, BinaryExitCodes) {
  const std::string exe = ROTOSPIN_CLI_EXE;
  EXPECT_EQ(std::system((exe + " validate > /dev/null").c_str()), 0);
  const int s = std::system((exe + " point --omega 1 --Omega 1 --gamma 0.1 2> /dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(s), 3);
}

#endif
