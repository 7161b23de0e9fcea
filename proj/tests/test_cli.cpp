#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(GYROFORM_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "gyroform_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

const char* kPair = "[scenario]\nn = 2\nseed = 4\n[law]\nkind = rect\nr0 = 2\n[integration]\nT = 30\n";

}  // namespace

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("verify --suite nope").code, 1);
  EXPECT_EQ(run("simulate").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, ConfigErrorsExitOneWithMessage) {
  const Outcome missing = run("simulate /nonexistent/run.cfg");
  EXPECT_EQ(missing.code, 1);
  const fs::path bad = write_config("a4.cfg", "[scenario]\nn = 2\n[law]\nkind = rect\nmu = 0.1\n");
  const Outcome a4 = run("simulate " + bad.string());
  EXPECT_EQ(a4.code, 1);
  EXPECT_NE(a4.out.find("A4 violated"), std::string::npos);
  const fs::path typo = write_config("typo.cfg", "[scenario]\nn = 2\nseeed = 3\n[law]\nkind = rect\n");
  const Outcome t = run("simulate " + typo.string());
  EXPECT_EQ(t.code, 1);
  EXPECT_NE(t.out.find("line 3"), std::string::npos);
}

TEST(Cli, SimulateWritesOutputs) {
  const fs::path cfg = write_config("pair.cfg", kPair);
  const fs::path out = fs::temp_directory_path() / "gyroform_cli_test" / "sim_out";
  fs::remove_all(out);
  const Outcome o = run("simulate " + cfg.string() + " --out " + out.string());
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_TRUE(fs::exists(out / "trajectory.csv"));
  EXPECT_TRUE(fs::exists(out / "report.json"));
  EXPECT_TRUE(fs::exists(out / "trajectory.svg"));
  EXPECT_NE(o.out.find("terminalClass="), std::string::npos);
}

TEST(Cli, UnwritableOutputIsRuntimeFailure) {
  const fs::path cfg = write_config("pair2.cfg", kPair);
  EXPECT_EQ(run("simulate " + cfg.string() + " --out /proc/gyroform_no_such_dir").code, 2);
}

TEST(Cli, EquilibriaRow) {
  const Outcome o = run("equilibria --w 1 --a 1 --psi1 0.2 --theta 1.0");
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("Helical,0.5,"), std::string::npos) << o.out;
  const Outcome c = run("equilibria --a 0.5");
  EXPECT_NE(c.out.find("Circling,2,0,"), std::string::npos) << c.out;
  const Outcome s = run("equilibria --offset 1,2,3");
  EXPECT_NE(s.out.find("Rectilinear,n/a,n/a"), std::string::npos) << s.out;
  EXPECT_EQ(run("equilibria --a -1").code, 1);
}

TEST(Cli, VerifyAndSweep) {
  const Outcome v = run("verify --suite rect --samples 5000 --seed 3");
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_NE(v.out.find("0 failed"), std::string::npos);
  const fs::path grid = write_config("grid.cfg", std::string(kPair) + "[sweep]\nsign = 1,-1\nseeds = 1..2\n");
  const Outcome s = run("sweep " + grid.string());
  EXPECT_EQ(s.code, 0) << s.out;
  EXPECT_NE(s.out.find("cell,seed,alpha"), std::string::npos);
  EXPECT_NE(s.out.find("cells=4"), std::string::npos);
}
