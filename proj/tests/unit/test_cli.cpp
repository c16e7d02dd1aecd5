#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(HARMVMD_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "harmvmd_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, GeneratePreset) {
  const auto out = scratch("eq14.csv");
  ASSERT_EQ(run("generate --preset eq14 --out " + out.string()), 0);
  std::ifstream in(out);
  std::string line;
  std::size_t rows = 0;
  std::getline(in, line);
  EXPECT_EQ(line, "t,value");
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4096u);
}

TEST(Cli, BadInputExitsTwo) {
  EXPECT_EQ(run("detect --preset nope"), 2);
  EXPECT_EQ(run("detect --in /nonexistent.csv"), 2);
  EXPECT_EQ(run("generate --tone 1,5000,0"), 2);
  EXPECT_EQ(run("decompose --preset eq14"), 2);  // --k missing
  EXPECT_EQ(run("bogus"), 2);
  EXPECT_EQ(run("select-k --preset eq14 --k-min 5 --k-max 2"), 2);
}

TEST(Cli, SilentSignalExitsFour) {
  const auto in = scratch("zero.csv");
  {
    std::ofstream f(in);
    f << "t,value\n";
    for (int i = 0; i < 512; ++i) f << i / 512.0 << ",0\n";
  }
  EXPECT_EQ(run("detect --in " + in.string() + " --out " + scratch("zero.json").string()), 4);
  EXPECT_NE(slurp(scratch("zero.json")).find("\"schema\": 1"), std::string::npos);
}

TEST(Cli, DecomposeWritesModes) {
  const auto modes = scratch("modes.csv");
  const auto meta = scratch("meta.json");
  ASSERT_EQ(run("decompose --tone 1,50,0 --tone 0.5,250,0 --k 2 --modes-out " + modes.string() + " --out " +
                meta.string()),
            0);
  std::ifstream in(modes);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,imf1,imf2");
  const auto j = slurp(meta);
  EXPECT_NE(j.find("center_frequencies_hz"), std::string::npos);
  EXPECT_NE(j.find("\"converged\""), std::string::npos);
}

TEST(Cli, ThreadsDoNotChangeOutput) {
  const auto a = scratch("sk1.json");
  const auto b = scratch("sk2.json");
  ASSERT_EQ(run("select-k --tone 1,50,0 --tone 0.3,150,0 --n 2048 --k-max 4 --out " + a.string()), 0);
  ASSERT_EQ(run("--threads 3 select-k --tone 1,50,0 --tone 0.3,150,0 --n 2048 --k-max 4 --out " + b.string()), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  const std::string env = "HARMVMD_THREADS=2 ";
  const std::string cmd = env + HARMVMD_CLI_PATH + " select-k --tone 1,50,0 --tone 0.3,150,0 --n 2048 --k-max 4 --out " +
                          scratch("sk3.json").string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(slurp(a), slurp(scratch("sk3.json")));
}

TEST(Cli, FbdCurve) {
  const auto curve = scratch("curve.csv");
  ASSERT_EQ(run("fbd --tone 1,50,0 --curve-out " + curve.string()), 0);
  std::ifstream in(curve);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "eps,count");
}
