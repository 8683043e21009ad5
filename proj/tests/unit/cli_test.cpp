#include <gtest/gtest.h>

#include "support/golden.hpp"

namespace perfclose {
namespace {

namespace fs = std::filesystem;

class GoldenCli : public ::testing::TestWithParam<std::string> {};

TEST_P(GoldenCli, Matches) {
  golden::Outcome o = golden::run_case(GetParam());
  EXPECT_TRUE(o.pass) << o.detail;
}

INSTANTIATE_TEST_SUITE_P(Cases, GoldenCli, ::testing::ValuesIn(golden::case_names()),
                         [](const auto& info) { return info.param; });

TEST(Cli, JsonShape) {
  golden::Outcome o = golden::json_shape();
  EXPECT_TRUE(o.pass) << o.detail;
}

TEST(Cli, WorkspaceRoundTrip) {
  golden::Outcome o = golden::workspace_round_trip(fs::temp_directory_path() / "perfclose_cli_test");
  EXPECT_TRUE(o.pass) << o.detail;
}

TEST(Cli, WorkspaceModulusConflict) {
  fs::path dir = fs::temp_directory_path() / "perfclose_cli_conflict";
  fs::create_directories(dir);
  fs::path ws = dir / "w.json";
  fs::remove(ws);
  std::ostringstream out, err;
  ASSERT_EQ(run_cli({"--p", "3", "--workspace", ws.string(), "elem", "def", "a", "t"}, out, err), kExitOk);
  EXPECT_EQ(run_cli({"--p", "2", "--workspace", ws.string(), "eval", "a"}, out, err), kExitUsage);
  std::ostringstream ok;
  EXPECT_EQ(run_cli({"--workspace", ws.string(), "eval", "a*rt(t,1)"}, ok, err), kExitOk);
  EXPECT_EQ(ok.str(), "rt(t,1)^4\nlevel 1\n");
}

TEST(Cli, VerifyFailureExitCode) {
  std::ostringstream out, err;
  EXPECT_EQ(run_cli({"--p", "2", "verify", "vn", "--lambda", "t^2"}, out, err), kExitUsage);
  EXPECT_EQ(run_cli({"--p", "5", "verify", "all"}, out, err), kExitOk);
  EXPECT_NE(out.str().find("PASS"), std::string::npos);
  EXPECT_EQ(out.str().find("FAIL"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
  std::ostringstream out, err;
  EXPECT_EQ(run_cli({"--help"}, out, err), kExitOk);
  EXPECT_NE(out.str().find("verify"), std::string::npos);
}

}  // namespace
}  // namespace perfclose
