#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// stderr is folded into the captured output.
Run qti(const std::string& args) {
  const std::string cmd = std::string(QTI_CLI) + " --fixtures " + QTI_FIXTURE_DIR + " " + args + " 2>&1";
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, InferOnFixtures) {
  auto r = qti("infer fig4-mc fig2-dfa mc-dfa");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "4/25\n");
  EXPECT_EQ(qti("infer fig4-mrm fig2-dfa mrm-dfa").out, "(4/25, 12/25)\n");
  EXPECT_EQ(qti("infer travel-wts fig5-nfa wts-nfa").out, "4\n");
  EXPECT_EQ(qti("infer travel-wts travel-wmm wts-wmm").out, "5\n");
}

TEST(Cli, InferCompilesPrograms) {
  auto r = qti("infer fig2-gridworld.qtp fig2-dfa mc-dfa --decimal 5");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out, "0.40960\n");
}

TEST(Cli, OracleAgreesWithInfer) {
  EXPECT_EQ(qti("oracle fig4-mc fig2-dfa mc-dfa --depth 4").out, "4/25\n");
}

TEST(Cli, JsonReport) {
  auto r = qti("--format json infer fig4-mc fig2-dfa mc-dfa");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["value"], "4/25");
  EXPECT_EQ(j["method"], "exact-linear");
  EXPECT_EQ(j["product_states"], 6);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(qti("validate fig4-mc").code, 0);
  auto missing = qti("validate no-such-model");
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.out.find("no such file"), std::string::npos);
  EXPECT_EQ(qti("infer fig4-mc fig2-dfa wts-nfa").code, 2);
  EXPECT_EQ(qti("").code, 2);
  EXPECT_EQ(qti("lawcheck ntmc-dfa --diagram").code, 2);
}

TEST(Cli, LawcheckPassesAndMutationFails) {
  auto ok = qti("lawcheck mc-dfa --seed 3 --instances 10 --kmax 6");
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_NE(ok.out.find("PASS"), std::string::npos);
  auto bad = qti("lawcheck mc-dfa --mutate mc-dfa-swap-flag --kmax 4");
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("counterexample"), std::string::npos);
}

TEST(Cli, CompileEmitsAModel) {
  auto r = qti("--format json compile travel.qtp");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["model"]["kind"], "wts");
}
