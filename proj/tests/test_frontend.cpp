#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "qti/fixtures.hpp"
#include "qti/frontend/compile.hpp"
#include "qti/frontend/json_io.hpp"
#include "qti/frontend/program.hpp"
#include "qti/products.hpp"
#include "qti/random.hpp"
#include "qti/solvers.hpp"

using namespace qti;
using namespace qti::program;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(QTI_FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AnyModel load(const std::string& name) { return parse_model_text(slurp(name)); }

std::string parse_error(const std::string& src) {
  try {
    parse_program(src);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

std::string compile_error(const std::string& src, ProbMode mode = ProbMode::Terminating) {
  try {
    auto p = parse_program(src);
    if (p.mode == Mode::Weighted)
      compile_weighted(p);
    else
      compile_probabilistic(p, mode);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const char* kCoin = R"(
program coin probabilistic;
alphabet h, t;
var x : [0..1] = 0;
label(x) { (0): h; default: t; }
while (x == 0) { {x := 1} [1/2] {skip} }
)";

}  // namespace

TEST(Parser, MinimalProgram) {
  auto p = parse_program(kCoin);
  EXPECT_EQ(p.name, "coin");
  EXPECT_EQ(p.mode, Mode::Probabilistic);
  ASSERT_EQ(p.vars.size(), 1u);
  EXPECT_EQ(p.segments.size(), 1u);
}

TEST(Parser, ReportsPositions) {
  auto msg = parse_error("program p probabilistic;\nalphabet a;\nvar x : [0..1] = 3;\n");
  EXPECT_NE(msg.find("initial value out of range for 'x'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("3:"), std::string::npos) << msg;
}

TEST(Parser, RejectsBadProbabilities) {
  std::string base = "program p probabilistic; alphabet a; var x : [0..1] = 0; label(x) { default: a; }\n";
  EXPECT_NE(parse_error(base + "while (x == 0) { {x := 1} [3/2] {skip} }").find("probability out of range"),
            std::string::npos);
  EXPECT_NE(parse_error(base + "while (x == 0) { {x := 1} [2/3] {skip} [2/3] {skip} }").find("sum to 4/3"),
            std::string::npos);
  EXPECT_NE(parse_error(base + "while (x == 0) { {x := 1} [] {skip} }").find("mode conflict"), std::string::npos);
  EXPECT_NE(parse_error(base + "while (x == 0) { {x := 1} [1/0] {skip} }").find("zero denominator"),
            std::string::npos);
}

TEST(Parser, RejectsModeConflicts) {
  EXPECT_NE(parse_error("program p weighted; alphabet a; var x : [0..1] = 0; label(x) { default: a; }"
                        " while (x == 0) { x := 1; emit a; }")
                .find("mode conflict"),
            std::string::npos);
  EXPECT_NE(parse_error("program p probabilistic; alphabet a; var x : [0..1] = 0;"
                        " while (x == 0) { x := 1; }")
                .find("need a label table"),
            std::string::npos);
  EXPECT_NE(parse_error("program p probabilistic; alphabet a; var x : [0..1] = 0; label(x) { default: a; }"
                        " while (x == 0) { if (x == 0) { tick; } }")
                .find("'tick' is only allowed"),
            std::string::npos);
}

TEST(Parser, RejectsUnknownNames) {
  std::string base = "program p probabilistic; alphabet a; var x : [0..1] = 0; label(x) { default: a; }\n";
  EXPECT_NE(parse_error(base + "while (x == 0) { y := 1 }").find("unknown variable 'y'"), std::string::npos);
  EXPECT_NE(parse_error("program p probabilistic; alphabet a; var x : [0..1] = 0; label(x) { default: b; }"
                        " while (x == 0) { x := 1 }")
                .find("unknown symbol 'b'"),
            std::string::npos);
}

TEST(Compiler, CoinFlip) {
  auto rep = compile_probabilistic(parse_program(kCoin), ProbMode::Terminating);
  const auto& c = std::get<LabeledMc>(rep.model);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_TRUE(validate(c).empty());
  // x = 1 fails the guard, so that branch terminates.
  EXPECT_EQ(c.step(0).target, Rational(1, 2));
}

TEST(Compiler, RuntimeErrors) {
  std::string base = "program p probabilistic; alphabet a; var x : [0..1] = 0; label(x) { default: a; }\n";
  EXPECT_NE(compile_error(base + "while (x == 0) { x := x + 2 }").find("out of range"), std::string::npos);
  EXPECT_NE(compile_error(base + "while (x == 0) { abort }").find("abort"), std::string::npos);
  EXPECT_NE(compile_error(base + "while (x == 0) { x := 1 }", ProbMode::Reactive).find("program halts"),
            std::string::npos);
  EXPECT_NE(compile_error("program p weighted; alphabet a; var x : [0..1] = 0; while (x == 0) { x := 1 }")
                .find("emits no label"),
            std::string::npos);
  EXPECT_NE(compile_error(base + "while (x == 1) { skip }").find("violates the loop guard"), std::string::npos);
}

TEST(Compiler, TickSplitsTheBody) {
  auto p = parse_program(
      "program p probabilistic; alphabet a, b; var x : [0..2] = 0; label(x) { (0): a; default: b; }"
      " while (x < 2) { x := x + 1; tick; skip }");
  ASSERT_EQ(p.segments.size(), 2u);
  auto rep = compile_probabilistic(p, ProbMode::Terminating);
  const auto& c = std::get<LabeledMc>(rep.model);
  // 0@0 -> 1@1 -> 1@0 -> 2@1, and the guard fails after the second segment.
  EXPECT_EQ(c.size(), 4u);
  for (const auto& s : c.states) EXPECT_NE(s.find('@'), std::string::npos) << s;
}

TEST(Compiler, GridworldHasFourteenStates) {
  auto rep = compile_probabilistic(parse_program(slurp("fig2-gridworld.qtp")), ProbMode::Terminating);
  const auto& c = std::get<LabeledMc>(rep.model);
  EXPECT_EQ(c.size(), 14u);
  EXPECT_EQ(rep.state_count, 15u);
  EXPECT_TRUE(validate(c).empty());
  auto d = std::get<Dfa>(load("fig2-dfa.json"));
  auto p = product_mc_dfa(c, d);
  EXPECT_EQ(solve_reach_prob(p).values[p.initial], Rational(256, 625));
}

TEST(Compiler, ReactiveGridNeverTerminates) {
  auto rep = compile_probabilistic(parse_program(slurp("fig3-reactive.qtp")), ProbMode::Reactive);
  const auto& c = std::get<NonTerminatingMc>(rep.model);
  EXPECT_EQ(c.size(), 24u);
  EXPECT_TRUE(validate(c).empty());
}

TEST(Compiler, TravelMatchesTheHandBuiltSystem) {
  auto rep = compile_weighted(parse_program(slurp("travel.qtp")));
  EXPECT_EQ(std::get<WeightedTs>(rep.model), fixtures::travel_wts());
}

// Property: keeping unreachable valuations never changes the value at the initial state.
TEST(CompilerProperty, RestrictionPreservesTheValue) {
  // Odd values of x are never reached from 0.
  auto prog = parse_program(R"(
program hop probabilistic;
alphabet a, b;
var x : [0..7] = 0;
label(x) { (0..2): a; default: b; }
while (x < 6) { {x := x + 2} [2/3] {x := max(x - 2, 0)} }
)");
  auto a = std::get<LabeledMc>(compile_probabilistic(prog, ProbMode::Terminating).model);
  auto b = std::get<LabeledMc>(compile_probabilistic(prog, ProbMode::Terminating, {.restrict_reachable = false}).model);
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(b.size(), 6u);
  Rng rng(63);
  for (int trial = 0; trial < 30; ++trial) {
    Dfa d = random_dfa(rng, rng.uniform(1, 4), a.alphabet);
    auto pa = product_mc_dfa(a, d), pb = product_mc_dfa(b, d);
    ASSERT_EQ(solve_reach_prob(pa).values[pa.initial], solve_reach_prob(pb).values[pb.initial]);
  }
}

// Property: corrupting a valid program yields either a program or a ParseError,
// never a crash or another exception type.
TEST(ParserProperty, CorruptedInputFailsCleanly) {
  const std::string alphabet = "{}[]();:=<-!&|+-*/0123456789 ,.xyijab\n\"#";
  Rng rng(61);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string s = trial % 2 ? slurp("fig2-gridworld.qtp") : slurp("travel.qtp");
    const std::size_t edits = rng.uniform(1, 4);
    for (std::size_t e = 0; e < edits; ++e) {
      const std::size_t at = rng.index(s.size());
      switch (rng.uniform(0, 2)) {
        case 0: s.erase(at, rng.uniform(1, 8)); break;
        case 1: s.insert(at, 1, alphabet[rng.index(alphabet.size())]); break;
        default: s[at] = alphabet[rng.index(alphabet.size())];
      }
    }
    try {
      auto p = parse_program(s);
      if (p.mode == Mode::Weighted)
        compile_weighted(p);
      else
        compile_probabilistic(p, ProbMode::Terminating);
    } catch (const Error&) {
    }
  }
}

TEST(Json, FixturesRoundTrip) {
  for (const char* name : {"fig4-mc.json", "fig4-mrm.json", "fig2-dfa.json", "fig3-dfa.json", "fig5-nfa.json",
                           "travel-wts.json", "travel-wmm.json", "terrain-cost-rm.json"}) {
    AnyModel m = load(name);
    Json j = emit_model(m);
    EXPECT_EQ(parse_model(j), m) << name;
    EXPECT_EQ(emit_model(parse_model_text(j.dump(2))), j) << name;
  }
}

TEST(Json, FixturesMatchTheHandBuiltModels) {
  EXPECT_EQ(std::get<LabeledMc>(load("fig4-mc.json")), fixtures::robot_mc());
  EXPECT_EQ(std::get<MarkovRewardModel>(load("fig4-mrm.json")), fixtures::robot_unit_reward());
  EXPECT_EQ(std::get<Dfa>(load("fig2-dfa.json")), fixtures::recharge_dfa());
  EXPECT_EQ(std::get<WeightedTs>(load("travel-wts.json")), fixtures::travel_wts());
  EXPECT_EQ(std::get<WeightedMealy>(load("travel-wmm.json")), fixtures::plane_penalty_wmm());
}

TEST(Json, ErrorsAreParseErrors) {
  EXPECT_THROW(parse_model_text(R"({"kind": "petri-net"})"), ParseError);
  EXPECT_THROW(parse_model_text("{"), ParseError);
  EXPECT_THROW(parse_model_text(R"({"kind": "mc", "alphabet": ["a"], "states": ["x"]})"), ParseError);
}

// Property: random models survive an emit/parse round trip unchanged.
TEST(JsonProperty, RandomModelsRoundTrip) {
  Rng rng(62);
  for (int trial = 0; trial < 100; ++trial) {
    Alphabet a = small_alphabet(rng.uniform(1, 3));
    const std::size_t n = rng.uniform(1, 5);
    std::vector<AnyModel> models = {random_mc(rng, n, a),  random_mrm(rng, n, a), random_ntmc(rng, n, a),
                                    random_wts(rng, n, a), random_dfa(rng, n, a), random_nfa(rng, n, a),
                                    random_wmm(rng, n, a), random_rm(rng, n, a, 3)};
    for (const auto& m : models) ASSERT_EQ(parse_model(emit_model(m)), m) << model_kind(m);
  }
}
