#include <gtest/gtest.h>

#include "qti/fixtures.hpp"
#include "qti/lawcheck.hpp"
#include "qti/random.hpp"

using namespace qti;

TEST(Pairings, NamesRoundTrip) {
  for (Pairing p : kAllPairings) EXPECT_EQ(parse_pairing(pairing_name(p)), p);
  EXPECT_THROW(parse_pairing("mc-nfa"), ConfigError);
}

TEST(StepEquality, FixturesPass) {
  for (Mutation m : kAllMutations) {
    auto r = check_step_equality(mutation_fixture(m), 8);
    EXPECT_TRUE(r.passed) << pairing_name(mutation_pairing(m));
    EXPECT_GT(r.comparisons, 0u);
  }
}

class RandomStepEquality : public ::testing::TestWithParam<Pairing> {};

TEST_P(RandomStepEquality, TwentyInstances) {
  auto r = check_random_step_equality(GetParam(), 5, 20, 8);
  EXPECT_TRUE(r.passed) << (r.counterexample ? r.counterexample->instance + " " + r.counterexample->state : "");
}

INSTANTIATE_TEST_SUITE_P(AllPairings, RandomStepEquality, ::testing::ValuesIn(kAllPairings),
                         [](const auto& info) {
                           std::string s(pairing_name(info.param));
                           std::erase(s, '-');
                           return s;
                         });

TEST(Diagram, HoldsForEveryPairingButNtmc) {
  for (Pairing p : kAllPairings) {
    if (p == Pairing::NtmcDfa) {
      EXPECT_THROW(check_diagram(p, 10, 1), UnsupportedCheck);
      continue;
    }
    EXPECT_TRUE(check_diagram(p, 60, 3).passed) << pairing_name(p);
  }
}

// Each deliberate defect is caught on its fixture with a concrete counterexample.
TEST(Mutations, AreDetected) {
  for (Mutation m : kAllMutations) {
    auto r = run_mutation(m, 6);
    EXPECT_FALSE(r.passed) << mutation_name(m);
    ASSERT_TRUE(r.counterexample.has_value());
    EXPECT_NE(r.counterexample->lhs, r.counterexample->rhs);
  }
}

TEST(Mutations, AreDetectedOnRandomInstances) {
  for (Mutation m : kAllMutations) {
    auto r = check_random_step_equality(mutation_pairing(m), 9, 30, 8, m);
    EXPECT_FALSE(r.passed) << mutation_name(m);
  }
}

TEST(Composite, CostBoundedAndInduced) {
  Rng rng(51);
  for (int trial = 0; trial < 15; ++trial) {
    const std::uint64_t m = rng.uniform(1, 3);
    LabeledMc c = random_mc(rng, rng.uniform(1, 4), cost_alphabet(m));
    EXPECT_TRUE(check_cost_bounded(c, rng.uniform(1, 5), 8).passed);
    Alphabet a = small_alphabet(rng.uniform(1, 3));
    LabeledMc c2 = random_mc(rng, rng.uniform(1, 4), a);
    RewardMachine rm = random_rm(rng, rng.uniform(1, 3), a, rng.uniform(1, 3));
    EXPECT_TRUE(check_cost_induced(c2, rm, rng.uniform(1, 5), 8).passed);
  }
  EXPECT_THROW(check_cost_bounded(fixtures::robot_mc(), 3, 4), AlphabetMismatch);
}

TEST(Composite, TranslationPreservesAcceptance) {
  EXPECT_TRUE(check_translation(fixtures::robot_mc(), fixtures::recharge_dfa()).passed);
  Rng rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    Alphabet a = small_alphabet(rng.uniform(1, 3));
    EXPECT_TRUE(check_translation(random_mc(rng, rng.uniform(1, 5), a), random_dfa(rng, rng.uniform(1, 3), a)).passed);
  }
}

TEST(RandomInstance, IsDeterministicInTheSeed) {
  for (Pairing p : kAllPairings) {
    Rng a(77), b(77);
    auto i1 = random_instance(p, a), i2 = random_instance(p, b);
    EXPECT_EQ(i1.system, i2.system);
    EXPECT_EQ(i1.requirement, i2.requirement);
  }
}
