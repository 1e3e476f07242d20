#include <gtest/gtest.h>

#include "qti/fixtures.hpp"
#include "qti/oracle.hpp"
#include "qti/products.hpp"
#include "qti/random.hpp"
#include "qti/solvers.hpp"
#include "support.hpp"

using namespace qti;

TEST(ReachProb, RobotIsFourTwentyFifths) {
  auto p = product_mc_dfa(fixtures::robot_mc(), fixtures::recharge_dfa());
  auto r = solve_reach_prob(p);
  EXPECT_EQ(r.method, Method::ExactLinear);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.values[p.initial], Rational(4, 25));
  EXPECT_EQ(solve_reach_prob(p, SolveMode::iterate(4)).values[p.initial], Rational(4, 25));
  EXPECT_EQ(solve_reach_prob(p, SolveMode::iterate(2)).values[p.initial], Rational(0));
  EXPECT_THROW(solve_reach_prob(p, SolveMode::bellman()), ConfigError);
}

TEST(PartialExpectedReward, RobotUnitReward) {
  auto p = product_mrm_dfa(fixtures::robot_unit_reward(), fixtures::recharge_dfa());
  auto v = solve_partial_expected_reward(p).values[p.initial];
  EXPECT_EQ(v.prob, Rational(4, 25));
  EXPECT_EQ(v.reward, ExtRational(Rational(12, 25)));
}

TEST(Tropical, TravelFixtures) {
  auto p = product_wts_nfa(fixtures::travel_wts(), fixtures::last_leg_train_nfa());
  EXPECT_EQ(solve_tropical(p).values[p.initial], ExtNat(4));
  auto q = product_wts_wmm(fixtures::travel_wts(), fixtures::plane_penalty_wmm());
  EXPECT_EQ(solve_tropical(q).values[q.initial], ExtNat(5));
  EXPECT_THROW(solve_tropical(q, SolveMode::exact()), ConfigError);
}

// Property: the exact solver agrees with plain elimination, and Kleene iterates climb
// monotonically towards it from below.
TEST(ReachProbProperty, ExactMatchesEliminationAndBoundsIterates) {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    Alphabet a = small_alphabet(rng.uniform(1, 3));
    auto p = product_mc_dfa(random_mc(rng, rng.uniform(1, 6), a), random_dfa(rng, rng.uniform(1, 4), a),
                            {.reachable_only = false});
    auto exact = solve_reach_prob(p).values;
    ASSERT_EQ(exact, ref::solve_by_elimination(p));
    ValueVector<Rational> prev(p.size(), Rational(0));
    for (std::size_t k = 1; k <= 12; ++k) {
      auto it = solve_reach_prob(p, SolveMode::iterate(k)).values;
      for (std::size_t s = 0; s < p.size(); ++s) {
        ASSERT_LE(prev[s], it[s]);
        ASSERT_LE(it[s], exact[s]);
      }
      prev = std::move(it);
    }
  }
}

// Property: k Kleene steps on the product equal the depth-k oracle query, pair by pair.
TEST(ReachProbProperty, IteratesEqualDepthBoundedOracle) {
  Rng rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    Alphabet a = small_alphabet(rng.uniform(1, 3));
    LabeledMc c = random_mc(rng, rng.uniform(1, 5), a);
    Dfa d = random_dfa(rng, rng.uniform(1, 3), a);
    auto p = product_mc_dfa(c, d, {.reachable_only = false});
    const std::size_t k = rng.uniform(0, 6);
    auto it = solve_reach_prob(p, SolveMode::iterate(k)).values;
    auto nu = mc_semantics_all(c, k);
    auto l = dfa_language_all(d, k);
    for (std::size_t x = 0; x < c.size(); ++x)
      for (std::size_t y = 0; y < d.size(); ++y) ASSERT_EQ(it[p.find(x, y)], query_prob(nu[x], l[y]));
  }
}

TEST(ReachProbProperty, EpsilonModeStaysBelowExact) {
  Rng rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    Alphabet a = small_alphabet(rng.uniform(1, 3));
    auto p = product_mc_dfa(random_mc(rng, rng.uniform(1, 6), a), random_dfa(rng, rng.uniform(1, 4), a));
    auto exact = solve_reach_prob(p).values;
    auto r = solve_reach_prob(p, SolveMode::approximate(Rational(1, 1000000)));
    ASSERT_TRUE(r.converged);
    auto approx = approximate_reach_prob(p, 1e-9, 100000);
    for (std::size_t s = 0; s < p.size(); ++s) {
      ASSERT_LE(r.values[s], exact[s]);
      ASSERT_NEAR(approx[s], exact[s].to_double(), 1e-6);
    }
  }
}

TEST(RewardProperty, IteratesEqualDepthBoundedOracle) {
  Rng rng(44);
  for (int trial = 0; trial < 40; ++trial) {
    Alphabet a = small_alphabet(rng.uniform(1, 3));
    MarkovRewardModel c = random_mrm(rng, rng.uniform(1, 5), a);
    Dfa d = random_dfa(rng, rng.uniform(1, 3), a);
    auto p = product_mrm_dfa(c, d, {.reachable_only = false});
    const std::size_t k = rng.uniform(0, 6);
    auto it = solve_partial_expected_reward(p, SolveMode::iterate(k)).values;
    auto exact = solve_partial_expected_reward(p).values;
    auto nu = mrm_semantics_all(c, k);
    auto l = dfa_language_all(d, k);
    for (std::size_t x = 0; x < c.size(); ++x)
      for (std::size_t y = 0; y < d.size(); ++y) {
        const std::size_t s = p.find(x, y);
        ASSERT_EQ(it[s], query_reward(nu[x], l[y]));
        ASSERT_LE(it[s].prob, exact[s].prob);
        ASSERT_LE(it[s].reward, exact[s].reward);
      }
  }
}

// Property: Bellman iteration agrees with Dijkstra on the product graph and with the
// oracle at a depth long enough for every simple path.
TEST(TropicalProperty, MatchesDijkstraAndOracle) {
  Rng rng(45);
  for (int trial = 0; trial < 60; ++trial) {
    Alphabet a = small_alphabet(rng.uniform(1, 3));
    WeightedTs c = random_wts(rng, rng.uniform(1, 4), a);
    Nfa d = random_nfa(rng, rng.uniform(1, 3), a);
    auto p = product_wts_nfa(c, d, {.reachable_only = false});
    auto v = solve_tropical(p).values;
    auto dj = ref::dijkstra_to_accept(p);
    auto t = wts_semantics_all(c, p.size());
    auto l = nfa_language_all(d, p.size());
    for (std::size_t x = 0; x < c.size(); ++x)
      for (std::size_t y = 0; y < d.size(); ++y) {
        const std::size_t s = p.find(x, y);
        ASSERT_EQ(v[s], dj[s] ? ExtNat(*dj[s]) : ExtNat::infinity());
        ASSERT_EQ(v[s], query_tropical(t[x], l[y]));
      }
  }
}

TEST(TropicalProperty, WmmMatchesDijkstra) {
  Rng rng(46);
  for (int trial = 0; trial < 60; ++trial) {
    Alphabet a = small_alphabet(rng.uniform(1, 3));
    auto p = product_wts_wmm(random_wts(rng, rng.uniform(1, 4), a), random_wmm(rng, rng.uniform(1, 3), a));
    auto v = solve_tropical(p).values;
    auto dj = ref::dijkstra_to_accept(p);
    for (std::size_t s = 0; s < p.size(); ++s) ASSERT_EQ(v[s], dj[s] ? ExtNat(*dj[s]) : ExtNat::infinity());
  }
}
