// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any line fails.
// Tolerances: every comparison is exact rational or extended-natural equality, and the
// only limits are the wall-clock budgets in kCriteria.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"
#include "qti/fixtures.hpp"
#include "qti/frontend/compile.hpp"
#include "qti/frontend/json_io.hpp"
#include "qti/frontend/program.hpp"
#include "qti/lawcheck.hpp"
#include "qti/oracle.hpp"
#include "qti/products.hpp"
#include "qti/random.hpp"
#include "qti/solvers.hpp"
#include "support.hpp"

using namespace qti;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
  std::vector<std::string> notes;  // extra lines printed under the verdict
};

Outcome fail(std::string why) { return {false, std::move(why), {}}; }

std::string run_cli(const std::string& args, int& code) {
  const std::string cmd = std::string(QTI_CLI) + " --fixtures " + QTI_FIXTURE_DIR + " " + args + " 2>&1";
  std::string out;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) {
    code = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
  const int status = pclose(f);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(QTI_FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

// 1. Robot value: CLI inference and CLI oracle both print 4/25.
Outcome robot_value() {
  int c1 = 0, c2 = 0;
  auto infer = trim(run_cli("infer fig4-mc fig2-dfa mc-dfa --mode exact", c1));
  auto oracle = trim(run_cli("oracle fig4-mc fig2-dfa mc-dfa --depth 4", c2));
  if (c1 != 0 || infer != "4/25") return fail("infer printed '" + infer + "'");
  if (c2 != 0 || oracle != "4/25") return fail("oracle printed '" + oracle + "'");
  return {true, "infer 4/25, oracle@4 4/25", {}};
}

// 2. Trace distribution of the robot chain at depth 3.
Outcome robot_traces() {
  int code = 0;
  auto out = run_cli("oracle fig4-mc --depth 3", code);
  const std::string want = "sand.sand.recharge 4/25\nsand.sand.volcano 1/25\nsand.lake.recharge 4/5\n";
  if (code != 0 || out != want) return fail("got:\n" + out);
  return {true, "3 traces, masses 4/5, 4/25, 1/25", {}};
}

// 3. Product edges of the robot chain with the recharge DFA.
Outcome product_edges() {
  int code = 0;
  auto out = run_cli("product fig4-mc fig2-dfa mc-dfa", code);
  if (code != 0) return fail(out);
  auto j = nlohmann::json::parse(out);
  const auto& t = j.at("trans");
  struct Edge {
    const char *from, *to, *p;
  };
  for (const Edge& e : {Edge{"x0|y0", "x1|y0", "4/5"}, Edge{"x1|y0", "x3|y2", "1"}, Edge{"x3|y2", "#reject", "1"},
                        Edge{"x3|y0", "#accept", "1"}}) {
    if (!t.contains(e.from) || !t[e.from].contains(e.to) || t[e.from][e.to] != e.p)
      return fail(std::string("missing edge ") + e.from + " -> " + e.to + " @ " + e.p);
  }
  return {true, "4 edges present", {}};
}

// 4. Step-indexed equality on 100 random instances per pairing.
Outcome step_equality() {
  std::size_t comparisons = 0;
  for (Pairing p : kAllPairings) {
    auto r = check_random_step_equality(p, 2024, 100, 10);
    comparisons += r.comparisons;
    if (!r.passed) {
      const auto& c = *r.counterexample;
      return fail(std::string(pairing_name(p)) + ": " + c.instance + ", " + c.state + ", step " +
                  std::to_string(c.step) + ": " + c.lhs + " vs " + c.rhs);
    }
  }
  return {true, "6 x 100 instances, " + std::to_string(comparisons) + " comparisons", {}};
}

// 5. Diagram commutation with 200 samples; ntmc-dfa must be refused.
Outcome diagram() {
  for (Pairing p : kAllPairings) {
    if (p == Pairing::NtmcDfa) {
      try {
        check_diagram(p, 200, 5);
        return fail("ntmc-dfa diagram check was not refused");
      } catch (const UnsupportedCheck&) {
      }
      continue;
    }
    auto r = check_diagram(p, 200, 5);
    if (!r.passed) return fail(std::string(pairing_name(p)) + " diagram fails at " + r.counterexample->instance);
  }
  return {true, "5 pairings x 200 samples, ntmc-dfa refused", {}};
}

// 6. Every shipped mutation is caught at kmax 4.
Outcome mutations() {
  for (Mutation m : kAllMutations) {
    auto r = run_mutation(m, 4);
    if (r.passed || !r.counterexample) return fail(std::string(mutation_name(m)) + " not detected");
  }
  for (Mutation m : kAllMutations)
    if (!check_step_equality(mutation_fixture(m), 4).passed)
      return fail("unmutated fixture fails for " + std::string(mutation_name(m)));
  return {true, "5 of 5 detected, unmutated fixtures pass", {}};
}

// 7. Cost-bounded and requirement-induced costs, 25 instances each.
Outcome costs() {
  Rng rng(7007);
  for (int i = 0; i < 25; ++i) {
    const std::uint64_t m = rng.uniform(1, 3), n = rng.uniform(1, 6);
    LabeledMc c = random_mc(rng, rng.uniform(1, 6), cost_alphabet(m));
    auto r = check_cost_bounded(c, n, 10, "cost-bounded #" + std::to_string(i));
    if (!r.passed) return fail(r.counterexample->instance + " at " + r.counterexample->state);
  }
  for (int i = 0; i < 25; ++i) {
    Alphabet a = small_alphabet(rng.uniform(1, 3));
    LabeledMc c = random_mc(rng, rng.uniform(1, 6), a);
    RewardMachine rm = random_rm(rng, rng.uniform(1, 4), a, rng.uniform(1, 3));
    auto r = check_cost_induced(c, rm, rng.uniform(1, 6), 10, "cost-induced #" + std::to_string(i));
    if (!r.passed) return fail(r.counterexample->instance + " at " + r.counterexample->state);
  }
  return {true, "25 + 25 instances, N <= 6, M <= 3", {}};
}

// 8. Tropical values: Bellman vs Dijkstra vs oracle at depth |product states|.
Outcome tropical() {
  Rng rng(8008);
  auto check = [](const ProductWts& p, auto&& oracle_at) -> std::optional<std::string> {
    auto v = solve_tropical(p).values;
    auto dj = ref::dijkstra_to_accept(p);
    for (std::size_t s = 0; s < p.size(); ++s) {
      const ExtNat d = dj[s] ? ExtNat(*dj[s]) : ExtNat::infinity();
      const ExtNat o = oracle_at(p.pairs[s].first, p.pairs[s].second);
      if (!(v[s] == d) || !(v[s] == o))
        return p.names[s] + ": bellman " + v[s].str() + ", dijkstra " + d.str() + ", oracle " + o.str();
    }
    return std::nullopt;
  };
  for (int i = 0; i < 50; ++i) {
    Alphabet a = small_alphabet(rng.uniform(1, 3));
    WeightedTs c = random_wts(rng, rng.uniform(1, 4), a);
    Nfa d = random_nfa(rng, rng.uniform(1, 8 / c.size()), a);
    auto p = product_wts_nfa(c, d, {.reachable_only = false});
    auto t = wts_semantics_all(c, p.size());
    auto l = nfa_language_all(d, p.size());
    if (auto e = check(p, [&](std::size_t x, std::size_t y) { return query_tropical(t[x], l[y]); }))
      return fail("wts-nfa #" + std::to_string(i) + " " + *e);
  }
  for (int i = 0; i < 50; ++i) {
    Alphabet a = small_alphabet(rng.uniform(1, 3));
    WeightedTs c = random_wts(rng, rng.uniform(1, 4), a);
    WeightedMealy d = random_wmm(rng, rng.uniform(1, 8 / c.size()), a);
    auto p = product_wts_wmm(c, d, {.reachable_only = false});
    auto t = wts_semantics_all(c, p.size());
    auto l = wmm_semantics_all(d, p.size());
    if (auto e = check(p, [&](std::size_t x, std::size_t y) { return query_wmm(t[x], l[y]); }))
      return fail("wts-wmm #" + std::to_string(i) + " " + *e);
  }
  return {true, "50 wts-nfa + 50 wts-wmm, <= 8 product states", {}};
}

// 9. Terminating vs translated never-terminating pipeline.
Outcome translation() {
  auto r = check_translation(fixtures::robot_mc(), fixtures::recharge_dfa(), "robot / recharge");
  if (!r.passed) return fail("fixture: " + r.counterexample->state);
  Rng rng(9009);
  for (int i = 0; i < 20; ++i) {
    Alphabet a = small_alphabet(rng.uniform(1, 3));
    auto q = check_translation(random_mc(rng, rng.uniform(1, 6), a), random_dfa(rng, rng.uniform(1, 4), a),
                               "pair #" + std::to_string(i));
    if (!q.passed) return fail(q.counterexample->instance + " at " + q.counterexample->state);
  }
  return {true, "fixture + 20 random pairs", {}};
}

// 10. Partial expected reward: iterates vs oracle up to kmax 10, and the robot value.
Outcome reward() {
  const auto fig4 = query_reward(mrm_semantics(fixtures::robot_unit_reward(), 0, 3),
                                 dfa_language(fixtures::recharge_dfa(), 0, 3));
  const ProbReward want{Rational(4, 25), ExtRational(Rational(12, 25))};
  if (!(fig4 == want)) return fail("oracle gives " + fig4.str());
  auto fp = product_mrm_dfa(fixtures::robot_unit_reward(), fixtures::recharge_dfa());
  const auto solved = solve_partial_expected_reward(fp).values[fp.initial];
  if (!(solved == want)) return fail("solver gives " + solved.str());

  Rng rng(1010);
  for (int i = 0; i < 50; ++i) {
    Alphabet a = small_alphabet(rng.uniform(1, 3));
    MarkovRewardModel c = random_mrm(rng, rng.uniform(1, 6), a);
    Dfa d = random_dfa(rng, rng.uniform(1, 4), a);
    auto p = product_mrm_dfa(c, d, {.reachable_only = false});
    auto exact = solve_partial_expected_reward(p).values;
    auto phi = reward_transformer(p);
    auto u = bottom_vector<ProbReward>(p.size());
    auto sphi = mrm_transformer(c);
    std::vector<TraceRewardDist> s(c.size());
    auto lphi = dfa_transformer(d);
    std::vector<LangSet> l(d.size());
    for (std::size_t k = 0; k <= 10; ++k) {
      for (std::size_t x = 0; x < c.size(); ++x)
        for (std::size_t y = 0; y < d.size(); ++y) {
          const std::size_t z = p.find(x, y);
          const auto o = query_reward(s[x], l[y]);
          if (!(u[z] == o))
            return fail("instance " + std::to_string(i) + " " + p.names[z] + " step " + std::to_string(k) +
                        ": solver " + u[z].str() + ", oracle " + o.str());
          if (!(u[z].prob <= exact[z].prob) || !(u[z].reward <= exact[z].reward))
            return fail("instance " + std::to_string(i) + " " + p.names[z] + ": iterate exceeds exact value");
        }
      u = phi(u);
      s = sphi(s);
      l = lphi(l);
    }
  }
  return {true, "robot (4/25, 12/25); 50 instances, k <= 10", {}};
}

// 11. Gridworld: 14 states, exact inference equal to the oracle at depth 8.
Outcome gridworld() {
  auto rep = program::compile_probabilistic(program::parse_program(slurp("fig2-gridworld.qtp")),
                                            program::ProbMode::Terminating);
  const auto& c = std::get<LabeledMc>(rep.model);
  if (c.size() != 14) return fail(std::to_string(c.size()) + " states");
  const Dfa d = std::get<Dfa>(parse_model_text(slurp("fig2-dfa.json")));
  auto p = product_mc_dfa(c, d);
  const Rational exact = solve_reach_prob(p).values[p.initial];
  const Rational at8 = query_prob(mc_semantics(c, c.initial, 8), dfa_language(d, d.initial, 8));

  // Sound relation between the two routes at every depth: the depth-k oracle value
  // never exceeds the exact one, never decreases, and the gap is at most the mass of
  // runs still alive after k steps.
  bool sound = true;
  Rational prev(0);
  for (std::size_t k = 0; k <= 8 && sound; ++k) {
    const TraceDist nu = mc_semantics(c, c.initial, k);
    const Rational v = query_prob(nu, dfa_language(d, d.initial, k));
    sound = prev <= v && v <= exact && exact - v <= Rational(1) - nu.total();
    prev = v;
  }
  Outcome o;
  o.passed = exact == at8;
  o.detail = "14 states; exact " + exact.str() + " (" + exact.decimal(6) + "), oracle@8 " + at8.str() + " (" +
             at8.decimal(6) + ")";
  o.notes.push_back(std::string("depth-indexed bound oracle@k <= exact <= oracle@k + unterminated mass, k <= 8: ") +
                    (sound ? "holds" : "VIOLATED"));
  if (!o.passed)
    o.notes.push_back(
        "moves clamped at the border are self-loops, so terminating runs exist at every length and no finite depth is exact");
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria = {
    {1, "robot acceptance value 4/25 (infer and oracle)", 1, robot_value},
    {2, "robot trace distribution at depth 3", 1, robot_traces},
    {3, "robot product edges", 1, product_edges},
    {4, "step-indexed equality, 6 pairings x 100 instances, kmax 10", 60, step_equality},
    {5, "diagram commutation, 200 samples", 30, diagram},
    {6, "mutations detected at kmax 4", 10, mutations},
    {7, "cost-bounded and requirement-induced costs", 30, costs},
    {8, "tropical values vs Dijkstra and oracle", 30, tropical},
    {9, "translation to never-terminating chains", 20, translation},
    {10, "partial expected reward", 30, reward},
    {11, "gridworld end to end", 5, gridworld},
};

}  // namespace

int main() {
  int failures = 0;
  for (const auto& c : kCriteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.passed && secs > c.budget_s) {
      o.passed = false;
      o.detail += "; over budget";
    }
    failures += !o.passed;
    char head[64];
    std::snprintf(head, sizeof head, "%s %2d  %6.2fs/%gs  ", o.passed ? "PASS" : "FAIL", c.id, secs, c.budget_s);
    std::cout << head << c.title << ": " << o.detail << "\n";
    for (const auto& n : o.notes) std::cout << "          " << n << "\n";
    std::cout.flush();
  }
  std::cout << (kCriteria.size() - failures) << "/" << kCriteria.size() << " criteria pass\n";
  return failures == 0 ? 0 : 1;
}
