// qti: command-line driver for validation, compilation, products, inference, the
// bounded-depth oracle and the law checks.
//
// Exit codes: 0 success, 1 a check failed, 2 usage, input or validation error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qti/frontend/compile.hpp"
#include "qti/frontend/json_io.hpp"
#include "qti/lawcheck.hpp"

namespace fs = std::filesystem;
using namespace qti;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

/// Error whose message is a list of validation violations.
struct Invalid : std::runtime_error {
  std::vector<std::string> violations;
  Invalid(std::string what, std::vector<std::string> v) : std::runtime_error(std::move(what)), violations(std::move(v)) {}
};

struct Globals {
  std::string format = "text";
  int decimal = -1;
  std::string fixtures;
  bool complete = false;  // complete partial DFAs with a rejecting sink
  std::string output;
};

bool json_out(const Globals& g) { return g.format == "json"; }

void write(const Globals& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(g.output);
  if (!out) throw ConfigError("cannot write '" + g.output + "'");
  out << text << '\n';
}

fs::path fixture_dir(const Globals& g) {
  if (!g.fixtures.empty()) return g.fixtures;
  if (const char* env = std::getenv("QTI_FIXTURES")) return env;
#ifdef QTI_FIXTURE_DIR
  return QTI_FIXTURE_DIR;
#else
  return "fixtures";
#endif
}

/// A path as given, or a fixture name with or without extension.
fs::path resolve(const Globals& g, const std::string& arg) {
  if (fs::is_regular_file(arg)) return arg;
  const fs::path dir = fixture_dir(g);
  for (const char* ext : {"", ".json", ".qtp"})
    if (fs::is_regular_file(dir / (arg + ext))) return dir / (arg + ext);
  throw ConfigError("no such file or fixture: '" + arg + "'");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigError("cannot read '" + p.string() + "'");
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

enum class ProgramAs { Terminating, Reactive, Weighted };

/// Loads a JSON model, or compiles a .qtp program into the requested shape.
AnyModel load(const Globals& g, const std::string& arg, ProgramAs as = ProgramAs::Terminating) {
  const fs::path p = resolve(g, arg);
  AnyModel m;
  if (p.extension() == ".qtp") {
    auto prog = program::parse_program(slurp(p));
    auto rep = as == ProgramAs::Weighted
                   ? program::compile_weighted(prog)
                   : program::compile_probabilistic(
                         prog, as == ProgramAs::Reactive ? program::ProbMode::Reactive : program::ProbMode::Terminating);
    std::visit([&](auto& x) { m = std::move(x); }, rep.model);
  } else {
    m = parse_model_text(slurp(p));
  }
  if (g.complete)
    if (auto* d = std::get_if<Dfa>(&m)) *d = complete_dfa(*d);
  auto violations = std::visit([](const auto& x) { return validate(x); }, m);
  if (!violations.empty()) {
    std::vector<std::string> v;
    for (const auto& e : violations) v.push_back(e.message);
    throw Invalid("invalid model '" + arg + "'", v);
  }
  return m;
}

template <class M>
M load_as(const Globals& g, const std::string& arg, std::string_view role, ProgramAs as = ProgramAs::Terminating) {
  AnyModel m = load(g, arg, as);
  if (auto* x = std::get_if<M>(&m)) return std::move(*x);
  AnyModel want = M{};
  throw ConfigError(std::string(role) + " '" + arg + "' is a " + std::string(model_kind(m)) + ", expected " +
                    std::string(model_kind(want)));
}

ProgramAs program_shape(Pairing p) {
  switch (p) {
    case Pairing::NtmcDfa: return ProgramAs::Reactive;
    case Pairing::WtsNfa:
    case Pairing::WtsWmm: return ProgramAs::Weighted;
    default: return ProgramAs::Terminating;
  }
}

SolveMode solve_mode(const std::string& mode, std::size_t steps, const std::string& epsilon, Pairing p) {
  const bool weighted = p == Pairing::WtsNfa || p == Pairing::WtsWmm;
  if (mode.empty()) return weighted ? SolveMode::bellman() : SolveMode::exact();
  if (mode == "exact") {
    if (weighted) throw ConfigError("weighted pairings are solved with --mode bellman or iterate");
    return SolveMode::exact();
  }
  if (mode == "iterate") return SolveMode::iterate(steps);
  if (mode == "epsilon") {
    if (weighted) throw ConfigError("epsilon mode applies to probabilistic pairings");
    return SolveMode::approximate(Rational::parse(epsilon));
  }
  if (mode == "bellman") {
    if (!weighted) throw ConfigError("bellman mode applies to weighted pairings");
    return SolveMode::bellman();
  }
  throw ConfigError("unknown mode '" + mode + "'");
}

template <class D, class P>
int print_report(const Globals& g, const SolveReport<D>& r, const P& p, bool all, Json extra) {
  if (json_out(g)) {
    Json j = std::move(extra);
    const Json report = emit_report(r, p.names, p.initial, all, g.decimal);
    for (const auto& [k, v] : report.items()) j[k] = v;
    j["product_states"] = p.size();
    write(g, j.dump(2));
    return kOk;
  }
  std::string out = render(r.values.at(p.initial), g.decimal) + "\n";
  if (all)
    for (std::size_t z = 0; z < p.size(); ++z) out += p.names[z] + " " + render(r.values[z], g.decimal) + "\n";
  write(g, out);
  return kOk;
}

// ---------------------------------------------------------------------------

struct InferArgs {
  std::string system, requirement, pairing, mode, epsilon = "1/1000000";
  std::size_t steps = 100;
  std::uint64_t bound = 0;
  bool all = false;
};

int cmd_infer(const Globals& g, const InferArgs& a) {
  const Pairing pairing = parse_pairing(a.pairing);
  const SolveMode mode = solve_mode(a.mode, a.steps, a.epsilon, pairing);
  Json info{{"pairing", a.pairing}, {"system", a.system}, {"requirement", a.requirement}};
  const ProgramAs as = program_shape(pairing);
  switch (pairing) {
    case Pairing::McDfa: {
      auto p = product_mc_dfa(load_as<LabeledMc>(g, a.system, "system", as), load_as<Dfa>(g, a.requirement, "requirement"));
      return print_report(g, solve_reach_prob(p, mode), p, a.all, info);
    }
    case Pairing::MrmDfa: {
      auto p = product_mrm_dfa(load_as<MarkovRewardModel>(g, a.system, "system"), load_as<Dfa>(g, a.requirement, "requirement"));
      return print_report(g, solve_partial_expected_reward(p, mode), p, a.all, info);
    }
    case Pairing::CostDfa: {
      if (a.bound == 0) throw ConfigError("costdfa needs --bound N with N >= 1");
      auto rm = load_as<RewardMachine>(g, a.requirement, "requirement");
      auto p = product_mc_dfa(load_as<LabeledMc>(g, a.system, "system", as),
                              product_rm_costdfa(rm, make_cost_bound_dfa(a.bound, rm.bound)));
      info["bound"] = a.bound;
      return print_report(g, solve_reach_prob(p, mode), p, a.all, info);
    }
    case Pairing::NtmcDfa: {
      auto p = product_ntmc_dfa(load_as<NonTerminatingMc>(g, a.system, "system", as), load_as<Dfa>(g, a.requirement, "requirement"));
      return print_report(g, solve_reach_prob(p, mode), p, a.all, info);
    }
    case Pairing::WtsNfa: {
      auto p = product_wts_nfa(load_as<WeightedTs>(g, a.system, "system", as), load_as<Nfa>(g, a.requirement, "requirement"));
      return print_report(g, solve_tropical(p, mode), p, a.all, info);
    }
    case Pairing::WtsWmm: {
      auto p = product_wts_wmm(load_as<WeightedTs>(g, a.system, "system", as), load_as<WeightedMealy>(g, a.requirement, "requirement"));
      return print_report(g, solve_tropical(p, mode), p, a.all, info);
    }
  }
  return kUsage;
}

struct ProductArgs {
  std::string system, requirement, pairing;
  std::uint64_t bound = 0;
  bool all_pairs = false;
};

int cmd_product(const Globals& g, const ProductArgs& a) {
  const Pairing pairing = parse_pairing(a.pairing);
  const ProductOptions opt{!a.all_pairs, Mutation::None};
  const ProgramAs as = program_shape(pairing);
  Json j;
  switch (pairing) {
    case Pairing::McDfa:
      j = emit_product(product_mc_dfa(load_as<LabeledMc>(g, a.system, "system", as), load_as<Dfa>(g, a.requirement, "requirement"), opt));
      break;
    case Pairing::MrmDfa:
      j = emit_product(product_mrm_dfa(load_as<MarkovRewardModel>(g, a.system, "system"), load_as<Dfa>(g, a.requirement, "requirement"), opt));
      break;
    case Pairing::CostDfa: {
      if (a.bound == 0) throw ConfigError("costdfa needs --bound N with N >= 1");
      auto rm = load_as<RewardMachine>(g, a.requirement, "requirement");
      j = emit_product(product_mc_dfa(load_as<LabeledMc>(g, a.system, "system", as),
                                      product_rm_costdfa(rm, make_cost_bound_dfa(a.bound, rm.bound)), opt));
      break;
    }
    case Pairing::NtmcDfa:
      j = emit_product(product_ntmc_dfa(load_as<NonTerminatingMc>(g, a.system, "system", as), load_as<Dfa>(g, a.requirement, "requirement"), opt));
      break;
    case Pairing::WtsNfa:
      j = emit_product(product_wts_nfa(load_as<WeightedTs>(g, a.system, "system", as), load_as<Nfa>(g, a.requirement, "requirement"), opt));
      break;
    case Pairing::WtsWmm:
      j = emit_product(product_wts_wmm(load_as<WeightedTs>(g, a.system, "system", as), load_as<WeightedMealy>(g, a.requirement, "requirement"), opt));
      break;
  }
  write(g, j.dump(2));
  return kOk;
}

// ---------------------------------------------------------------------------

struct OracleArgs {
  std::string system, requirement, pairing, condition;
  std::size_t depth = 0;
  std::uint64_t bound = 0;
};

int print_value(const Globals& g, const OracleArgs& a, const Json& value, const std::string& text) {
  if (json_out(g)) {
    Json j{{"pairing", a.pairing}, {"system", a.system}, {"requirement", a.requirement}, {"depth", a.depth}};
    if (!a.condition.empty()) j["condition"] = a.condition;
    j["value"] = value;
    write(g, j.dump(2));
  } else {
    write(g, text);
  }
  return kOk;
}

/// System-only oracle: the depth-bounded semantic value at the initial state.
int oracle_system(const Globals& g, const OracleArgs& a) {
  AnyModel m = load(g, a.system);
  Json j = Json::array();
  std::string text;
  auto line = [&](const std::string& w, Json v, const std::string& vt) {
    j.push_back({{"trace", w}, {"value", std::move(v)}});
    text += w + " " + vt + "\n";
  };
  if (auto* c = std::get_if<LabeledMc>(&m)) {
    for (const auto& [w, p] : mc_semantics(*c, c->initial, a.depth).sorted())
      line(w.str(c->alphabet), render(p, g.decimal), render(p, g.decimal));
  } else if (auto* r = std::get_if<MarkovRewardModel>(&m)) {
    for (const auto& [w, pr] : mrm_semantics(*r, r->initial, a.depth).sorted())
      line(w.trace.str(r->alphabet) + " reward " + std::to_string(w.weight), render(pr, g.decimal), render(pr, g.decimal));
  } else if (auto* n = std::get_if<NonTerminatingMc>(&m)) {
    for (const auto& [w, p] : ntmc_marginal(*n, n->initial, a.depth).sorted())
      line(w.str(n->alphabet), render(p, g.decimal), render(p, g.decimal));
  } else if (auto* t = std::get_if<WeightedTs>(&m)) {
    for (const auto& [w, c] : wts_semantics(*t, t->initial, a.depth).sorted())
      line(w.str(t->alphabet), c, std::to_string(c));
  } else {
    throw ConfigError("oracle without a requirement takes a system model (mc, mrm, ntmc or wts)");
  }
  return print_value(g, a, j, text);
}

int cmd_oracle(const Globals& g, const OracleArgs& a) {
  if (a.requirement.empty()) return oracle_system(g, a);
  if (a.pairing.empty()) throw ConfigError("oracle with a requirement needs a pairing");
  const Pairing pairing = parse_pairing(a.pairing);
  const ProgramAs as = program_shape(pairing);
  const std::size_t k = a.depth;
  if (!a.condition.empty() && pairing != Pairing::McDfa) throw ConfigError("--condition applies to mc-dfa");
  switch (pairing) {
    case Pairing::McDfa: {
      auto c = load_as<LabeledMc>(g, a.system, "system", as);
      auto d = load_as<Dfa>(g, a.requirement, "requirement");
      require_same_alphabet(c.alphabet, d.alphabet);
      auto nu = mc_semantics(c, c.initial, k);
      auto l = dfa_language(d, d.initial, k);
      if (!a.condition.empty()) {
        auto cd = load_as<Dfa>(g, a.condition, "condition");
        require_same_alphabet(c.alphabet, cd.alphabet);
        auto v = query_cond(nu, l, dfa_language(cd, cd.initial, k));
        if (!v) return print_value(g, a, nullptr, "undefined");
        return print_value(g, a, render(*v, g.decimal), render(*v, g.decimal));
      }
      auto v = query_prob(nu, l);
      return print_value(g, a, value_json(v, g.decimal), render(v, g.decimal));
    }
    case Pairing::MrmDfa: {
      auto c = load_as<MarkovRewardModel>(g, a.system, "system");
      auto d = load_as<Dfa>(g, a.requirement, "requirement");
      require_same_alphabet(c.alphabet, d.alphabet);
      auto v = query_reward(mrm_semantics(c, c.initial, k), dfa_language(d, d.initial, k));
      return print_value(g, a, value_json(v, g.decimal), render(v, g.decimal));
    }
    case Pairing::CostDfa: {
      if (a.bound == 0) throw ConfigError("costdfa needs --bound N with N >= 1");
      auto c = load_as<LabeledMc>(g, a.system, "system", as);
      auto rm = load_as<RewardMachine>(g, a.requirement, "requirement");
      require_same_alphabet(c.alphabet, rm.alphabet);
      auto v = query_cost_induced(mc_semantics(c, c.initial, k), rm_semantics(rm, rm.initial, k), a.bound);
      return print_value(g, a, value_json(v, g.decimal), render(v, g.decimal));
    }
    case Pairing::NtmcDfa: {
      auto c = load_as<NonTerminatingMc>(g, a.system, "system", as);
      auto d = load_as<Dfa>(g, a.requirement, "requirement");
      require_same_alphabet(c.alphabet, d.alphabet);
      auto v = query_safety(c, c.initial, d, d.initial, k);
      return print_value(g, a, value_json(v, g.decimal), render(v, g.decimal));
    }
    case Pairing::WtsNfa: {
      auto c = load_as<WeightedTs>(g, a.system, "system", as);
      auto d = load_as<Nfa>(g, a.requirement, "requirement");
      require_same_alphabet(c.alphabet, d.alphabet);
      auto v = query_tropical(wts_semantics(c, c.initial, k), nfa_language(d, d.initial, k));
      return print_value(g, a, value_json(v), render(v));
    }
    case Pairing::WtsWmm: {
      auto c = load_as<WeightedTs>(g, a.system, "system", as);
      auto d = load_as<WeightedMealy>(g, a.requirement, "requirement");
      require_same_alphabet(c.alphabet, d.alphabet);
      auto v = query_wmm(wts_semantics(c, c.initial, k), wmm_semantics(d, d.initial, k));
      return print_value(g, a, value_json(v), render(v));
    }
  }
  return kUsage;
}

// ---------------------------------------------------------------------------

struct CompileArgs {
  std::string program;
  std::string mode = "terminating";
  bool all_states = false;
};

int cmd_compile(const Globals& g, const CompileArgs& a) {
  auto prog = program::parse_program(slurp(resolve(g, a.program)));
  program::CompileOptions opt;
  opt.restrict_reachable = !a.all_states;
  program::CompileReport rep;
  if (prog.mode == program::Mode::Weighted)
    rep = program::compile_weighted(prog, opt);
  else if (a.mode == "terminating" || a.mode == "reactive")
    rep = program::compile_probabilistic(
        prog, a.mode == "reactive" ? program::ProbMode::Reactive : program::ProbMode::Terminating, opt);
  else
    throw ConfigError("unknown compile mode '" + a.mode + "'");
  Json model = std::visit([](const auto& m) { return emit_model(m); }, rep.model);
  const std::size_t states = std::visit([](const auto& m) { return m.size(); }, rep.model);
  if (json_out(g)) {
    Json j{{"model", model},
           {"report", {{"states", states}, {"state_count", rep.state_count}, {"reachable_count", rep.reachable_count},
                       {"warnings", rep.warnings}}}};
    write(g, j.dump(2));
  } else {
    write(g, model.dump(2));
    std::cerr << "states " << states << " of " << rep.state_count << " valuations, " << rep.reachable_count
              << " reachable\n";
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
  }
  return kOk;
}

int cmd_validate(const Globals& g, const std::string& arg) {
  load(g, arg);  // throws Invalid with the violation list
  if (json_out(g))
    write(g, Json{{"model", arg}, {"valid", true}, {"violations", Json::array()}}.dump(2));
  else
    write(g, "ok");
  return kOk;
}

// ---------------------------------------------------------------------------

struct LawcheckArgs {
  std::string pairing = "all";
  std::uint64_t seed = 1;
  std::size_t instances = 100;
  std::size_t kmax = 10;
  bool diagram = false;
  std::size_t samples = 200;
  std::string mutate = "none";
};

int cmd_lawcheck(const Globals& g, const LawcheckArgs& a) {
  const Mutation mut = parse_mutation(a.mutate);
  std::vector<Pairing> pairings;
  if (a.pairing == "all")
    pairings.assign(std::begin(kAllPairings), std::end(kAllPairings));
  else
    pairings.push_back(parse_pairing(a.pairing));
  if (mut != Mutation::None) {
    const Pairing target = mutation_pairing(mut);
    if (a.pairing != "all" && pairings[0] != target && !(pairings[0] == Pairing::CostDfa && target == Pairing::McDfa))
      throw ConfigError("mutation " + a.mutate + " edits the " + std::string(pairing_name(target)) + " law");
    if (a.pairing == "all") pairings = {target};
  }
  if (a.diagram && a.pairing == "ntmc-dfa")
    throw UnsupportedCheck(
        "diagram check refused for ntmc-dfa: weaker criterion only; this pairing is justified by step-indexed "
        "equality, run lawcheck without --diagram");

  std::vector<CheckResult> results;
  std::vector<std::string> refused;
  if (mut != Mutation::None) results.push_back(run_mutation(mut, a.kmax));
  for (Pairing p : pairings) {
    results.push_back(check_random_step_equality(p, a.seed, a.instances, a.kmax, mut));
    if (a.diagram) {
      if (p == Pairing::NtmcDfa) {
        refused.emplace_back(pairing_name(p));
        continue;
      }
      results.push_back(check_diagram(p, a.samples, a.seed));
    }
  }
  bool passed = true;
  for (const auto& r : results) passed = passed && r.passed;
  if (json_out(g)) {
    Json j{{"seed", a.seed}, {"instances", a.instances}, {"kmax", a.kmax}, {"mutation", a.mutate}};
    Json rs = Json::array();
    for (const auto& r : results) rs.push_back(emit_check(r));
    j["results"] = std::move(rs);
    if (!refused.empty()) j["refused"] = {{"pairings", refused}, {"reason", "diagram check: weaker criterion only"}};
    j["passed"] = passed;
    write(g, j.dump(2));
  } else {
    std::string out;
    for (const auto& r : results) {
      out += (r.passed ? "PASS " : "FAIL ") + r.name + " (" + std::to_string(r.comparisons) + " comparisons)\n";
      if (const auto& c = r.counterexample)
        out += "  counterexample: " + c->instance + ", state " + c->state + ", step " + std::to_string(c->step) +
               ": product " + c->lhs + " vs oracle " + c->rhs + "\n";
    }
    for (const auto& p : refused) out += "REFUSED diagram " + p + " (weaker criterion only)\n";
    write(g, out);
  }
  return passed ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantitative temporal inference over products of systems and requirements"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--decimal", g.decimal, "Render rationals as decimals with this many digits");
  app.add_option("--fixtures", g.fixtures, "Directory searched for fixture names");
  app.add_option("-o,--output", g.output, "Write the result to a file");
  app.add_flag("--complete", g.complete, "Complete partial DFAs with a rejecting sink state");

  std::string validate_arg;
  auto* validate = app.add_subcommand("validate", "Check a model against its invariants");
  validate->add_option("model", validate_arg)->required();

  CompileArgs ca;
  auto* compile = app.add_subcommand("compile", "Compile a .qtp program to a model");
  compile->add_option("program", ca.program)->required();
  compile->add_option("--mode", ca.mode, "terminating or reactive (probabilistic programs)");
  compile->add_flag("--all-states", ca.all_states, "Keep unreachable valuations");

  ProductArgs pa;
  auto* product = app.add_subcommand("product", "Build the product of a system and a requirement");
  product->add_option("system", pa.system)->required();
  product->add_option("requirement", pa.requirement)->required();
  product->add_option("pairing", pa.pairing)->required();
  product->add_option("--bound", pa.bound, "Cost budget N for costdfa");
  product->add_flag("--all-pairs", pa.all_pairs, "Keep unreachable state pairs");

  InferArgs ia;
  auto* infer = app.add_subcommand("infer", "Solve the product and print the value at the initial state");
  infer->add_option("system", ia.system)->required();
  infer->add_option("requirement", ia.requirement)->required();
  infer->add_option("pairing", ia.pairing)->required();
  infer->add_option("--mode", ia.mode, "exact, iterate, epsilon or bellman");
  infer->add_option("--steps", ia.steps, "Iterations for --mode iterate");
  infer->add_option("--epsilon", ia.epsilon, "Tolerance for --mode epsilon");
  infer->add_option("--bound", ia.bound, "Cost budget N for costdfa");
  infer->add_flag("--all", ia.all, "Print the value at every product state");

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "Depth-bounded semantics and queries without products");
  oracle->add_option("system", oa.system)->required();
  oracle->add_option("requirement", oa.requirement);
  oracle->add_option("pairing", oa.pairing);
  oracle->add_option("--depth", oa.depth, "Unfolding depth k")->required();
  oracle->add_option("--condition", oa.condition, "Condition DFA for the conditional query");
  oracle->add_option("--bound", oa.bound, "Cost budget N for costdfa");

  LawcheckArgs la;
  if (const char* env = std::getenv("QTI_SEED")) la.seed = std::strtoull(env, nullptr, 10);
  auto* lawcheck = app.add_subcommand("lawcheck", "Check products against the oracle on random instances");
  lawcheck->add_option("pairing", la.pairing, "Pairing name or 'all'");
  lawcheck->add_option("--seed", la.seed, "Random seed (default from QTI_SEED)");
  lawcheck->add_option("--instances", la.instances, "Random instances per pairing");
  lawcheck->add_option("--kmax", la.kmax, "Largest step index compared");
  lawcheck->add_flag("--diagram", la.diagram, "Also sample the one-step diagram");
  lawcheck->add_option("--samples", la.samples, "Diagram samples per pairing");
  lawcheck->add_option("--mutate", la.mutate, "Run with a deliberately broken law");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_validate(g, validate_arg);
    if (*compile) return cmd_compile(g, ca);
    if (*product) return cmd_product(g, pa);
    if (*infer) return cmd_infer(g, ia);
    if (*oracle) return cmd_oracle(g, oa);
    if (*lawcheck) return cmd_lawcheck(g, la);
  } catch (const Invalid& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& v : e.violations) std::cerr << "  " << v << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
