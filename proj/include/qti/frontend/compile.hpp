#pragma once

// Operational semantics of loop programs as finite coalgebras. A state is a valuation
// of the declared variables; when the body is split by `tick;` the state also carries
// the index of the next segment to run.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qti/domains.hpp"
#include "qti/frontend/program.hpp"
#include "qti/models.hpp"

namespace qti::program {

enum class ProbMode { Terminating, Reactive };

struct CompileOptions {
  bool restrict_reachable = true;
  std::size_t max_states = 1'000'000;
};

struct CompileReport {
  std::variant<LabeledMc, NonTerminatingMc, WeightedTs> model;
  std::uint64_t state_count = 0;  // valuations times segments, before any restriction
  std::size_t reachable_count = 0;
  std::vector<std::string> warnings;
};

namespace detail {

using Env = std::vector<std::int64_t>;

struct Outcome {
  Env env;
  Rational prob{1};
  std::uint64_t weight = 0;
  std::optional<Symbol> emitted;
};

class Machine {
 public:
  explicit Machine(const Program& p) : p_(p) {}

  std::int64_t eval(const Expr& e, const Env& env) const {
    switch (e.kind) {
      case Expr::Kind::Number: return e.value;
      case Expr::Kind::Variable: return env[e.var];
      case Expr::Kind::Unary: {
        std::int64_t a = eval(e.args[0], env);
        if (e.op == Op::Not) return a == 0;
        if (a == INT64_MIN) fail(e.pos, "integer overflow");
        return -a;
      }
      case Expr::Kind::Binary: break;
    }
    const std::int64_t a = eval(e.args[0], env);
    if (e.op == Op::And && a == 0) return 0;
    if (e.op == Op::Or && a != 0) return 1;
    const std::int64_t b = eval(e.args[1], env);
    std::int64_t r = 0;
    switch (e.op) {
      case Op::Add: if (__builtin_add_overflow(a, b, &r)) fail(e.pos, "integer overflow"); return r;
      case Op::Sub: if (__builtin_sub_overflow(a, b, &r)) fail(e.pos, "integer overflow"); return r;
      case Op::Mul: if (__builtin_mul_overflow(a, b, &r)) fail(e.pos, "integer overflow"); return r;
      case Op::And:
      case Op::Or: return b != 0;
      case Op::Eq: return a == b;
      case Op::Ne: return a != b;
      case Op::Lt: return a < b;
      case Op::Le: return a <= b;
      case Op::Gt: return a > b;
      case Op::Ge: return a >= b;
      case Op::Max: return std::max(a, b);
      case Op::Min: return std::min(a, b);
      case Op::Neg:
      case Op::Not: break;
    }
    fail(e.pos, "malformed expression");
  }

  bool guard(const Env& env) const { return eval(p_.guard, env) != 0; }

  std::string valuation(const Env& env) const {
    std::string s;
    for (std::size_t i = 0; i < env.size(); ++i) {
      if (i) s += ",";
      s += p_.vars[i].name + "=" + std::to_string(env[i]);
    }
    return s;
  }

  std::vector<Outcome> run(const std::vector<Stmt>& body, Outcome start) const {
    std::vector<Outcome> cur{std::move(start)};
    for (const auto& s : body) {
      std::vector<Outcome> next;
      for (auto& o : cur) {
        auto r = exec(s, std::move(o));
        std::move(r.begin(), r.end(), std::back_inserter(next));
      }
      cur = std::move(next);
    }
    return cur;
  }

 private:
  std::vector<Outcome> exec(const Stmt& s, Outcome o) const {
    switch (s.kind) {
      case Stmt::Kind::Assign: {
        const Variable& v = p_.vars[s.var];
        const std::int64_t x = eval(s.expr, o.env);
        if (x < v.lo || x > v.hi)
          fail(s.pos, "value " + std::to_string(x) + " out of range [" + std::to_string(v.lo) + ".." +
                          std::to_string(v.hi) + "] for '" + v.name + "' at " + valuation(o.env));
        o.env[s.var] = x;
        return {std::move(o)};
      }
      case Stmt::Kind::If: {
        const bool taken = eval(s.expr, o.env) != 0;
        return run(s.branches[taken ? 0 : 1], std::move(o));
      }
      case Stmt::Kind::ProbChoice: {
        std::vector<Outcome> out;
        for (std::size_t i = 0; i < s.branches.size(); ++i) {
          if (s.probs[i] == 0) continue;
          Outcome b = o;
          b.prob *= s.probs[i];
          auto r = run(s.branches[i], std::move(b));
          std::move(r.begin(), r.end(), std::back_inserter(out));
        }
        return out;
      }
      case Stmt::Kind::NondetChoice: {
        std::vector<Outcome> out;
        for (const auto& branch : s.branches) {
          auto r = run(branch, o);
          std::move(r.begin(), r.end(), std::back_inserter(out));
        }
        return out;
      }
      case Stmt::Kind::Add: {
        const std::int64_t w = eval(s.expr, o.env);
        if (w < 0) fail(s.pos, "negative weight " + std::to_string(w) + " at " + valuation(o.env));
        o.weight = checked_add(o.weight, static_cast<std::uint64_t>(w));
        return run(s.branches[0], std::move(o));
      }
      case Stmt::Kind::Emit:
        if (o.emitted) fail(s.pos, "more than one 'emit' in one step at " + valuation(o.env));
        o.emitted = s.symbol;
        return {std::move(o)};
      case Stmt::Kind::Skip: return {std::move(o)};
      case Stmt::Kind::Abort:
        if (p_.mode == Mode::Probabilistic) fail(s.pos, "'abort' reached in a probabilistic program");
        return {};
      case Stmt::Kind::Block: return run(s.branches[0], std::move(o));
    }
    return {};
  }

  const Program& p_;
};

struct Node {
  Env env;
  std::size_t pc = 0;
  friend auto operator<=>(const Node&, const Node&) = default;
};

/// One loop step from a node: successor node, or nullopt for the target, per outcome.
struct Move {
  std::optional<Node> dest;
  Outcome outcome;
};

class Compiler {
 public:
  Compiler(const Program& p, const CompileOptions& opt) : p_(p), m_(p), opt_(opt) {
    count_ = p.segments.size();
    for (const auto& v : p.vars) {
      const auto size = static_cast<std::uint64_t>(v.hi - v.lo) + 1;
      if (count_ > opt.max_states / size) throw InvalidParameter("state space too large (more than " + std::to_string(opt.max_states) + " states)");
      count_ *= size;
    }
    initial_.env.reserve(p.vars.size());
    for (const auto& v : p.vars) initial_.env.push_back(v.init);
    if (!m_.guard(initial_.env)) throw ParseError("initial valuation " + m_.valuation(initial_.env) + " violates the loop guard");
  }

  std::uint64_t state_count() const { return count_; }
  const Machine& machine() const { return m_; }

  std::vector<Move> moves(const Node& n) const {
    Outcome start;
    start.env = n.env;
    std::vector<Move> out;
    for (auto& o : m_.run(p_.segments[n.pc], std::move(start))) {
      Move mv;
      if (n.pc + 1 < p_.segments.size())
        mv.dest = Node{o.env, n.pc + 1};
      else if (m_.guard(o.env))
        mv.dest = Node{o.env, 0};
      mv.outcome = std::move(o);
      out.push_back(std::move(mv));
    }
    return out;
  }

  /// States in breadth-first order from the initial node, with each state's moves.
  void explore() {
    index_.emplace(initial_, 0);
    nodes_.push_back(initial_);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      auto mv = moves(nodes_[i]);
      for (const auto& m : mv)
        if (m.dest && index_.emplace(*m.dest, nodes_.size()).second) nodes_.push_back(*m.dest);
      moves_.push_back(std::move(mv));
    }
    reachable_ = nodes_.size();
  }

  /// Replaces the explored states by every valuation and segment (guard-true ones at
  /// segment 0), in lexicographic order.
  void enumerate_all(std::vector<std::string>& warnings) {
    std::vector<Node> all;
    Env env;
    for (const auto& v : p_.vars) env.push_back(v.lo);
    std::size_t skipped = 0;
    while (true) {
      for (std::size_t pc = 0; pc < p_.segments.size(); ++pc) {
        if (pc == 0 && !m_.guard(env)) {
          ++skipped;
          continue;
        }
        all.push_back({env, pc});
      }
      std::size_t i = env.size();
      while (i > 0 && env[i - 1] == p_.vars[i - 1].hi) {
        env[i - 1] = p_.vars[i - 1].lo;
        --i;
      }
      if (i == 0) break;
      ++env[i - 1];
    }
    if (skipped) warnings.push_back(std::to_string(skipped) + " guard-false valuations are not states");
    if (all.size() > reachable_)
      warnings.push_back(std::to_string(all.size() - reachable_) + " unreachable states kept");
    index_.clear();
    for (std::size_t i = 0; i < all.size(); ++i) index_.emplace(all[i], i);
    nodes_ = std::move(all);
    moves_.clear();
    for (const auto& n : nodes_) moves_.push_back(moves(n));
  }

  std::size_t reachable() const { return reachable_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::vector<Move>>& all_moves() const { return moves_; }
  std::size_t index(const Node& n) const { return index_.at(n); }
  std::size_t initial() const { return index_.at(initial_); }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    std::map<std::string, std::size_t> seen;
    for (const auto& n : nodes_) {
      const std::string* named = p_.names ? p_.names->lookup(n.env) : nullptr;
      std::string s = named ? *named : m_.valuation(n.env);
      if (p_.segments.size() > 1) s += "@" + std::to_string(n.pc);
      if (!seen.emplace(s, out.size()).second)
        throw ParseError("name table maps two states to '" + s + "'", p_.names->pos.line, p_.names->pos.column);
      out.push_back(std::move(s));
    }
    return out;
  }

  std::vector<Symbol> labels(const Alphabet& a) const {
    std::vector<Symbol> out;
    for (const auto& n : nodes_) {
      const std::string* l = p_.label->lookup(n.env);
      if (!l) fail(p_.label->pos, "no label for valuation " + m_.valuation(n.env));
      out.push_back(a.at(*l));
    }
    return out;
  }

 private:
  const Program& p_;
  Machine m_;
  CompileOptions opt_;
  std::uint64_t count_ = 1;
  Node initial_;
  std::map<Node, std::size_t> index_;
  std::vector<Node> nodes_;
  std::vector<std::vector<Move>> moves_;
  std::size_t reachable_ = 0;
};

}  // namespace detail

/// Probabilistic program to a chain. Terminating mode sends guard-false successors to
/// the target; reactive mode requires the guard to stay true on every reachable state.
inline CompileReport compile_probabilistic(const Program& p, ProbMode mode, const CompileOptions& opt = {}) {
  if (p.mode != Mode::Probabilistic) throw ParseError("mode conflict: weighted program compiled as probabilistic");
  detail::Compiler c(p, opt);
  CompileReport rep;
  rep.state_count = c.state_count();
  c.explore();
  rep.reachable_count = c.reachable();
  bool target_reached = false;
  for (std::size_t i = 0; i < c.nodes().size(); ++i)
    for (const auto& m : c.all_moves()[i])
      if (!m.dest) {
        if (mode == ProbMode::Reactive)
          throw ParseError("program halts: the loop guard is false after a step from reachable valuation " +
                           c.machine().valuation(c.nodes()[i].env));
        target_reached = true;
      }
  if (mode == ProbMode::Terminating && !target_reached)
    rep.warnings.push_back("the target is unreachable: no run terminates");
  if (!opt.restrict_reachable) c.enumerate_all(rep.warnings);

  auto rows = [&] {
    std::vector<DistRow> out;
    for (const auto& mv : c.all_moves()) {
      DistRow row;
      for (const auto& m : mv) row.emplace_back(m.dest ? c.index(*m.dest) : kTarget, m.outcome.prob);
      canonicalize_row(row);
      out.push_back(std::move(row));
    }
    return out;
  };
  if (mode == ProbMode::Terminating) {
    LabeledMc mc{p.alphabet, c.names(), c.labels(p.alphabet), rows(), c.initial()};
    rep.model = std::move(mc);
  } else {
    NonTerminatingMc mc{p.alphabet, c.names(), c.labels(p.alphabet), rows(), c.initial()};
    rep.model = std::move(mc);
  }
  return rep;
}

/// Weighted program to a transition system: every way through one step is a
/// transition labelled by its `emit` and weighted by the sum of its `add`s.
inline CompileReport compile_weighted(const Program& p, const CompileOptions& opt = {}) {
  if (p.mode != Mode::Weighted) throw ParseError("mode conflict: probabilistic program compiled as weighted");
  detail::Compiler c(p, opt);
  CompileReport rep;
  rep.state_count = c.state_count();
  c.explore();
  rep.reachable_count = c.reachable();
  if (!opt.restrict_reachable) c.enumerate_all(rep.warnings);
  WeightedTs w{p.alphabet, c.names(), {}, c.initial()};
  for (std::size_t i = 0; i < c.nodes().size(); ++i) {
    WtsStep<std::size_t> step;
    for (const auto& m : c.all_moves()[i]) {
      if (!m.outcome.emitted)
        throw ParseError("a step from " + c.machine().valuation(c.nodes()[i].env) + " emits no label");
      step.push_back({m.dest ? std::optional<std::size_t>(c.index(*m.dest)) : std::nullopt, *m.outcome.emitted,
                      m.outcome.weight});
    }
    if (step.empty()) rep.warnings.push_back("state " + w.states[i] + " has no transitions");
    w.trans.push_back(std::move(step));
  }
  canonicalize(w);
  rep.model = std::move(w);
  return rep;
}

}  // namespace qti::program
