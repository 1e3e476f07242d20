#pragma once

// A small guarded-command language for loop programs over bounded integer variables.
// The grammar is in docs/grammar.ebnf; this header holds the AST, lexer and parser.

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qti/errors.hpp"
#include "qti/functors.hpp"
#include "qti/models.hpp"
#include "qti/rational.hpp"

namespace qti::program {

struct Pos {
  std::size_t line = 1;
  std::size_t column = 1;
};

[[noreturn]] inline void fail(const Pos& p, const std::string& message) {
  throw ParseError(message, p.line, p.column);
}

enum class Mode { Probabilistic, Weighted };

enum class Op { Add, Sub, Mul, Neg, Not, And, Or, Eq, Ne, Lt, Le, Gt, Ge, Max, Min };

struct Expr {
  enum class Kind { Number, Variable, Unary, Binary } kind = Kind::Number;
  std::int64_t value = 0;
  std::size_t var = 0;
  Op op = Op::Add;
  std::vector<Expr> args;
  Pos pos;
};

struct Stmt {
  enum class Kind { Assign, If, ProbChoice, NondetChoice, Add, Emit, Skip, Abort, Block } kind = Kind::Skip;
  std::size_t var = 0;               // Assign
  Expr expr;                         // Assign value, If condition, Add weight
  std::vector<Rational> probs;       // ProbChoice: one per branch, the last is the remainder
  std::vector<std::vector<Stmt>> branches;  // If: then/else; choices: alternatives; Add/Block: body
  Symbol symbol = 0;                 // Emit
  Pos pos;
};

/// First-match table from variable valuations to a string, used for labels and for
/// state names. A pattern entry is an integer range; a wildcard covers the full range.
struct Table {
  struct Pattern {
    std::int64_t lo = 0, hi = 0;
    bool wildcard = false;
    bool matches(std::int64_t v) const { return wildcard || (lo <= v && v <= hi); }
  };
  struct Row {
    std::vector<Pattern> patterns;
    std::string value;
    Pos pos;
  };
  std::vector<std::size_t> vars;
  std::vector<Row> rows;
  std::optional<std::string> fallback;
  Pos pos;

  const std::string* lookup(const std::vector<std::int64_t>& env) const {
    for (const auto& r : rows) {
      bool ok = true;
      for (std::size_t i = 0; i < vars.size() && ok; ++i) ok = r.patterns[i].matches(env[vars[i]]);
      if (ok) return &r.value;
    }
    return fallback ? &*fallback : nullptr;
  }
};

struct Variable {
  std::string name;
  std::int64_t lo = 0, hi = 0;
  std::int64_t init = 0;
  Pos pos;
};

struct Program {
  std::string name;
  Mode mode = Mode::Probabilistic;
  Alphabet alphabet;
  std::vector<Variable> vars;
  std::optional<Table> label;
  std::optional<Table> names;
  Expr guard;
  /// Loop body split at top-level `tick;` statements; one segment means an atomic body.
  std::vector<std::vector<Stmt>> segments;
};

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum class Kind { Ident, Number, String, Punct, End } kind = Kind::End;
  std::string text;
  Pos pos;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  static constexpr std::string_view two[] = {":=", "<-", "==", "!=", "<=", ">=", "&&", "||", ".."};
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.pos = {line, col};
    std::size_t j = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Token::Kind::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j + 1 < src.size() && src[j] == '.' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      t.kind = Token::Kind::Number;
    } else if (c == '"') {
      ++j;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') fail(t.pos, "unterminated string");
      t.kind = Token::Kind::String;
      t.text = std::string(src.substr(i + 1, j - i - 1));
      advance(j + 1 - i);
      out.push_back(std::move(t));
      continue;
    } else {
      t.kind = Token::Kind::Punct;
      j = i + 1;
      for (auto p : two)
        if (src.substr(i, 2) == p) j = i + 2;
      if (j == i + 1 && std::string_view("{}()[];:,=+-*/<>!").find(c) == std::string_view::npos)
        fail(t.pos, std::string("unexpected character '") + c + "'");
    }
    t.text = std::string(src.substr(i, j - i));
    advance(j - i);
    out.push_back(std::move(t));
  }
  out.push_back({Token::Kind::End, "", {line, col}});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  Program parse() {
    Program p;
    expect_word("program");
    p.name = ident("program name");
    const Token& m = peek();
    std::string mode = ident("mode");
    if (mode == "probabilistic")
      p.mode = Mode::Probabilistic;
    else if (mode == "weighted")
      p.mode = Mode::Weighted;
    else
      fail(m.pos, "expected 'probabilistic' or 'weighted'");
    mode_ = p.mode;
    expect(";");

    expect_word("alphabet");
    std::vector<std::string> symbols{ident("symbol")};
    while (accept(",")) symbols.push_back(ident("symbol"));
    expect(";");
    p.alphabet = Alphabet(symbols);
    if (p.alphabet.has_duplicates()) fail(m.pos, "duplicate alphabet symbol");
    alphabet_ = &p.alphabet;

    while (peek_word("var")) declared_.push_back(variable());
    if (declared_.empty()) fail(peek().pos, "expected at least one 'var' declaration");
    p.vars = declared_;

    while (peek_word("label") || peek_word("name")) {
      const Token& t = peek();
      bool is_label = t.text == "label";
      ++at_;
      Table table = this->table(t.pos);
      if (is_label) {
        if (p.label) fail(t.pos, "duplicate label table");
        if (p.mode == Mode::Weighted)
          fail(t.pos, "mode conflict: label tables belong to probabilistic programs; weighted programs use 'emit'");
        for (const auto& r : table.rows) symbol_of(r.value, r.pos);
        if (table.fallback) symbol_of(*table.fallback, t.pos);
        p.label = std::move(table);
      } else {
        if (p.names) fail(t.pos, "duplicate name table");
        p.names = std::move(table);
      }
    }
    if (p.mode == Mode::Probabilistic && !p.label) fail(peek().pos, "probabilistic programs need a label table");

    expect_word("while");
    expect("(");
    p.guard = expr();
    expect(")");
    expect("{");
    p.segments.emplace_back();
    while (!check("}")) {
      if (peek_word("tick")) {
        ++at_;
        expect(";");
        p.segments.emplace_back();
        continue;
      }
      p.segments.back().push_back(stmt());
    }
    expect("}");
    if (peek().kind != Token::Kind::End) fail(peek().pos, "unexpected '" + peek().text + "' after the loop");
    return p;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(at_ + k, toks_.size() - 1)]; }
  bool check(std::string_view p) const { return peek().kind == Token::Kind::Punct && peek().text == p; }
  bool peek_word(std::string_view w) const { return peek().kind == Token::Kind::Ident && peek().text == w; }
  bool accept(std::string_view p) {
    if (!check(p)) return false;
    ++at_;
    return true;
  }
  void expect(std::string_view p) {
    if (!accept(p)) fail(peek().pos, "expected '" + std::string(p) + "' but found " + describe(peek()));
  }
  void expect_word(std::string_view w) {
    if (!peek_word(w)) fail(peek().pos, "expected '" + std::string(w) + "' but found " + describe(peek()));
    ++at_;
  }
  static std::string describe(const Token& t) {
    return t.kind == Token::Kind::End ? std::string("end of input") : "'" + t.text + "'";
  }
  std::string ident(std::string_view what) {
    if (peek().kind != Token::Kind::Ident) fail(peek().pos, "expected " + std::string(what) + " but found " + describe(peek()));
    return toks_[at_++].text;
  }
  std::int64_t integer() {
    bool neg = accept("-");
    const Token& t = peek();
    if (t.kind != Token::Kind::Number || t.text.find('.') != std::string::npos)
      fail(t.pos, "expected an integer but found " + describe(t));
    ++at_;
    std::int64_t v = 0;
    for (char c : t.text) {
      if (v > (INT64_MAX - (c - '0')) / 10) fail(t.pos, "integer literal too large");
      v = v * 10 + (c - '0');
    }
    return neg ? -v : v;
  }
  Symbol symbol_of(const std::string& name, const Pos& pos) const {
    auto a = alphabet_->find(name);
    if (!a) fail(pos, "unknown symbol '" + name + "'");
    return *a;
  }
  std::size_t var_of(const std::string& name, const Pos& pos) const {
    for (std::size_t i = 0; i < declared_.size(); ++i)
      if (declared_[i].name == name) return i;
    fail(pos, "unknown variable '" + name + "'");
  }

  Variable variable() {
    Variable v;
    v.pos = peek().pos;
    expect_word("var");
    v.name = ident("variable name");
    for (const auto& w : {"true", "false", "and", "or", "not", "max", "min"})
      if (v.name == w) fail(v.pos, "'" + v.name + "' is reserved");
    for (const auto& o : declared_)
      if (o.name == v.name) fail(v.pos, "duplicate variable '" + v.name + "'");
    expect(":");
    expect("[");
    v.lo = integer();
    expect("..");
    v.hi = integer();
    expect("]");
    if (v.lo > v.hi) fail(v.pos, "empty range for '" + v.name + "'");
    expect("=");
    const Pos ip = peek().pos;
    v.init = integer();
    if (v.init < v.lo || v.init > v.hi) fail(ip, "initial value out of range for '" + v.name + "'");
    expect(";");
    return v;
  }
  Table table(const Pos& pos) {
    Table t;
    t.pos = pos;
    expect("(");
    do {
      const Pos vp = peek().pos;
      t.vars.push_back(var_of(ident("variable"), vp));
    } while (accept(","));
    expect(")");
    expect("{");
    while (!accept("}")) {
      const Pos rp = peek().pos;
      if (peek_word("default")) {
        ++at_;
        expect(":");
        if (t.fallback) fail(rp, "duplicate default");
        t.fallback = value();
        expect(";");
        continue;
      }
      Table::Row r;
      r.pos = rp;
      expect("(");
      do {
        Table::Pattern pat;
        if (peek_word("_")) {
          ++at_;
          pat.wildcard = true;
        } else {
          pat.lo = pat.hi = integer();
          if (accept("..")) pat.hi = integer();
        }
        r.patterns.push_back(pat);
      } while (accept(","));
      expect(")");
      if (r.patterns.size() != t.vars.size())
        fail(rp, "pattern has " + std::to_string(r.patterns.size()) + " entries, table has " +
                     std::to_string(t.vars.size()) + " variables");
      expect(":");
      r.value = value();
      expect(";");
      t.rows.push_back(std::move(r));
    }
    return t;
  }
  std::string value() {
    if (peek().kind == Token::Kind::String || peek().kind == Token::Kind::Ident) return toks_[at_++].text;
    fail(peek().pos, "expected a name but found " + describe(peek()));
  }

  std::vector<Stmt> block() {
    expect("{");
    std::vector<Stmt> out;
    while (!accept("}")) {
      if (peek_word("tick")) fail(peek().pos, "'tick' is only allowed at the top level of the loop body");
      if (peek().kind == Token::Kind::End) fail(peek().pos, "expected '}' but found end of input");
      out.push_back(stmt());
    }
    return out;
  }

  void require_mode(Mode m, const Pos& pos, std::string_view construct) const {
    if (mode_ != m)
      fail(pos, "mode conflict: " + std::string(construct) + " in a " +
                    (mode_ == Mode::Weighted ? "weighted" : "probabilistic") + " program");
  }

  Rational probability() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Number) fail(t.pos, "expected a probability but found " + describe(t));
    std::string text = t.text;
    ++at_;
    if (accept("/")) {
      const Token& d = peek();
      if (d.kind != Token::Kind::Number || d.text.find('.') != std::string::npos)
        fail(d.pos, "expected a denominator");
      ++at_;
      if (d.text.find_first_not_of('0') == std::string::npos) fail(d.pos, "zero denominator");
      text += "/" + d.text;
    }
    Rational p = Rational::parse(text);
    if (p < 0 || p > 1) fail(t.pos, "probability out of range");
    return p;
  }

  Stmt stmt() {
    Stmt s;
    s.pos = peek().pos;
    if (check("{")) {
      std::vector<std::vector<Stmt>> branches{block()};
      if (!check("[")) {
        s.kind = Stmt::Kind::Block;
        s.branches = std::move(branches);
        accept(";");
        return s;
      }
      std::optional<bool> nondet;
      while (check("[")) {
        const Pos bp = peek().pos;
        ++at_;
        if (accept("]")) {
          if (nondet == false) fail(bp, "cannot mix '[]' and '[p]' in one choice");
          require_mode(Mode::Weighted, bp, "nondeterministic choice");
          nondet = true;
        } else {
          if (nondet == true) fail(bp, "cannot mix '[]' and '[p]' in one choice");
          require_mode(Mode::Probabilistic, bp, "probabilistic choice");
          nondet = false;
          s.probs.push_back(probability());
          expect("]");
        }
        branches.push_back(block());
      }
      if (*nondet) {
        s.kind = Stmt::Kind::NondetChoice;
      } else {
        s.kind = Stmt::Kind::ProbChoice;
        Rational sum;
        for (const auto& p : s.probs) sum += p;
        if (sum > 1) fail(s.pos, "probability out of range: branch probabilities sum to " + sum.str());
        s.probs.push_back(Rational(1) - sum);
      }
      s.branches = std::move(branches);
      accept(";");
      return s;
    }
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) fail(t.pos, "expected a statement but found " + describe(t));
    if (t.text == "if") {
      ++at_;
      s.kind = Stmt::Kind::If;
      expect("(");
      s.expr = expr();
      expect(")");
      s.branches.push_back(block());
      if (peek_word("else")) {
        ++at_;
        if (peek_word("if"))
          s.branches.push_back({stmt()});
        else
          s.branches.push_back(block());
      } else {
        s.branches.emplace_back();
      }
      return s;
    }
    if (t.text == "add") {
      ++at_;
      require_mode(Mode::Weighted, s.pos, "'add'");
      s.kind = Stmt::Kind::Add;
      expect("(");
      s.expr = expr();
      expect(")");
      s.branches.push_back(block());
      accept(";");
      return s;
    }
    if (t.text == "emit") {
      ++at_;
      require_mode(Mode::Weighted, s.pos, "'emit'");
      s.kind = Stmt::Kind::Emit;
      const Pos sp = peek().pos;
      s.symbol = symbol_of(ident("symbol"), sp);
      end_simple();
      return s;
    }
    if (t.text == "skip" || t.text == "abort") {
      ++at_;
      s.kind = t.text == "skip" ? Stmt::Kind::Skip : Stmt::Kind::Abort;
      end_simple();
      return s;
    }
    if (t.text == "tick") fail(t.pos, "'tick' is only allowed at the top level of the loop body");
    ++at_;
    s.kind = Stmt::Kind::Assign;
    s.var = var_of(t.text, t.pos);
    if (!accept(":=") && !accept("<-")) fail(peek().pos, "expected ':=' or '<-' but found " + describe(peek()));
    s.expr = expr();
    end_simple();
    return s;
  }

  // Simple statements end in ';', which may be dropped before a closing brace.
  void end_simple() {
    if (!accept(";") && !check("}")) expect(";");
  }

  // Expressions, loosest first: or, and, not, comparison, additive, multiplicative, unary.
  static Expr binary(Op op, Expr a, Expr b, Pos pos) {
    Expr e;
    e.kind = Expr::Kind::Binary;
    e.op = op;
    e.pos = pos;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
  }
  static Expr unary(Op op, Expr a, Pos pos) {
    Expr e;
    e.kind = Expr::Kind::Unary;
    e.op = op;
    e.pos = pos;
    e.args.push_back(std::move(a));
    return e;
  }

  Expr expr() {
    Expr e = conj();
    while (peek_word("or") || check("||")) {
      const Pos p = peek().pos;
      ++at_;
      e = binary(Op::Or, std::move(e), conj(), p);
    }
    return e;
  }
  Expr conj() {
    Expr e = neg();
    while (peek_word("and") || check("&&")) {
      const Pos p = peek().pos;
      ++at_;
      e = binary(Op::And, std::move(e), neg(), p);
    }
    return e;
  }
  Expr neg() {
    if (peek_word("not") || check("!")) {
      const Pos p = peek().pos;
      ++at_;
      return unary(Op::Not, neg(), p);
    }
    return comparison();
  }
  Expr comparison() {
    Expr e = additive();
    static const std::pair<std::string_view, Op> ops[] = {{"==", Op::Eq}, {"!=", Op::Ne}, {"<=", Op::Le},
                                                          {">=", Op::Ge}, {"<", Op::Lt},  {">", Op::Gt}};
    for (const auto& [text, op] : ops)
      if (check(text)) {
        const Pos p = peek().pos;
        ++at_;
        return binary(op, std::move(e), additive(), p);
      }
    return e;
  }
  Expr additive() {
    Expr e = multiplicative();
    while (check("+") || check("-")) {
      const Pos p = peek().pos;
      Op op = toks_[at_++].text == "+" ? Op::Add : Op::Sub;
      e = binary(op, std::move(e), multiplicative(), p);
    }
    return e;
  }
  Expr multiplicative() {
    Expr e = prefix();
    while (check("*")) {
      const Pos p = peek().pos;
      ++at_;
      e = binary(Op::Mul, std::move(e), prefix(), p);
    }
    return e;
  }
  Expr prefix() {
    if (check("-")) {
      const Pos p = peek().pos;
      ++at_;
      return unary(Op::Neg, prefix(), p);
    }
    return primary();
  }
  Expr primary() {
    const Token& t = peek();
    Expr e;
    e.pos = t.pos;
    if (accept("(")) {
      e = expr();
      expect(")");
      return e;
    }
    if (t.kind == Token::Kind::Number) {
      if (t.text.find('.') != std::string::npos) fail(t.pos, "expressions are integer-valued");
      return Expr{Expr::Kind::Number, integer(), 0, Op::Add, {}, t.pos};
    }
    if (t.kind != Token::Kind::Ident) fail(t.pos, "expected an expression but found " + describe(t));
    ++at_;
    if (t.text == "true" || t.text == "false") return Expr{Expr::Kind::Number, t.text == "true", 0, Op::Add, {}, t.pos};
    if (t.text == "max" || t.text == "min") {
      expect("(");
      Expr a = expr();
      expect(",");
      Expr b = expr();
      expect(")");
      return binary(t.text == "max" ? Op::Max : Op::Min, std::move(a), std::move(b), t.pos);
    }
    e.kind = Expr::Kind::Variable;
    e.var = var_of(t.text, t.pos);
    return e;
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
  Mode mode_ = Mode::Probabilistic;
  const Alphabet* alphabet_ = nullptr;
  std::vector<Variable> declared_;
};

inline Program parse_program(std::string_view text) { return Parser(text).parse(); }

}  // namespace qti::program
