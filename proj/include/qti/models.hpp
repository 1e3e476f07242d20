#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qti/errors.hpp"
#include "qti/functors.hpp"
#include "qti/laws.hpp"
#include "qti/rational.hpp"

namespace qti {

/// Ordered label set; symbols are addressed by their position.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      index_.emplace(symbols_[i], static_cast<Symbol>(i));
  }

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const std::string& name(Symbol a) const { return symbols_.at(a); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  bool has_duplicates() const { return index_.size() != symbols_.size(); }

  std::optional<Symbol> find(std::string_view s) const {
    auto it = index_.find(std::string(s));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  Symbol at(std::string_view s) const {
    auto a = find(s);
    if (!a) throw AlphabetMismatch("unknown symbol '" + std::string(s) + "'");
    return *a;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Symbol> index_;
};

/// Row successor index standing for the target state.
inline constexpr std::size_t kTarget = std::numeric_limits<std::size_t>::max();
/// Name of the target in serialized rows, and of the extra state and symbol added when
/// a terminating chain is turned into a never-terminating one.
inline constexpr std::string_view kStarName = "*";

using DistRow = std::vector<std::pair<std::size_t, Rational>>;

struct LabeledMc {
  Alphabet alphabet;
  std::vector<std::string> states;
  std::vector<Symbol> label;
  std::vector<DistRow> trans;  // successor kTarget is the target
  std::size_t initial = 0;

  std::size_t size() const { return states.size(); }
  McStep<std::size_t> step(std::size_t x) const {
    McStep<std::size_t> s;
    s.label = label[x];
    for (const auto& [y, p] : trans[x]) {
      if (y == kTarget)
        s.target += p;
      else
        s.succ.emplace_back(y, p);
    }
    return s;
  }
  friend bool operator==(const LabeledMc&, const LabeledMc&) = default;
};

struct MarkovRewardModel {
  Alphabet alphabet;
  std::vector<std::string> states;
  std::vector<Symbol> label;
  std::vector<std::uint64_t> reward;
  std::vector<DistRow> trans;
  std::size_t initial = 0;

  std::size_t size() const { return states.size(); }
  MrmStep<std::size_t> step(std::size_t x) const {
    MrmStep<std::size_t> s;
    s.chain.label = label[x];
    s.reward = reward[x];
    for (const auto& [y, p] : trans[x]) {
      if (y == kTarget)
        s.chain.target += p;
      else
        s.chain.succ.emplace_back(y, p);
    }
    return s;
  }
  LabeledMc chain() const { return {alphabet, states, label, trans, initial}; }
  friend bool operator==(const MarkovRewardModel&, const MarkovRewardModel&) = default;
};

struct NonTerminatingMc {
  Alphabet alphabet;
  std::vector<std::string> states;
  std::vector<Symbol> label;
  std::vector<DistRow> trans;  // no target successors
  std::size_t initial = 0;

  std::size_t size() const { return states.size(); }
  NtmcStep<std::size_t> step(std::size_t x) const { return {trans[x], label[x]}; }
  friend bool operator==(const NonTerminatingMc&, const NonTerminatingMc&) = default;
};

struct WeightedTs {
  Alphabet alphabet;
  std::vector<std::string> states;
  std::vector<WtsStep<std::size_t>> trans;
  std::size_t initial = 0;

  std::size_t size() const { return states.size(); }
  const WtsStep<std::size_t>& step(std::size_t x) const { return trans[x]; }
  friend bool operator==(const WeightedTs&, const WeightedTs&) = default;
};

struct Dfa {
  Alphabet alphabet;
  std::vector<std::string> states;
  std::vector<std::vector<std::optional<DfaEdge<std::size_t>>>> delta;  // [state][symbol]
  std::size_t initial = 0;

  std::size_t size() const { return states.size(); }
  DfaStep<std::size_t> step(std::size_t y) const {
    DfaStep<std::size_t> s;
    s.reserve(delta[y].size());
    for (std::size_t a = 0; a < delta[y].size(); ++a) {
      if (!delta[y][a])
        throw ValidationError("delta not total at (" + states[y] + ", " + alphabet.name(static_cast<Symbol>(a)) + ")");
      s.push_back(*delta[y][a]);
    }
    return s;
  }
  friend bool operator==(const Dfa&, const Dfa&) = default;
};

struct Nfa {
  Alphabet alphabet;
  std::vector<std::string> states;
  std::vector<NfaStep<std::size_t>> delta;  // [state][symbol] -> edges
  std::size_t initial = 0;

  std::size_t size() const { return states.size(); }
  const NfaStep<std::size_t>& step(std::size_t y) const { return delta[y]; }
  friend bool operator==(const Nfa&, const Nfa&) = default;
};

struct RewardMachine {
  Alphabet alphabet;
  std::vector<std::string> states;
  std::uint64_t bound = 1;  // weights lie in 1..bound
  std::vector<std::vector<std::optional<RmEdge<std::size_t>>>> delta;
  std::size_t initial = 0;

  std::size_t size() const { return states.size(); }
  RmStep<std::size_t> step(std::size_t y) const {
    RmStep<std::size_t> s;
    for (std::size_t a = 0; a < delta[y].size(); ++a) {
      if (!delta[y][a])
        throw ValidationError("delta not total at (" + states[y] + ", " + alphabet.name(static_cast<Symbol>(a)) + ")");
      s.push_back(*delta[y][a]);
    }
    return s;
  }
  friend bool operator==(const RewardMachine&, const RewardMachine&) = default;
};

struct WeightedMealy {
  Alphabet alphabet;
  std::vector<std::string> states;
  std::vector<WmmStep<std::size_t>> delta;
  std::size_t initial = 0;

  std::size_t size() const { return states.size(); }
  const WmmStep<std::size_t>& step(std::size_t y) const { return delta[y]; }
  friend bool operator==(const WeightedMealy&, const WeightedMealy&) = default;
};

// ---------------------------------------------------------------------------
// Canonical forms: rows sorted by successor (target last), set-valued entries sorted
// and deduplicated. Parsers and constructors emit canonical models so that
// structural equality is meaningful.

inline void canonicalize_row(DistRow& row) {
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  DistRow out;
  for (auto& e : row) {
    if (!out.empty() && out.back().first == e.first)
      out.back().second += e.second;
    else
      out.push_back(std::move(e));
  }
  row = std::move(out);
}

template <class T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline void canonicalize(LabeledMc& m) { for (auto& r : m.trans) canonicalize_row(r); }
inline void canonicalize(MarkovRewardModel& m) { for (auto& r : m.trans) canonicalize_row(r); }
inline void canonicalize(NonTerminatingMc& m) { for (auto& r : m.trans) canonicalize_row(r); }
inline void canonicalize(WeightedTs& m) { for (auto& r : m.trans) sort_unique(r); }
inline void canonicalize(Dfa&) {}
inline void canonicalize(RewardMachine&) {}
inline void canonicalize(Nfa& m) {
  for (auto& y : m.delta)
    for (auto& a : y) sort_unique(a);
}
inline void canonicalize(WeightedMealy& m) {
  for (auto& y : m.delta)
    for (auto& a : y) sort_unique(a);
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

namespace detail {

inline void check_common(std::vector<Violation>& out, const Alphabet& alphabet,
                         const std::vector<std::string>& states, std::size_t initial) {
  if (alphabet.empty()) out.push_back({"alphabet is empty"});
  if (alphabet.has_duplicates()) out.push_back({"alphabet has duplicate symbols"});
  if (states.empty()) out.push_back({"state set is empty"});
  std::unordered_set<std::string> seen;
  for (const auto& s : states)
    if (!seen.insert(s).second) out.push_back({"duplicate state '" + s + "'"});
  if (!states.empty() && initial >= states.size()) out.push_back({"initial state out of range"});
}

inline std::string state_name(const std::vector<std::string>& states, std::size_t x) {
  if (x == kTarget) return std::string(kStarName);
  return x < states.size() ? states[x] : "#" + std::to_string(x);
}

inline void check_labels(std::vector<Violation>& out, const Alphabet& alphabet,
                         const std::vector<std::string>& states, const std::vector<Symbol>& label) {
  if (label.size() != states.size()) {
    out.push_back({"label map is not total"});
    return;
  }
  for (std::size_t x = 0; x < label.size(); ++x)
    if (label[x] >= alphabet.size()) out.push_back({"label out of alphabet at state " + states[x]});
}

inline void check_rows(std::vector<Violation>& out, const std::vector<std::string>& states,
                       const std::vector<DistRow>& trans, bool allow_target) {
  if (trans.size() != states.size()) {
    out.push_back({"transition map is not total"});
    return;
  }
  for (std::size_t x = 0; x < trans.size(); ++x) {
    Rational sum(0);
    std::unordered_set<std::size_t> seen;
    for (const auto& [y, p] : trans[x]) {
      if (y == kTarget ? !allow_target : y >= states.size())
        out.push_back({"successor out of range at state " + states[x]});
      if (!seen.insert(y).second)
        out.push_back({"repeated successor " + state_name(states, y) + " at state " + states[x]});
      if (p.sign() <= 0 || p > Rational(1))
        out.push_back({"probability " + p.str() + " outside (0,1] at (" + states[x] + ", " +
                       state_name(states, y) + ")"});
      sum += p;
    }
    if (sum != Rational(1))
      out.push_back({"row sum " + sum.str() + " != 1 at state " + states[x]});
  }
}

template <class Delta>
void check_delta_shape(std::vector<Violation>& out, const std::vector<std::string>& states,
                       const Alphabet& alphabet, const Delta& delta) {
  if (delta.size() != states.size()) {
    out.push_back({"delta not total: wrong number of states"});
    return;
  }
  for (std::size_t y = 0; y < delta.size(); ++y)
    if (delta[y].size() != alphabet.size())
      out.push_back({"delta not total at state " + states[y] + ": wrong number of symbols"});
}

}  // namespace detail

inline std::vector<Violation> validate(const LabeledMc& m) {
  std::vector<Violation> out;
  detail::check_common(out, m.alphabet, m.states, m.initial);
  detail::check_labels(out, m.alphabet, m.states, m.label);
  detail::check_rows(out, m.states, m.trans, true);
  return out;
}

inline std::vector<Violation> validate(const MarkovRewardModel& m) {
  std::vector<Violation> out;
  detail::check_common(out, m.alphabet, m.states, m.initial);
  detail::check_labels(out, m.alphabet, m.states, m.label);
  if (m.reward.size() != m.states.size()) out.push_back({"reward map is not total"});
  detail::check_rows(out, m.states, m.trans, true);
  return out;
}

inline std::vector<Violation> validate(const NonTerminatingMc& m) {
  std::vector<Violation> out;
  detail::check_common(out, m.alphabet, m.states, m.initial);
  detail::check_labels(out, m.alphabet, m.states, m.label);
  detail::check_rows(out, m.states, m.trans, false);
  return out;
}

inline std::vector<Violation> validate(const WeightedTs& m) {
  std::vector<Violation> out;
  detail::check_common(out, m.alphabet, m.states, m.initial);
  if (m.trans.size() != m.states.size()) {
    out.push_back({"transition map is not total"});
    return out;
  }
  for (std::size_t x = 0; x < m.trans.size(); ++x)
    for (const auto& e : m.trans[x]) {
      if (e.dest && *e.dest >= m.size()) out.push_back({"successor out of range at state " + m.states[x]});
      if (e.label >= m.alphabet.size()) out.push_back({"label out of alphabet at state " + m.states[x]});
    }
  return out;
}

inline std::vector<Violation> validate(const Dfa& d) {
  std::vector<Violation> out;
  detail::check_common(out, d.alphabet, d.states, d.initial);
  detail::check_delta_shape(out, d.states, d.alphabet, d.delta);
  if (!out.empty()) return out;
  for (std::size_t y = 0; y < d.size(); ++y)
    for (std::size_t a = 0; a < d.alphabet.size(); ++a) {
      const auto& e = d.delta[y][a];
      if (!e)
        out.push_back({"delta not total at (" + d.states[y] + ", " + d.alphabet.name(static_cast<Symbol>(a)) + ")"});
      else if (e->dest >= d.size())
        out.push_back({"successor out of range at (" + d.states[y] + ", " + d.alphabet.name(static_cast<Symbol>(a)) + ")"});
    }
  return out;
}

inline std::vector<Violation> validate(const Nfa& d) {
  std::vector<Violation> out;
  detail::check_common(out, d.alphabet, d.states, d.initial);
  detail::check_delta_shape(out, d.states, d.alphabet, d.delta);
  if (!out.empty()) return out;
  for (std::size_t y = 0; y < d.size(); ++y)
    for (std::size_t a = 0; a < d.alphabet.size(); ++a)
      for (const auto& e : d.delta[y][a])
        if (e.dest >= d.size())
          out.push_back({"successor out of range at (" + d.states[y] + ", " + d.alphabet.name(static_cast<Symbol>(a)) + ")"});
  return out;
}

inline std::vector<Violation> validate(const RewardMachine& d) {
  std::vector<Violation> out;
  detail::check_common(out, d.alphabet, d.states, d.initial);
  if (d.bound == 0) out.push_back({"weight bound must be at least 1"});
  detail::check_delta_shape(out, d.states, d.alphabet, d.delta);
  if (!out.empty()) return out;
  for (std::size_t y = 0; y < d.size(); ++y)
    for (std::size_t a = 0; a < d.alphabet.size(); ++a) {
      const auto& e = d.delta[y][a];
      std::string at = "(" + d.states[y] + ", " + d.alphabet.name(static_cast<Symbol>(a)) + ")";
      if (!e) {
        out.push_back({"delta not total at " + at});
        continue;
      }
      if (e->dest >= d.size()) out.push_back({"successor out of range at " + at});
      if (e->weight < 1 || e->weight > d.bound)
        out.push_back({"weight " + std::to_string(e->weight) + " outside 1.." + std::to_string(d.bound) + " at " + at});
    }
  return out;
}

inline std::vector<Violation> validate(const WeightedMealy& d) {
  std::vector<Violation> out;
  detail::check_common(out, d.alphabet, d.states, d.initial);
  detail::check_delta_shape(out, d.states, d.alphabet, d.delta);
  if (!out.empty()) return out;
  for (std::size_t y = 0; y < d.size(); ++y)
    for (std::size_t a = 0; a < d.alphabet.size(); ++a)
      for (const auto& e : d.delta[y][a])
        if (e.dest >= d.size())
          out.push_back({"successor out of range at (" + d.states[y] + ", " + d.alphabet.name(static_cast<Symbol>(a)) + ")"});
  return out;
}

/// Throws ValidationError listing every violation, if any.
template <class M>
void require_valid(const M& m, std::string_view what) {
  auto v = validate(m);
  if (v.empty()) return;
  std::string msg = std::string(what) + " is invalid:";
  for (const auto& e : v) msg += "\n  " + e.message;
  throw ValidationError(msg);
}

inline void require_same_alphabet(const Alphabet& a, const Alphabet& b) {
  if (!(a == b)) throw AlphabetMismatch("system and requirement alphabets differ");
}

// ---------------------------------------------------------------------------
// Constructors

inline std::string join_names(std::string_view a, std::string_view b) {
  return std::string(a) + "|" + std::string(b);
}

/// DFA over weights 1..M accepting exactly the words whose sum stays below N.
/// States "1".."N" track the remaining budget, "bot" is the exhausted sink.
inline Dfa make_cost_bound_dfa(std::uint64_t n, std::uint64_t m) {
  if (n == 0 || m == 0) throw InvalidParameter("cost bound and weight bound must be at least 1");
  std::vector<std::string> symbols, states;
  for (std::uint64_t j = 1; j <= m; ++j) symbols.push_back(std::to_string(j));
  for (std::uint64_t i = 1; i <= n; ++i) states.push_back(std::to_string(i));
  states.push_back("bot");
  const std::size_t bot = n;
  Dfa d{Alphabet(symbols), states, {}, n - 1};
  d.delta.assign(n + 1, std::vector<std::optional<DfaEdge<std::size_t>>>(m));
  for (std::uint64_t i = 1; i <= n; ++i)
    for (std::uint64_t j = 1; j <= m; ++j)
      d.delta[i - 1][j - 1] = i > j ? DfaEdge<std::size_t>{i - j - 1, true} : DfaEdge<std::size_t>{bot, false};
  for (std::uint64_t j = 1; j <= m; ++j) d.delta[bot][j - 1] = DfaEdge<std::size_t>{bot, false};
  return d;
}

/// Synchronous product of two DFAs; a transition accepts iff both components do.
inline Dfa dfa_intersect(const Dfa& d1, const Dfa& d2) {
  require_same_alphabet(d1.alphabet, d2.alphabet);
  const std::size_t n2 = d2.size(), k = d1.alphabet.size();
  Dfa d{d1.alphabet, {}, {}, d1.initial * n2 + d2.initial};
  d.delta.assign(d1.size() * n2, std::vector<std::optional<DfaEdge<std::size_t>>>(k));
  for (std::size_t y1 = 0; y1 < d1.size(); ++y1)
    for (std::size_t y2 = 0; y2 < n2; ++y2) {
      d.states.push_back(join_names(d1.states[y1], d2.states[y2]));
      auto s1 = d1.step(y1), s2 = d2.step(y2);
      for (std::size_t a = 0; a < k; ++a)
        d.delta[y1 * n2 + y2][a] =
            DfaEdge<std::size_t>{s1[a].dest * n2 + s2[a].dest, s1[a].accept && s2[a].accept};
    }
  return d;
}

/// Reward machine composed with a DFA over its weights, giving a DFA over the
/// machine's input alphabet. State (y, z) has index y * |Z| + z.
inline Dfa product_rm_dfa(const RewardMachine& rm, const Dfa& cd) {
  if (cd.alphabet.size() != rm.bound)
    throw BoundMismatch("reward machine bound " + std::to_string(rm.bound) +
                        " does not match cost alphabet of size " + std::to_string(cd.alphabet.size()));
  const std::size_t nz = cd.size();
  Dfa d{rm.alphabet, {}, {}, rm.initial * nz + cd.initial};
  d.delta.assign(rm.size() * nz, std::vector<std::optional<DfaEdge<std::size_t>>>(rm.alphabet.size()));
  for (std::size_t y = 0; y < rm.size(); ++y)
    for (std::size_t z = 0; z < nz; ++z) {
      d.states.push_back(join_names(rm.states[y], cd.states[z]));
      auto step = rm_dfa_law(rm.step(y), cd.step(z));
      for (std::size_t a = 0; a < step.size(); ++a)
        d.delta[y * nz + z][a] =
            DfaEdge<std::size_t>{step[a].dest.first * nz + step[a].dest.second, step[a].accept};
    }
  return d;
}

/// Reward machine composed with the cost-bound DFA of `cd`; alias kept for the common case.
inline Dfa product_rm_costdfa(const RewardMachine& rm, const Dfa& cd) { return product_rm_dfa(rm, cd); }

/// Adds a rejecting sink for every missing DFA transition. Leaves total DFAs unchanged.
inline Dfa complete_dfa(Dfa d, std::string sink_name = "sink") {
  bool missing = false;
  for (const auto& row : d.delta)
    for (const auto& e : row) missing = missing || !e;
  if (!missing) return d;
  const std::size_t sink = d.size();
  d.states.push_back(std::move(sink_name));
  d.delta.emplace_back(d.alphabet.size(), DfaEdge<std::size_t>{sink, false});
  for (auto& row : d.delta)
    for (auto& e : row)
      if (!e) e = DfaEdge<std::size_t>{sink, false};
  return d;
}

/// Turns a terminating chain and a DFA into a never-terminating chain and a DFA with
/// the same inference value. The chain gains an absorbing state labeled with a fresh
/// end symbol; the DFA remembers the last flag and only reports it on the end symbol.
/// DFA state (y, b) has index 2 * y + b; the initial flag is false.
inline std::pair<NonTerminatingMc, Dfa> translate_to_nonterminating(const LabeledMc& c, const Dfa& d) {
  require_same_alphabet(c.alphabet, d.alphabet);
  if (c.alphabet.find(kStarName)) throw InvalidParameter("alphabet already contains the end symbol");
  std::vector<std::string> symbols = c.alphabet.symbols();
  symbols.emplace_back(kStarName);
  Alphabet ext(symbols);
  const Symbol end = static_cast<Symbol>(c.alphabet.size());
  const std::size_t star = c.size();

  NonTerminatingMc m{ext, c.states, c.label, {}, c.initial};
  m.states.emplace_back(kStarName);
  m.label.push_back(end);
  for (const auto& row : c.trans) {
    DistRow r;
    for (const auto& [y, p] : row) r.emplace_back(y == kTarget ? star : y, p);
    canonicalize_row(r);
    m.trans.push_back(std::move(r));
  }
  m.trans.push_back(DistRow{{star, Rational(1)}});

  Dfa t{ext, {}, {}, 2 * d.initial};
  t.delta.assign(2 * d.size(), std::vector<std::optional<DfaEdge<std::size_t>>>(ext.size()));
  for (std::size_t y = 0; y < d.size(); ++y) {
    auto step = d.step(y);
    for (int b = 0; b < 2; ++b) {
      const std::size_t self = 2 * y + static_cast<std::size_t>(b);
      if (t.states.size() <= self) t.states.resize(self + 1);
      t.states[self] = join_names(d.states[y], b ? "T" : "F");
      for (std::size_t a = 0; a < d.alphabet.size(); ++a)
        t.delta[self][a] = DfaEdge<std::size_t>{2 * step[a].dest + (step[a].accept ? 1 : 0), false};
      t.delta[self][end] = DfaEdge<std::size_t>{self, b == 1};
    }
  }
  return {std::move(m), std::move(t)};
}

/// Rewrites the symbol indices of a requirement so that its alphabet becomes `target`,
/// which must contain the same symbols in some order.
template <class R>
R with_alphabet(R r, const Alphabet& target) {
  if (r.alphabet == target) return r;
  if (r.alphabet.size() != target.size()) throw AlphabetMismatch("alphabets differ");
  std::vector<std::size_t> from(target.size());
  for (std::size_t a = 0; a < target.size(); ++a) {
    auto s = r.alphabet.find(target.name(static_cast<Symbol>(a)));
    if (!s) throw AlphabetMismatch("symbol '" + target.name(static_cast<Symbol>(a)) + "' missing");
    from[a] = *s;
  }
  for (auto& row : r.delta) {
    auto old = row;
    for (std::size_t a = 0; a < target.size(); ++a) row[a] = old[from[a]];
  }
  r.alphabet = target;
  return r;
}

}  // namespace qti
