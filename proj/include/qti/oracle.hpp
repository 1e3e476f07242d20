#pragma once

// Depth-bounded direct semantics of systems and requirements, and the queries that
// combine them. Everything here is computed from the one-step modalities by Kleene
// iteration from bottom; no product is ever built.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qti/domains.hpp"
#include "qti/errors.hpp"
#include "qti/functors.hpp"
#include "qti/models.hpp"

namespace qti {

/// Finite word over an alphabet of at most 256 symbols, stored one byte per symbol.
class Trace {
 public:
  Trace() = default;
  static Trace of(std::initializer_list<Symbol> symbols) {
    Trace t;
    for (Symbol a : symbols) t.push_back(a);
    return t;
  }
  static Trace single(Symbol a) { return of({a}); }

  std::size_t size() const { return s_.size(); }
  bool empty() const { return s_.empty(); }
  Symbol operator[](std::size_t i) const { return static_cast<unsigned char>(s_[i]); }

  void push_back(Symbol a) {
    if (a > 255) throw InvalidParameter("trace symbols are limited to 256");
    s_.push_back(static_cast<char>(a));
  }
  Trace prepend(Symbol a) const {
    if (a > 255) throw InvalidParameter("trace symbols are limited to 256");
    Trace t;
    t.s_.reserve(s_.size() + 1);
    t.s_.push_back(static_cast<char>(a));
    t.s_ += s_;
    return t;
  }
  Trace prefix(std::size_t n) const {
    Trace t;
    t.s_ = s_.substr(0, n);
    return t;
  }
  const std::string& bytes() const { return s_; }

  std::string str(const Alphabet& alphabet, std::string_view sep = ".") const {
    std::string out;
    for (std::size_t i = 0; i < size(); ++i) {
      if (i) out += sep;
      out += alphabet.name((*this)[i]);
    }
    return out;
  }

  friend bool operator==(const Trace&, const Trace&) = default;
  friend auto operator<=>(const Trace& a, const Trace& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.s_ <=> b.s_;
  }

 private:
  std::string s_;
};

struct TraceHash {
  std::size_t operator()(const Trace& t) const noexcept { return std::hash<std::string>{}(t.bytes()); }
};

/// Finite sub-distribution over traces. Zero masses are never stored.
struct TraceDist {
  std::unordered_map<Trace, Rational, TraceHash> mass;

  void add(const Trace& w, const Rational& p) {
    if (p.is_zero()) return;
    auto [it, fresh] = mass.try_emplace(w, p);
    if (!fresh) {
      it->second += p;
      if (it->second.is_zero()) mass.erase(it);
    }
  }
  Rational operator()(const Trace& w) const {
    auto it = mass.find(w);
    return it == mass.end() ? Rational(0) : it->second;
  }
  Rational total() const {
    Rational s(0);
    for (const auto& [w, p] : mass) s += p;
    return s;
  }
  std::vector<std::pair<Trace, Rational>> sorted() const {
    std::vector<std::pair<Trace, Rational>> out(mass.begin(), mass.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }
  friend bool operator==(const TraceDist&, const TraceDist&) = default;
};

struct TraceWeight {
  Trace trace;
  std::uint64_t weight = 0;
  friend bool operator==(const TraceWeight&, const TraceWeight&) = default;
  friend auto operator<=>(const TraceWeight&, const TraceWeight&) = default;
};

struct TraceWeightHash {
  std::size_t operator()(const TraceWeight& t) const noexcept {
    return TraceHash{}(t.trace) ^ (std::hash<std::uint64_t>{}(t.weight) * 0x9e3779b97f4a7c15ULL);
  }
};

/// Sub-distribution over (trace, accumulated reward) pairs.
struct TraceRewardDist {
  std::unordered_map<TraceWeight, Rational, TraceWeightHash> mass;

  void add(const TraceWeight& w, const Rational& p) {
    if (p.is_zero()) return;
    auto [it, fresh] = mass.try_emplace(w, p);
    if (!fresh) {
      it->second += p;
      if (it->second.is_zero()) mass.erase(it);
    }
  }
  Rational total() const {
    Rational s(0);
    for (const auto& [w, p] : mass) s += p;
    return s;
  }
  std::vector<std::pair<TraceWeight, Rational>> sorted() const {
    std::vector<std::pair<TraceWeight, Rational>> out(mass.begin(), mass.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }
  friend bool operator==(const TraceRewardDist&, const TraceRewardDist&) = default;
};

/// Set of (trace, weight) pairs; one trace may carry several weights.
struct TraceWeightSet {
  std::unordered_set<TraceWeight, TraceWeightHash> pairs;
  bool contains(const Trace& w, std::uint64_t m) const { return pairs.count({w, m}) > 0; }
  std::vector<TraceWeight> sorted() const {
    std::vector<TraceWeight> out(pairs.begin(), pairs.end());
    std::sort(out.begin(), out.end());
    return out;
  }
  friend bool operator==(const TraceWeightSet&, const TraceWeightSet&) = default;
};

/// Finite language of non-empty words.
struct LangSet {
  std::unordered_set<Trace, TraceHash> words;
  bool contains(const Trace& w) const { return words.count(w) > 0; }
  std::size_t size() const { return words.size(); }
  std::vector<Trace> sorted() const {
    std::vector<Trace> out(words.begin(), words.end());
    std::sort(out.begin(), out.end());
    return out;
  }
  friend bool operator==(const LangSet&, const LangSet&) = default;
};

using WeightSeq = std::vector<std::uint64_t>;

/// Partial map from words to the weight sequence a reward machine emits on them.
struct RmValue {
  std::unordered_map<Trace, WeightSeq, TraceHash> seq;
  friend bool operator==(const RmValue&, const RmValue&) = default;
};

/// Distribution over words of one fixed length (the depth).
struct DepthDist {
  std::size_t depth = 0;
  std::unordered_map<Trace, Rational, TraceHash> mass;

  static DepthDist unit() {
    DepthDist d;
    d.mass.emplace(Trace(), Rational(1));
    return d;
  }
  void add(const Trace& w, const Rational& p) {
    if (p.is_zero()) return;
    auto [it, fresh] = mass.try_emplace(w, p);
    if (!fresh) it->second += p;
  }
  Rational operator()(const Trace& w) const {
    auto it = mass.find(w);
    return it == mass.end() ? Rational(0) : it->second;
  }
  std::vector<std::pair<Trace, Rational>> sorted() const {
    std::vector<std::pair<Trace, Rational>> out(mass.begin(), mass.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }
  friend bool operator==(const DepthDist&, const DepthDist&) = default;
};

// ---------------------------------------------------------------------------
// Modalities. Each folds one step whose successors already carry semantic values.
// V is either the value type itself or a reference_wrapper to it.

template <class V>
TraceDist tau_mc(const McStep<V>& s) {
  TraceDist out;
  out.add(Trace::single(s.label), s.target);
  for (const auto& [v, p] : s.succ) {
    const TraceDist& nu = v;
    for (const auto& [w, q] : nu.mass) out.add(w.prepend(s.label), p * q);
  }
  return out;
}

/// The state reward is counted on every step, including the terminating one.
template <class V>
TraceRewardDist tau_mrm(const MrmStep<V>& s) {
  TraceRewardDist out;
  const Symbol a = s.chain.label;
  out.add({Trace::single(a), s.reward}, s.chain.target);
  for (const auto& [v, p] : s.chain.succ) {
    const TraceRewardDist& nu = v;
    for (const auto& [wm, q] : nu.mass) out.add({wm.trace.prepend(a), checked_add(wm.weight, s.reward)}, p * q);
  }
  return out;
}

/// Successor distributions are first marginalized to the smallest depth in the support.
template <class V>
DepthDist tau_ntmc(const NtmcStep<V>& s) {
  std::size_t m = static_cast<std::size_t>(-1);
  for (const auto& [v, p] : s.succ) {
    const DepthDist& sigma = v;
    if (!p.is_zero()) m = std::min(m, sigma.depth);
  }
  DepthDist out;
  if (m == static_cast<std::size_t>(-1)) return out;
  out.depth = m + 1;
  for (const auto& [v, p] : s.succ) {
    const DepthDist& sigma = v;
    if (p.is_zero()) continue;
    for (const auto& [w, q] : sigma.mass) out.add(w.prefix(m).prepend(s.label), p * q);
  }
  return out;
}

template <class V>
TraceWeightSet tau_wts(const WtsStep<V>& t) {
  TraceWeightSet out;
  for (const auto& e : t) {
    if (!e.dest) {
      out.pairs.insert({Trace::single(e.label), e.weight});
      continue;
    }
    const TraceWeightSet& next = *e.dest;
    for (const auto& [w, n] : next.pairs) out.pairs.insert({w.prepend(e.label), checked_add(e.weight, n)});
  }
  return out;
}

template <class V>
LangSet tau_dfa(const DfaStep<V>& d) {
  LangSet out;
  for (std::size_t a = 0; a < d.size(); ++a) {
    const Symbol sym = static_cast<Symbol>(a);
    if (d[a].accept) out.words.insert(Trace::single(sym));
    const LangSet& next = d[a].dest;
    for (const auto& w : next.words) out.words.insert(w.prepend(sym));
  }
  return out;
}

template <class V>
LangSet tau_nfa(const NfaStep<V>& d) {
  LangSet out;
  for (std::size_t a = 0; a < d.size(); ++a) {
    const Symbol sym = static_cast<Symbol>(a);
    for (const auto& e : d[a]) {
      if (e.accept) out.words.insert(Trace::single(sym));
      const LangSet& next = e.dest;
      for (const auto& w : next.words) out.words.insert(w.prepend(sym));
    }
  }
  return out;
}

template <class V>
TraceWeightSet tau_wmm(const WmmStep<V>& d) {
  TraceWeightSet out;
  for (std::size_t a = 0; a < d.size(); ++a) {
    const Symbol sym = static_cast<Symbol>(a);
    for (const auto& e : d[a]) {
      if (e.accept) out.pairs.insert({Trace::single(sym), e.weight});
      const TraceWeightSet& next = e.dest;
      for (const auto& [w, n] : next.pairs) out.pairs.insert({w.prepend(sym), checked_add(e.weight, n)});
    }
  }
  return out;
}

template <class V>
RmValue tau_rm(const RmStep<V>& d) {
  RmValue out;
  for (std::size_t a = 0; a < d.size(); ++a) {
    const Symbol sym = static_cast<Symbol>(a);
    out.seq.emplace(Trace::single(sym), WeightSeq{d[a].weight});
    const RmValue& next = d[a].dest;
    for (const auto& [w, ws] : next.seq) {
      WeightSeq s;
      s.reserve(ws.size() + 1);
      s.push_back(d[a].weight);
      s.insert(s.end(), ws.begin(), ws.end());
      out.seq.emplace(w.prepend(sym), std::move(s));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Predicate transformers  u |-> tau . F(u) . c  over all states, and their iterates.

namespace detail {

template <class Model, class Value, class Tau>
auto transformer(const Model& m, Tau tau) {
  return [&m, tau](const std::vector<Value>& u) {
    std::vector<Value> next;
    next.reserve(m.size());
    for (std::size_t x = 0; x < m.size(); ++x)
      next.push_back(tau(fmap(m.step(x), [&u](std::size_t s) { return std::cref(u[s]); })));
    return next;
  };
}

}  // namespace detail

inline auto mc_transformer(const LabeledMc& c) {
  return detail::transformer<LabeledMc, TraceDist>(
      c, [](const auto& s) { return tau_mc(s); });
}
inline auto mrm_transformer(const MarkovRewardModel& c) {
  return detail::transformer<MarkovRewardModel, TraceRewardDist>(
      c, [](const auto& s) { return tau_mrm(s); });
}
inline auto ntmc_transformer(const NonTerminatingMc& c) {
  return detail::transformer<NonTerminatingMc, DepthDist>(
      c, [](const auto& s) { return tau_ntmc(s); });
}
inline auto wts_transformer(const WeightedTs& c) {
  return detail::transformer<WeightedTs, TraceWeightSet>(
      c, [](const auto& s) { return tau_wts(s); });
}
inline auto dfa_transformer(const Dfa& d) {
  return detail::transformer<Dfa, LangSet>(d, [](const auto& s) { return tau_dfa(s); });
}
inline auto nfa_transformer(const Nfa& d) {
  return detail::transformer<Nfa, LangSet>(d, [](const auto& s) { return tau_nfa(s); });
}
inline auto wmm_transformer(const WeightedMealy& d) {
  return detail::transformer<WeightedMealy, TraceWeightSet>(
      d, [](const auto& s) { return tau_wmm(s); });
}
inline auto rm_transformer(const RewardMachine& d) {
  return detail::transformer<RewardMachine, RmValue>(d, [](const auto& s) { return tau_rm(s); });
}

inline std::vector<TraceDist> mc_semantics_all(const LabeledMc& c, std::size_t k) {
  return kleene_iterate(mc_transformer(c), std::vector<TraceDist>(c.size()), k);
}
inline std::vector<TraceRewardDist> mrm_semantics_all(const MarkovRewardModel& c, std::size_t k) {
  return kleene_iterate(mrm_transformer(c), std::vector<TraceRewardDist>(c.size()), k);
}
inline std::vector<DepthDist> ntmc_marginal_all(const NonTerminatingMc& c, std::size_t n) {
  return kleene_iterate(ntmc_transformer(c), std::vector<DepthDist>(c.size(), DepthDist::unit()), n);
}
inline std::vector<TraceWeightSet> wts_semantics_all(const WeightedTs& c, std::size_t k) {
  return kleene_iterate(wts_transformer(c), std::vector<TraceWeightSet>(c.size()), k);
}
inline std::vector<LangSet> dfa_language_all(const Dfa& d, std::size_t k) {
  return kleene_iterate(dfa_transformer(d), std::vector<LangSet>(d.size()), k);
}
inline std::vector<LangSet> nfa_language_all(const Nfa& d, std::size_t k) {
  return kleene_iterate(nfa_transformer(d), std::vector<LangSet>(d.size()), k);
}
inline std::vector<TraceWeightSet> wmm_semantics_all(const WeightedMealy& d, std::size_t k) {
  return kleene_iterate(wmm_transformer(d), std::vector<TraceWeightSet>(d.size()), k);
}
inline std::vector<RmValue> rm_semantics_all(const RewardMachine& d, std::size_t k) {
  return kleene_iterate(rm_transformer(d), std::vector<RmValue>(d.size()), k);
}

/// Distribution of traces of length <= k that reach the target from x.
inline TraceDist mc_semantics(const LabeledMc& c, std::size_t x, std::size_t k) {
  return mc_semantics_all(c, k).at(x);
}
inline TraceRewardDist mrm_semantics(const MarkovRewardModel& c, std::size_t x, std::size_t k) {
  return mrm_semantics_all(c, k).at(x);
}
inline TraceWeightSet wts_semantics(const WeightedTs& c, std::size_t x, std::size_t k) {
  return wts_semantics_all(c, k).at(x);
}
/// Accepted words of length 1..k from y.
inline LangSet dfa_language(const Dfa& d, std::size_t y, std::size_t k) { return dfa_language_all(d, k).at(y); }
inline LangSet nfa_language(const Nfa& d, std::size_t y, std::size_t k) { return nfa_language_all(d, k).at(y); }
inline TraceWeightSet wmm_semantics(const WeightedMealy& d, std::size_t y, std::size_t k) {
  return wmm_semantics_all(d, k).at(y);
}
inline RmValue rm_semantics(const RewardMachine& d, std::size_t y, std::size_t k) {
  return rm_semantics_all(d, k).at(y);
}

/// Probability of each length-n prefix of the trace measure from x.
inline DepthDist ntmc_marginal(const NonTerminatingMc& c, std::size_t x, std::size_t n) {
  if (n == 0) throw InvalidParameter("marginal depth must be at least 1");
  return ntmc_marginal_all(c, n).at(x);
}

/// Restriction of a depth-n distribution to its length-m prefixes, m <= n.
inline DepthDist marginalize(const DepthDist& sigma, std::size_t m) {
  if (m > sigma.depth) throw InvalidParameter("cannot marginalize to a larger depth");
  DepthDist out;
  out.depth = m;
  for (const auto& [w, p] : sigma.mass) out.add(w.prefix(m), p);
  return out;
}

// ---------------------------------------------------------------------------
// Queries

inline Rational query_prob(const TraceDist& nu, const LangSet& l) {
  Rational s(0);
  for (const auto& [w, p] : nu.mass)
    if (l.contains(w)) s += p;
  return s;
}

inline LangSet intersect(const LangSet& a, const LangSet& b) {
  const LangSet& small = a.size() <= b.size() ? a : b;
  const LangSet& big = a.size() <= b.size() ? b : a;
  LangSet out;
  for (const auto& w : small.words)
    if (big.contains(w)) out.words.insert(w);
  return out;
}

/// Conditional acceptance probability; empty when the condition has probability 0.
inline std::optional<Rational> query_cond(const TraceDist& nu, const LangSet& l, const LangSet& c) {
  Rational den = query_prob(nu, c);
  if (den.is_zero()) return std::nullopt;
  return query_prob(nu, intersect(l, c)) / den;
}

/// Acceptance probability and partial expected reward.
inline ProbReward query_reward(const TraceRewardDist& nu, const LangSet& l) {
  ProbReward out = DomainTraits<ProbReward>::bottom();
  Rational r(0);
  for (const auto& [wm, p] : nu.mass) {
    if (!l.contains(wm.trace)) continue;
    out.prob += p;
    r += p * Rational(wm.weight);
  }
  out.reward = r;
  return out;
}

/// Least weight of an accepted trace, infinity if none.
inline ExtNat query_tropical(const TraceWeightSet& t, const LangSet& l) {
  ExtNat best = ExtNat::infinity();
  for (const auto& [w, m] : t.pairs)
    if (l.contains(w)) best = min(best, ExtNat(m));
  return best;
}

/// Least combined weight over traces present in both sets.
inline ExtNat query_wmm(const TraceWeightSet& t, const TraceWeightSet& l) {
  std::unordered_map<Trace, std::uint64_t, TraceHash> penalty;
  for (const auto& [w, n] : l.pairs) {
    auto [it, fresh] = penalty.try_emplace(w, n);
    if (!fresh) it->second = std::min(it->second, n);
  }
  ExtNat best = ExtNat::infinity();
  for (const auto& [w, m] : t.pairs) {
    auto it = penalty.find(w);
    if (it != penalty.end()) best = min(best, ExtNat(m) + ExtNat(it->second));
  }
  return best;
}

/// Total cost of a word over the cost alphabet, where symbol i stands for weight i + 1.
inline std::uint64_t trace_cost(const Trace& w) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s = checked_add(s, w[i] + 1u);
  return s;
}

/// Probability of terminating with total cost below n.
inline Rational query_cost_bounded(const TraceDist& nu, std::uint64_t n) {
  Rational s(0);
  for (const auto& [w, p] : nu.mass)
    if (trace_cost(w) < n) s += p;
  return s;
}

/// Probability of terminating on a word to which the machine assigns total cost below n.
inline Rational query_cost_induced(const TraceDist& nu, const RmValue& f, std::uint64_t n) {
  Rational s(0);
  for (const auto& [w, p] : nu.mass) {
    auto it = f.seq.find(w);
    if (it == f.seq.end()) continue;
    std::uint64_t total = 0;
    for (auto x : it->second) total = checked_add(total, x);
    if (total < n) s += p;
  }
  return s;
}

/// Words whose emitted weight sequence (weights j read as symbol j - 1) lies in `l`.
inline LangSet query_rm_lang(const RmValue& f, const LangSet& l) {
  LangSet out;
  for (const auto& [w, ws] : f.seq) {
    Trace img;
    bool ok = true;
    for (auto x : ws) {
      if (x == 0 || x > 256) {
        ok = false;
        break;
      }
      img.push_back(static_cast<Symbol>(x - 1));
    }
    if (ok && l.contains(img)) out.words.insert(w);
  }
  return out;
}

/// T^1..T^n: the words of each length that have no proper prefix among shorter members.
inline std::vector<LangSet> partition(const LangSet& t, std::size_t n) {
  std::vector<LangSet> out(n);
  LangSet taken;
  for (std::size_t i = 1; i <= n; ++i) {
    for (const auto& w : t.words) {
      if (w.size() != i) continue;
      bool blocked = false;
      for (std::size_t j = 1; j < i && !blocked; ++j) blocked = taken.contains(w.prefix(j));
      if (!blocked) out[i - 1].words.insert(w);
    }
    for (const auto& w : out[i - 1].words) taken.words.insert(w);
  }
  return out;
}

/// Sum over i <= depth of the length-i marginal mass of T^i.
inline Rational query_safety(const DepthDist& sigma, const LangSet& t) {
  if (sigma.depth == 0) return Rational(0);
  auto parts = partition(t, sigma.depth);
  Rational s(0);
  for (const auto& [w, p] : sigma.mass) {
    for (std::size_t i = 1; i <= sigma.depth; ++i) {
      if (parts[i - 1].contains(w.prefix(i))) {
        s += p;
        break;  // the parts are prefix-disjoint, so at most one prefix matches
      }
    }
  }
  return s;
}

inline Rational query_safety(const NonTerminatingMc& c, std::size_t x, const Dfa& d, std::size_t y,
                             std::size_t k) {
  if (k == 0) return Rational(0);
  return query_safety(ntmc_marginal(c, x, k), dfa_language(d, y, k));
}

}  // namespace qti
