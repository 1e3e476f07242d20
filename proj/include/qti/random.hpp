#pragma once

// Seeded generators for models and for finite semantic values. Rows use denominators
// of at most 16, weights lie in 1..5 and automaton edges accept with probability 1/4.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qti/models.hpp"
#include "qti/oracle.hpp"

namespace qti {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform integer in [lo, hi].
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(gen_);
  }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, n - 1)); }
  bool chance(std::uint64_t num, std::uint64_t den) { return uniform(1, den) <= num; }

  /// Splits `units` into `parts` non-negative integers, each at least `floor`.
  std::vector<std::uint64_t> split(std::uint64_t units, std::size_t parts, std::uint64_t floor) {
    std::vector<std::uint64_t> out(parts, floor);
    for (std::uint64_t u = floor * parts; u < units; ++u) ++out[index(parts)];
    return out;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline Alphabet small_alphabet(std::size_t k) {
  static const char* names[] = {"a", "b", "c", "d", "e", "f"};
  std::vector<std::string> s;
  for (std::size_t i = 0; i < k; ++i) s.emplace_back(names[i]);
  return Alphabet(s);
}

inline Alphabet cost_alphabet(std::uint64_t m) {
  std::vector<std::string> s;
  for (std::uint64_t j = 1; j <= m; ++j) s.push_back(std::to_string(j));
  return Alphabet(s);
}

inline std::vector<std::string> numbered_states(const std::string& prefix, std::size_t n) {
  std::vector<std::string> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(prefix + std::to_string(i));
  return s;
}

/// Full distribution over up to three of `candidates` (kTarget may be among them).
inline DistRow random_row(Rng& rng, const std::vector<std::size_t>& candidates) {
  const std::uint64_t den = rng.uniform(1, 16);
  const std::size_t support =
      static_cast<std::size_t>(rng.uniform(1, std::min<std::uint64_t>({3, den, candidates.size()})));
  std::vector<std::size_t> pick = candidates;
  std::shuffle(pick.begin(), pick.end(), rng.engine());
  pick.resize(support);
  auto units = rng.split(den, support, 1);
  DistRow row;
  for (std::size_t i = 0; i < support; ++i)
    row.emplace_back(pick[i], Rational(static_cast<long>(units[i]), static_cast<long>(den)));
  canonicalize_row(row);
  return row;
}

inline std::vector<std::size_t> state_candidates(std::size_t n, bool with_target) {
  std::vector<std::size_t> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(i);
  if (with_target) c.push_back(kTarget);
  return c;
}

inline LabeledMc random_mc(Rng& rng, std::size_t n, const Alphabet& alphabet) {
  LabeledMc c{alphabet, numbered_states("x", n), {}, {}, 0};
  auto cand = state_candidates(n, true);
  for (std::size_t x = 0; x < n; ++x) {
    c.label.push_back(static_cast<Symbol>(rng.index(alphabet.size())));
    c.trans.push_back(random_row(rng, cand));
  }
  return c;
}

inline MarkovRewardModel random_mrm(Rng& rng, std::size_t n, const Alphabet& alphabet) {
  LabeledMc c = random_mc(rng, n, alphabet);
  MarkovRewardModel m{c.alphabet, c.states, c.label, {}, c.trans, 0};
  for (std::size_t x = 0; x < n; ++x) m.reward.push_back(rng.uniform(0, 5));
  return m;
}

inline NonTerminatingMc random_ntmc(Rng& rng, std::size_t n, const Alphabet& alphabet) {
  NonTerminatingMc c{alphabet, numbered_states("x", n), {}, {}, 0};
  auto cand = state_candidates(n, false);
  for (std::size_t x = 0; x < n; ++x) {
    c.label.push_back(static_cast<Symbol>(rng.index(alphabet.size())));
    c.trans.push_back(random_row(rng, cand));
  }
  return c;
}

inline WeightedTs random_wts(Rng& rng, std::size_t n, const Alphabet& alphabet) {
  WeightedTs c{alphabet, numbered_states("x", n), {}, 0};
  for (std::size_t x = 0; x < n; ++x) {
    WtsStep<std::size_t> row;
    const std::size_t edges = static_cast<std::size_t>(rng.uniform(0, 3));
    for (std::size_t i = 0; i < edges; ++i) {
      std::size_t t = rng.index(n + 1);
      row.push_back({t == n ? std::nullopt : std::optional<std::size_t>(t),
                     static_cast<Symbol>(rng.index(alphabet.size())), rng.uniform(1, 5)});
    }
    c.trans.push_back(std::move(row));
  }
  canonicalize(c);
  return c;
}

inline Dfa random_dfa(Rng& rng, std::size_t n, const Alphabet& alphabet) {
  Dfa d{alphabet, numbered_states("y", n), {}, 0};
  d.delta.assign(n, std::vector<std::optional<DfaEdge<std::size_t>>>(alphabet.size()));
  for (auto& row : d.delta)
    for (auto& e : row) e = DfaEdge<std::size_t>{rng.index(n), rng.chance(1, 4)};
  return d;
}

inline Nfa random_nfa(Rng& rng, std::size_t n, const Alphabet& alphabet) {
  Nfa d{alphabet, numbered_states("y", n), {}, 0};
  d.delta.assign(n, NfaStep<std::size_t>(alphabet.size()));
  for (auto& row : d.delta)
    for (auto& edges : row) {
      const std::size_t count = static_cast<std::size_t>(rng.uniform(0, 2));
      for (std::size_t i = 0; i < count; ++i) edges.push_back({rng.index(n), rng.chance(1, 4)});
    }
  canonicalize(d);
  return d;
}

inline WeightedMealy random_wmm(Rng& rng, std::size_t n, const Alphabet& alphabet) {
  WeightedMealy d{alphabet, numbered_states("y", n), {}, 0};
  d.delta.assign(n, WmmStep<std::size_t>(alphabet.size()));
  for (auto& row : d.delta)
    for (auto& edges : row) {
      const std::size_t count = static_cast<std::size_t>(rng.uniform(0, 2));
      for (std::size_t i = 0; i < count; ++i) edges.push_back({rng.index(n), rng.chance(1, 4), rng.uniform(1, 5)});
    }
  canonicalize(d);
  return d;
}

inline RewardMachine random_rm(Rng& rng, std::size_t n, const Alphabet& alphabet, std::uint64_t bound) {
  RewardMachine d{alphabet, numbered_states("y", n), bound, {}, 0};
  d.delta.assign(n, std::vector<std::optional<RmEdge<std::size_t>>>(alphabet.size()));
  for (auto& row : d.delta)
    for (auto& e : row) e = RmEdge<std::size_t>{rng.index(n), rng.uniform(1, bound)};
  return d;
}

// ---------------------------------------------------------------------------
// Finite semantic values for the diagram check

inline Trace random_trace(Rng& rng, std::size_t symbols, std::size_t max_len) {
  Trace t;
  const std::size_t len = static_cast<std::size_t>(rng.uniform(1, max_len));
  for (std::size_t i = 0; i < len; ++i) t.push_back(static_cast<Symbol>(rng.index(symbols)));
  return t;
}

inline TraceDist random_trace_dist(Rng& rng, std::size_t symbols) {
  TraceDist d;
  const std::size_t n = static_cast<std::size_t>(rng.uniform(0, 3));
  if (n == 0) return d;
  const std::uint64_t den = rng.uniform(1, 16);
  auto units = rng.split(rng.uniform(0, den), n, 0);
  for (std::size_t i = 0; i < n; ++i)
    d.add(random_trace(rng, symbols, 3), Rational(static_cast<long>(units[i]), static_cast<long>(den)));
  return d;
}

inline TraceRewardDist random_trace_reward_dist(Rng& rng, std::size_t symbols) {
  TraceRewardDist d;
  const std::size_t n = static_cast<std::size_t>(rng.uniform(0, 3));
  if (n == 0) return d;
  const std::uint64_t den = rng.uniform(1, 16);
  auto units = rng.split(rng.uniform(0, den), n, 0);
  for (std::size_t i = 0; i < n; ++i)
    d.add({random_trace(rng, symbols, 3), rng.uniform(0, 5)},
          Rational(static_cast<long>(units[i]), static_cast<long>(den)));
  return d;
}

inline LangSet random_lang(Rng& rng, std::size_t symbols) {
  LangSet l;
  const std::size_t n = static_cast<std::size_t>(rng.uniform(0, 4));
  for (std::size_t i = 0; i < n; ++i) l.words.insert(random_trace(rng, symbols, 3));
  return l;
}

inline TraceWeightSet random_trace_weight_set(Rng& rng, std::size_t symbols) {
  TraceWeightSet t;
  const std::size_t n = static_cast<std::size_t>(rng.uniform(0, 4));
  for (std::size_t i = 0; i < n; ++i) t.pairs.insert({random_trace(rng, symbols, 3), rng.uniform(1, 5)});
  return t;
}

inline RmValue random_rm_value(Rng& rng, std::size_t symbols, std::uint64_t bound) {
  RmValue f;
  const std::size_t n = static_cast<std::size_t>(rng.uniform(0, 4));
  for (std::size_t i = 0; i < n; ++i) {
    Trace w = random_trace(rng, symbols, 3);
    WeightSeq s;
    const std::size_t len = static_cast<std::size_t>(rng.uniform(1, 3));
    for (std::size_t j = 0; j < len; ++j) s.push_back(rng.uniform(1, bound));
    f.seq[w] = s;
  }
  return f;
}

}  // namespace qti
