#pragma once

// Distributive laws: one synchronized step of a system and a requirement, natural in
// both state types. Products instantiate them at state indices; the diagram check
// instantiates them at semantic values.

#include <array>
#include <string>
#include <string_view>
#include <utility>

#include "qti/domains.hpp"
#include "qti/errors.hpp"
#include "qti/functors.hpp"

namespace qti {

/// Deliberate single-edit defects used to show that the law checks have teeth.
enum class Mutation {
  None,
  McDfaSwapFlag,        // mc-dfa: terminating mass goes to the opposite sink
  MrmDfaDropReward,     // mrm-dfa: the step reward is not carried into the product
  NtmcDfaIgnoreAccept,  // ntmc-dfa: accepting transitions behave like rejecting ones
  WtsNfaIgnoreFlag,     // wts-nfa: every terminating edge lands in the accept sink
  WtsWmmDropPenalty,    // wts-wmm: the requirement's weight is not added
};

inline constexpr std::array<Mutation, 5> kAllMutations = {
    Mutation::McDfaSwapFlag, Mutation::MrmDfaDropReward, Mutation::NtmcDfaIgnoreAccept,
    Mutation::WtsNfaIgnoreFlag, Mutation::WtsWmmDropPenalty};

inline std::string_view mutation_name(Mutation m) {
  switch (m) {
    case Mutation::None: return "none";
    case Mutation::McDfaSwapFlag: return "mc-dfa-swap-flag";
    case Mutation::MrmDfaDropReward: return "mrm-dfa-drop-reward";
    case Mutation::NtmcDfaIgnoreAccept: return "ntmc-dfa-ignore-accept";
    case Mutation::WtsNfaIgnoreFlag: return "wts-nfa-ignore-flag";
    case Mutation::WtsWmmDropPenalty: return "wts-wmm-drop-penalty";
  }
  return "none";
}

inline Mutation parse_mutation(std::string_view name) {
  if (name == "none") return Mutation::None;
  for (Mutation m : kAllMutations)
    if (mutation_name(m) == name) return m;
  throw ConfigError("unknown mutation '" + std::string(name) + "'");
}

/// MC with target x DFA: the chain moves, the DFA reads the current label; mass that
/// terminates lands in the sink chosen by the flag of that transition.
template <class X, class Y>
ChainStep<std::pair<X, Y>> mc_dfa_law(const McStep<X>& s, const DfaStep<Y>& d,
                                      Mutation mut = Mutation::None) {
  const DfaEdge<Y>& e = d.at(s.label);
  ChainStep<std::pair<X, Y>> out;
  out.succ.reserve(s.succ.size());
  for (const auto& [x, p] : s.succ) out.succ.emplace_back(std::pair<X, Y>{x, e.dest}, p);
  bool flag = mut == Mutation::McDfaSwapFlag ? !e.accept : e.accept;
  (flag ? out.accept : out.reject) = s.target;
  return out;
}

/// Markov reward model x DFA: as above, carrying the state reward unchanged.
template <class X, class Y>
RewardChainStep<std::pair<X, Y>> mrm_dfa_law(const MrmStep<X>& s, const DfaStep<Y>& d,
                                             Mutation mut = Mutation::None) {
  return {mc_dfa_law(s.chain, d, Mutation::None),
          mut == Mutation::MrmDfaDropReward ? 0 : s.reward};
}

/// Never-terminating MC x DFA: an accepting transition sends all mass to the absorbing
/// accept state, otherwise the mass follows the chain paired with the DFA successor.
template <class X, class Y>
AbsorbingStep<std::pair<X, Y>> ntmc_dfa_law(const NtmcStep<X>& s, const DfaStep<Y>& d,
                                            Mutation mut = Mutation::None) {
  const DfaEdge<Y>& e = d.at(s.label);
  AbsorbingStep<std::pair<X, Y>> out;
  if (e.accept && mut != Mutation::NtmcDfaIgnoreAccept) {
    out.accept = Rational(1);
    return out;
  }
  out.succ.reserve(s.succ.size());
  for (const auto& [x, p] : s.succ) out.succ.emplace_back(std::pair<X, Y>{x, e.dest}, p);
  return out;
}

/// Weighted transition system x NFA: every system edge pairs with every requirement
/// edge on the same label.
template <class X, class Y>
WeightedStep<std::pair<X, Y>> wts_nfa_law(const WtsStep<X>& t, const NfaStep<Y>& d,
                                          Mutation mut = Mutation::None) {
  WeightedStep<std::pair<X, Y>> out;
  for (const auto& e : t) {
    for (const auto& r : d.at(e.label)) {
      if (e.dest)
        out.push_back({std::pair<X, Y>{*e.dest, r.dest}, false, e.weight});
      else
        out.push_back({std::nullopt, mut == Mutation::WtsNfaIgnoreFlag || r.accept, e.weight});
    }
  }
  return dedup(out);
}

/// Weighted transition system x weighted Mealy machine: as for NFAs, adding both weights.
template <class X, class Y>
WeightedStep<std::pair<X, Y>> wts_wmm_law(const WtsStep<X>& t, const WmmStep<Y>& d,
                                          Mutation mut = Mutation::None) {
  WeightedStep<std::pair<X, Y>> out;
  for (const auto& e : t) {
    for (const auto& r : d.at(e.label)) {
      std::uint64_t w = mut == Mutation::WtsWmmDropPenalty ? e.weight : checked_add(e.weight, r.weight);
      if (e.dest)
        out.push_back({std::pair<X, Y>{*e.dest, r.dest}, false, w});
      else
        out.push_back({std::nullopt, r.accept, w});
    }
  }
  return dedup(out);
}

/// Reward machine x DFA over weights: the DFA reads the weight the machine emits.
/// Weight j is symbol j - 1 of the DFA alphabet.
template <class Y, class Z>
DfaStep<std::pair<Y, Z>> rm_dfa_law(const RmStep<Y>& r, const DfaStep<Z>& d) {
  DfaStep<std::pair<Y, Z>> out;
  out.reserve(r.size());
  for (const auto& e : r) {
    if (e.weight == 0 || e.weight > d.size()) throw BoundMismatch("weight outside the cost alphabet");
    const DfaEdge<Z>& c = d[e.weight - 1];
    out.push_back({std::pair<Y, Z>{e.dest, c.dest}, c.accept});
  }
  return out;
}

}  // namespace qti
