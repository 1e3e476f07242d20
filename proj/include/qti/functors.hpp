#pragma once

// One-step transition shapes. Each system, requirement and product kind is a map
// state -> Step<state>; the Step templates are functors, and fmap is their action
// on functions. Distributive laws and modalities are written against these types so
// the same code runs on concrete state indices and on semantic values.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "qti/rational.hpp"

namespace qti {

using Symbol = std::uint32_t;

/// D(X + {target}) x A
template <class X>
struct McStep {
  std::vector<std::pair<X, Rational>> succ;
  Rational target;
  Symbol label = 0;
  friend bool operator==(const McStep&, const McStep&) = default;
};

/// D(X + {target}) x N x A
template <class X>
struct MrmStep {
  McStep<X> chain;
  std::uint64_t reward = 0;
  friend bool operator==(const MrmStep&, const MrmStep&) = default;
};

/// D(X) x A
template <class X>
struct NtmcStep {
  std::vector<std::pair<X, Rational>> succ;
  Symbol label = 0;
  friend bool operator==(const NtmcStep&, const NtmcStep&) = default;
};

/// Element of P^f((X + {target}) x A x N); an empty `dest` is the target.
template <class X>
struct WtsEdge {
  std::optional<X> dest;
  Symbol label = 0;
  std::uint64_t weight = 0;
  friend bool operator==(const WtsEdge&, const WtsEdge&) = default;
  friend auto operator<=>(const WtsEdge&, const WtsEdge&) = default;
};
template <class X>
using WtsStep = std::vector<WtsEdge<X>>;

template <class Y>
struct DfaEdge {
  Y dest{};
  bool accept = false;
  friend bool operator==(const DfaEdge&, const DfaEdge&) = default;
  friend auto operator<=>(const DfaEdge&, const DfaEdge&) = default;
};
/// (Y x 2)^A, indexed by symbol.
template <class Y>
using DfaStep = std::vector<DfaEdge<Y>>;
/// P^f(Y x 2)^A
template <class Y>
using NfaStep = std::vector<std::vector<DfaEdge<Y>>>;

template <class Y>
struct WmmEdge {
  Y dest{};
  bool accept = false;
  std::uint64_t weight = 0;
  friend bool operator==(const WmmEdge&, const WmmEdge&) = default;
  friend auto operator<=>(const WmmEdge&, const WmmEdge&) = default;
};
/// P^f(Y x 2 x N)^A
template <class Y>
using WmmStep = std::vector<std::vector<WmmEdge<Y>>>;

template <class Y>
struct RmEdge {
  Y dest{};
  std::uint64_t weight = 1;
  friend bool operator==(const RmEdge&, const RmEdge&) = default;
};
/// (Y x [M])^A
template <class Y>
using RmStep = std::vector<RmEdge<Y>>;

/// D(Z + 2): successors plus mass sent to the accept and reject sinks.
template <class Z>
struct ChainStep {
  std::vector<std::pair<Z, Rational>> succ;
  Rational accept;
  Rational reject;
  friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

/// D(Z + 2) x N
template <class Z>
struct RewardChainStep {
  ChainStep<Z> chain;
  std::uint64_t reward = 0;
  friend bool operator==(const RewardChainStep&, const RewardChainStep&) = default;
};

/// D(Z + {accept})
template <class Z>
struct AbsorbingStep {
  std::vector<std::pair<Z, Rational>> succ;
  Rational accept;
  friend bool operator==(const AbsorbingStep&, const AbsorbingStep&) = default;
};

/// Element of P^f((Z + 2) x N); an empty `dest` is the sink selected by `flag`.
template <class Z>
struct WeightedEdge {
  std::optional<Z> dest;
  bool flag = false;
  std::uint64_t weight = 0;
  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
  friend auto operator<=>(const WeightedEdge&, const WeightedEdge&) = default;
};
template <class Z>
using WeightedStep = std::vector<WeightedEdge<Z>>;

template <class F, class X>
using mapped_t = std::decay_t<std::invoke_result_t<F&, const X&>>;

// fmap keeps distributions as formal sums: entries whose images coincide are not
// merged. Every modality is linear in the distribution, so merging is unobservable
// there; `merged` performs it where a canonical form is needed.

template <class X, class F>
auto fmap_dist(const std::vector<std::pair<X, Rational>>& d, F&& f) {
  std::vector<std::pair<mapped_t<F, X>, Rational>> out;
  out.reserve(d.size());
  for (const auto& [x, p] : d) out.emplace_back(f(x), p);
  return out;
}

template <class X, class F>
auto fmap(const McStep<X>& s, F&& f) {
  return McStep<mapped_t<F, X>>{fmap_dist(s.succ, f), s.target, s.label};
}

template <class X, class F>
auto fmap(const MrmStep<X>& s, F&& f) {
  return MrmStep<mapped_t<F, X>>{fmap(s.chain, f), s.reward};
}

template <class X, class F>
auto fmap(const NtmcStep<X>& s, F&& f) {
  return NtmcStep<mapped_t<F, X>>{fmap_dist(s.succ, f), s.label};
}

template <class X, class F>
auto fmap(const WtsStep<X>& s, F&& f) {
  WtsStep<mapped_t<F, X>> out;
  out.reserve(s.size());
  for (const auto& e : s) {
    if (e.dest)
      out.push_back({f(*e.dest), e.label, e.weight});
    else
      out.push_back({std::nullopt, e.label, e.weight});
  }
  return out;
}

template <class Y, class F>
auto fmap(const DfaStep<Y>& s, F&& f) {
  DfaStep<mapped_t<F, Y>> out;
  out.reserve(s.size());
  for (const auto& e : s) out.push_back({f(e.dest), e.accept});
  return out;
}

template <class Y, class F>
auto fmap(const NfaStep<Y>& s, F&& f) {
  NfaStep<mapped_t<F, Y>> out(s.size());
  for (std::size_t a = 0; a < s.size(); ++a)
    for (const auto& e : s[a]) out[a].push_back({f(e.dest), e.accept});
  return out;
}

template <class Y, class F>
auto fmap(const WmmStep<Y>& s, F&& f) {
  WmmStep<mapped_t<F, Y>> out(s.size());
  for (std::size_t a = 0; a < s.size(); ++a)
    for (const auto& e : s[a]) out[a].push_back({f(e.dest), e.accept, e.weight});
  return out;
}

template <class Y, class F>
auto fmap(const RmStep<Y>& s, F&& f) {
  RmStep<mapped_t<F, Y>> out;
  out.reserve(s.size());
  for (const auto& e : s) out.push_back({f(e.dest), e.weight});
  return out;
}

template <class Z, class F>
auto fmap(const ChainStep<Z>& s, F&& f) {
  return ChainStep<mapped_t<F, Z>>{fmap_dist(s.succ, f), s.accept, s.reject};
}

template <class Z, class F>
auto fmap(const RewardChainStep<Z>& s, F&& f) {
  return RewardChainStep<mapped_t<F, Z>>{fmap(s.chain, f), s.reward};
}

template <class Z, class F>
auto fmap(const AbsorbingStep<Z>& s, F&& f) {
  return AbsorbingStep<mapped_t<F, Z>>{fmap_dist(s.succ, f), s.accept};
}

template <class Z, class F>
auto fmap(const WeightedStep<Z>& s, F&& f) {
  WeightedStep<mapped_t<F, Z>> out;
  out.reserve(s.size());
  for (const auto& e : s) {
    if (e.dest)
      out.push_back({f(*e.dest), e.flag, e.weight});
    else
      out.push_back({std::nullopt, e.flag, e.weight});
  }
  return out;
}

/// Sums the masses of equal support points and drops zero masses.
template <class V>
std::vector<std::pair<V, Rational>> merged(const std::vector<std::pair<V, Rational>>& d) {
  std::vector<std::pair<V, Rational>> out;
  for (const auto& [v, p] : d) {
    bool found = false;
    for (auto& [w, q] : out) {
      if (w == v) {
        q += p;
        found = true;
        break;
      }
    }
    if (!found) out.emplace_back(v, p);
  }
  std::erase_if(out, [](const auto& e) { return e.second.is_zero(); });
  return out;
}

/// Removes repeated elements, keeping first occurrences.
template <class T>
std::vector<T> dedup(const std::vector<T>& xs) {
  std::vector<T> out;
  for (const auto& x : xs) {
    bool seen = false;
    for (const auto& y : out)
      if (y == x) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(x);
  }
  return out;
}

/// Calls `fn(z)` for every product state in the support of a product step.
template <class Z, class Fn>
void for_each_successor(const ChainStep<Z>& s, Fn&& fn) {
  for (const auto& [z, p] : s.succ)
    if (!p.is_zero()) fn(z);
}
template <class Z, class Fn>
void for_each_successor(const RewardChainStep<Z>& s, Fn&& fn) {
  for_each_successor(s.chain, fn);
}
template <class Z, class Fn>
void for_each_successor(const AbsorbingStep<Z>& s, Fn&& fn) {
  for (const auto& [z, p] : s.succ)
    if (!p.is_zero()) fn(z);
}
template <class Z, class Fn>
void for_each_successor(const WeightedStep<Z>& s, Fn&& fn) {
  for (const auto& e : s)
    if (e.dest) fn(*e.dest);
}

}  // namespace qti
