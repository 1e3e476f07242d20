#pragma once

// Product semantics: the least fixed point of u |-> tau . F(u) . c over a product.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qti/domains.hpp"
#include "qti/errors.hpp"
#include "qti/functors.hpp"
#include "qti/linear.hpp"
#include "qti/products.hpp"

namespace qti {

// ---------------------------------------------------------------------------
// Product modalities

template <class S>
S scalar_of(const Rational& r) {
  if constexpr (std::is_same_v<S, double>)
    return r.to_double();
  else
    return r;
}

/// Probability of accepting: mass sent to the accept sink plus expected successor value.
template <class V>
auto tau_reach(const ChainStep<V>& s) {
  using S = std::decay_t<std::unwrap_reference_t<V>>;
  S out = scalar_of<S>(s.accept);
  for (const auto& [v, p] : s.succ) out += scalar_of<S>(p) * static_cast<const S&>(v);
  return out;
}

template <class V>
auto tau_absorbing(const AbsorbingStep<V>& s) {
  using S = std::decay_t<std::unwrap_reference_t<V>>;
  S out = scalar_of<S>(s.accept);
  for (const auto& [v, p] : s.succ) out += scalar_of<S>(p) * static_cast<const S&>(v);
  return out;
}

/// Probability plus partial expected reward; the step reward is earned by every
/// accepting continuation, weighted by its probability.
template <class V>
ProbReward tau_reward(const RewardChainStep<V>& s) {
  const Rational n(s.reward);
  ProbReward out{s.chain.accept, ExtRational(n * s.chain.accept)};
  for (const auto& [v, p] : s.chain.succ) {
    const ProbReward& pr = v;
    out.prob += p * pr.prob;
    out.reward = out.reward + p * (ExtRational(pr.prob * n) + pr.reward);
  }
  return out;
}

/// Cheapest way to reach the accept sink; reject-sink edges contribute nothing.
template <class V>
ExtNat tau_tropical(const WeightedStep<V>& s) {
  ExtNat best = ExtNat::infinity();
  for (const auto& e : s) {
    if (!e.dest) {
      if (e.flag) best = min(best, ExtNat(e.weight));
      continue;
    }
    const ExtNat& v = *e.dest;
    best = min(best, ExtNat(e.weight) + v);
  }
  return best;
}

/// u |-> tau . F(u) . c for a product and a modality.
template <template <class> class Step, class Value, class Tau>
auto product_transformer(const Product<Step>& p, Tau tau) {
  return [&p, tau](const ValueVector<Value>& u) {
    ValueVector<Value> next;
    next.reserve(p.size());
    for (std::size_t s = 0; s < p.size(); ++s)
      next.push_back(tau(fmap(p.rows[s], [&u](std::size_t z) { return std::cref(u[z]); })));
    return next;
  };
}

inline auto reach_transformer(const ProductMc& p) {
  return product_transformer<ChainStep, Rational>(p, [](const auto& s) { return tau_reach(s); });
}
inline auto reach_transformer(const AbsorbingProductMc& p) {
  return product_transformer<AbsorbingStep, Rational>(p, [](const auto& s) { return tau_absorbing(s); });
}
inline auto reward_transformer(const ProductRewardMc& p) {
  return product_transformer<RewardChainStep, ProbReward>(p, [](const auto& s) { return tau_reward(s); });
}
inline auto tropical_transformer(const ProductWts& p) {
  return product_transformer<WeightedStep, ExtNat>(p, [](const auto& s) { return tau_tropical(s); });
}

// ---------------------------------------------------------------------------
// Modes and reports

struct SolveMode {
  enum class Kind { Exact, Iterate, Epsilon, Bellman };
  Kind kind = Kind::Exact;
  std::size_t steps = 0;
  Rational epsilon;
  std::size_t max_iter = 100000;

  static SolveMode exact() { return {}; }
  static SolveMode iterate(std::size_t k) { return {Kind::Iterate, k, Rational(0), 0}; }
  static SolveMode approximate(Rational e, std::size_t max_iter = 100000) {
    return {Kind::Epsilon, 0, std::move(e), max_iter};
  }
  static SolveMode bellman() { return {Kind::Bellman, 0, Rational(0), 0}; }
};

enum class Method { ExactLinear, Kleene, Bellman };

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::ExactLinear: return "exact-linear";
    case Method::Kleene: return "kleene";
    case Method::Bellman: return "bellman";
  }
  return "kleene";
}

template <class D>
struct SolveReport {
  ValueVector<D> values;
  Method method = Method::Kleene;
  std::size_t iterations = 0;
  bool converged = false;
};

namespace detail {

template <class D, class Phi>
SolveReport<D> iterate_report(Phi&& phi, std::size_t n, const SolveMode& mode) {
  SolveReport<D> r;
  r.method = Method::Kleene;
  if (mode.kind == SolveMode::Kind::Iterate) {
    r.values = kleene_iterate(phi, bottom_vector<D>(n), mode.steps);
    r.iterations = mode.steps;
    r.converged = phi(r.values) == r.values;
    return r;
  }
  auto lfp = kleene_lfp<D>(phi, bottom_vector<D>(n), mode.epsilon, mode.max_iter);
  r.values = std::move(lfp.values);
  r.iterations = lfp.iterations;
  r.converged = lfp.converged;
  return r;
}

/// States from which the accept sink is reachable with positive probability.
template <template <class> class Step>
std::vector<bool> can_accept(const Product<Step>& p, auto accept_mass, auto succ_of) {
  const std::size_t n = p.size();
  std::vector<std::vector<std::size_t>> pred(n);
  std::vector<bool> good(n, false);
  std::vector<std::size_t> todo;
  for (std::size_t s = 0; s < n; ++s) {
    for (const auto& [t, q] : succ_of(p.rows[s]))
      if (!q.is_zero()) pred[t].push_back(s);
    if (!accept_mass(p.rows[s]).is_zero()) {
      good[s] = true;
      todo.push_back(s);
    }
  }
  while (!todo.empty()) {
    std::size_t t = todo.back();
    todo.pop_back();
    for (std::size_t s : pred[t])
      if (!good[s]) {
        good[s] = true;
        todo.push_back(s);
      }
  }
  return good;
}

/// Solves v = A v + rhs_k on the states that can accept, with the others pinned to 0.
/// Returns one solution per right-hand side.
template <template <class> class Step>
std::vector<ValueVector<Rational>> pinned_solve(const Product<Step>& p, const std::vector<bool>& good,
                                                auto succ_of,
                                                const std::vector<ValueVector<Rational>>& rhs) {
  const std::size_t n = p.size();
  std::vector<std::size_t> idx(n, static_cast<std::size_t>(-1));
  std::size_t m = 0;
  for (std::size_t s = 0; s < n; ++s)
    if (good[s]) idx[s] = m++;
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m)), b(m, std::vector<Rational>(rhs.size()));
  for (std::size_t s = 0; s < n; ++s) {
    if (!good[s]) continue;
    const std::size_t i = idx[s];
    a[i][i] += Rational(1);
    for (const auto& [t, q] : succ_of(p.rows[s]))
      if (good[t]) a[i][idx[t]] -= q;
    for (std::size_t k = 0; k < rhs.size(); ++k) b[i][k] = rhs[k][s];
  }
  auto x = solve_linear(a, b);
  std::vector<ValueVector<Rational>> out(rhs.size(), ValueVector<Rational>(n, Rational(0)));
  for (std::size_t s = 0; s < n; ++s)
    if (good[s])
      for (std::size_t k = 0; k < rhs.size(); ++k) out[k][s] = x[idx[s]][k];
  return out;
}

template <template <class> class Step, class Phi>
SolveReport<Rational> exact_reach(const Product<Step>& p, Phi&& phi, auto accept_mass, auto succ_of) {
  auto good = can_accept(p, accept_mass, succ_of);
  ValueVector<Rational> b(p.size());
  for (std::size_t s = 0; s < p.size(); ++s) b[s] = accept_mass(p.rows[s]);
  SolveReport<Rational> r;
  r.values = std::move(pinned_solve(p, good, succ_of, {b})[0]);
  r.method = Method::ExactLinear;
  r.iterations = 1;
  if (!(phi(r.values) == r.values)) throw InternalError("exact solution is not a fixed point");
  r.converged = true;
  return r;
}

}  // namespace detail

/// Acceptance probability of every product state.
inline SolveReport<Rational> solve_reach_prob(const ProductMc& p, const SolveMode& mode = SolveMode::exact()) {
  auto phi = reach_transformer(p);
  switch (mode.kind) {
    case SolveMode::Kind::Exact:
      return detail::exact_reach(
          p, phi, [](const ChainStep<std::size_t>& s) { return s.accept; },
          [](const ChainStep<std::size_t>& s) -> const auto& { return s.succ; });
    case SolveMode::Kind::Iterate:
    case SolveMode::Kind::Epsilon: return detail::iterate_report<Rational>(phi, p.size(), mode);
    case SolveMode::Kind::Bellman: break;
  }
  throw ConfigError("bellman mode applies to weighted products only");
}

inline SolveReport<Rational> solve_reach_prob(const AbsorbingProductMc& p,
                                              const SolveMode& mode = SolveMode::exact()) {
  auto phi = reach_transformer(p);
  switch (mode.kind) {
    case SolveMode::Kind::Exact:
      return detail::exact_reach(
          p, phi, [](const AbsorbingStep<std::size_t>& s) { return s.accept; },
          [](const AbsorbingStep<std::size_t>& s) -> const auto& { return s.succ; });
    case SolveMode::Kind::Iterate:
    case SolveMode::Kind::Epsilon: return detail::iterate_report<Rational>(phi, p.size(), mode);
    case SolveMode::Kind::Bellman: break;
  }
  throw ConfigError("bellman mode applies to weighted products only");
}

/// Acceptance probability and partial expected reward of every product state.
inline SolveReport<ProbReward> solve_partial_expected_reward(const ProductRewardMc& p,
                                                             const SolveMode& mode = SolveMode::exact()) {
  auto phi = reward_transformer(p);
  switch (mode.kind) {
    case SolveMode::Kind::Exact: {
      auto accept = [](const RewardChainStep<std::size_t>& s) { return s.chain.accept; };
      auto succ = [](const RewardChainStep<std::size_t>& s) -> const auto& { return s.chain.succ; };
      auto good = detail::can_accept(p, accept, succ);
      ValueVector<Rational> b(p.size());
      for (std::size_t s = 0; s < p.size(); ++s) b[s] = p.rows[s].chain.accept;
      auto prob = std::move(detail::pinned_solve(p, good, succ, {b})[0]);
      ValueVector<Rational> c(p.size());
      for (std::size_t s = 0; s < p.size(); ++s) c[s] = Rational(p.rows[s].reward) * prob[s];
      auto reward = std::move(detail::pinned_solve(p, good, succ, {c})[0]);
      SolveReport<ProbReward> r;
      r.values.reserve(p.size());
      for (std::size_t s = 0; s < p.size(); ++s) r.values.push_back({prob[s], ExtRational(reward[s])});
      r.method = Method::ExactLinear;
      r.iterations = 2;
      if (!(phi(r.values) == r.values)) throw InternalError("exact solution is not a fixed point");
      r.converged = true;
      return r;
    }
    case SolveMode::Kind::Iterate:
    case SolveMode::Kind::Epsilon: return detail::iterate_report<ProbReward>(phi, p.size(), mode);
    case SolveMode::Kind::Bellman: break;
  }
  throw ConfigError("bellman mode applies to weighted products only");
}

/// Least accepted weight of every product state.
inline SolveReport<ExtNat> solve_tropical(const ProductWts& p, const SolveMode& mode = SolveMode::bellman()) {
  auto phi = tropical_transformer(p);
  SolveReport<ExtNat> r;
  switch (mode.kind) {
    case SolveMode::Kind::Bellman: {
      // Non-negative weights: some optimal path is simple, so n + 1 rounds stabilize.
      auto lfp = kleene_lfp<ExtNat>(phi, bottom_vector<ExtNat>(p.size()), std::nullopt, p.size() + 2);
      if (!lfp.converged) throw InternalError("tropical iteration did not stabilize");
      r.values = std::move(lfp.values);
      r.method = Method::Bellman;
      r.iterations = lfp.iterations;
      r.converged = true;
      return r;
    }
    case SolveMode::Kind::Iterate: {
      r.values = kleene_iterate(phi, bottom_vector<ExtNat>(p.size()), mode.steps);
      r.method = Method::Kleene;
      r.iterations = mode.steps;
      r.converged = phi(r.values) == r.values;
      return r;
    }
    default: break;
  }
  throw ConfigError("weighted products support bellman and iterate modes only");
}

/// Floating-point value iteration, for benchmarking against the exact route only.
inline std::vector<double> approximate_reach_prob(const ProductMc& p, double epsilon, std::size_t max_iter) {
  auto phi = product_transformer<ChainStep, double>(p, [](const auto& s) { return tau_reach(s); });
  return kleene_lfp<double>(phi, bottom_vector<double>(p.size()), Rational(mpq_class(epsilon)),
                            max_iter)
      .values;
}

}  // namespace qti
