#pragma once

// Product coalgebras: each product state (x, y) maps to the distributive law applied
// to the system step at x and the requirement step at y.

#include <cstddef>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "qti/functors.hpp"
#include "qti/laws.hpp"
#include "qti/models.hpp"

namespace qti {

/// Product over a subset of X x Y. Sinks are not listed among the states: they are the
/// accept/reject targets of the Step type itself.
template <template <class> class Step>
struct Product {
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (system state, requirement state)
  std::vector<Step<std::size_t>> rows;
  std::size_t initial = 0;
  std::size_t requirement_size = 0;
  std::vector<std::size_t> index;  // x * requirement_size + y -> product state, or kAbsent

  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

  std::size_t size() const { return names.size(); }
  const Step<std::size_t>& step(std::size_t s) const { return rows[s]; }

  /// Product state of (x, y), or kAbsent when it was pruned as unreachable.
  std::size_t find(std::size_t x, std::size_t y) const { return index.at(x * requirement_size + y); }
};

using ProductMc = Product<ChainStep>;
using ProductRewardMc = Product<RewardChainStep>;
using AbsorbingProductMc = Product<AbsorbingStep>;
using ProductWts = Product<WeightedStep>;

inline constexpr std::string_view kAcceptSinkName = "#accept";
inline constexpr std::string_view kRejectSinkName = "#reject";

struct ProductOptions {
  bool reachable_only = true;  // false keeps every pair, as the law checks need
  Mutation mutation = Mutation::None;
};

namespace detail {

template <template <class> class Step, class Sys, class Req, class Law>
Product<Step> build_product(const Sys& c, const Req& d, Law law, const ProductOptions& opt) {
  using Pair = std::pair<std::size_t, std::size_t>;
  const std::size_t nx = c.size(), ny = d.size();
  Product<Step> p;
  p.requirement_size = ny;
  p.index.assign(nx * ny, Product<Step>::kAbsent);
  std::vector<Step<Pair>> raw;

  auto visit = [&](std::size_t x, std::size_t y) {
    std::size_t& slot = p.index[x * ny + y];
    if (slot != Product<Step>::kAbsent) return false;
    slot = p.pairs.size();
    p.pairs.emplace_back(x, y);
    p.names.push_back(join_names(c.states[x], d.states[y]));
    return true;
  };

  if (opt.reachable_only) {
    std::deque<Pair> todo;
    visit(c.initial, d.initial);
    todo.emplace_back(c.initial, d.initial);
    while (!todo.empty()) {
      auto [x, y] = todo.front();
      todo.pop_front();
      raw.push_back(law(c.step(x), d.step(y), opt.mutation));
      for_each_successor(raw.back(), [&](const Pair& z) {
        if (visit(z.first, z.second)) todo.push_back(z);
      });
    }
  } else {
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) {
        visit(x, y);
        raw.push_back(law(c.step(x), d.step(y), opt.mutation));
      }
  }
  p.initial = p.index[c.initial * ny + d.initial];
  p.rows.reserve(raw.size());
  for (const auto& r : raw)
    p.rows.push_back(fmap(r, [&](const Pair& z) { return p.index[z.first * ny + z.second]; }));
  return p;
}

}  // namespace detail

inline ProductMc product_mc_dfa(const LabeledMc& c, const Dfa& d, const ProductOptions& opt = {}) {
  require_same_alphabet(c.alphabet, d.alphabet);
  return detail::build_product<ChainStep>(
      c, d, [](const auto& s, const auto& r, Mutation m) { return mc_dfa_law(s, r, m); }, opt);
}

inline ProductRewardMc product_mrm_dfa(const MarkovRewardModel& c, const Dfa& d,
                                       const ProductOptions& opt = {}) {
  require_same_alphabet(c.alphabet, d.alphabet);
  return detail::build_product<RewardChainStep>(
      c, d, [](const auto& s, const auto& r, Mutation m) { return mrm_dfa_law(s, r, m); }, opt);
}

inline AbsorbingProductMc product_ntmc_dfa(const NonTerminatingMc& c, const Dfa& d,
                                           const ProductOptions& opt = {}) {
  require_same_alphabet(c.alphabet, d.alphabet);
  return detail::build_product<AbsorbingStep>(
      c, d, [](const auto& s, const auto& r, Mutation m) { return ntmc_dfa_law(s, r, m); }, opt);
}

inline ProductWts product_wts_nfa(const WeightedTs& c, const Nfa& d, const ProductOptions& opt = {}) {
  require_same_alphabet(c.alphabet, d.alphabet);
  return detail::build_product<WeightedStep>(
      c, d, [](const auto& s, const auto& r, Mutation m) { return wts_nfa_law(s, r, m); }, opt);
}

inline ProductWts product_wts_wmm(const WeightedTs& c, const WeightedMealy& d,
                                  const ProductOptions& opt = {}) {
  require_same_alphabet(c.alphabet, d.alphabet);
  return detail::build_product<WeightedStep>(
      c, d, [](const auto& s, const auto& r, Mutation m) { return wts_wmm_law(s, r, m); }, opt);
}

}  // namespace qti
