#pragma once

// Reference implementations used only by the tests. They work directly on paths and
// words, without modalities or products, so that agreement with the library is
// evidence rather than a restatement.

#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "qti/models.hpp"
#include "qti/oracle.hpp"
#include "qti/products.hpp"

namespace ref {

using qti::Rational;
using Word = std::vector<qti::Symbol>;

inline qti::Trace trace(const Word& w) {
  qti::Trace t;
  for (auto a : w) t.push_back(a);
  return t;
}

inline Word word(const qti::Trace& t) {
  Word w;
  for (std::size_t i = 0; i < t.size(); ++i) w.push_back(t[i]);
  return w;
}

/// Probability of each terminating trace of length <= k, by walking every path.
inline std::map<Word, Rational> mc_traces(const qti::LabeledMc& c, std::size_t x, std::size_t k) {
  std::map<Word, Rational> out;
  struct Frame {
    std::size_t x;
    Word w;
    Rational p;
  };
  std::vector<Frame> stack{{x, {}, Rational(1)}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    f.w.push_back(c.label[f.x]);
    if (f.w.size() > k) continue;
    for (const auto& [y, p] : c.trans[f.x]) {
      if (y == qti::kTarget)
        out[f.w] += f.p * p;
      else
        stack.push_back({y, f.w, f.p * p});
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

/// (trace, reward) of each terminating path of length <= k; the reward of a path is the
/// sum of the rewards of every state on it.
inline std::map<std::pair<Word, std::uint64_t>, Rational> mrm_traces(const qti::MarkovRewardModel& c,
                                                                     std::size_t x, std::size_t k) {
  std::map<std::pair<Word, std::uint64_t>, Rational> out;
  struct Frame {
    std::size_t x;
    Word w;
    std::uint64_t r;
    Rational p;
  };
  std::vector<Frame> stack{{x, {}, 0, Rational(1)}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    f.w.push_back(c.label[f.x]);
    f.r += c.reward[f.x];
    if (f.w.size() > k) continue;
    for (const auto& [y, p] : c.trans[f.x]) {
      if (y == qti::kTarget)
        out[{f.w, f.r}] += f.p * p;
      else
        stack.push_back({y, f.w, f.r, f.p * p});
    }
  }
  return out;
}

/// Minimal weight of each terminating trace of length <= k of a weighted system.
inline std::map<Word, std::set<std::uint64_t>> wts_traces(const qti::WeightedTs& c, std::size_t x, std::size_t k) {
  std::map<Word, std::set<std::uint64_t>> out;
  struct Frame {
    std::size_t x;
    Word w;
    std::uint64_t m;
  };
  std::vector<Frame> stack{{x, {}, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.w.size() >= k) continue;
    for (const auto& e : c.trans[f.x]) {
      Word w = f.w;
      w.push_back(e.label);
      if (!e.dest)
        out[w].insert(f.m + e.weight);
      else
        stack.push_back({*e.dest, w, f.m + e.weight});
    }
  }
  return out;
}

/// All words of length 1..k over `n` symbols.
inline std::vector<Word> all_words(std::size_t n, std::size_t k) {
  std::vector<Word> out, layer{{}};
  for (std::size_t len = 1; len <= k; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (std::size_t a = 0; a < n; ++a) {
        Word v = w;
        v.push_back(static_cast<qti::Symbol>(a));
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

/// A DFA accepts a word when the flag of the last transition taken is set.
inline bool dfa_accepts(const qti::Dfa& d, std::size_t y, const Word& w) {
  bool flag = false;
  for (auto a : w) {
    const auto& e = *d.delta[y][a];
    y = e.dest;
    flag = e.accept;
  }
  return !w.empty() && flag;
}

/// Some run ends with an accepting transition.
inline bool nfa_accepts(const qti::Nfa& d, std::size_t y, const Word& w) {
  std::set<std::pair<std::size_t, bool>> cur{{y, false}};
  for (auto a : w) {
    std::set<std::pair<std::size_t, bool>> next;
    for (const auto& [s, f] : cur)
      for (const auto& e : d.delta[s][a]) next.insert({e.dest, e.accept});
    cur = std::move(next);
  }
  if (w.empty()) return false;
  for (const auto& [s, f] : cur)
    if (f) return true;
  return false;
}

/// Smallest penalty the machine assigns to `w` on an accepting run, if any.
inline std::optional<std::uint64_t> wmm_penalty(const qti::WeightedMealy& d, std::size_t y, const Word& w) {
  std::map<std::pair<std::size_t, bool>, std::uint64_t> cur{{{y, false}, 0}};
  for (auto a : w) {
    std::map<std::pair<std::size_t, bool>, std::uint64_t> next;
    for (const auto& [sf, m] : cur)
      for (const auto& e : d.delta[sf.first][a]) {
        auto key = std::make_pair(e.dest, e.accept);
        auto it = next.find(key);
        if (it == next.end() || it->second > m + e.weight) next[key] = m + e.weight;
      }
    cur = std::move(next);
  }
  std::optional<std::uint64_t> best;
  if (w.empty()) return best;
  for (const auto& [sf, m] : cur)
    if (sf.second && (!best || m < *best)) best = m;
  return best;
}

/// Dijkstra from every product state to the accept sink; nullopt means unreachable.
inline std::vector<std::optional<std::uint64_t>> dijkstra_to_accept(const qti::ProductWts& p) {
  const std::size_t n = p.size();
  // Reverse edges; index n stands for the accept sink.
  std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> rev(n + 1);
  for (std::size_t z = 0; z < n; ++z)
    for (const auto& e : p.rows[z]) {
      if (e.dest)
        rev[*e.dest].push_back({z, e.weight});
      else if (e.flag)
        rev[n].push_back({z, e.weight});
    }
  std::vector<std::optional<std::uint64_t>> dist(n + 1);
  using Item = std::pair<std::uint64_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[n] = 0;
  pq.push({0, n});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (dist[v] && *dist[v] < d) continue;
    for (const auto& [u, w] : rev[v])
      if (!dist[u] || *dist[u] > d + w) {
        dist[u] = d + w;
        pq.push({d + w, u});
      }
  }
  dist.pop_back();
  return dist;
}

/// Acceptance probability of a product chain by plain Gauss-Jordan elimination over
/// the states from which the accept sink is reachable.
inline std::vector<Rational> solve_by_elimination(const qti::ProductMc& p) {
  const std::size_t n = p.size();
  std::vector<bool> good(n, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t z = 0; z < n; ++z) {
      if (good[z]) continue;
      bool g = p.rows[z].accept != 0;
      for (const auto& [w, q] : p.rows[z].succ) g = g || (q != 0 && good[w]);
      if (g) good[z] = changed = true;
    }
  }
  std::vector<std::size_t> idx(n, SIZE_MAX);
  std::vector<std::size_t> vars;
  for (std::size_t z = 0; z < n; ++z)
    if (good[z]) {
      idx[z] = vars.size();
      vars.push_back(z);
    }
  const std::size_t m = vars.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = p.rows[vars[i]];
    a[i][i] += 1;
    for (const auto& [w, q] : row.succ)
      if (good[w]) a[i][idx[w]] -= q;
    a[i][m] = row.accept;
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (a[piv][col] == 0) ++piv;
    std::swap(a[piv], a[col]);
    const Rational inv = Rational(1) / a[col][col];
    for (auto& v : a[col]) v *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c2 = col; c2 <= m; ++c2) a[r][c2] -= f * a[col][c2];
    }
  }
  std::vector<Rational> out(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) out[vars[i]] = a[i][m];
  return out;
}

}  // namespace ref
