#pragma once

// JSON documents for models, products, solver reports and check results.
//
// Model schema (one document per model):
//   kind      mc | mrm | ntmc | wts | dfa | nfa | rm | wmm
//   alphabet  [symbol, ...]
//   states    [state, ...]
//   initial   state
//   label     {state: symbol}                          mc, mrm, ntmc
//   reward    {state: natural}                         mrm
//   trans     {state: {succ: "num/den"}}               mc, mrm ("*" is the target), ntmc
//             {state: [{to, label, weight}]}           wts ("to": "*" is the target)
//   bound     M                                        rm
//   delta     {state: {symbol: {to, accept}}}          dfa
//             {state: {symbol: [{to, accept}]}}        nfa
//             {state: {symbol: {to, weight}}}          rm
//             {state: {symbol: [{to, accept, weight}]}} wmm

#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>

#include "json.hpp"
#include "qti/lawcheck.hpp"
#include "qti/models.hpp"
#include "qti/products.hpp"
#include "qti/solvers.hpp"

namespace qti {

using Json = nlohmann::ordered_json;

using AnyModel =
    std::variant<LabeledMc, MarkovRewardModel, NonTerminatingMc, WeightedTs, Dfa, Nfa, RewardMachine, WeightedMealy>;

inline std::string_view model_kind(const AnyModel& m) {
  static constexpr std::string_view kinds[] = {"mc", "mrm", "ntmc", "wts", "dfa", "nfa", "rm", "wmm"};
  return kinds[m.index()];
}

namespace detail::json {

class Reader {
 public:
  explicit Reader(const Json& doc) : doc_(doc) {
    alphabet_ = Alphabet(strings("alphabet"));
    states_ = strings("states");
    for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);
    initial_ = state(text(field(doc_, "initial"), "initial"), "initial");
  }

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<std::string>& states() const { return states_; }
  std::size_t initial() const { return initial_; }

  static const Json& field(const Json& j, std::string_view key) {
    if (!j.is_object()) throw ParseError("expected an object while looking for '" + std::string(key) + "'");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError("missing field '" + std::string(key) + "'");
    return *it;
  }

  static std::string text(const Json& j, std::string_view what) {
    if (!j.is_string()) throw ParseError(std::string(what) + ": expected a string");
    return j.get<std::string>();
  }

  static std::uint64_t natural(const Json& j, std::string_view what) {
    if (!j.is_number_unsigned()) throw ParseError(std::string(what) + ": expected a natural number");
    return j.get<std::uint64_t>();
  }

  static bool flag(const Json& j, std::string_view what) {
    if (!j.is_boolean()) throw ParseError(std::string(what) + ": expected true or false");
    return j.get<bool>();
  }

  static Rational probability(const Json& j, std::string_view what) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ParseError(std::string(what) + ": probabilities are strings \"num/den\"");
  }

  std::size_t state(const std::string& name, std::string_view what) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ParseError(std::string(what) + ": unknown state '" + name + "'");
    return it->second;
  }

  std::size_t target_or_state(const std::string& name, std::string_view what) const {
    if (name == kStarName) return kTarget;
    return state(name, what);
  }

  Symbol symbol(const std::string& name, std::string_view what) const {
    auto a = alphabet_.find(name);
    if (!a) throw ParseError(std::string(what) + ": unknown symbol '" + name + "'");
    return *a;
  }

  /// Per-state table `key` as (state index, entry) pairs; states may be omitted.
  template <class F>
  void each_state(std::string_view key, F f) const {
    const Json& table = field(doc_, key);
    if (!table.is_object()) throw ParseError("'" + std::string(key) + "' must be an object keyed by state");
    for (const auto& [name, entry] : table.items()) f(state(name, key), entry);
  }

  /// Per-(state, symbol) table `key`.
  template <class F>
  void each_state_symbol(std::string_view key, F f) const {
    each_state(key, [&](std::size_t y, const Json& row) {
      if (!row.is_object()) throw ParseError("delta of '" + states_[y] + "' must be an object keyed by symbol");
      for (const auto& [a, entry] : row.items()) f(y, symbol(a, "delta"), entry);
    });
  }

  std::vector<Symbol> labels() const {
    std::vector<Symbol> out(states_.size(), 0);
    std::vector<bool> seen(states_.size(), false);
    each_state("label", [&](std::size_t x, const Json& j) {
      out[x] = symbol(text(j, "label"), "label");
      seen[x] = true;
    });
    for (std::size_t x = 0; x < seen.size(); ++x)
      if (!seen[x]) throw ParseError("label missing for state '" + states_[x] + "'");
    return out;
  }

  std::vector<DistRow> rows(bool allow_target) const {
    std::vector<DistRow> out(states_.size());
    each_state("trans", [&](std::size_t x, const Json& row) {
      if (!row.is_object()) throw ParseError("trans of '" + states_[x] + "' must map successors to probabilities");
      for (const auto& [succ, p] : row.items()) {
        std::size_t y = allow_target ? target_or_state(succ, "trans") : state(succ, "trans");
        out[x].emplace_back(y, probability(p, "trans"));
      }
    });
    return out;
  }

 private:
  std::vector<std::string> strings(std::string_view key) const {
    const Json& j = field(doc_, key);
    if (!j.is_array()) throw ParseError("'" + std::string(key) + "' must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : j) out.push_back(text(e, key));
    return out;
  }

  const Json& doc_;
  Alphabet alphabet_;
  std::vector<std::string> states_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t initial_ = 0;
};

inline Json rows_json(const std::vector<std::string>& states, const std::vector<DistRow>& trans) {
  Json out = Json::object();
  for (std::size_t x = 0; x < states.size(); ++x) {
    Json row = Json::object();
    for (const auto& [y, p] : trans[x]) row[y == kTarget ? std::string(kStarName) : states[y]] = p.str();
    out[states[x]] = std::move(row);
  }
  return out;
}

inline Json labels_json(const std::vector<std::string>& states, const Alphabet& a, const std::vector<Symbol>& label) {
  Json out = Json::object();
  for (std::size_t x = 0; x < states.size(); ++x) out[states[x]] = a.name(label[x]);
  return out;
}

template <class M>
Json header(std::string_view kind, const M& m) {
  Json j;
  j["kind"] = kind;
  j["alphabet"] = m.alphabet.symbols();
  j["states"] = m.states;
  j["initial"] = m.states.at(m.initial);
  return j;
}

}  // namespace detail::json

/// Parses one model document. Structural problems raise ParseError; semantic
/// invariants (row sums, totality) are left to validate().
inline AnyModel parse_model(const Json& doc) {
  using detail::json::Reader;
  const std::string kind = Reader::text(Reader::field(doc, "kind"), "kind");
  static const std::string_view kinds[] = {"mc", "mrm", "ntmc", "wts", "dfa", "nfa", "rm", "wmm"};
  if (std::find(std::begin(kinds), std::end(kinds), kind) == std::end(kinds))
    throw ParseError("unknown kind '" + kind + "'");
  Reader r(doc);
  AnyModel out;
  if (kind == "mc") {
    out = LabeledMc{r.alphabet(), r.states(), r.labels(), r.rows(true), r.initial()};
  } else if (kind == "mrm") {
    std::vector<std::uint64_t> reward(r.states().size(), 0);
    r.each_state("reward", [&](std::size_t x, const Json& j) { reward[x] = Reader::natural(j, "reward"); });
    out = MarkovRewardModel{r.alphabet(), r.states(), r.labels(), reward, r.rows(true), r.initial()};
  } else if (kind == "ntmc") {
    out = NonTerminatingMc{r.alphabet(), r.states(), r.labels(), r.rows(false), r.initial()};
  } else if (kind == "wts") {
    std::vector<WtsStep<std::size_t>> trans(r.states().size());
    r.each_state("trans", [&](std::size_t x, const Json& edges) {
      if (!edges.is_array()) throw ParseError("trans of '" + r.states()[x] + "' must be an array of edges");
      for (const auto& e : edges) {
        std::size_t to = r.target_or_state(Reader::text(Reader::field(e, "to"), "to"), "trans");
        trans[x].push_back({to == kTarget ? std::nullopt : std::optional<std::size_t>(to),
                            r.symbol(Reader::text(Reader::field(e, "label"), "label"), "trans"),
                            Reader::natural(Reader::field(e, "weight"), "weight")});
      }
    });
    out = WeightedTs{r.alphabet(), r.states(), trans, r.initial()};
  } else if (kind == "dfa") {
    Dfa d{r.alphabet(), r.states(), {}, r.initial()};
    d.delta.assign(d.states.size(), std::vector<std::optional<DfaEdge<std::size_t>>>(d.alphabet.size()));
    r.each_state_symbol("delta", [&](std::size_t y, Symbol a, const Json& e) {
      d.delta[y][a] = DfaEdge<std::size_t>{r.state(Reader::text(Reader::field(e, "to"), "to"), "delta"),
                                           Reader::flag(Reader::field(e, "accept"), "accept")};
    });
    out = std::move(d);
  } else if (kind == "nfa") {
    Nfa d{r.alphabet(), r.states(), {}, r.initial()};
    d.delta.assign(d.states.size(), NfaStep<std::size_t>(d.alphabet.size()));
    r.each_state_symbol("delta", [&](std::size_t y, Symbol a, const Json& edges) {
      if (!edges.is_array()) throw ParseError("nfa delta entries must be arrays");
      for (const auto& e : edges)
        d.delta[y][a].push_back({r.state(Reader::text(Reader::field(e, "to"), "to"), "delta"),
                                 Reader::flag(Reader::field(e, "accept"), "accept")});
    });
    out = std::move(d);
  } else if (kind == "rm") {
    RewardMachine d{r.alphabet(), r.states(), Reader::natural(Reader::field(doc, "bound"), "bound"), {}, r.initial()};
    d.delta.assign(d.states.size(), std::vector<std::optional<RmEdge<std::size_t>>>(d.alphabet.size()));
    r.each_state_symbol("delta", [&](std::size_t y, Symbol a, const Json& e) {
      d.delta[y][a] = RmEdge<std::size_t>{r.state(Reader::text(Reader::field(e, "to"), "to"), "delta"),
                                          Reader::natural(Reader::field(e, "weight"), "weight")};
    });
    out = std::move(d);
  } else {
    WeightedMealy d{r.alphabet(), r.states(), {}, r.initial()};
    d.delta.assign(d.states.size(), WmmStep<std::size_t>(d.alphabet.size()));
    r.each_state_symbol("delta", [&](std::size_t y, Symbol a, const Json& edges) {
      if (!edges.is_array()) throw ParseError("wmm delta entries must be arrays");
      for (const auto& e : edges)
        d.delta[y][a].push_back({r.state(Reader::text(Reader::field(e, "to"), "to"), "delta"),
                                 Reader::flag(Reader::field(e, "accept"), "accept"),
                                 Reader::natural(Reader::field(e, "weight"), "weight")});
    });
    out = std::move(d);
  }
  std::visit([](auto& m) { canonicalize(m); }, out);
  return out;
}

inline AnyModel parse_model_text(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return parse_model(doc);
}

inline Json emit_model(const LabeledMc& m) {
  Json j = detail::json::header("mc", m);
  j["label"] = detail::json::labels_json(m.states, m.alphabet, m.label);
  j["trans"] = detail::json::rows_json(m.states, m.trans);
  return j;
}

inline Json emit_model(const MarkovRewardModel& m) {
  Json j = detail::json::header("mrm", m);
  j["label"] = detail::json::labels_json(m.states, m.alphabet, m.label);
  Json reward = Json::object();
  for (std::size_t x = 0; x < m.size(); ++x) reward[m.states[x]] = m.reward[x];
  j["reward"] = std::move(reward);
  j["trans"] = detail::json::rows_json(m.states, m.trans);
  return j;
}

inline Json emit_model(const NonTerminatingMc& m) {
  Json j = detail::json::header("ntmc", m);
  j["label"] = detail::json::labels_json(m.states, m.alphabet, m.label);
  j["trans"] = detail::json::rows_json(m.states, m.trans);
  return j;
}

inline Json emit_model(const WeightedTs& m) {
  Json j = detail::json::header("wts", m);
  Json trans = Json::object();
  for (std::size_t x = 0; x < m.size(); ++x) {
    Json edges = Json::array();
    for (const auto& e : m.trans[x])
      edges.push_back({{"to", e.dest ? m.states[*e.dest] : std::string(kStarName)},
                       {"label", m.alphabet.name(e.label)},
                       {"weight", e.weight}});
    trans[m.states[x]] = std::move(edges);
  }
  j["trans"] = std::move(trans);
  return j;
}

inline Json emit_model(const Dfa& d) {
  Json j = detail::json::header("dfa", d);
  Json delta = Json::object();
  for (std::size_t y = 0; y < d.size(); ++y) {
    Json row = Json::object();
    for (std::size_t a = 0; a < d.delta[y].size(); ++a)
      if (const auto& e = d.delta[y][a])
        row[d.alphabet.name(static_cast<Symbol>(a))] = {{"to", d.states[e->dest]}, {"accept", e->accept}};
    delta[d.states[y]] = std::move(row);
  }
  j["delta"] = std::move(delta);
  return j;
}

inline Json emit_model(const Nfa& d) {
  Json j = detail::json::header("nfa", d);
  Json delta = Json::object();
  for (std::size_t y = 0; y < d.size(); ++y) {
    Json row = Json::object();
    for (std::size_t a = 0; a < d.delta[y].size(); ++a) {
      Json edges = Json::array();
      for (const auto& e : d.delta[y][a]) edges.push_back({{"to", d.states[e.dest]}, {"accept", e.accept}});
      row[d.alphabet.name(static_cast<Symbol>(a))] = std::move(edges);
    }
    delta[d.states[y]] = std::move(row);
  }
  j["delta"] = std::move(delta);
  return j;
}

inline Json emit_model(const RewardMachine& d) {
  Json j = detail::json::header("rm", d);
  j["bound"] = d.bound;
  Json delta = Json::object();
  for (std::size_t y = 0; y < d.size(); ++y) {
    Json row = Json::object();
    for (std::size_t a = 0; a < d.delta[y].size(); ++a)
      if (const auto& e = d.delta[y][a])
        row[d.alphabet.name(static_cast<Symbol>(a))] = {{"to", d.states[e->dest]}, {"weight", e->weight}};
    delta[d.states[y]] = std::move(row);
  }
  j["delta"] = std::move(delta);
  return j;
}

inline Json emit_model(const WeightedMealy& d) {
  Json j = detail::json::header("wmm", d);
  Json delta = Json::object();
  for (std::size_t y = 0; y < d.size(); ++y) {
    Json row = Json::object();
    for (std::size_t a = 0; a < d.delta[y].size(); ++a) {
      Json edges = Json::array();
      for (const auto& e : d.delta[y][a])
        edges.push_back({{"to", d.states[e.dest]}, {"accept", e.accept}, {"weight", e.weight}});
      row[d.alphabet.name(static_cast<Symbol>(a))] = std::move(edges);
    }
    delta[d.states[y]] = std::move(row);
  }
  j["delta"] = std::move(delta);
  return j;
}

inline Json emit_model(const AnyModel& m) {
  return std::visit([](const auto& x) { return emit_model(x); }, m);
}

// ---------------------------------------------------------------------------
// Products

namespace detail::json {

template <class P>
Json product_header(std::string_view kind, const P& p) {
  Json j;
  j["kind"] = kind;
  j["states"] = p.names;
  j["initial"] = p.names.at(p.initial);
  return j;
}

inline Json chain_row(const std::vector<std::string>& names, const ChainStep<std::size_t>& s) {
  Json row = Json::object();
  for (const auto& [z, p] : merged(s.succ)) row[names[z]] = p.str();
  if (s.accept != 0) row[std::string(kAcceptSinkName)] = s.accept.str();
  if (s.reject != 0) row[std::string(kRejectSinkName)] = s.reject.str();
  return row;
}

}  // namespace detail::json

inline Json emit_product(const ProductMc& p) {
  Json j = detail::json::product_header("product-mc", p);
  Json trans = Json::object();
  for (std::size_t z = 0; z < p.size(); ++z) trans[p.names[z]] = detail::json::chain_row(p.names, p.rows[z]);
  j["trans"] = std::move(trans);
  return j;
}

inline Json emit_product(const ProductRewardMc& p) {
  Json j = detail::json::product_header("product-mrm", p);
  Json reward = Json::object(), trans = Json::object();
  for (std::size_t z = 0; z < p.size(); ++z) {
    reward[p.names[z]] = p.rows[z].reward;
    trans[p.names[z]] = detail::json::chain_row(p.names, p.rows[z].chain);
  }
  j["reward"] = std::move(reward);
  j["trans"] = std::move(trans);
  return j;
}

inline Json emit_product(const AbsorbingProductMc& p) {
  Json j = detail::json::product_header("product-absorbing", p);
  Json trans = Json::object();
  for (std::size_t z = 0; z < p.size(); ++z) {
    Json row = Json::object();
    for (const auto& [w, q] : merged(p.rows[z].succ)) row[p.names[w]] = q.str();
    if (p.rows[z].accept != 0) row[std::string(kAcceptSinkName)] = p.rows[z].accept.str();
    trans[p.names[z]] = std::move(row);
  }
  j["trans"] = std::move(trans);
  return j;
}

inline Json emit_product(const ProductWts& p) {
  Json j = detail::json::product_header("product-wts", p);
  Json trans = Json::object();
  for (std::size_t z = 0; z < p.size(); ++z) {
    Json edges = Json::array();
    for (const auto& e : p.rows[z]) {
      std::string to = e.dest ? p.names[*e.dest] : std::string(e.flag ? kAcceptSinkName : kRejectSinkName);
      edges.push_back({{"to", to}, {"weight", e.weight}});
    }
    trans[p.names[z]] = std::move(edges);
  }
  j["trans"] = std::move(trans);
  return j;
}

// ---------------------------------------------------------------------------
// Reports

/// Renders a value exactly, or as a decimal with `digits` places when digits >= 0.
inline std::string render(const Rational& v, int digits = -1) { return digits < 0 ? v.str() : v.decimal(digits); }
inline std::string render(const ExtNat& v, int = -1) { return v.str(); }
inline std::string render(const ExtRational& v, int digits = -1) {
  return v.is_infinite() ? "inf" : render(v.value(), digits);
}
inline std::string render(const ProbReward& v, int digits = -1) {
  return "(" + render(v.prob, digits) + ", " + render(v.reward, digits) + ")";
}

inline Json value_json(const Rational& v, int digits = -1) { return render(v, digits); }
inline Json value_json(const ExtNat& v, int = -1) {
  if (v.is_infinite()) return "inf";
  return v.value();
}
inline Json value_json(const ProbReward& v, int digits = -1) {
  return {{"probability", render(v.prob, digits)}, {"reward", render(v.reward, digits)}};
}

template <class D>
Json emit_report(const SolveReport<D>& r, const std::vector<std::string>& names, std::size_t initial,
                 bool full_vector, int digits = -1) {
  Json j;
  j["value"] = value_json(r.values.at(initial), digits);
  j["method"] = method_name(r.method);
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  if (full_vector) {
    Json all = Json::object();
    for (std::size_t z = 0; z < names.size(); ++z) all[names[z]] = value_json(r.values[z], digits);
    j["values"] = std::move(all);
  }
  return j;
}

inline Json emit_check(const CheckResult& r) {
  Json j;
  j["name"] = r.name;
  j["passed"] = r.passed;
  j["comparisons"] = r.comparisons;
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    j["counterexample"] = {{"instance", c.instance}, {"state", c.state}, {"step", c.step},
                           {"product", c.lhs},      {"oracle", c.rhs}};
  }
  return j;
}

}  // namespace qti
