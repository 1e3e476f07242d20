#pragma once

// Small hand-built models used by the law checks, the mutation harness and the tests.
// The JSON files under fixtures/ describe the same models.

#include "qti/models.hpp"

namespace qti::fixtures {

inline Alphabet terrain() { return Alphabet({"sand", "recharge", "lake", "arid", "volcano"}); }
inline Alphabet travel_modes() { return Alphabet({"P", "B", "T"}); }

/// Robot chain: x0 (sand) moves to the lake x1 or stays on sand x2; both may reach the
/// recharge station x3, x2 may also fall into the volcano x4.
inline LabeledMc robot_mc() {
  LabeledMc c{terrain(), {"x0", "x1", "x2", "x3", "x4"}, {0, 2, 0, 1, 4}, {}, 0};
  c.trans = {{{1, Rational(4, 5)}, {2, Rational(1, 5)}},
             {{3, Rational(1)}},
             {{3, Rational(4, 5)}, {4, Rational(1, 5)}},
             {{kTarget, Rational(1)}},
             {{kTarget, Rational(1)}}};
  return c;
}

/// The robot chain with reward 1 in every state.
inline MarkovRewardModel robot_unit_reward() {
  LabeledMc c = robot_mc();
  return {c.alphabet, c.states, c.label, std::vector<std::uint64_t>(c.size(), 1), c.trans, c.initial};
}

/// "Recharge without passing a lake unless it has dried up, never a volcano."
/// y1 is the only accepting state; unlisted moves are self-loops.
inline Dfa recharge_dfa() {
  using E = DfaEdge<std::size_t>;
  // symbols: sand, recharge, lake, arid, volcano
  Dfa d{terrain(), {"y0", "y1", "y2", "y3"}, {}, 0};
  d.delta = {{E{0, false}, E{1, true}, E{2, false}, E{0, false}, E{3, false}},
             {E{1, true}, E{1, true}, E{2, false}, E{1, true}, E{3, false}},
             {E{2, false}, E{3, false}, E{2, false}, E{0, false}, E{3, false}},
             {E{3, false}, E{3, false}, E{3, false}, E{3, false}, E{3, false}}};
  return d;
}

/// "Reach a recharge station before any volcano", for never-terminating robots.
inline Dfa recharge_first_dfa() {
  using E = DfaEdge<std::size_t>;
  Dfa d{terrain(), {"y0", "y1", "y2"}, {}, 0};
  d.delta = {{E{0, false}, E{1, true}, E{0, false}, E{0, false}, E{2, false}},
             {E{1, true}, E{1, true}, E{1, true}, E{1, true}, E{1, true}},
             {E{2, false}, E{2, false}, E{2, false}, E{2, false}, E{2, false}}};
  return d;
}

/// "The last leg is by train": y0 loops on every mode and may guess the final train.
inline Nfa last_leg_train_nfa() {
  using E = DfaEdge<std::size_t>;
  Nfa d{travel_modes(), {"y0", "y1"}, {}, 0};
  d.delta = {{{E{0, false}}, {E{0, false}}, {E{0, false}, E{1, true}}}, {{}, {}, {}}};
  return d;
}

/// Four towns and a destination (the target). Weights are travel costs.
inline WeightedTs travel_wts() {
  // symbols: P, B, T
  WeightedTs c{travel_modes(), {"home", "a", "b", "c"}, {}, 0};
  c.trans = {{{1, 1, 2}, {2, 2, 3}, {std::nullopt, 0, 1}},
             {{2, 1, 1}, {3, 0, 1}, {std::nullopt, 2, 4}},
             {{3, 1, 1}, {std::nullopt, 2, 2}},
             {{std::nullopt, 1, 1}, {std::nullopt, 2, 1}}};
  canonicalize(c);
  return c;
}

/// Last leg by train, with every plane ride costing an extra 3.
inline WeightedMealy plane_penalty_wmm() {
  using E = WmmEdge<std::size_t>;
  WeightedMealy d{travel_modes(), {"q0", "q1"}, {}, 0};
  d.delta = {{{E{0, false, 3}}, {E{0, false, 0}}, {E{0, false, 0}, E{1, true, 0}}}, {{}, {}, {}}};
  return d;
}

}  // namespace qti::fixtures
