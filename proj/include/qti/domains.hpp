#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "qti/errors.hpp"
#include "qti/rational.hpp"

namespace qti {

/// Checked natural-number addition for weights and rewards.
inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) throw OverflowError("natural overflow");
  return a + b;
}

/// Natural number or infinity. Arithmetic order is the usual one with infinity on top;
/// the information order of the tropical domain is the reverse, so infinity is bottom.
class ExtNat {
 public:
  ExtNat() = default;  // infinity
  ExtNat(std::uint64_t n) : v_(n) {}  // NOLINT

  static ExtNat infinity() { return {}; }

  bool is_infinite() const { return !v_.has_value(); }
  std::uint64_t value() const {
    if (!v_) throw InvalidParameter("value of infinity");
    return *v_;
  }

  friend ExtNat operator+(const ExtNat& a, const ExtNat& b) {
    if (a.is_infinite() || b.is_infinite()) return {};
    return ExtNat(checked_add(*a.v_, *b.v_));
  }

  friend bool operator==(const ExtNat&, const ExtNat&) = default;
  friend std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
    if (a.is_infinite() || b.is_infinite())
      return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
    return *a.v_ <=> *b.v_;
  }

  std::string str() const { return v_ ? std::to_string(*v_) : "inf"; }
  friend std::ostream& operator<<(std::ostream& os, const ExtNat& n) { return os << n.str(); }

 private:
  std::optional<std::uint64_t> v_;
};

inline ExtNat min(const ExtNat& a, const ExtNat& b) { return b < a ? b : a; }

/// Non-negative rational extended with infinity; infinity absorbs addition,
/// and 0 times infinity is 0.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(Rational r) : v_(std::move(r)) {}  // NOLINT
  template <std::integral I>
  ExtRational(I n) : v_(Rational(n)) {}  // NOLINT

  static ExtRational infinity() {
    ExtRational r;
    r.inf_ = true;
    return r;
  }

  bool is_infinite() const { return inf_; }
  const Rational& value() const {
    if (inf_) throw InvalidParameter("value of infinity");
    return v_;
  }

  friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtRational(a.v_ + b.v_);
  }
  friend ExtRational operator*(const Rational& p, const ExtRational& b) {
    if (p.is_zero()) return ExtRational();
    if (b.inf_) return infinity();
    return ExtRational(p * b.v_);
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.inf_ || b.inf_) return static_cast<int>(a.inf_) <=> static_cast<int>(b.inf_);
    return a.v_ <=> b.v_;
  }

  std::string str() const { return inf_ ? "inf" : v_.str(); }

 private:
  bool inf_ = false;
  Rational v_;
};

/// Acceptance probability paired with partial expected reward.
struct ProbReward {
  Rational prob;
  ExtRational reward;

  friend bool operator==(const ProbReward&, const ProbReward&) = default;
  std::string str() const { return "(" + prob.str() + ", " + reward.str() + ")"; }
  friend std::ostream& operator<<(std::ostream& os, const ProbReward& v) { return os << v.str(); }
};

/// Per-domain bottom element and information order.
template <class D>
struct DomainTraits;

template <>
struct DomainTraits<Rational> {
  static Rational bottom() { return Rational(0); }
  static bool leq(const Rational& a, const Rational& b) { return a <= b; }
  static Rational distance(const Rational& a, const Rational& b) { return abs(a - b); }
};

template <>
struct DomainTraits<double> {
  static double bottom() { return 0.0; }
  static bool leq(double a, double b) { return a <= b; }
  static double distance(double a, double b) { return a > b ? a - b : b - a; }
};

template <>
struct DomainTraits<ExtNat> {
  static ExtNat bottom() { return ExtNat::infinity(); }
  static bool leq(const ExtNat& a, const ExtNat& b) { return a >= b; }
};

template <>
struct DomainTraits<ProbReward> {
  static ProbReward bottom() { return {Rational(0), ExtRational(0)}; }
  static bool leq(const ProbReward& a, const ProbReward& b) {
    return a.prob <= b.prob && a.reward <= b.reward;
  }
  /// Larger of the two component gaps. A finite/infinite reward mismatch never counts
  /// as converged, so it is reported as the probability gap plus one.
  static Rational distance(const ProbReward& a, const ProbReward& b) {
    Rational dp = abs(a.prob - b.prob);
    if (a.reward.is_infinite() != b.reward.is_infinite()) return dp + Rational(1);
    Rational dr = a.reward.is_infinite() ? Rational(0) : abs(a.reward.value() - b.reward.value());
    return dp < dr ? dr : dp;
  }
};

/// Values indexed by dense state index.
template <class D>
using ValueVector = std::vector<D>;

template <class D>
bool pointwise_leq(const ValueVector<D>& a, const ValueVector<D>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!DomainTraits<D>::leq(a[i], b[i])) return false;
  return true;
}

enum class DomainTag { Probability, ProbReward, Tropical };

inline DomainTag parse_domain_tag(std::string_view name) {
  if (name == "prob" || name == "probability") return DomainTag::Probability;
  if (name == "prob-reward") return DomainTag::ProbReward;
  if (name == "tropical") return DomainTag::Tropical;
  throw ConfigError("unknown domain tag '" + std::string(name) + "'");
}

template <class D>
ValueVector<D> bottom_vector(std::size_t states) {
  if (states == 0) throw InvalidParameter("empty state space");
  return ValueVector<D>(states, DomainTraits<D>::bottom());
}

using AnyValueVector =
    std::variant<ValueVector<Rational>, ValueVector<ProbReward>, ValueVector<ExtNat>>;

inline AnyValueVector bottom_vector(std::size_t states, DomainTag tag) {
  switch (tag) {
    case DomainTag::Probability: return bottom_vector<Rational>(states);
    case DomainTag::ProbReward: return bottom_vector<ProbReward>(states);
    case DomainTag::Tropical: return bottom_vector<ExtNat>(states);
  }
  throw ConfigError("unknown domain tag");
}

/// Applies `phi` to `start` exactly `steps` times.
template <class V, class F>
V kleene_iterate(F&& phi, V start, std::size_t steps) {
  for (std::size_t i = 0; i < steps; ++i) start = phi(start);
  return start;
}

template <class V>
struct LfpResult {
  V values;
  std::size_t iterations = 0;
  bool converged = false;  // false means max-iter was reached
};

/// Iterates until the iterate is literally unchanged (exact mode) or the sup-norm change
/// drops below `epsilon`. Returns the last iterate either way.
template <class D, class F>
LfpResult<ValueVector<D>> kleene_lfp(F&& phi, ValueVector<D> start,
                                    const std::optional<Rational>& epsilon,
                                    std::size_t max_iter) {
  LfpResult<ValueVector<D>> out;
  out.values = std::move(start);
  while (out.iterations < max_iter) {
    ValueVector<D> next = phi(out.values);
    ++out.iterations;
    bool done;
    if (epsilon) {
      if constexpr (requires(const D& a) { DomainTraits<D>::distance(a, a); }) {
        done = true;
        for (std::size_t i = 0; i < next.size() && done; ++i) {
          auto d = DomainTraits<D>::distance(next[i], out.values[i]);
          if constexpr (std::is_same_v<decltype(d), double>)
            done = d < epsilon->to_double();
          else
            done = d < *epsilon;
        }
      } else {
        throw ConfigError("epsilon mode is not available for this domain");
      }
    } else {
      done = next == out.values;
    }
    out.values = std::move(next);
    if (done) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace qti
