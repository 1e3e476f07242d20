#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "qti/errors.hpp"

namespace qti {

/// Exact fraction, always kept in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;

  template <std::signed_integral I>
  Rational(I n) : v_(static_cast<long>(n)) {}  // NOLINT: implicit by design

  template <std::unsigned_integral I>
  Rational(I n) : v_(static_cast<unsigned long>(n)) {}  // NOLINT

  Rational(long num, long den) {
    if (den == 0) throw InvalidParameter("zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Accepts "n", "n/d" and finite decimals such as "0.25".
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& t) {
      while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.pop_back();
      std::size_t i = 0;
      while (i < t.size() && (t[i] == ' ' || t[i] == '\t')) ++i;
      t.erase(0, i);
    };
    trim(s);
    if (s.empty()) throw ParseError("empty rational literal");
    auto valid_int = [](std::string_view t) {
      std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
      if (i == t.size()) return false;
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') return false;
      return true;
    };
    mpq_class q;
    if (auto dot = s.find('.'); dot != std::string::npos) {
      bool neg = s[0] == '-';
      std::string body = (s[0] == '-' || s[0] == '+') ? s.substr(1) : s;
      dot = body.find('.');
      std::string whole = body.substr(0, dot), frac = body.substr(dot + 1);
      if (whole.empty()) whole = "0";
      auto digits_only = [](std::string_view t) {
        if (t.empty()) return false;
        for (char ch : t)
          if (ch < '0' || ch > '9') return false;
        return true;
      };
      if (!digits_only(whole) || !digits_only(frac))
        throw ParseError("malformed rational literal '" + s + "'");
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
      q = mpq_class(mpz_class(whole, 10) * scale + mpz_class(frac, 10), scale);
      if (neg) q = -q;
    } else if (auto slash = s.find('/'); slash != std::string::npos) {
      std::string n = s.substr(0, slash), d = s.substr(slash + 1);
      if (!valid_int(n) || !valid_int(d)) throw ParseError("malformed rational literal '" + s + "'");
      mpz_class dz(d, 10);
      if (dz == 0) throw ParseError("zero denominator in '" + s + "'");
      q = mpq_class(mpz_class(n, 10), dz);
    } else {
      if (!valid_int(s)) throw ParseError("malformed rational literal '" + s + "'");
      q = mpq_class(mpz_class(s, 10));
    }
    return Rational(std::move(q));
  }

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }

  /// "n" for integers, "n/d" otherwise.
  std::string str() const { return v_.get_str(); }

  /// Decimal rendering rounded half away from zero to `digits` places.
  std::string decimal(int digits) const {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpq_class scaled = abs(v_) * scale;
    mpz_class q = scaled.get_num() / scaled.get_den();
    mpz_class r = scaled.get_num() % scaled.get_den();
    if (2 * r >= scaled.get_den()) ++q;
    std::string body = q.get_str();
    if (digits > 0) {
      if (body.size() <= static_cast<std::size_t>(digits))
        body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
      body.insert(body.size() - static_cast<std::size_t>(digits), ".");
    }
    return (sgn(v_) < 0 && q != 0 ? "-" : "") + body;
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw InvalidParameter("division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  std::size_t hash() const {
    std::size_t h = mpz_get_ui(v_.get_num_mpz_t());
    h ^= mpz_get_ui(v_.get_den_mpz_t()) * 0x9e3779b97f4a7c15ULL;
    return h ^ static_cast<std::size_t>(sgn(v_) + 1);
  }

 private:
  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace qti

template <>
struct std::hash<qti::Rational> {
  std::size_t operator()(const qti::Rational& r) const noexcept { return r.hash(); }
};
