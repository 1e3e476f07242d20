#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "qti/errors.hpp"
#include "qti/rational.hpp"

namespace qti {

/// Solves A X = B exactly for square non-singular A (B has one column per right-hand
/// side). Rows are scaled to integers and reduced by Bareiss' fraction-free elimination;
/// only the back substitution works with fractions.
inline std::vector<std::vector<Rational>> solve_linear(const std::vector<std::vector<Rational>>& a,
                                                       const std::vector<std::vector<Rational>>& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw InvalidParameter("right-hand side has the wrong height");
  if (n == 0) return {};
  const std::size_t m = b[0].size(), w = n + m;

  std::vector<std::vector<mpz_class>> M(n, std::vector<mpz_class>(w));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n || b[i].size() != m) throw InvalidParameter("ragged linear system");
    mpz_class l = 1;
    for (const auto& v : a[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.raw().get_den_mpz_t());
    for (const auto& v : b[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.raw().get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) M[i][j] = a[i][j].raw().get_num() * (l / a[i][j].raw().get_den());
    for (std::size_t j = 0; j < m; ++j) M[i][n + j] = b[i][j].raw().get_num() * (l / b[i][j].raw().get_den());
  }

  mpz_class prev = 1, t;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && M[piv][k] == 0) ++piv;
    if (piv == n) throw InternalError("singular linear system");
    if (piv != k) std::swap(M[piv], M[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < w; ++j) {
        t = M[k][k] * M[i][j];
        t -= M[i][k] * M[k][j];
        mpz_divexact(M[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      M[i][k] = 0;
    }
    prev = M[k][k];
  }

  std::vector<std::vector<Rational>> x(n, std::vector<Rational>(m));
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<mpq_class> col(n);
    for (std::size_t ii = n; ii-- > 0;) {
      mpq_class s(M[ii][n + c]);
      for (std::size_t j = ii + 1; j < n; ++j)
        if (M[ii][j] != 0) s -= mpq_class(M[ii][j]) * col[j];
      s /= mpq_class(M[ii][ii]);
      s.canonicalize();
      col[ii] = s;
    }
    for (std::size_t i = 0; i < n; ++i) x[i][c] = Rational(col[i]);
  }
  return x;
}

}  // namespace qti
