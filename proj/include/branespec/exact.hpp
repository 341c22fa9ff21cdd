#pragma once

// Exact integer/rational scalars and the small dense linear algebra the
// toric and Lie modules need. Matrices are row-major vectors of rows; all
// routines are written for the desk-scale sizes met here (n <= ~12).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "branespec/errors.hpp"

namespace branespec {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// num/den for any nonzero den. The two-argument constructor of this Boost
/// release throws on a negative denominator.
inline Rational make_rational(Integer num, Integer den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

inline Integer floor_div(const Rational& q) {
  Integer num = numerator(q);
  Integer den = denominator(q);  // always positive
  Integer quot = num / den;
  if (num < 0 && quot * den != num) quot -= 1;
  return quot;
}

inline Integer ceil_div(const Rational& q) { return -floor_div(-q); }

inline std::int64_t to_int64(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw DomainError("integer value exceeds 64-bit range", "Overflow");
  return static_cast<std::int64_t>(v);
}

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

inline std::string to_string(const Rational& q) { return q.str(); }

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw SchemaError("zero denominator in '" + text + "'");
    return make_rational(Integer(text.substr(0, slash)), den);
  } catch (const std::runtime_error&) {
    throw SchemaError("cannot parse rational '" + text + "'");
  }
}

template <class A, class B>
Rational dot(std::span<const A> x, std::span<const B> y) {
  if (x.size() != y.size())
    throw DimensionMismatch("pairing of vectors of length " + std::to_string(x.size()) + " and " +
                            std::to_string(y.size()));
  Rational acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += Rational(x[i]) * Rational(y[i]);
  return acc;
}

/// Bareiss fraction-free determinant of a square integer matrix.
inline Integer determinant(Matrix<Integer> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

template <class T>
Matrix<Integer> to_integer_matrix(const Matrix<T>& m) {
  Matrix<Integer> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i].assign(m[i].begin(), m[i].end());
  return out;
}

/// Rank over Q by fraction-free row reduction; rows are divided by their
/// content after each step so entries stay small.
inline std::size_t rank(Matrix<Integer> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[r], m[pivot]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Integer f = m[i][c];
      Integer p = m[r][c];
      Integer content = 0;
      for (std::size_t j = c; j < cols; ++j) {
        m[i][j] = m[i][j] * p - m[r][j] * f;
        content = gcd(content, m[i][j]);
      }
      if (content > 1)
        for (std::size_t j = c; j < cols; ++j) m[i][j] /= content;
    }
    ++r;
  }
  return r;
}

/// Gauss-Jordan inverse over Q; nullopt when singular.
inline std::optional<Matrix<Rational>> inverse(Matrix<Rational> m) {
  const std::size_t n = m.size();
  Matrix<Rational> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[c], m[pivot]);
    std::swap(inv[c], inv[pivot]);
    Rational p = m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] /= p;
      inv[c][j] /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

/// For an (n-1) x n integer matrix, the vector of signed maximal minors
/// (generalized cross product). It spans the kernel when the rows are
/// independent and is zero otherwise.
inline std::vector<Integer> cofactor_kernel(const Matrix<Integer>& rows, std::size_t n) {
  std::vector<Integer> out(n);
  for (std::size_t skip = 0; skip < n; ++skip) {
    Matrix<Integer> minor(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j != skip) minor[i].push_back(rows[i][j]);
    Integer d = determinant(std::move(minor));
    out[skip] = (skip % 2 == 0) ? d : Integer(-d);
  }
  return out;
}

/// Calls f(indices) for every k-element subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(std::as_const(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace branespec
