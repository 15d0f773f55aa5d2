/*
 * Copyright 2026 The sotrace Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file linalg.hpp
 * @brief Dense linear algebra over both scalar backends.
 *
 * Exact routines use pivot-on-first-nonzero elimination (Bareiss for the
 * determinant). Floating routines use partial pivoting (determinant, inverse)
 * or full pivoting with a relative threshold (rank, kernels). There is no
 * eigenvalue solver: eigenvalue multiplicities are always measured at a known
 * value lambda as the kernel dimension of A - lambda I.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sotrace/errors.hpp"
#include "sotrace/matrix.hpp"
#include "sotrace/scalar.hpp"

namespace sotrace {

/// Which bilinear form defines the orthogonal group: the identity, or the
/// block form J_{2n} built of [[0,1],[1,0]] blocks.
enum class Form { standard, j };

template <ScalarType T>
double max_abs(const Matrix<T>& a) {
  double m = 0.0;
  for (const auto& x : a.data()) m = std::max(m, ScalarTraits<T>::magnitude(x));
  return m;
}

template <ScalarType T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw dimension_error("mat_mul expects square matrices of equal size, got " + a.shape() +
                          " and " + b.shape());
  }
  return a * b;
}

template <ScalarType T>
T trace(const Matrix<T>& a) {
  T t = ScalarTraits<T>::zero();
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

template <ScalarType T>
bool approx_equal(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol = {}) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    double scale = std::max(max_abs(a), max_abs(b));
    double bound = tol.bound(scale);
    for (std::size_t k = 0; k < a.data().size(); ++k) {
      if (std::abs(a.data()[k] - b.data()[k]) > bound) return false;
    }
    return true;
  }
}

/// Largest entrywise deviation |a - b|.
template <ScalarType T>
double max_deviation(const Matrix<T>& a, const Matrix<T>& b) {
  return max_abs(Matrix<T>(a - b));
}

inline FloatMatrix to_float(const ExactMatrix& a) {
  FloatMatrix f(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) f(r, c) = a(r, c).to_complex();
  return f;
}
inline const FloatMatrix& to_float(const FloatMatrix& a) { return a; }

template <ScalarType T>
bool is_skew_symmetric(const Matrix<T>& a, const Tolerance& tol = {}) {
  if (!a.is_square()) return false;
  return approx_equal(a, Matrix<T>(-a.transpose()), tol);
}

template <ScalarType T>
Matrix<T> block_diag(std::span<const Matrix<T>> blocks) {
  std::size_t d = 0;
  for (const auto& b : blocks) d += b.dim();
  Matrix<T> out(d, d);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.dim(); ++r)
      for (std::size_t c = 0; c < b.dim(); ++c) out(off + r, off + c) = b(r, c);
    off += b.dim();
  }
  return out;
}

template <ScalarType T>
Matrix<T> block_diag(std::initializer_list<Matrix<T>> blocks) {
  std::vector<Matrix<T>> v(blocks);
  return block_diag(std::span<const Matrix<T>>(v));
}

/// Square sub-block starting at (off, off).
template <ScalarType T>
Matrix<T> diagonal_block(const Matrix<T>& a, std::size_t off, std::size_t size) {
  if (off + size > a.dim()) throw dimension_error("diagonal block out of range");
  Matrix<T> b(size, size);
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c) b(r, c) = a(off + r, off + c);
  return b;
}

template <ScalarType T>
Matrix<T> power(const Matrix<T>& a, unsigned long e) {
  Matrix<T> result = Matrix<T>::identity(a.dim());
  Matrix<T> base = a;
  while (e > 0) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

template <ScalarType T>
T determinant(const Matrix<T>& a) {
  const std::size_t n = a.dim();
  if (n == 0) return ScalarTraits<T>::one();
  Matrix<T> m = a;
  if constexpr (is_exact_v<T>) {
    // Fraction-free (Bareiss) elimination; every division is exact.
    bool negate = false;
    T prev = ScalarTraits<T>::one();
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (m(k, k).is_zero()) {
        std::size_t i = k + 1;
        while (i < n && m(i, k).is_zero()) ++i;
        if (i == n) return ScalarTraits<T>::zero();
        for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(i, c));
        negate = !negate;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        }
        m(i, k) = ScalarTraits<T>::zero();
      }
      prev = m(k, k);
    }
    return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
  } else {
    T det = ScalarTraits<T>::one();
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
      if (m(piv, k) == T{}) return T{};
      if (piv != k) {
        for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(piv, c));
        det = -det;
      }
      det *= m(k, k);
      for (std::size_t i = k + 1; i < n; ++i) {
        T f = m(i, k) / m(k, k);
        for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
      }
    }
    return det;
  }
}

/// Gauss-Jordan inverse. Throws singular_matrix_error when no usable pivot
/// exists (exactly zero, or below 1e-14 of the entry scale for floats).
template <ScalarType T>
Matrix<T> inverse(const Matrix<T>& a) {
  const std::size_t n = a.dim();
  Matrix<T> m = a;
  Matrix<T> inv = Matrix<T>::identity(n);
  const double floor = 1e-14 * std::max(1.0, max_abs(a)) * static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    if constexpr (is_exact_v<T>) {
      while (piv < n && m(piv, k).is_zero()) ++piv;
      if (piv == n) throw singular_matrix_error("matrix is singular");
    } else {
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
      if (std::abs(m(piv, k)) <= floor) throw singular_matrix_error("matrix is numerically singular");
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(m(k, c), m(piv, c));
        std::swap(inv(k, c), inv(piv, c));
      }
    }
    const T p = m(k, k);
    for (std::size_t c = 0; c < n; ++c) {
      m(k, c) /= p;
      inv(k, c) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const T f = m(i, k);
      if (ScalarTraits<T>::is_zero(f, Tolerance{0, 0, 0})) continue;
      for (std::size_t c = 0; c < n; ++c) {
        m(i, c) -= f * m(k, c);
        inv(i, c) -= f * inv(k, c);
      }
    }
  }
  return inv;
}

namespace detail {

template <ScalarType T>
T pfaffian_rec(const Matrix<T>& b, std::uint64_t remaining,
               std::unordered_map<std::uint64_t, T>& memo) {
  if (remaining == 0) return ScalarTraits<T>::one();
  if (auto it = memo.find(remaining); it != memo.end()) return it->second;
  const int first = std::countr_zero(remaining);
  const std::uint64_t rest = remaining & (remaining - 1);
  T sum = ScalarTraits<T>::zero();
  bool positive = true;
  for (std::uint64_t bits = rest; bits != 0; bits &= bits - 1) {
    const int partner = std::countr_zero(bits);
    const T& entry = b(first, partner);
    if (!ScalarTraits<T>::is_zero(entry, Tolerance{0, 0, 0})) {
      T term = entry * pfaffian_rec(b, rest & ~(std::uint64_t{1} << partner), memo);
      if (positive) sum += term;
      else sum -= term;
    }
    positive = !positive;
  }
  memo.emplace(remaining, sum);
  return sum;
}

}  // namespace detail

/// Pfaffian by first-row expansion over the remaining index set, memoized on
/// that set. Requires a skew-symmetric matrix of even size.
template <ScalarType T>
T pfaffian(const Matrix<T>& b, const Tolerance& tol = {}) {
  if (!b.is_square()) throw dimension_error("pfaffian of non-square matrix");
  const std::size_t d = b.dim();
  if (d % 2 != 0) throw dimension_error("pfaffian of odd-dimensional matrix");
  if (d > 62) throw dimension_error("pfaffian supports dimension <= 62");
  if (!is_skew_symmetric(b, tol)) throw precondition_error("pfaffian of non-skew-symmetric matrix");
  std::unordered_map<std::uint64_t, T> memo;
  const std::uint64_t all = (std::uint64_t{1} << d) - 1;
  return detail::pfaffian_rec(b, all, memo);
}

/// Result of full-pivoting reduction to reduced row echelon form.
template <ScalarType T>
struct Echelon {
  Matrix<T> reduced;                 // columns in pivot order (see column_order)
  std::vector<std::size_t> column_order;  // column_order[k] = original column index
  std::size_t rank = 0;
};

/// Full-pivoting Gauss-Jordan. For floats a pivot counts only if its magnitude
/// exceeds rank_pivot_eps times the largest entry of the input.
template <ScalarType T>
Echelon<T> row_echelon(const Matrix<T>& a, const Tolerance& tol = {}) {
  Echelon<T> e{a, std::vector<std::size_t>(a.cols()), 0};
  std::iota(e.column_order.begin(), e.column_order.end(), std::size_t{0});
  Matrix<T>& m = e.reduced;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const double threshold = tol.rank_pivot_eps * max_abs(a);
  std::size_t r = 0;
  for (; r < std::min(rows, cols); ++r) {
    std::size_t pi = rows, pj = cols;
    if constexpr (is_exact_v<T>) {
      for (std::size_t j = r; j < cols && pi == rows; ++j)
        for (std::size_t i = r; i < rows; ++i)
          if (!m(i, j).is_zero()) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == rows) break;
    } else {
      double best = -1.0;
      for (std::size_t i = r; i < rows; ++i)
        for (std::size_t j = r; j < cols; ++j)
          if (double v = std::abs(m(i, j)); v > best) {
            best = v;
            pi = i;
            pj = j;
          }
      if (best <= threshold || best == 0.0) break;
    }
    if (pi != r)
      for (std::size_t c = 0; c < cols; ++c) std::swap(m(r, c), m(pi, c));
    if (pj != r) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, r), m(i, pj));
      std::swap(e.column_order[r], e.column_order[pj]);
    }
    const T p = m(r, r);
    for (std::size_t c = r; c < cols; ++c) m(r, c) /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const T f = m(i, r);
      if (ScalarTraits<T>::is_zero(f, Tolerance{0, 0, 0})) continue;
      for (std::size_t c = r; c < cols; ++c) m(i, c) -= f * m(r, c);
    }
  }
  e.rank = r;
  return e;
}

template <ScalarType T>
std::size_t rank(const Matrix<T>& a, const Tolerance& tol = {}) {
  return row_echelon(a, tol).rank;
}

template <ScalarType T>
std::size_t kernel_dimension(const Matrix<T>& a, const Tolerance& tol = {}) {
  return a.cols() - rank(a, tol);
}

/// Basis of {x : a x = 0}, one column vector (stored as cols x 1) per element.
template <ScalarType T>
std::vector<std::vector<T>> kernel_basis(const Matrix<T>& a, const Tolerance& tol = {}) {
  const Echelon<T> e = row_echelon(a, tol);
  const std::size_t cols = a.cols();
  std::vector<std::vector<T>> basis;
  for (std::size_t f = e.rank; f < cols; ++f) {
    std::vector<T> v(cols, ScalarTraits<T>::zero());
    v[e.column_order[f]] = ScalarTraits<T>::one();
    for (std::size_t p = 0; p < e.rank; ++p) v[e.column_order[p]] = -e.reduced(p, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// The block form J_{2n}: n diagonal copies of [[0,1],[1,0]].
template <ScalarType T>
Matrix<T> j_form(std::size_t n) {
  Matrix<T> j(2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    j(2 * k, 2 * k + 1) = ScalarTraits<T>::one();
    j(2 * k + 1, 2 * k) = ScalarTraits<T>::one();
  }
  return j;
}

/// A G A^T = G and det A = 1, where G is I or J_{2n}.
template <ScalarType T>
bool is_special_orthogonal(const Matrix<T>& a, Form form = Form::standard,
                           const Tolerance& tol = {}) {
  if (!a.is_square()) return false;
  const std::size_t d = a.dim();
  if (form == Form::j && d % 2 != 0) return false;
  const Matrix<T> g = form == Form::standard ? Matrix<T>::identity(d) : j_form<T>(d / 2);
  const Matrix<T> lhs = a * g * a.transpose();
  const T det = determinant(a);
  if constexpr (is_exact_v<T>) {
    return lhs == g && det == ScalarTraits<T>::one();
  } else {
    const double scale = std::max(1.0, max_abs(a) * max_abs(a));
    if (max_deviation(lhs, g) > tol.bound(scale)) return false;
    return std::abs(det - 1.0) <= tol.bound(std::max(1.0, std::abs(det))) * static_cast<double>(d);
  }
}

}  // namespace sotrace
