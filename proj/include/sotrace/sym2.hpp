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
 * @file sym2.hpp
 * @brief Sym^2(C^5) and the 14-dimensional representation of SO(5).
 *
 * Vectors of Sym^2(C^5) are stored as 15 coordinates on the basis
 * e_i (.) e_j, i <= j, where v (.) w = v (x) w + w (x) v. The inner product
 * induced from C^5 (x) C^5 is diagonal on this basis with value 4 on
 * e_i (.) e_i and 2 on e_i (.) e_j for i != j. It is bilinear, not
 * Hermitian, matching the complex orthogonal groups.
 *
 * The invariant vector z = sum_i e_i (x) e_i has coordinate 1/2 on every
 * e_i (.) e_i. SO(5) acts on z-perp (dimension 14) irreducibly; alpha14
 * writes that action in a fixed orthonormal frame of z-perp.
 */

#pragma once

#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "sotrace/errors.hpp"
#include "sotrace/linalg.hpp"
#include "sotrace/matrix.hpp"

namespace sotrace {

inline constexpr std::size_t kSym2Dim = 15;
inline constexpr std::size_t kZPerpDim = 14;

/// Position of the label e_i (.) e_j (0-based, any order) in the 15-vector.
inline std::size_t sym2_index(std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  // Row i of the upper triangle starts after rows 0..i-1 (5 + 4 + ...).
  return i * 5 - i * (i - 1) / 2 + (j - i);
}

/// Coordinates of v (.) w.
template <ScalarType T>
std::vector<T> sym_product(const std::vector<T>& v, const std::vector<T>& w) {
  if (v.size() != 5 || w.size() != 5) throw dimension_error("sym_product expects vectors in C^5");
  std::vector<T> out(kSym2Dim, ScalarTraits<T>::zero());
  for (std::size_t k = 0; k < 5; ++k) {
    for (std::size_t l = k; l < 5; ++l) {
      T c = v[k] * w[l];
      if (k != l) c += v[l] * w[k];
      out[sym2_index(k, l)] = c;
    }
  }
  return out;
}

/// Gram value (e_i (.) e_j, e_i (.) e_j); distinct labels are orthogonal.
inline long sym2_gram(std::size_t i, std::size_t j) { return i == j ? 4 : 2; }

/// Bilinear pairing of two coordinate vectors.
template <ScalarType T>
T sym2_inner(const std::vector<T>& a, const std::vector<T>& b) {
  T s = ScalarTraits<T>::zero();
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i; j < 5; ++j) {
      const std::size_t k = sym2_index(i, j);
      s += ScalarTraits<T>::from_int(sym2_gram(i, j)) * a[k] * b[k];
    }
  return s;
}

/// Matrix of v (.) w -> (a v) (.) (a w) on the e_i (.) e_j basis.
template <ScalarType T>
Matrix<T> sym2_action(const Matrix<T>& a) {
  if (!a.is_square() || a.rows() != 5) throw dimension_error("sym2_action expects a 5x5 matrix");
  Matrix<T> s(kSym2Dim, kSym2Dim);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i; j < 5; ++j) {
      const std::size_t col = sym2_index(i, j);
      for (std::size_t k = 0; k < 5; ++k) {
        for (std::size_t l = k; l < 5; ++l) {
          T c = a(k, i) * a(l, j);
          if (k != l) c += a(l, i) * a(k, j);
          s(sym2_index(k, l), col) = c;
        }
      }
    }
  }
  return s;
}

/// Coordinates of z = sum_i e_i (x) e_i.
template <ScalarType T>
std::vector<T> sym2_invariant_z() {
  std::vector<T> z(kSym2Dim, ScalarTraits<T>::zero());
  for (std::size_t i = 0; i < 5; ++i) z[sym2_index(i, i)] = ScalarTraits<T>::one() / ScalarTraits<T>::from_int(2);
  return z;
}

/// Fixed orthonormal frame of z-perp used to write alpha14.
///
/// Basis order: the ten e_i (.) e_j / sqrt(2) with i < j (label order), then
/// Gram-Schmidt applied to e_i (.) e_i - e_{i+1} (.) e_{i+1}, i = 1..4.
struct Sym2Frame {
  std::vector<std::pair<std::size_t, std::size_t>> labels;  // 0-based, i <= j
  std::vector<double> gram;
  std::vector<Complex> z;
  std::vector<std::vector<Complex>> basis;

  static Sym2Frame build() {
    Sym2Frame f;
    f.labels.resize(kSym2Dim);
    f.gram.resize(kSym2Dim);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i; j < 5; ++j) {
        f.labels[sym2_index(i, j)] = {i, j};
        f.gram[sym2_index(i, j)] = static_cast<double>(sym2_gram(i, j));
      }
    f.z = sym2_invariant_z<Complex>();
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j) {
        std::vector<Complex> v(kSym2Dim);
        v[sym2_index(i, j)] = 1.0 / std::sqrt(2.0);
        f.basis.push_back(std::move(v));
      }
    std::vector<std::vector<Complex>> diag;
    for (std::size_t i = 0; i + 1 < 5; ++i) {
      std::vector<Complex> v(kSym2Dim);
      v[sym2_index(i, i)] = 1.0;
      v[sym2_index(i + 1, i + 1)] = -1.0;
      for (const auto& u : diag) {
        const Complex c = sym2_inner(u, v);
        for (std::size_t k = 0; k < kSym2Dim; ++k) v[k] -= c * u[k];
      }
      const Complex nrm = std::sqrt(sym2_inner(v, v));
      for (auto& x : v) x /= nrm;
      diag.push_back(v);
    }
    f.basis.insert(f.basis.end(), diag.begin(), diag.end());
    return f;
  }

  /// Coordinates in the frame of a vector lying in z-perp.
  [[nodiscard]] std::vector<Complex> coordinates(const std::vector<Complex>& v) const {
    std::vector<Complex> c(basis.size());
    for (std::size_t r = 0; r < basis.size(); ++r) c[r] = sym2_inner(basis[r], v);
    return c;
  }

  /// Largest deviation of the frame's Gram matrix from I and of its
  /// pairings with z from 0.
  [[nodiscard]] double orthonormality_defect() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < basis.size(); ++r) {
      worst = std::max(worst, std::abs(sym2_inner(basis[r], z)));
      for (std::size_t s = 0; s < basis.size(); ++s) {
        const Complex g = sym2_inner(basis[r], basis[s]);
        worst = std::max(worst, std::abs(g - (r == s ? 1.0 : 0.0)));
      }
    }
    return worst;
  }
};

inline const Sym2Frame& default_sym2_frame() {
  static const Sym2Frame frame = Sym2Frame::build();
  return frame;
}

/// The action of a on z-perp, written in the frame's orthonormal basis.
inline FloatMatrix alpha14(const FloatMatrix& a, const Sym2Frame& frame = default_sym2_frame(),
                           const Tolerance& tol = {}) {
  if (!a.is_square() || a.rows() != 5) throw dimension_error("alpha14 expects a 5x5 matrix");
  if (!is_special_orthogonal(a, Form::standard, tol)) {
    throw precondition_error("alpha14 argument is not in SO(5)");
  }
  const FloatMatrix s = sym2_action(a);
  FloatMatrix out(kZPerpDim, kZPerpDim);
  const double scale = std::max(1.0, max_abs(s));
  for (std::size_t c = 0; c < kZPerpDim; ++c) {
    std::vector<Complex> image(kSym2Dim);
    for (std::size_t r = 0; r < kSym2Dim; ++r)
      for (std::size_t k = 0; k < kSym2Dim; ++k) image[r] += s(r, k) * frame.basis[c][k];
    if (std::abs(sym2_inner(frame.z, image)) > tol.bound(scale)) {
      throw precondition_error("Sym^2 action left z-perp; frame is broken");
    }
    const auto coords = frame.coordinates(image);
    for (std::size_t r = 0; r < kZPerpDim; ++r) out(r, c) = coords[r];
  }
  return out;
}

inline FloatMatrix alpha14(const ExactMatrix& a, const Sym2Frame& frame = default_sym2_frame(),
                           const Tolerance& tol = {}) {
  return alpha14(to_float(a), frame, tol);
}

/// Orthogonal basis of the common fixed space F of alpha(B_c) inside z-perp
/// for every B_c = D_c + D_{c^4} + 1. With P12 = e1.e1 + e2.e2 and
/// P34 = e3.e3 + e4.e4 these are P12 - P34 and P12 + P34 - 4 e5.e5.
inline std::array<std::vector<Complex>, 2> fixed_space_basis() {
  std::vector<Complex> f1(kSym2Dim), f2(kSym2Dim);
  f1[sym2_index(0, 0)] = 1.0;
  f1[sym2_index(1, 1)] = 1.0;
  f1[sym2_index(2, 2)] = -1.0;
  f1[sym2_index(3, 3)] = -1.0;
  f2[sym2_index(0, 0)] = 1.0;
  f2[sym2_index(1, 1)] = 1.0;
  f2[sym2_index(2, 2)] = 1.0;
  f2[sym2_index(3, 3)] = 1.0;
  f2[sym2_index(4, 4)] = -4.0;
  return {f1, f2};
}

/// rank of the 4 x 14 matrix of frame coordinates of f1, f2, alpha(a) f1,
/// alpha(a) f2, i.e. dim(F + alpha(a) F).
inline std::size_t f_span_dimension(const FloatMatrix& a, const Sym2Frame& frame = default_sym2_frame(),
                                    const Tolerance& tol = {}) {
  const FloatMatrix al = alpha14(a, frame, tol);
  const auto fs = fixed_space_basis();
  FloatMatrix m(4, kZPerpDim);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto c = frame.coordinates(fs[k]);
    for (std::size_t r = 0; r < kZPerpDim; ++r) {
      m(k, r) = c[r];
      Complex img = 0.0;
      for (std::size_t s = 0; s < kZPerpDim; ++s) img += al(r, s) * c[s];
      m(k + 2, r) = img;
    }
  }
  return rank(m, tol);
}

}  // namespace sotrace
