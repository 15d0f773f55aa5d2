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
 * @file so_constructions.hpp
 * @brief Explicit matrices and representations into SO(d, C).
 *
 * D_c is the image of c under C* -> SO(2, C). iota_c puts a 4x4 block in
 * the top-left corner of a 2n x 2n matrix and fills the remaining 2n - 4
 * diagonal entries with n - 2 copies of D_c (at c = 1 this is the extension
 * by the identity).
 *
 * Roots of unity only exist on the float backend; everything that takes a
 * rational c is templated over both backends.
 */

#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "sotrace/errors.hpp"
#include "sotrace/linalg.hpp"
#include "sotrace/representation.hpp"
#include "sotrace/sym2.hpp"

namespace sotrace {

template <ScalarType T>
Matrix<T> d_c(const T& c) {
  if (ScalarTraits<T>::is_zero(c, Tolerance{0, 0, 0})) throw precondition_error("D_c needs c != 0");
  const T inv = ScalarTraits<T>::one() / c;
  const T two = ScalarTraits<T>::from_int(2);
  const T i = ScalarTraits<T>::imag_unit();
  const T cs = (c + inv) / two;
  const T sn = i * (c - inv) / two;
  return Matrix<T>{{cs, sn}, {-sn, cs}};
}

/// a (4x4) in the top-left corner followed by n-2 copies of D_c, so the
/// result is 4 + 2(n-2) = 2n square. With n-1 copies it would be 2n+2.
template <ScalarType T>
Matrix<T> iota_c(const Matrix<T>& a, const T& c, std::size_t n, const Tolerance& tol = {}) {
  if (n < 2) throw precondition_error("iota_c needs n >= 2");
  if (!a.is_square() || a.rows() != 4) throw dimension_error("iota_c expects a 4x4 block, got " + a.shape());
  if (!is_special_orthogonal(a, Form::standard, tol)) throw precondition_error("iota_c block is not in SO(4)");
  std::vector<Matrix<T>> blocks{a};
  const Matrix<T> dc = d_c(c);
  for (std::size_t k = 2; k < n; ++k) blocks.push_back(dc);
  return block_diag(std::span<const Matrix<T>>(blocks));
}

/// Generator g maps to iota_{c_g}(rep(g)); rep must be a 4-dimensional F_2
/// representation.
template <ScalarType T>
Representation<T> alpha_c1c2(const Representation<T>& rep, const T& c1, const T& c2, std::size_t n,
                             const Tolerance& tol = {}) {
  if (rep.form != Form::standard) throw precondition_error("alpha_c1c2 expects a standard-form representation");
  if (rep.dim() != 4) throw dimension_error("alpha_c1c2 expects a representation into SO(4)");
  Representation<T> out;
  out.group = rep.group;
  for (const auto& [g, m] : rep.generators) {
    if (g != 1 && g != 2) throw precondition_error("alpha_c1c2 is defined on F_2 only");
    out.generators.emplace(g, iota_c(m, g == 1 ? c1 : c2, n, tol));
  }
  return out;
}

/// K_{2n}: n diagonal copies of (1/sqrt 2) [[1, i], [1, -i]].
inline FloatMatrix k_matrix(std::size_t n) {
  const double h = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, 1.0};
  FloatMatrix k(2 * n, 2 * n);
  for (std::size_t b = 0; b < n; ++b) {
    k(2 * b, 2 * b) = h;
    k(2 * b, 2 * b + 1) = h * i;
    k(2 * b + 1, 2 * b) = h;
    k(2 * b + 1, 2 * b + 1) = -h * i;
  }
  return k;
}

/// K^-1 a K, carrying SO_J(2n) onto SO(2n).
inline FloatMatrix phi_conj(const FloatMatrix& a, const Tolerance& tol = {}) {
  if (!a.is_square() || a.rows() % 2 != 0) throw dimension_error("phi_conj expects an even square matrix");
  if (!is_special_orthogonal(a, Form::j, tol)) throw precondition_error("phi_conj argument is not in SO_J");
  const FloatMatrix k = k_matrix(a.rows() / 2);
  return inverse(k) * a * k;
}

inline Complex root_of_unity(long order, long power = 1) {
  if (order <= 0) throw precondition_error("root order must be positive");
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(power % order) / static_cast<double>(order);
  return std::polar(1.0, angle);
}

/// diag(D_xi, D_xi^2, ..., D_xi^m), xi = exp(2 pi i / root_order).
inline FloatMatrix b_blocks(long root_order, std::size_t m) {
  if (m == 0) throw precondition_error("b_blocks needs m >= 1");
  if (root_order <= static_cast<long>(2 * m)) throw precondition_error("b_blocks needs root_order > 2m");
  std::vector<FloatMatrix> blocks;
  for (std::size_t k = 1; k <= m; ++k) blocks.push_back(d_c(root_of_unity(root_order, static_cast<long>(k))));
  return block_diag(std::span<const FloatMatrix>(blocks));
}

/// diag(D_c, D_{c^4}, 1).
template <ScalarType T>
Matrix<T> b_c5(const T& c) {
  Matrix<T> one(1, 1);
  one(0, 0) = ScalarTraits<T>::one();
  return block_diag({d_c(c), d_c(ipow(c, 4)), one});
}

inline constexpr long kPsiMinOrder = 17;

/// Z_p * Z_q -> SO(5): g1 -> B_{xi_p}, g2 -> a B_{xi_q} a^-1.
inline Representation<Complex> psi_a(const FloatMatrix& a, long p, long q, const Tolerance& tol = {}) {
  if (p < kPsiMinOrder || q < kPsiMinOrder) throw precondition_error("psi_A needs p, q > 16");
  if (!a.is_square() || a.rows() != 5 || !is_special_orthogonal(a, Form::standard, tol)) {
    throw precondition_error("psi_A needs a in SO(5)");
  }
  Representation<Complex> rep;
  rep.group = GroupTag::cyclic_product(p, q);
  rep.generators.emplace(1, b_c5(root_of_unity(p)));
  rep.generators.emplace(2, a * b_c5(root_of_unity(q)) * a.transpose());
  return rep;
}

/// Smallest block count accepted by eta_a.
inline constexpr std::size_t kEtaMinBlocks = 2;

/// Z_p * Z_q -> SO(2m): g1 -> b_blocks(p, m), g2 -> a b_blocks(q, m) a^-1.
inline Representation<Complex> eta_a(const FloatMatrix& a, long p, long q, std::size_t m,
                                     const Tolerance& tol = {}) {
  if (m < kEtaMinBlocks) throw precondition_error("eta_A needs m >= 2");
  if (p <= static_cast<long>(2 * m) || q <= static_cast<long>(2 * m)) throw precondition_error("eta_A needs p, q > 2m");
  if (!a.is_square() || a.rows() != 2 * m || !is_special_orthogonal(a, Form::standard, tol)) {
    throw precondition_error("eta_A needs a in SO(2m)");
  }
  Representation<Complex> rep;
  rep.group = GroupTag::cyclic_product(p, q);
  rep.generators.emplace(1, b_blocks(p, m));
  rep.generators.emplace(2, a * b_blocks(q, m) * a.transpose());
  return rep;
}

/// alpha14 applied to every generator image.
inline Representation<Complex> compose_alpha14(const Representation<Complex>& rep,
                                               const Tolerance& tol = {}) {
  Representation<Complex> out;
  out.group = rep.group;
  for (const auto& [g, m] : rep.generators) out.generators.emplace(g, alpha14(m, default_sym2_frame(), tol));
  return out;
}

/// Direct sum of two representations on the same generators.
template <ScalarType T>
Representation<T> direct_sum(const Representation<T>& a, const Representation<T>& b) {
  if (a.form != b.form) throw precondition_error("direct_sum needs matching forms");
  Representation<T> out;
  out.form = a.form;
  out.group = a.group;
  for (const auto& [g, m] : a.generators) {
    out.generators.emplace(g, block_diag({m, b.generator(g)}));
  }
  auto append = [&](const Representation<T>& r) {
    if (r.blocks.empty()) out.blocks.push_back(r.dim());
    else out.blocks.insert(out.blocks.end(), r.blocks.begin(), r.blocks.end());
  };
  append(a);
  append(b);
  return out;
}

/// The counterexample representation of Z_p * Z_q into SO(2n):
/// alpha14 o psi_A for n = 7, and (alpha14 o psi_A) + eta_{A'} for n >= 9.
inline Representation<Complex> rho_construction(std::size_t n, long p, long q, const FloatMatrix& a5,
                                                 const std::optional<FloatMatrix>& a2m = std::nullopt,
                                                 const Tolerance& tol = {}) {
  if (n == 8) throw precondition_error("n=8 excluded");
  if (n < 7) throw precondition_error("rho construction needs n = 7 or n >= 9");
  const long floor = std::max<long>(static_cast<long>(2 * n) - 14, 16);
  if (p <= floor || q <= floor) {
    throw precondition_error("rho construction needs p, q > max(2n-14, 16) = " + std::to_string(floor));
  }
  Representation<Complex> top = compose_alpha14(psi_a(a5, p, q, tol), tol);
  if (n == 7) {
    top.blocks = {kZPerpDim};
    return top;
  }
  if (!a2m) throw precondition_error("rho construction for n >= 9 needs a matrix in SO(2n-14)");
  const Representation<Complex> bottom = eta_a(*a2m, p, q, n - 7, tol);
  return direct_sum(top, bottom);
}

/// diag(-1, 1, ..., 1): orthogonal with determinant -1.
template <ScalarType T>
Matrix<T> sigma_matrix(std::size_t d) {
  Matrix<T> m = Matrix<T>::identity(d);
  m(0, 0) = -ScalarTraits<T>::one();
  return m;
}

/// Conjugation of every generator image by diag(-1, 1, ..., 1).
template <ScalarType T>
Representation<T> sigma_involution(const Representation<T>& rep) {
  if (rep.form != Form::standard) throw precondition_error("sigma_involution expects a standard-form representation");
  Representation<T> out = rep;
  for (auto& [g, m] : out.generators) {
    for (std::size_t k = 1; k < m.rows(); ++k) {
      m(0, k) = -m(0, k);
      m(k, 0) = -m(k, 0);
    }
  }
  return out;
}

/// Seeded source for samples. Maps raw 64-bit engine output by hand so that
/// sequences are identical across standard library implementations.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  long uniform_int(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(engine_() % span);
  }

  double uniform_real(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 engine_;
};

template <ScalarType T>
T random_entry(SampleRng& rng) {
  if constexpr (is_exact_v<T>) {
    const long num = rng.uniform_int(-5, 5);
    const auto den = static_cast<unsigned long>(rng.uniform_int(1, 4));
    return GaussRational(num, den);
  } else {
    return Complex{rng.uniform_real(-1.0, 1.0), 0.0};
  }
}

template <ScalarType T>
Matrix<T> random_skew(std::size_t d, SampleRng& rng) {
  Matrix<T> s(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      s(i, j) = random_entry<T>(rng);
      s(j, i) = -s(i, j);
    }
  return s;
}

template <ScalarType T>
Matrix<T> random_matrix(std::size_t d, SampleRng& rng) {
  Matrix<T> m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = random_entry<T>(rng);
  return m;
}

/// Dense matrix with independent real and imaginary parts.
template <ScalarType T>
Matrix<T> random_complex_matrix(std::size_t d, SampleRng& rng) {
  Matrix<T> m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = random_entry<T>(rng) + random_entry<T>(rng) * ScalarTraits<T>::imag_unit();
  return m;
}

namespace detail {

inline constexpr int kCayleyRetries = 16;

template <ScalarType T>
std::optional<Matrix<T>> cayley(const Matrix<T>& x) {
  const std::size_t d = x.rows();
  const Matrix<T> id = Matrix<T>::identity(d);
  const Matrix<T> plus = id + x;
  const T det = determinant(plus);
  if constexpr (is_exact_v<T>) {
    if (det.is_zero()) return std::nullopt;
  } else {
    if (std::abs(det) < 1e-8) return std::nullopt;
  }
  return (id - x) * inverse(plus);
}

}  // namespace detail

/// Cayley transform (I - S)(I + S)^-1 of a seeded random skew S.
template <ScalarType T>
Matrix<T> random_so(std::size_t d, std::uint64_t seed) {
  if (d < 2) throw precondition_error("random_so needs d >= 2");
  SampleRng rng(seed);
  for (int attempt = 0; attempt < detail::kCayleyRetries; ++attempt) {
    if (auto a = detail::cayley(random_skew<T>(d, rng))) return *a;
  }
  throw singular_matrix_error("random_so: I + S stayed singular");
}

/// Cayley transform of S J_{2n}, which lies in the Lie algebra of SO_J(2n).
template <ScalarType T>
Matrix<T> random_so_j(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw precondition_error("random_so_j needs n >= 1");
  SampleRng rng(seed);
  const Matrix<T> j = j_form<T>(n);
  for (int attempt = 0; attempt < detail::kCayleyRetries; ++attempt) {
    if (auto a = detail::cayley(random_skew<T>(2 * n, rng) * j)) return *a;
  }
  throw singular_matrix_error("random_so_j: I + SJ stayed singular");
}

/// Random F_2 representation into SO(d) with independent seeded generators.
template <ScalarType T>
Representation<T> random_representation(std::size_t d, std::uint64_t seed) {
  Representation<T> rep;
  rep.generators.emplace(1, random_so<T>(d, 2 * seed + 1));
  rep.generators.emplace(2, random_so<T>(d, 2 * seed + 2));
  return rep;
}

/// 5x5 cyclic permutation e_i -> e_{i+1}; even, so in SO(5).
template <ScalarType T>
Matrix<T> cyclic_permutation(std::size_t d = 5) {
  Matrix<T> m(d, d);
  for (std::size_t i = 0; i < d; ++i) m((i + 1) % d, i) = ScalarTraits<T>::one();
  return m;
}

}  // namespace sotrace
