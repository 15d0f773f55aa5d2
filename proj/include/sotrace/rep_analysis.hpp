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
 * @file rep_analysis.hpp
 * @brief Commutants, intertwiners, conjugacy certificates and separation scans.
 *
 * An intertwiner of (X_i) and (Y_i) is any T with T X_i = Y_i T for every i.
 * The space is computed as the kernel of the stacked linear system in the
 * d^2 entries of T, so it inherits the rank threshold of the tolerance.
 */

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sotrace/errors.hpp"
#include "sotrace/linalg.hpp"
#include "sotrace/q_invariant.hpp"
#include "sotrace/representation.hpp"
#include "sotrace/words.hpp"

namespace sotrace {

template <ScalarType T>
using MatrixPair = std::pair<Matrix<T>, Matrix<T>>;

/// Coefficient matrix of T -> (T X_i - Y_i T)_i on vec(T) (row-major).
template <ScalarType T>
Matrix<T> intertwiner_system(const std::vector<MatrixPair<T>>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("intertwiner system needs at least one pair");
  const std::size_t d = pairs.front().first.dim();
  for (const auto& [x, y] : pairs) {
    if (x.dim() != d || y.dim() != d) throw dimension_error("intertwiner pairs differ in dimension");
  }
  Matrix<T> sys(pairs.size() * d * d, d * d);
  std::size_t row = 0;
  for (const auto& [x, y] : pairs) {
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c, ++row) {
        for (std::size_t k = 0; k < d; ++k) {
          sys(row, r * d + k) += x(k, c);
          sys(row, k * d + c) -= y(r, k);
        }
      }
    }
  }
  return sys;
}

template <ScalarType T>
std::vector<Matrix<T>> intertwiner_space(const std::vector<MatrixPair<T>>& pairs, const Tolerance& tol = {}) {
  const std::size_t d = pairs.empty() ? 0 : pairs.front().first.dim();
  std::vector<Matrix<T>> basis;
  for (const auto& v : kernel_basis(intertwiner_system(pairs), tol)) {
    Matrix<T> t(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) t(r, c) = v[r * d + c];
    basis.push_back(std::move(t));
  }
  return basis;
}

template <ScalarType T>
std::size_t commutant_dimension(const std::vector<Matrix<T>>& mats, const Tolerance& tol = {}) {
  if (mats.empty()) throw std::invalid_argument("commutant of an empty set");
  std::vector<MatrixPair<T>> pairs;
  for (const auto& m : mats) pairs.emplace_back(m, m);
  return kernel_dimension(intertwiner_system(pairs), tol);
}

/// Pairs (rho(g), rho2(g)) over the generators of rho.
template <ScalarType T>
std::vector<MatrixPair<T>> generator_pairs(const Representation<T>& rho, const Representation<T>& rho2) {
  if (rho.dim() != rho2.dim()) throw dimension_error("representations differ in dimension");
  std::vector<MatrixPair<T>> pairs;
  for (const auto& [g, m] : rho.generators) pairs.emplace_back(m, rho2.generator(g));
  if (rho2.generators.size() != rho.generators.size()) {
    throw precondition_error("representations have different generator sets");
  }
  return pairs;
}

/// Commutant dimension 1, offered only for Z_p * Z_q representations whose
/// generator orders have been confirmed.
template <ScalarType T>
bool is_irreducible(const Representation<T>& rep, const Tolerance& tol = {}) {
  if (rep.group.kind != GroupTag::Kind::zp_zq) {
    throw precondition_error("criterion not applicable: irreducibility via the commutant needs finite generator orders");
  }
  const std::size_t d = rep.dim();
  const long orders[2] = {rep.group.p, rep.group.q};
  for (int g = 1; g <= 2; ++g) {
    const Matrix<T> pw = power(rep.generator(g), static_cast<unsigned long>(orders[g - 1]));
    if (!approx_equal(pw, Matrix<T>::identity(d), Tolerance{1e-7, 1e-7, tol.rank_pivot_eps})) {
      throw precondition_error("criterion not applicable: generator " + std::to_string(g) +
                               " does not have the declared order");
    }
  }
  return commutant_dimension(rep.generator_images(), tol) == 1;
}

enum class ConjugacyVerdict { so_conjugate, o_but_not_so_conjugate, not_conjugate, inconclusive };

inline std::string to_string(ConjugacyVerdict v) {
  switch (v) {
    case ConjugacyVerdict::so_conjugate: return "so_conjugate";
    case ConjugacyVerdict::o_but_not_so_conjugate: return "o_but_not_so_conjugate";
    case ConjugacyVerdict::not_conjugate: return "not_conjugate";
    case ConjugacyVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

struct ConjugacyCertificate {
  std::size_t intertwiner_dim = 0;
  std::vector<std::size_t> block_intertwiner_dims;  // one entry per declared block
  std::optional<FloatMatrix> normalized;            // one orthogonal intertwiner
  double orthogonality_defect = 0.0;
  double intertwining_residual = 0.0;
  std::vector<Complex> determinants;                 // over all sign normalizations
  ConjugacyVerdict verdict = ConjugacyVerdict::inconclusive;
  std::string note;
};

namespace detail {

struct NormalizedIntertwiner {
  FloatMatrix t;
  double defect = 0.0;
};

/// Rescales t so that t t^T = I, provided t t^T is a scalar matrix.
inline std::optional<NormalizedIntertwiner> normalize_orthogonal(const FloatMatrix& t, const Tolerance& tol) {
  const std::size_t d = t.dim();
  const FloatMatrix p = t * t.transpose();
  const Complex lambda = trace(p) / static_cast<double>(d);
  if (std::abs(lambda) == 0.0) return std::nullopt;
  FloatMatrix scaled = p;
  for (std::size_t i = 0; i < d; ++i) scaled(i, i) -= lambda;
  const double defect = max_abs(scaled) / std::abs(lambda);
  if (defect > tol.bound(1.0) * static_cast<double>(d)) return std::nullopt;
  FloatMatrix n = t;
  n *= 1.0 / std::sqrt(lambda);
  return NormalizedIntertwiner{n, defect};
}

inline double intertwining_residual(const FloatMatrix& t, const std::vector<MatrixPair<Complex>>& pairs) {
  double worst = 0.0;
  for (const auto& [x, y] : pairs) worst = std::max(worst, max_deviation(t * x, y * t));
  return worst;
}

}  // namespace detail

/// Decides whether rho2 = T rho T^-1 with T in SO(d) or only in O(d).
///
/// With declared blocks (rho2 block-diagonal with the same splitting) each
/// block must carry a one-dimensional intertwiner space, and the verdict
/// ranges over all block-wise sign choices of the normalized intertwiner.
inline ConjugacyCertificate so_conjugacy_certificate(const Representation<Complex>& rho,
                                                     const Representation<Complex>& rho2,
                                                     const Tolerance& tol = {}) {
  if (rho.form != Form::standard || rho2.form != Form::standard) {
    throw precondition_error("conjugacy certificate needs standard-form representations");
  }
  ConjugacyCertificate cert;
  const auto pairs = generator_pairs(rho, rho2);
  const std::size_t d = rho.dim();
  cert.intertwiner_dim = intertwiner_space(pairs, tol).size();
  if (cert.intertwiner_dim == 0) {
    cert.verdict = ConjugacyVerdict::not_conjugate;
    cert.note = "no nonzero intertwiner";
    return cert;
  }

  std::vector<std::size_t> blocks = rho.blocks;
  std::size_t total = 0;
  for (auto b : blocks) total += b;
  if (blocks.empty() || total != d) blocks = {d};

  std::vector<FloatMatrix> parts;
  std::vector<Complex> part_dets;
  std::size_t off = 0;
  for (std::size_t b : blocks) {
    std::vector<MatrixPair<Complex>> sub;
    for (const auto& [x, y] : pairs) sub.emplace_back(diagonal_block(x, off, b), diagonal_block(y, off, b));
    const auto space = intertwiner_space(sub, tol);
    cert.block_intertwiner_dims.push_back(space.size());
    if (space.size() != 1) {
      cert.verdict = ConjugacyVerdict::inconclusive;
      cert.note = "block at offset " + std::to_string(off) + " has intertwiner dimension " +
                  std::to_string(space.size());
      return cert;
    }
    auto norm = detail::normalize_orthogonal(space.front(), tol);
    if (!norm) {
      cert.verdict = ConjugacyVerdict::inconclusive;
      cert.note = "intertwiner is not a multiple of an orthogonal matrix";
      return cert;
    }
    cert.orthogonality_defect = std::max(cert.orthogonality_defect, norm->defect);
    part_dets.push_back(determinant(norm->t));
    parts.push_back(std::move(norm->t));
    off += b;
  }
  if (blocks.size() > 1) {
    std::size_t sum = 0;
    for (auto k : cert.block_intertwiner_dims) sum += k;
    if (sum != cert.intertwiner_dim) {
      cert.verdict = ConjugacyVerdict::inconclusive;
      cert.note = "intertwiners mix blocks";
      return cert;
    }
  }

  const FloatMatrix t = block_diag(std::span<const FloatMatrix>(parts));
  cert.intertwining_residual = detail::intertwining_residual(t, pairs);
  cert.normalized = t;
  if (cert.intertwining_residual > 1e3 * tol.bound(1.0)) {
    cert.verdict = ConjugacyVerdict::inconclusive;
    cert.note = "normalized intertwiner fails the intertwining relation";
    return cert;
  }

  const std::size_t k = blocks.size();
  bool any_plus = false;
  bool all_minus = true;
  const double det_tol = 1e-6;
  for (std::size_t signs = 0; signs < (std::size_t{1} << k); ++signs) {
    Complex det = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
      const bool flip = (signs >> j) & 1U;
      det *= (flip && blocks[j] % 2 == 1) ? -part_dets[j] : part_dets[j];
    }
    cert.determinants.push_back(det);
    if (std::abs(det - 1.0) <= det_tol) any_plus = true;
    if (std::abs(det + 1.0) > det_tol) all_minus = false;
  }
  if (any_plus) {
    cert.verdict = ConjugacyVerdict::so_conjugate;
  } else if (all_minus) {
    cert.verdict = ConjugacyVerdict::o_but_not_so_conjugate;
  } else {
    cert.verdict = ConjugacyVerdict::inconclusive;
    cert.note = "normalized determinants are not +-1";
  }
  return cert;
}

inline ConjugacyCertificate so_conjugacy_certificate(const Representation<GaussRational>& rho,
                                                     const Representation<GaussRational>& rho2,
                                                     const Tolerance& tol = {}) {
  return so_conjugacy_certificate(to_float(rho), to_float(rho2), tol);
}

enum class InvariantKind { trace, q };

inline std::string to_string(InvariantKind k) { return k == InvariantKind::trace ? "trace" : "q"; }

struct SeparationReport {
  bool separated = false;
  std::optional<Word> witness;
  Complex value_a{};
  Complex value_b{};
  InvariantKind kind = InvariantKind::trace;
  int max_len = 0;
  std::size_t words_checked = 0;
  double max_residual = 0.0;

  [[nodiscard]] std::string verdict() const { return separated ? "separated" : "indistinguishable_to_length"; }
};

namespace detail {

template <ScalarType T, class F>
SeparationReport separation_scan(const Representation<T>& rho, const Representation<T>& rho2, int max_len,
                                 InvariantKind kind, const Tolerance& tol, F&& invariant) {
  if (rho.dim() != rho2.dim()) throw dimension_error("representations differ in dimension");
  SeparationReport rep;
  rep.kind = kind;
  rep.max_len = max_len;
  const int gens = std::max(rho.generators.rbegin()->first, rho2.generators.rbegin()->first);
  for (const Word& w : enumerate_words(max_len, gens)) {
    const T a = invariant(rho(w));
    const T b = invariant(rho2(w));
    ++rep.words_checked;
    const Complex ca = to_complex(a), cb = to_complex(b);
    const double residual = std::abs(ca - cb);
    rep.max_residual = std::max(rep.max_residual, residual);
    if (!approx_equal(a, b, tol)) {
      rep.separated = true;
      rep.witness = w;
      rep.value_a = ca;
      rep.value_b = cb;
      return rep;
    }
  }
  return rep;
}

}  // namespace detail

/// First word (shortlex) whose traces differ beyond tol.
template <ScalarType T>
SeparationReport trace_separation(const Representation<T>& rho, const Representation<T>& rho2, int max_len,
                                  const Tolerance& tol = {}) {
  return detail::separation_scan(rho, rho2, max_len, InvariantKind::trace, tol,
                                 [](const Matrix<T>& m) { return trace(m); });
}

/// First word (shortlex) on which Q_n(rho(w)) and Q_n(rho2(w)) differ.
template <ScalarType T>
SeparationReport q_separation(const Representation<T>& rho, const Representation<T>& rho2, int max_len,
                              const Tolerance& tol = {}) {
  if (rho.dim() % 2 != 0) throw dimension_error("Q separation needs an even dimension");
  return detail::separation_scan(rho, rho2, max_len, InvariantKind::q, tol,
                                 [](const Matrix<T>& m) { return q_n(m); });
}

}  // namespace sotrace
