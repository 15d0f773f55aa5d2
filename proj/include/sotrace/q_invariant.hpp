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
 * @file q_invariant.hpp
 * @brief The invariant Q of n matrices of size 2n.
 *
 *   Q(A_1, ..., A_n) = sum over s in S_{2n} of sign(s) *
 *       prod_i ( A_i[s(2i-1), s(2i)] - A_i[s(2i), s(2i-1)] ).
 *
 * Q depends only on the skew parts S_i = A_i - A_i^T, is symmetric in its
 * arguments and is invariant under simultaneous SO(2n) conjugation.
 *
 * Two evaluators are provided:
 *  - q_naive walks all (2n)! permutations literally (2n <= 10).
 *  - q_fast sums over perfect matchings of {1..2n} together with an
 *    assignment of arguments to pairs. Each unordered pair stands for two
 *    orientations that contribute equally, and permuting whole pairs inside
 *    s is an even permutation, so
 *        Q = kOrientationsPerPair^n * sum_{matching M} pfsign(M)
 *              * sum_{bijections args -> pairs of M} prod S_i[pair].
 *    The factor kOrientationsPerPair^n is pinned against q_naive by the test
 *    suite.
 *
 * Closed forms that follow: Q([[a11,a12],[a21,a22]]) = 2 (a12 - a21), and
 * Q_n(A) = 2^n n! Pf(A - A^T).
 */

#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "sotrace/errors.hpp"
#include "sotrace/linalg.hpp"
#include "sotrace/matrix.hpp"
#include "sotrace/words.hpp"

namespace sotrace {

/// Number of orderings of one matched pair that contribute identically.
inline constexpr long kOrientationsPerPair = 2;

/// Naive evaluation enumerates (2n)! terms; refuse beyond 2n = 10.
inline constexpr std::size_t kNaiveMaxDimension = 10;

/// q_fast keys its memo on 2n index bits plus the argument-use counts.
inline constexpr std::size_t kFastMaxDimension = 32;

template <ScalarType T>
std::size_t check_q_args(std::span<const Matrix<T>> args) {
  const std::size_t n = args.size();
  if (n == 0) throw dimension_error("Q needs at least one argument");
  for (const auto& a : args) {
    if (!a.is_square() || a.rows() != 2 * n) {
      throw dimension_error("Q with " + std::to_string(n) + " arguments needs " +
                            std::to_string(2 * n) + "x" + std::to_string(2 * n) +
                            " matrices, got " + a.shape());
    }
  }
  return n;
}

template <ScalarType T>
Matrix<T> skew_part(const Matrix<T>& a) {
  return a - a.transpose();
}

namespace detail {

inline int rank_in(std::uint32_t set, int index) {
  return std::popcount(set & ((std::uint32_t{1} << index) - 1));
}

template <ScalarType T>
T naive_slot(const std::vector<Matrix<T>>& skews, std::size_t slot, std::uint32_t remaining) {
  if (slot == skews.size()) return ScalarTraits<T>::one();
  const Matrix<T>& s = skews[slot];
  T sum = ScalarTraits<T>::zero();
  for (std::uint32_t jb = remaining; jb != 0; jb &= jb - 1) {
    const int j = std::countr_zero(jb);
    const int rj = rank_in(remaining, j);
    const std::uint32_t after_j = remaining & ~(std::uint32_t{1} << j);
    for (std::uint32_t kb = after_j; kb != 0; kb &= kb - 1) {
      const int k = std::countr_zero(kb);
      const T& factor = s(j, k);
      if (ScalarTraits<T>::is_zero(factor, Tolerance{0, 0, 0})) continue;
      const int rk = rank_in(after_j, k);
      T term = factor * naive_slot(skews, slot + 1, after_j & ~(std::uint32_t{1} << k));
      if ((rj + rk) % 2 == 0) sum += term;
      else sum -= term;
    }
  }
  return sum;
}

/// Literal permutation sum over Gaussian integers. Each skew matrix is
/// scaled by the common denominator of its entries; accumulators are
/// preallocated per slot so the inner loop never allocates.
class NaiveGaussInt {
 public:
  explicit NaiveGaussInt(const std::vector<Matrix<GaussRational>>& skews)
      : n_(skews.size()), dim_(2 * skews.size()), acc_re_(n_ + 1), acc_im_(n_ + 1) {
    for (const auto& s : skews) {
      mpz_class lcd = 1;
      for (const auto& x : s.data()) {
        mpz_lcm(lcd.get_mpz_t(), lcd.get_mpz_t(), x.real().get_den_mpz_t());
        mpz_lcm(lcd.get_mpz_t(), lcd.get_mpz_t(), x.imag().get_den_mpz_t());
      }
      scale_ *= lcd;
      std::vector<mpz_class> re(dim_ * dim_), im(dim_ * dim_);
      for (std::size_t k = 0; k < dim_ * dim_; ++k) {
        const auto& x = s.data()[k];
        re[k] = x.real().get_num() * (lcd / x.real().get_den());
        im[k] = x.imag().get_num() * (lcd / x.imag().get_den());
      }
      re_.push_back(std::move(re));
      im_.push_back(std::move(im));
    }
  }

  GaussRational evaluate() {
    run(0, (std::uint32_t{1} << dim_) - 1);
    return GaussRational(mpq_class(acc_re_[0], scale_), mpq_class(acc_im_[0], scale_));
  }

 private:
  void run(std::size_t slot, std::uint32_t remaining) {
    mpz_class& sre = acc_re_[slot];
    mpz_class& sim = acc_im_[slot];
    if (slot == n_) {
      sre = 1;
      sim = 0;
      return;
    }
    sre = 0;
    sim = 0;
    const auto& re = re_[slot];
    const auto& im = im_[slot];
    for (std::uint32_t jb = remaining; jb != 0; jb &= jb - 1) {
      const int j = std::countr_zero(jb);
      const int rj = rank_in(remaining, j);
      const std::uint32_t after_j = remaining & ~(std::uint32_t{1} << j);
      for (std::uint32_t kb = after_j; kb != 0; kb &= kb - 1) {
        const int k = std::countr_zero(kb);
        const std::size_t idx = static_cast<std::size_t>(j) * dim_ + static_cast<std::size_t>(k);
        const bool zre = sgn(re[idx]) == 0, zim = sgn(im[idx]) == 0;
        if (zre && zim) continue;
        run(slot + 1, after_j & ~(std::uint32_t{1} << k));
        const mpz_class& cre = acc_re_[slot + 1];
        const mpz_class& cim = acc_im_[slot + 1];
        const bool plus = (rj + rank_in(after_j, k)) % 2 == 0;
        auto add = plus ? mpz_addmul : mpz_submul;
        auto sub = plus ? mpz_submul : mpz_addmul;
        if (!zre) {
          add(sre.get_mpz_t(), re[idx].get_mpz_t(), cre.get_mpz_t());
          add(sim.get_mpz_t(), re[idx].get_mpz_t(), cim.get_mpz_t());
        }
        if (!zim) {
          sub(sre.get_mpz_t(), im[idx].get_mpz_t(), cim.get_mpz_t());
          add(sim.get_mpz_t(), im[idx].get_mpz_t(), cre.get_mpz_t());
        }
      }
    }
  }

  std::size_t n_;
  std::size_t dim_;
  mpz_class scale_ = 1;
  std::vector<std::vector<mpz_class>> re_, im_;
  std::vector<mpz_class> acc_re_, acc_im_;
};

/// Memoized matching sum over (unmatched index set, remaining argument counts).
template <ScalarType T>
class MatchingSum {
 public:
  MatchingSum(std::vector<Matrix<T>> skews, std::vector<int> counts)
      : skews_(std::move(skews)), counts_(std::move(counts)), strides_(counts_.size()) {
    std::uint64_t stride = 1;
    for (std::size_t t = 0; t < counts_.size(); ++t) {
      strides_[t] = stride;
      stride *= static_cast<std::uint64_t>(counts_[t] + 1);
    }
    dim_ = skews_.front().rows();
  }

  T evaluate() {
    std::uint64_t code = 0;
    for (std::size_t t = 0; t < counts_.size(); ++t) code += strides_[t] * counts_[t];
    const std::uint64_t all = (std::uint64_t{1} << dim_) - 1;
    return recurse(all, code);
  }

 private:
  T recurse(std::uint64_t remaining, std::uint64_t count_code) {
    if (remaining == 0) return ScalarTraits<T>::one();
    const std::uint64_t key = (count_code << dim_) | remaining;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const int first = std::countr_zero(remaining);
    const std::uint64_t rest = remaining & (remaining - 1);
    T sum = ScalarTraits<T>::zero();
    bool positive = true;
    for (std::uint64_t bits = rest; bits != 0; bits &= bits - 1) {
      const int partner = std::countr_zero(bits);
      const std::uint64_t next = rest & ~(std::uint64_t{1} << partner);
      T inner = ScalarTraits<T>::zero();
      bool any = false;
      for (std::size_t t = 0; t < skews_.size(); ++t) {
        const int avail = static_cast<int>((count_code / strides_[t]) % (counts_[t] + 1));
        if (avail == 0) continue;
        const T& entry = skews_[t](first, partner);
        if (ScalarTraits<T>::is_zero(entry, Tolerance{0, 0, 0})) continue;
        T term = entry * recurse(next, count_code - strides_[t]);
        if (avail > 1) term *= ScalarTraits<T>::from_int(avail);
        inner += term;
        any = true;
      }
      if (any) {
        if (positive) sum += inner;
        else sum -= inner;
      }
      positive = !positive;
    }
    memo_.emplace(key, sum);
    return sum;
  }

  std::vector<Matrix<T>> skews_;
  std::vector<int> counts_;
  std::vector<std::uint64_t> strides_;
  std::size_t dim_ = 0;
  std::unordered_map<std::uint64_t, T> memo_;
};

}  // namespace detail

/// Literal signed sum over S_{2n}. Reference oracle for q_fast.
template <ScalarType T>
T q_naive(std::span<const Matrix<T>> args) {
  const std::size_t n = check_q_args(args);
  if (2 * n > kNaiveMaxDimension) {
    throw dimension_error("q_naive is limited to 2n <= " + std::to_string(kNaiveMaxDimension));
  }
  std::vector<Matrix<T>> skews;
  for (const auto& a : args) skews.push_back(skew_part(a));
  if constexpr (is_exact_v<T>) {
    return detail::NaiveGaussInt(skews).evaluate();
  } else {
    return detail::naive_slot(skews, 0, (std::uint32_t{1} << (2 * n)) - 1);
  }
}

template <ScalarType T>
T q_naive(const std::vector<Matrix<T>>& args) {
  return q_naive(std::span<const Matrix<T>>(args));
}

/// Matching-sum evaluator. Identical arguments are merged so that Q_n(A)
/// costs a single branch per partner.
template <ScalarType T>
T q_fast(std::span<const Matrix<T>> args) {
  const std::size_t n = check_q_args(args);
  if (2 * n > kFastMaxDimension) {
    throw dimension_error("q_fast is limited to 2n <= " + std::to_string(kFastMaxDimension));
  }
  std::vector<Matrix<T>> distinct;
  std::vector<int> counts;
  for (const auto& a : args) {
    bool merged = false;
    for (std::size_t t = 0; t < distinct.size(); ++t) {
      if (distinct[t] == a) {
        ++counts[t];
        merged = true;
        break;
      }
    }
    if (!merged) {
      distinct.push_back(a);
      counts.push_back(1);
    }
  }
  std::vector<Matrix<T>> skews;
  for (const auto& a : distinct) skews.push_back(skew_part(a));
  detail::MatchingSum<T> sum(std::move(skews), std::move(counts));
  return sum.evaluate() * ipow(ScalarTraits<T>::from_int(kOrientationsPerPair), static_cast<long>(n));
}

template <ScalarType T>
T q_fast(const std::vector<Matrix<T>>& args) {
  return q_fast(std::span<const Matrix<T>>(args));
}

/// Q with all n arguments equal to a (a is 2n x 2n).
template <ScalarType T>
T q_n(const Matrix<T>& a) {
  if (!a.is_square() || a.rows() % 2 != 0 || a.rows() == 0) {
    throw dimension_error("q_n needs an even-dimensional square matrix, got " + a.shape());
  }
  std::vector<Matrix<T>> args(a.rows() / 2, a);
  return q_fast(args);
}

/// Q at k copies of a and l copies of b. Zero when k or l is negative.
template <ScalarType T>
T q_kl(const Matrix<T>& a, const Matrix<T>& b, long k, long l) {
  if (k < 0 || l < 0) return ScalarTraits<T>::zero();
  if (!a.is_square() || a.rows() != b.rows() || !b.is_square()) {
    throw dimension_error("q_kl needs two square matrices of equal size");
  }
  if (static_cast<std::size_t>(2 * (k + l)) != a.rows()) {
    throw dimension_error("q_kl: k + l = " + std::to_string(k + l) + " but matrices are " +
                          a.shape());
  }
  std::vector<Matrix<T>> args;
  args.insert(args.end(), static_cast<std::size_t>(k), a);
  args.insert(args.end(), static_cast<std::size_t>(l), b);
  return q_fast(args);
}

/// Q(rho(w_1), ..., rho(w_n)) for generator images of dimension 2n.
template <ScalarType T>
T q_words(const std::map<int, Matrix<T>>& generators, std::span<const Word> words,
          InverseMode mode = InverseMode::general) {
  if (generators.empty()) throw std::invalid_argument("representation has no generators");
  const std::size_t d = generators.begin()->second.dim();
  if (d % 2 != 0 || words.size() != d / 2) {
    throw dimension_error("q_words needs exactly " + std::to_string(d / 2) + " words, got " +
                          std::to_string(words.size()));
  }
  std::vector<Matrix<T>> args;
  for (const Word& w : words) args.push_back(evaluate(w, generators, mode));
  return q_fast(args);
}

}  // namespace sotrace
