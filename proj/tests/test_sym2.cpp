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

#include <gtest/gtest.h>

#include "sotrace/sotrace.hpp"

namespace {

using namespace sotrace;
using E = GaussRational;

std::vector<Complex> apply(const FloatMatrix& m, const std::vector<Complex>& v) {
  std::vector<Complex> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * v[c];
  return out;
}

double distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

std::vector<Complex> basis_vector(std::size_t i) {
  std::vector<Complex> v(5);
  v[i] = 1.0;
  return v;
}

TEST(Sym2Index, IsABijectionOntoFifteenSlots) {
  std::vector<int> seen(kSym2Dim, 0);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i; j < 5; ++j) ++seen[sym2_index(i, j)];
  for (int s : seen) EXPECT_EQ(s, 1);
  EXPECT_EQ(sym2_index(3, 1), sym2_index(1, 3));
}

TEST(Sym2Inner, MatchesProductOfBilinearForms) {
  SampleRng rng(31);
  for (int t = 0; t < 50; ++t) {
    std::vector<E> v(5), w(5), x(5), y(5);
    for (std::size_t k = 0; k < 5; ++k) {
      v[k] = random_entry<E>(rng);
      w[k] = random_entry<E>(rng);
      x[k] = random_entry<E>(rng);
      y[k] = random_entry<E>(rng);
    }
    auto dot = [](const std::vector<E>& a, const std::vector<E>& b) {
      E s;
      for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
      return s;
    };
    const E want = E(2) * (dot(v, x) * dot(w, y) + dot(v, y) * dot(w, x));
    ASSERT_EQ(sym2_inner(sym_product(v, w), sym_product(x, y)), want);
  }
}

TEST(Sym2Action, IsMultiplicative) {
  const ExactMatrix a = random_so<E>(5, 1), b = random_so<E>(5, 2);
  EXPECT_EQ(sym2_action(ExactMatrix(a * b)), sym2_action(a) * sym2_action(b));
  EXPECT_EQ(sym2_action(ExactMatrix::identity(5)), ExactMatrix::identity(kSym2Dim));
}

TEST(Sym2Action, MatchesActionOnProducts) {
  const ExactMatrix a = random_so<E>(5, 3);
  SampleRng rng(32);
  std::vector<E> v(5), w(5);
  for (std::size_t k = 0; k < 5; ++k) {
    v[k] = random_entry<E>(rng);
    w[k] = random_entry<E>(rng);
  }
  auto mv = [&](const std::vector<E>& x) {
    std::vector<E> out(5);
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < 5; ++c) out[r] += a(r, c) * x[c];
    return out;
  };
  const auto lhs_in = sym_product(v, w);
  std::vector<E> lhs(kSym2Dim);
  const ExactMatrix s = sym2_action(a);
  for (std::size_t r = 0; r < kSym2Dim; ++r)
    for (std::size_t c = 0; c < kSym2Dim; ++c) lhs[r] += s(r, c) * lhs_in[c];
  EXPECT_EQ(lhs, sym_product(mv(v), mv(w)));
}

TEST(Sym2Action, FixesZAndPreservesTheForm) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ExactMatrix a = random_so<E>(5, seed);
    const ExactMatrix s = sym2_action(a);
    const auto z = sym2_invariant_z<E>();
    std::vector<E> sz(kSym2Dim);
    for (std::size_t r = 0; r < kSym2Dim; ++r)
      for (std::size_t c = 0; c < kSym2Dim; ++c) sz[r] += s(r, c) * z[c];
    ASSERT_EQ(sz, z);
  }
}

TEST(Sym2Frame, IsOrthonormalAndPerpendicularToZ) {
  const Sym2Frame& f = default_sym2_frame();
  EXPECT_EQ(f.basis.size(), kZPerpDim);
  EXPECT_LT(f.orthonormality_defect(), 1e-12);
}

TEST(Alpha14, LandsInSO14AndIsAHomomorphism) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FloatMatrix a = random_so<Complex>(5, seed), b = random_so<Complex>(5, 100 + seed);
    const FloatMatrix aa = alpha14(a), ab = alpha14(b);
    ASSERT_TRUE(is_special_orthogonal(aa, Form::standard, Tolerance{1e-8, 1e-8, 1e-8}));
    ASSERT_LT(max_deviation(alpha14(FloatMatrix(a * b)), aa * ab), 1e-9);
  }
  EXPECT_LT(max_deviation(alpha14(FloatMatrix::identity(5)), FloatMatrix::identity(kZPerpDim)), 1e-12);
}

TEST(Alpha14, TraceIsSymmetricSquareCharacterMinusOne) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FloatMatrix a = random_so<Complex>(5, seed);
    const Complex t = trace(a);
    const Complex t2 = trace(FloatMatrix(a * a));
    ASSERT_LT(std::abs(trace(alpha14(a)) - ((t * t + t2) / 2.0 - 1.0)), 1e-9);
  }
}

TEST(Alpha14, RejectsBadInput) {
  EXPECT_THROW(alpha14(FloatMatrix::identity(4)), dimension_error);
  EXPECT_THROW(alpha14(sigma_matrix<Complex>(5)), precondition_error);
}

TEST(FixedSpace, BasisIsFixedByEveryBc) {
  const auto fs = fixed_space_basis();
  for (const Complex c : {Complex{2.0, 0.0}, root_of_unity(17), root_of_unity(19, 5), Complex{0.3, 1.1}}) {
    const FloatMatrix s = sym2_action(b_c5(c));
    for (const auto& f : fs) ASSERT_LT(distance(apply(s, f), f), 1e-9);
  }
  EXPECT_LT(std::abs(sym2_inner(fs[0], fs[1])), 1e-12);
  EXPECT_LT(std::abs(sym2_inner(fs[0], default_sym2_frame().z)), 1e-12);
  EXPECT_LT(std::abs(sym2_inner(fs[1], default_sym2_frame().z)), 1e-12);
}

// (e1 + e2).(e1 - e2) and (e3 + e4).(e3 - e4) are orthogonal to z but are
// rotated, not fixed, by D_c (+) D_{c^4} (+) 1.
TEST(FixedSpace, DifferenceOfSquaresIsNotFixed) {
  const auto e = [](std::size_t i) { return basis_vector(i); };
  auto add = [](std::vector<Complex> a, const std::vector<Complex>& b, double s) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += s * b[k];
    return a;
  };
  const auto g1 = sym_product(add(e(0), e(1), 1), add(e(0), e(1), -1));
  const auto g2 = sym_product(add(e(2), e(3), 1), add(e(2), e(3), -1));
  const FloatMatrix s = sym2_action(b_c5(root_of_unity(17)));
  EXPECT_GT(distance(apply(s, g1), g1), 0.1);
  EXPECT_GT(distance(apply(s, g2), g2), 0.1);
}

TEST(FSpan, CyclicPermutationGivesFullRank) {
  EXPECT_EQ(f_span_dimension(cyclic_permutation<Complex>()), 4u);
}

TEST(FSpan, IdentityAndBlockDiagonalAreDegenerate) {
  EXPECT_EQ(f_span_dimension(FloatMatrix::identity(5)), 2u);
  EXPECT_EQ(f_span_dimension(b_c5(root_of_unity(19))), 2u);
}

TEST(FSpan, RandomSamplesAreGeneric) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) ASSERT_EQ(f_span_dimension(random_so<Complex>(5, seed)), 4u);
}

}  // namespace
