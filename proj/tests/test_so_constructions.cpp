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

#include "frozen_inputs.hpp"

namespace {

using namespace sotrace;
using sotrace::testing::gr;
using E = GaussRational;

const Tolerance kLoose{1e-8, 1e-8, 1e-8};

TEST(Dc, IsSpecialOrthogonalAndMultiplicative) {
  for (const char* c : {"2", "-3", "1/5", "7/3"}) {
    const E cc = gr(c);
    EXPECT_TRUE(is_special_orthogonal(d_c(cc))) << c;
    EXPECT_EQ(d_c(cc) * d_c(gr("3")), d_c(cc * gr("3"))) << c;
  }
  EXPECT_EQ(d_c(E(1)), ExactMatrix::identity(2));
  EXPECT_THROW(d_c(E(0)), precondition_error);
}

TEST(Dc, EigenvaluesAreCAndItsInverse) {
  const E c = gr("5/2");
  const ExactMatrix dc = d_c(c);
  EXPECT_EQ(trace(dc), c + E(1) / c);
  EXPECT_EQ(kernel_dimension(ExactMatrix(dc - ExactMatrix::identity(2) * c)), 1u);
}

TEST(Iota, ShapeAndMembership) {
  const ExactMatrix a = random_so<E>(4, 9);
  for (std::size_t n = 2; n <= 6; ++n) {
    const ExactMatrix m = iota_c(a, gr("3/2"), n);
    ASSERT_EQ(m.dim(), 2 * n);
    ASSERT_TRUE(is_special_orthogonal(m));
  }
  EXPECT_EQ(iota_c(a, gr("3/2"), 2), a);
  EXPECT_THROW(iota_c(a, E(2), 1), precondition_error);
  EXPECT_THROW(iota_c(ExactMatrix::identity(6), E(2), 4), dimension_error);
  EXPECT_THROW(iota_c(sigma_matrix<E>(4), E(2), 4), precondition_error);
}

TEST(AlphaC1C2, IsAHomomorphismOnWords) {
  const auto rep = random_representation<E>(4, 3);
  const auto big = alpha_c1c2(rep, gr("2"), gr("-1/3"), 4);
  EXPECT_EQ(big.dim(), 8u);
  for (const auto& w : enumerate_words(3)) {
    const ExactMatrix lhs = big(w);
    ASSERT_TRUE(is_special_orthogonal(lhs));
    ASSERT_EQ(diagonal_block(lhs, 0, 4), rep(w));
  }
}

TEST(AlphaC1C2, RejectsWrongInput) {
  auto rep = random_representation<E>(6, 3);
  EXPECT_THROW(alpha_c1c2(rep, E(2), E(3), 4), dimension_error);
  auto three = random_representation<E>(4, 3);
  three.generators.emplace(3, random_so<E>(4, 5));
  EXPECT_THROW(alpha_c1c2(three, E(2), E(3), 4), precondition_error);
}

TEST(PhiConj, CarriesSOJOntoSO) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (std::size_t n = 1; n <= 4; ++n) {
      const FloatMatrix a = random_so_j<Complex>(n, seed);
      ASSERT_TRUE(is_special_orthogonal(a, Form::j, kLoose));
      ASSERT_TRUE(is_special_orthogonal(phi_conj(a, kLoose), Form::standard, kLoose));
    }
  }
  EXPECT_THROW(phi_conj(FloatMatrix::identity(3)), dimension_error);
}

TEST(PhiConj, DiagonalJElementBecomesDc) {
  const Complex c{2.0, 0.0};
  const FloatMatrix diag = FloatMatrix::diagonal({c, 1.0 / c});
  const FloatMatrix got = phi_conj(diag);
  EXPECT_TRUE(is_special_orthogonal(got));
  EXPECT_LT(std::abs(trace(got) - (c + 1.0 / c)), 1e-12);
}

TEST(RootOfUnity, HasTheRightOrder) {
  for (long p : {5L, 17L, 19L}) {
    EXPECT_LT(std::abs(std::pow(root_of_unity(p), static_cast<double>(p)) - 1.0), 1e-12);
    EXPECT_GT(std::abs(root_of_unity(p) - 1.0), 1e-3);
  }
  EXPECT_THROW(root_of_unity(0), precondition_error);
}

TEST(PsiA, GeneratorsHavePrescribedOrders) {
  const FloatMatrix a = random_so<Complex>(5, 4);
  const auto rep = psi_a(a, 17, 19);
  EXPECT_TRUE(validate(rep, kLoose).empty());
  EXPECT_LT(max_deviation(power(rep.generator(1), 17), FloatMatrix::identity(5)), 1e-9);
  EXPECT_LT(max_deviation(power(rep.generator(2), 19), FloatMatrix::identity(5)), 1e-9);
  EXPECT_GT(max_deviation(power(rep.generator(1), 1), FloatMatrix::identity(5)), 1e-3);
  EXPECT_THROW(psi_a(a, 5, 19), precondition_error);
}

TEST(EtaA, GeneratorsHavePrescribedOrders) {
  for (std::size_t m = 2; m <= 4; ++m) {
    const FloatMatrix a = random_so<Complex>(2 * m, m);
    const auto rep = eta_a(a, 11, 13, m);
    ASSERT_EQ(rep.dim(), 2 * m);
    ASSERT_TRUE(validate(rep, kLoose).empty());
  }
  EXPECT_THROW(eta_a(random_so<Complex>(2, 1), 11, 13, 1), precondition_error);
  EXPECT_THROW(eta_a(random_so<Complex>(6, 1), 5, 13, 3), precondition_error);
}

TEST(DirectSum, RecordsBlocksAndSumsTraces) {
  const auto a = random_representation<E>(4, 1), b = random_representation<E>(2, 2);
  const auto s = direct_sum(a, b);
  EXPECT_EQ(s.blocks, (std::vector<std::size_t>{4, 2}));
  for (const auto& w : enumerate_words(3)) ASSERT_EQ(trace(s(w)), trace(a(w)) + trace(b(w)));
  const auto nested = direct_sum(s, b);
  EXPECT_EQ(nested.blocks, (std::vector<std::size_t>{4, 2, 2}));
}

TEST(RhoConstruction, DimensionsAndBlocks) {
  const FloatMatrix a5 = random_so<Complex>(5, 1);
  const auto r7 = rho_construction(7, 17, 19, a5);
  EXPECT_EQ(r7.dim(), 14u);
  EXPECT_EQ(r7.blocks, (std::vector<std::size_t>{14}));
  EXPECT_TRUE(validate(r7, kLoose).empty());
  const auto r9 = rho_construction(9, 17, 19, a5, random_so<Complex>(4, 2));
  EXPECT_EQ(r9.dim(), 18u);
  EXPECT_EQ(r9.blocks, (std::vector<std::size_t>{14, 4}));
  EXPECT_TRUE(validate(r9, kLoose).empty());
}

TEST(RhoConstruction, RejectsExcludedParameters) {
  const FloatMatrix a5 = random_so<Complex>(5, 1);
  try {
    rho_construction(8, 17, 19, a5);
    FAIL() << "n=8 accepted";
  } catch (const precondition_error& e) {
    EXPECT_NE(std::string(e.what()).find("n=8 excluded"), std::string::npos);
  }
  EXPECT_THROW(rho_construction(6, 17, 19, a5), precondition_error);
  EXPECT_THROW(rho_construction(7, 13, 19, a5), precondition_error);
  EXPECT_THROW(rho_construction(9, 17, 19, a5), precondition_error);
}

TEST(Sigma, IsAnInvolutionAndConjugation) {
  const auto rep = random_representation<E>(6, 4);
  const auto s = sigma_involution(rep);
  EXPECT_EQ(sigma_involution(s).generators, rep.generators);
  const ExactMatrix sig = sigma_matrix<E>(6);
  EXPECT_EQ(determinant(sig), E(-1));
  for (const auto& [g, m] : rep.generators) ASSERT_EQ(s.generator(g), sig * m * sig);
  for (const auto& w : enumerate_words(3)) ASSERT_EQ(trace(s(w)), trace(rep(w)));
}

TEST(RandomSO, DeterministicPerSeed) {
  EXPECT_EQ(random_so<E>(5, 42), random_so<E>(5, 42));
  EXPECT_FALSE(random_so<E>(5, 42) == random_so<E>(5, 43));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ASSERT_TRUE(is_special_orthogonal(random_so<E>(5, seed)));
    ASSERT_TRUE(is_special_orthogonal(random_so_j<E>(3, seed), Form::j));
  }
}

TEST(CyclicPermutation, IsInSO5WithOrderFive) {
  const ExactMatrix p = cyclic_permutation<E>();
  EXPECT_TRUE(is_special_orthogonal(p));
  EXPECT_EQ(power(p, 5), ExactMatrix::identity(5));
}

}  // namespace
