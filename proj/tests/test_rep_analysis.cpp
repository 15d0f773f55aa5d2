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

const Tolerance kLoose{1e-8, 1e-8, 1e-8};

template <ScalarType T>
Representation<T> conjugate(const Representation<T>& rep, const Matrix<T>& g) {
  Representation<T> out = rep;
  for (auto& [k, m] : out.generators) m = g * m * g.transpose();
  return out;
}

Representation<Complex> rho7(std::uint64_t seed) {
  return rho_construction(7, 17, 19, random_so<Complex>(5, seed), std::nullopt, kLoose);
}

TEST(Intertwiners, SystemEncodesTheEquation) {
  const auto rep = random_representation<E>(3, 1);
  const ExactMatrix g = random_so<E>(3, 7);
  const auto pairs = generator_pairs(rep, conjugate(rep, g));
  const auto space = intertwiner_space(pairs);
  ASSERT_EQ(space.size(), 1u);
  for (const auto& [x, y] : pairs) EXPECT_EQ(space[0] * x, y * space[0]);
}

TEST(Commutant, ScalarsOnlyForGenericPairs) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto rep = random_representation<E>(4, seed);
    ASSERT_EQ(commutant_dimension(rep.generator_images()), 1u);
  }
  EXPECT_EQ(commutant_dimension(std::vector<ExactMatrix>{ExactMatrix::identity(3)}), 9u);
}

TEST(Commutant, DirectSumOfInequivalentPiecesHasDimensionTwo) {
  const auto s = direct_sum(random_representation<E>(3, 1), random_representation<E>(4, 2));
  EXPECT_EQ(commutant_dimension(s.generator_images()), 2u);
}

TEST(Irreducible, CounterexampleBlockIsIrreducible) {
  EXPECT_TRUE(is_irreducible(rho7(1), kLoose));
  const auto eta = eta_a(random_so<Complex>(4, 3), 17, 19, 2, kLoose);
  EXPECT_TRUE(is_irreducible(eta, kLoose));
}

TEST(Irreducible, DirectSumIsReducible) {
  const auto r9 = rho_construction(9, 17, 19, random_so<Complex>(5, 1), random_so<Complex>(4, 2), kLoose);
  EXPECT_FALSE(is_irreducible(r9, kLoose));
}

TEST(Irreducible, RequiresFiniteOrderGenerators) {
  EXPECT_THROW(is_irreducible(random_representation<E>(4, 1)), precondition_error);
  auto rep = rho7(1);
  rep.group.p = 23;
  EXPECT_THROW(is_irreducible(rep, kLoose), precondition_error);
}

TEST(Certificate, SigmaTwinIsOrthogonallyButNotSpeciallyConjugate) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto rho = rho7(seed);
    const auto cert = so_conjugacy_certificate(rho, sigma_involution(rho), kLoose);
    ASSERT_EQ(cert.intertwiner_dim, 1u);
    ASSERT_EQ(cert.verdict, ConjugacyVerdict::o_but_not_so_conjugate) << cert.note;
    for (const Complex& d : cert.determinants) ASSERT_LT(std::abs(d + 1.0), 1e-6);
    ASSERT_LT(cert.intertwining_residual, 1e-8);
  }
}

TEST(Certificate, SpecialOrthogonalConjugateIsRecognized) {
  const auto rho = rho7(2);
  const auto cert = so_conjugacy_certificate(rho, conjugate(rho, random_so<Complex>(14, 5)), kLoose);
  EXPECT_EQ(cert.verdict, ConjugacyVerdict::so_conjugate) << cert.note;
}

TEST(Certificate, UnrelatedRepresentationsAreNotConjugate) {
  const auto cert = so_conjugacy_certificate(rho7(1), rho7(2), kLoose);
  EXPECT_EQ(cert.intertwiner_dim, 0u);
  EXPECT_EQ(cert.verdict, ConjugacyVerdict::not_conjugate);
}

TEST(Certificate, BlockwiseForDirectSums) {
  const auto r9 = rho_construction(9, 17, 19, random_so<Complex>(5, 1), random_so<Complex>(4, 2), kLoose);
  const auto cert = so_conjugacy_certificate(r9, sigma_involution(r9), kLoose);
  EXPECT_EQ(cert.block_intertwiner_dims, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(cert.intertwiner_dim, 2u);
  EXPECT_EQ(cert.verdict, ConjugacyVerdict::o_but_not_so_conjugate) << cert.note;
}

TEST(Certificate, ExactOverloadMatchesFloat) {
  const auto rep = random_representation<E>(4, 3);
  const auto cert = so_conjugacy_certificate(rep, conjugate(rep, random_so<E>(4, 8)), kLoose);
  EXPECT_EQ(cert.verdict, ConjugacyVerdict::so_conjugate);
}

TEST(Separation, TracesCannotSeeSigma) {
  const auto rho = rho7(1);
  const auto rep = trace_separation(rho, sigma_involution(rho), 3, kLoose);
  EXPECT_FALSE(rep.separated);
  EXPECT_EQ(rep.verdict(), "indistinguishable_to_length");
  EXPECT_EQ(rep.words_checked, enumerate_words(3).size());
}

TEST(Separation, QVanishesOnTheCounterexample) {
  const auto rho = rho7(1);
  const auto rep = q_separation(rho, sigma_involution(rho), 2, Tolerance{1e-6, 0.0, 1e-8});
  EXPECT_FALSE(rep.separated);
  EXPECT_LT(rep.max_residual, 1e-6);
}

TEST(Separation, QSeesSigmaOnGenericFloatRepresentations) {
  const auto rho = random_representation<Complex>(6, 4);
  const auto rep = q_separation(rho, sigma_involution(rho), 2, kLoose);
  ASSERT_TRUE(rep.separated);
  EXPECT_EQ(rep.verdict(), "separated");
  EXPECT_LT(std::abs(rep.value_a + rep.value_b), 1e-9 * std::max(1.0, std::abs(rep.value_a)));
}

TEST(Separation, ExactRepresentations) {
  const auto rep = random_representation<E>(4, 2);
  const auto twin = sigma_involution(rep);
  EXPECT_FALSE(trace_separation(rep, twin, 3).separated);
  const auto q = q_separation(rep, twin, 3);
  ASSERT_TRUE(q.separated);
  EXPECT_EQ(q.witness->to_string(), "a");
  EXPECT_FALSE(q_separation(rep, rep, 2).separated);
}

TEST(Separation, TracesSeparateDifferentRepresentations) {
  const auto a = random_representation<E>(4, 2), b = random_representation<E>(4, 3);
  const auto rep = trace_separation(a, b, 2);
  ASSERT_TRUE(rep.separated);
  EXPECT_EQ(rep.witness->length(), 1u);
}

TEST(Separation, RejectsMismatchedDimensions) {
  EXPECT_THROW(trace_separation(random_representation<E>(4, 1), random_representation<E>(3, 1), 2), dimension_error);
  EXPECT_THROW(q_separation(random_representation<E>(3, 1), random_representation<E>(3, 2), 2), dimension_error);
}

}  // namespace
