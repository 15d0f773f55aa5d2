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

#include <algorithm>

#include "frozen_inputs.hpp"
#include "sotrace/suites.hpp"

namespace {

using namespace sotrace;
using sotrace::testing::formula_matrix;
using sotrace::testing::gr;
using E = GaussRational;

std::vector<ExactMatrix> mixed_args(std::size_t n) {
  std::vector<ExactMatrix> args;
  for (std::size_t k = 0; k < n; ++k) args.push_back(formula_matrix(2 * n, static_cast<long>(k)));
  return args;
}

std::vector<ExactMatrix> random_args(std::size_t n, SampleRng& rng) {
  std::vector<ExactMatrix> args;
  for (std::size_t k = 0; k < n; ++k) args.push_back(random_complex_matrix<E>(2 * n, rng));
  return args;
}

E two_pow_factorial(long n) { return ipow(E(2), n) * factorial(n); }

// Literal permutation sums from tools/oracle/q_oracle.py.
TEST(QFrozen, MixedArguments) {
  const E want[] = {gr("-4", "2"), gr("518/9", "-22"), gr("-16775/27", "0"), gr("515218/9", "-194326/9")};
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto args = mixed_args(n);
    EXPECT_EQ(q_naive(args), want[n - 1]) << "n=" << n;
    EXPECT_EQ(q_fast(args), want[n - 1]) << "n=" << n;
  }
}

TEST(QFrozen, EqualArguments) {
  const E want[] = {gr("-8/3", "-4"), gr("80/3", "88/3"), gr("3674/9", "0"), gr("2553584/27", "85184")};
  for (std::size_t n = 1; n <= 4; ++n) {
    const ExactMatrix a = formula_matrix(2 * n, 7);
    EXPECT_EQ(q_n(a), want[n - 1]) << "n=" << n;
    EXPECT_EQ(q_naive(std::vector<ExactMatrix>(n, a)), want[n - 1]) << "n=" << n;
  }
}

TEST(QNormalization, TwoByTwo) {
  const ExactMatrix a{{gr("1"), gr("5", "1")}, {gr("-2/3"), gr("7")}};
  EXPECT_EQ(q_n(a), E(2) * (a(0, 1) - a(1, 0)));
}

TEST(QNormalization, DcClosedForm) {
  for (const char* c : {"2", "3", "-1/2", "5/7"}) {
    const E cc = gr(c);
    EXPECT_EQ(q_n(d_c(cc)), E(2) * E::i() * (cc - E(1) / cc)) << "c=" << c;
    EXPECT_EQ(q_n(d_c(cc)), q_of_dc(cc));
  }
  EXPECT_EQ(q_n(d_c(E(2))), E(3) * E::i());
}

TEST(QNormalization, EqualArgumentsArePfaffians) {
  SampleRng rng(21);
  for (long n = 1; n <= 5; ++n) {
    for (int k = 0; k < 4; ++k) {
      const ExactMatrix a = random_complex_matrix<E>(static_cast<std::size_t>(2 * n), rng);
      ASSERT_EQ(q_n(a), two_pow_factorial(n) * pfaffian(skew_part(a))) << "n=" << n;
    }
  }
}

TEST(QNormalization, OrientationConstantMatchesNaive) {
  EXPECT_EQ(kOrientationsPerPair, 2);
  SampleRng rng(20);
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto args = random_args(n, rng);
    EXPECT_EQ(q_fast(args), q_naive(args)) << "n=" << n;
  }
}

TEST(QNaiveVsFast, RandomExactInstances) {
  SampleRng rng(22);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int k = 0; k < 5; ++k) {
      const auto args = random_args(n, rng);
      ASSERT_EQ(q_naive(args), q_fast(args)) << "n=" << n;
    }
  }
}

TEST(QNaiveVsFast, RepeatedArgumentsAreMerged) {
  SampleRng rng(23);
  const ExactMatrix a = random_complex_matrix<E>(8, rng), b = random_complex_matrix<E>(8, rng);
  const std::vector<ExactMatrix> args{a, b, a, b};
  EXPECT_EQ(q_naive(args), q_fast(args));
  EXPECT_EQ(q_kl(a, b, 2, 2), q_fast(args));
}

TEST(QNaiveVsFast, FloatAgreesWithExact) {
  SampleRng rng(24);
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto args = random_args(n, rng);
    std::vector<FloatMatrix> fargs;
    for (const auto& a : args) fargs.push_back(to_float(a));
    const Complex want = to_complex(q_fast(args));
    const double scale = std::max(1.0, std::abs(want));
    EXPECT_LT(std::abs(q_fast(fargs) - want), 1e-9 * scale);
    EXPECT_LT(std::abs(q_naive(fargs) - want), 1e-9 * scale);
  }
}

TEST(QProperties, SymmetricInArguments) {
  SampleRng rng(25);
  for (int trial = 0; trial < 5; ++trial) {
    auto args = random_args(3, rng);
    const E base = q_fast(args);
    std::sort(args.begin(), args.end(), [](const ExactMatrix& x, const ExactMatrix& y) {
      return x(0, 1).real() < y(0, 1).real();
    });
    do {
      ASSERT_EQ(q_fast(args), base);
    } while (std::next_permutation(args.begin(), args.end(), [](const ExactMatrix& x, const ExactMatrix& y) {
      return x(0, 1).real() < y(0, 1).real();
    }));
  }
}

TEST(QProperties, MultilinearInFirstArgument) {
  SampleRng rng(26);
  for (int trial = 0; trial < 10; ++trial) {
    auto args = random_args(3, rng);
    const ExactMatrix b = random_complex_matrix<E>(6, rng);
    const E lambda = random_entry<E>(rng) + E::i();
    auto shifted = args;
    shifted[0] = args[0] + b * lambda;
    auto only_b = args;
    only_b[0] = b;
    ASSERT_EQ(q_fast(shifted), q_fast(args) + lambda * q_fast(only_b));
  }
}

TEST(QProperties, DependsOnlyOnSkewPart) {
  SampleRng rng(27);
  for (int trial = 0; trial < 10; ++trial) {
    auto args = random_args(3, rng);
    const ExactMatrix s = random_complex_matrix<E>(6, rng);
    auto shifted = args;
    shifted[1] = args[1] + s + s.transpose();
    ASSERT_EQ(q_fast(shifted), q_fast(args));
  }
}

TEST(QProperties, OrthogonalConjugationScalesByDeterminant) {
  SampleRng rng(28);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto args = random_args(3, rng);
    const ExactMatrix g = random_so<E>(6, seed);
    const ExactMatrix sigma = sigma_matrix<E>(6) * g;
    std::vector<ExactMatrix> conj_g, conj_sigma;
    for (const auto& a : args) {
      conj_g.push_back(g * a * g.transpose());
      conj_sigma.push_back(sigma * a * sigma.transpose());
    }
    ASSERT_EQ(q_fast(conj_g), q_fast(args));
    ASSERT_EQ(q_fast(conj_sigma), -q_fast(args));
  }
}

TEST(QProperties, BlockDiagonalSplitsBinomially) {
  SampleRng rng(29);
  for (long k = 1; k <= 3; ++k) {
    for (long l = 1; l <= 2; ++l) {
      const ExactMatrix a = random_complex_matrix<E>(static_cast<std::size_t>(2 * k), rng);
      const ExactMatrix b = random_complex_matrix<E>(static_cast<std::size_t>(2 * l), rng);
      const E binom = factorial(k + l) / (factorial(k) * factorial(l));
      ASSERT_EQ(q_n(block_diag({a, b})), binom * q_n(a) * q_n(b)) << k << "," << l;
    }
  }
}

TEST(QProperties, IotaClosedFormsHoldExactly) {
  for (long n = 3; n <= 5; ++n) {
    const ExactMatrix a1 = random_so<E>(4, static_cast<std::uint64_t>(n));
    const ExactMatrix a2 = random_so<E>(4, static_cast<std::uint64_t>(100 + n));
    const E c1 = gr("2"), c2 = gr("-3/2");
    const auto un = static_cast<std::size_t>(n);
    const ExactMatrix i1 = iota_c(a1, c1, un), i2 = iota_c(a2, c2, un);
    EXPECT_EQ(q_n(i1), iota_power_closed_form(a1, c1, n)) << "n=" << n;
    EXPECT_EQ(q_kl(i1, i2, n - 1, 1), iota_mixed_closed_form(a1, a2, c1, c2, n)) << "n=" << n;
  }
}

TEST(QKl, EdgeCases) {
  const ExactMatrix a = formula_matrix(4, 1), b = formula_matrix(4, 2);
  EXPECT_EQ(q_kl(a, b, -1, 3), E(0));
  EXPECT_EQ(q_kl(a, b, 2, 0), q_n(a));
  EXPECT_EQ(q_kl(a, b, 0, 2), q_n(b));
  EXPECT_THROW(q_kl(a, b, 1, 2), dimension_error);
}

TEST(QErrors, ShapeAndSizeLimits) {
  EXPECT_THROW(q_fast(std::vector<ExactMatrix>{}), dimension_error);
  EXPECT_THROW(q_fast(std::vector<ExactMatrix>{formula_matrix(4, 0)}), dimension_error);
  EXPECT_THROW(q_n(formula_matrix(3, 0)), dimension_error);
  EXPECT_THROW(q_naive(std::vector<ExactMatrix>(6, formula_matrix(12, 0))), dimension_error);
  EXPECT_THROW(q_fast(std::vector<FloatMatrix>(17, FloatMatrix::identity(34))), dimension_error);
}

TEST(QWords, EvaluatesWordImages) {
  const std::map<int, ExactMatrix> gens{{1, random_so<E>(4, 7)}, {2, random_so<E>(4, 8)}};
  const std::vector<Word> words{Word::parse("ab"), Word::parse("aB")};
  EXPECT_EQ(q_words(gens, words), q_kl(gens.at(1) * gens.at(2), gens.at(1) * inverse(gens.at(2)), 1, 1));
  EXPECT_THROW(q_words(gens, std::vector<Word>{Word::parse("a")}), dimension_error);
}

}  // namespace
