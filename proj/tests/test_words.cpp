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

#include <set>

#include "sotrace/sotrace.hpp"

namespace {

using namespace sotrace;
using E = GaussRational;

Word random_word(SampleRng& rng, int max_len) {
  std::vector<Letter> raw;
  const long len = rng.uniform_int(0, max_len);
  for (long k = 0; k < len; ++k) raw.push_back({static_cast<int>(rng.uniform_int(1, 2)), rng.uniform_int(0, 1) == 1});
  return Word::reduce(raw);
}

TEST(Word, FreeReduction) {
  EXPECT_TRUE(Word::parse("aA").is_identity());
  EXPECT_EQ(Word::parse("abBA").length(), 0u);
  EXPECT_EQ(Word::parse("abBb").to_string(), "ab");
  EXPECT_EQ(Word::parse("1").to_string(), "1");
  EXPECT_THROW(Word::parse("a2"), std::invalid_argument);
}

TEST(Word, PowerAndInverse) {
  EXPECT_EQ(Word::power(1, 3).to_string(), "aaa");
  EXPECT_EQ(Word::power(2, -2).to_string(), "BB");
  EXPECT_EQ(Word::parse("abA").inverse().to_string(), "aBA");
}

TEST(Word, GroupLaws) {
  SampleRng rng(4);
  for (int k = 0; k < 500; ++k) {
    const Word u = random_word(rng, 6), v = random_word(rng, 6), w = random_word(rng, 6);
    ASSERT_EQ((u * v) * w, u * (v * w));
    ASSERT_TRUE((u * u.inverse()).is_identity());
    ASSERT_EQ((u * v).inverse(), v.inverse() * u.inverse());
  }
}

TEST(Abelianize, IsAHomomorphism) {
  SampleRng rng(5);
  for (int k = 0; k < 500; ++k) {
    const Word u = random_word(rng, 8), v = random_word(rng, 8);
    ASSERT_EQ(abelianize(u * v), abelianize(u) + abelianize(v));
  }
  EXPECT_EQ(abelianize(Word::parse("aabAB")).exponents, (std::vector<long>{1, 0}));
  EXPECT_THROW(abelianize(Word::parse("c")), std::invalid_argument);
}

TEST(EnumerateWords, CountsReducedWords) {
  // 1 + sum_{k=1}^{L} 4 * 3^(k-1)
  const std::size_t expected[] = {1, 5, 17, 53, 161};
  for (int len = 0; len <= 4; ++len) {
    const auto words = enumerate_words(len);
    EXPECT_EQ(words.size(), expected[len]);
    EXPECT_EQ(std::set<Word>(words.begin(), words.end()).size(), words.size());
    for (std::size_t k = 1; k < words.size(); ++k) ASSERT_LT(words[k - 1], words[k]);
  }
  EXPECT_THROW(enumerate_words(-1), std::invalid_argument);
}

TEST(Evaluate, IsAHomomorphismExactly) {
  const std::map<int, ExactMatrix> gens{{1, random_so<E>(4, 1)}, {2, random_so<E>(4, 2)}};
  SampleRng rng(6);
  for (int k = 0; k < 100; ++k) {
    const Word u = random_word(rng, 5), v = random_word(rng, 5);
    ASSERT_EQ(evaluate(u * v, gens), evaluate(u, gens) * evaluate(v, gens));
    ASSERT_EQ(evaluate(u.inverse(), gens), inverse(evaluate(u, gens)));
  }
  EXPECT_EQ(evaluate(Word{}, gens), ExactMatrix::identity(4));
}

TEST(Evaluate, InverseModesAgreeOnOrthogonalImages) {
  const std::map<int, ExactMatrix> gens{{1, random_so<E>(4, 3)}, {2, random_so<E>(4, 4)}};
  const Word w = Word::parse("aBAb");
  EXPECT_EQ(evaluate(w, gens, InverseMode::transpose), evaluate(w, gens, InverseMode::general));
  const std::map<int, ExactMatrix> jgens{{1, random_so_j<E>(2, 3)}, {2, random_so_j<E>(2, 4)}};
  EXPECT_EQ(evaluate(w, jgens, InverseMode::j_transpose), evaluate(w, jgens, InverseMode::general));
}

TEST(Evaluate, RejectsBadAssignments) {
  const std::map<int, ExactMatrix> gens{{1, ExactMatrix::identity(2)}};
  EXPECT_THROW(evaluate(Word::parse("b"), gens), std::invalid_argument);
  EXPECT_THROW(evaluate(Word::parse("a"), std::map<int, ExactMatrix>{}), std::invalid_argument);
  const std::map<int, ExactMatrix> mixed{{1, ExactMatrix::identity(2)}, {2, ExactMatrix::identity(3)}};
  EXPECT_THROW(evaluate(Word::parse("a"), mixed), dimension_error);
}

}  // namespace
