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
 * @file words.hpp
 * @brief Freely reduced words in F_k and their evaluation on matrix tuples.
 *
 * Generators are numbered from 1. The string syntax uses 'a', 'b', 'c', ...
 * for generators and the upper-case letter for the inverse, so "abAB" is the
 * commutator g1 g2 g1^-1 g2^-1.
 *
 * Words for Z_p * Z_q are plain F_2 words: the relations hold automatically
 * once the generators are sent to matrices of orders p and q.
 */

#pragma once

#include <cctype>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sotrace/errors.hpp"
#include "sotrace/linalg.hpp"
#include "sotrace/matrix.hpp"

namespace sotrace {

struct Letter {
  int gen = 1;       // >= 1
  bool inverse = false;

  [[nodiscard]] Letter inverted() const { return {gen, !inverse}; }
  friend bool operator==(const Letter&, const Letter&) = default;

  /// Order g1 < g1^-1 < g2 < g2^-1 < ...; drives enumeration order.
  friend std::strong_ordering operator<=>(const Letter& a, const Letter& b) {
    if (auto c = a.gen <=> b.gen; c != 0) return c;
    return static_cast<int>(a.inverse) <=> static_cast<int>(b.inverse);
  }
};

class Word {
 public:
  Word() = default;

  /// Freely reduces the raw letter sequence.
  static Word reduce(const std::vector<Letter>& raw) {
    Word w;
    for (const Letter& l : raw) w.push(l);
    return w;
  }

  /// Single-generator word g_gen^exponent.
  static Word power(int gen, long exponent) {
    Word w;
    for (long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) w.push({gen, exponent < 0});
    return w;
  }

  static Word parse(std::string_view text) {
    std::vector<Letter> raw;
    for (char ch : text) {
      if (ch == '1' || ch == 'e') continue;  // identity markers
      if (!std::isalpha(static_cast<unsigned char>(ch))) {
        throw std::invalid_argument(std::string("bad letter '") + ch + "' in word");
      }
      const bool inv = std::isupper(static_cast<unsigned char>(ch)) != 0;
      raw.push_back({std::tolower(static_cast<unsigned char>(ch)) - 'a' + 1, inv});
    }
    return reduce(raw);
  }

  [[nodiscard]] const std::vector<Letter>& letters() const { return letters_; }
  [[nodiscard]] std::size_t length() const { return letters_.size(); }
  [[nodiscard]] bool is_identity() const { return letters_.empty(); }

  [[nodiscard]] int max_generator() const {
    int m = 0;
    for (const auto& l : letters_) m = std::max(m, l.gen);
    return m;
  }

  [[nodiscard]] Word inverse() const {
    Word w;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverted());
    return w;
  }

  friend Word operator*(const Word& a, const Word& b) {
    Word w = a;
    for (const Letter& l : b.letters_) w.push(l);
    return w;
  }

  friend bool operator==(const Word&, const Word&) = default;

  /// Shortlex: shorter first, then letter by letter.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.length() <=> b.length(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                  b.letters_.begin(), b.letters_.end());
  }

  [[nodiscard]] std::string to_string() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (const Letter& l : letters_) {
      char ch = static_cast<char>('a' + l.gen - 1);
      s.push_back(l.inverse ? static_cast<char>(std::toupper(ch)) : ch);
    }
    return s;
  }

 private:
  void push(const Letter& l) {
    if (l.gen < 1) throw std::invalid_argument("generator index must be >= 1");
    if (!letters_.empty() && letters_.back() == l.inverted()) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }

  std::vector<Letter> letters_;
};

/// Exponent sums per generator, sized to num_gens.
struct AbelianImage {
  std::vector<long> exponents;

  friend AbelianImage operator+(const AbelianImage& a, const AbelianImage& b) {
    AbelianImage s{std::vector<long>(std::max(a.exponents.size(), b.exponents.size()), 0)};
    for (std::size_t k = 0; k < a.exponents.size(); ++k) s.exponents[k] += a.exponents[k];
    for (std::size_t k = 0; k < b.exponents.size(); ++k) s.exponents[k] += b.exponents[k];
    return s;
  }
  friend bool operator==(const AbelianImage&, const AbelianImage&) = default;
};

inline AbelianImage abelianize(const Word& w, int num_gens = 2) {
  AbelianImage img{std::vector<long>(static_cast<std::size_t>(num_gens), 0)};
  for (const Letter& l : w.letters()) {
    if (l.gen > num_gens) {
      throw std::invalid_argument("generator " + std::to_string(l.gen) + " outside F_" +
                                  std::to_string(num_gens));
    }
    img.exponents[static_cast<std::size_t>(l.gen - 1)] += l.inverse ? -1 : 1;
  }
  return img;
}

/// All reduced words of length <= max_len over num_gens generators, in
/// shortlex order with the identity first.
inline std::vector<Word> enumerate_words(int max_len, int num_gens = 2) {
  if (max_len < 0) throw std::invalid_argument("max_len must be >= 0");
  std::vector<Letter> alphabet;
  for (int g = 1; g <= num_gens; ++g) {
    alphabet.push_back({g, false});
    alphabet.push_back({g, true});
  }
  std::vector<Word> out{Word{}};
  std::vector<std::vector<Letter>> frontier{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& prefix : frontier) {
      for (const Letter& l : alphabet) {
        if (!prefix.empty() && prefix.back() == l.inverted()) continue;
        auto w = prefix;
        w.push_back(l);
        next.push_back(std::move(w));
      }
    }
    for (const auto& w : next) out.push_back(Word::reduce(w));
    frontier = std::move(next);
  }
  return out;
}

/// How inverses of generator images are formed during evaluation.
enum class InverseMode {
  general,     // exact/partial-pivoting elimination
  transpose,   // A^-1 = A^T (standard orthogonal images)
  j_transpose  // A^-1 = J A^T J (J-form orthogonal images)
};

template <ScalarType T>
Matrix<T> generator_inverse(const Matrix<T>& a, InverseMode mode) {
  switch (mode) {
    case InverseMode::transpose:
      return a.transpose();
    case InverseMode::j_transpose: {
      const Matrix<T> j = j_form<T>(a.dim() / 2);
      return j * a.transpose() * j;
    }
    case InverseMode::general:
    default:
      return inverse(a);
  }
}

/// Product of the assigned matrices (and inverses) in word order.
template <ScalarType T>
Matrix<T> evaluate(const Word& w, const std::map<int, Matrix<T>>& assignment,
                   InverseMode mode = InverseMode::general) {
  if (assignment.empty()) throw std::invalid_argument("empty generator assignment");
  const std::size_t d = assignment.begin()->second.dim();
  for (const auto& [g, m] : assignment) {
    if (m.dim() != d) throw dimension_error("generator images differ in dimension");
  }
  std::map<int, Matrix<T>> inverses;
  Matrix<T> result = Matrix<T>::identity(d);
  for (const Letter& l : w.letters()) {
    auto it = assignment.find(l.gen);
    if (it == assignment.end()) {
      throw std::invalid_argument("generator " + std::to_string(l.gen) + " is unassigned");
    }
    if (!l.inverse) {
      result = result * it->second;
    } else {
      auto inv = inverses.find(l.gen);
      if (inv == inverses.end()) {
        inv = inverses.emplace(l.gen, generator_inverse(it->second, mode)).first;
      }
      result = result * inv->second;
    }
  }
  return result;
}

}  // namespace sotrace
