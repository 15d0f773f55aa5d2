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

#pragma once

#include <map>
#include <string>
#include <vector>

#include "sotrace/linalg.hpp"
#include "sotrace/matrix.hpp"
#include "sotrace/words.hpp"

namespace sotrace {

/// The abstract group a representation is claimed to factor through.
struct GroupTag {
  enum class Kind { free, zp_zq };
  Kind kind = Kind::free;
  long p = 0;
  long q = 0;

  static GroupTag free_group() { return {}; }
  static GroupTag cyclic_product(long p, long q) { return {Kind::zp_zq, p, q}; }
  friend bool operator==(const GroupTag&, const GroupTag&) = default;
};

/// Generator images of a homomorphism into SO(d) (standard or J form).
/// `blocks` optionally records the sizes of a declared direct-sum splitting.
template <ScalarType T>
struct Representation {
  Form form = Form::standard;
  GroupTag group;
  std::map<int, Matrix<T>> generators;
  std::vector<std::size_t> blocks;

  [[nodiscard]] std::size_t dim() const {
    if (generators.empty()) throw std::invalid_argument("representation has no generators");
    return generators.begin()->second.dim();
  }

  [[nodiscard]] InverseMode inverse_mode() const {
    return form == Form::standard ? InverseMode::transpose : InverseMode::j_transpose;
  }

  [[nodiscard]] const Matrix<T>& generator(int g) const {
    auto it = generators.find(g);
    if (it == generators.end()) throw std::invalid_argument("missing generator " + std::to_string(g));
    return it->second;
  }

  /// rho(w).
  [[nodiscard]] Matrix<T> operator()(const Word& w) const {
    return evaluate(w, generators, inverse_mode());
  }

  [[nodiscard]] std::vector<Matrix<T>> generator_images() const {
    std::vector<Matrix<T>> v;
    for (const auto& [g, m] : generators) v.push_back(m);
    return v;
  }
};

inline Representation<Complex> to_float(const Representation<GaussRational>& rep) {
  Representation<Complex> f{rep.form, rep.group, {}, rep.blocks};
  for (const auto& [g, m] : rep.generators) f.generators.emplace(g, to_float(m));
  return f;
}
inline const Representation<Complex>& to_float(const Representation<Complex>& rep) { return rep; }

/// Problems found by validate(); empty means the representation is sound.
template <ScalarType T>
std::vector<std::string> validate(const Representation<T>& rep, const Tolerance& tol = {}) {
  std::vector<std::string> problems;
  if (rep.generators.empty()) {
    problems.emplace_back("no generators");
    return problems;
  }
  const std::size_t d = rep.generators.begin()->second.dim();
  for (const auto& [g, m] : rep.generators) {
    if (!m.is_square() || m.rows() != d) {
      problems.push_back("generator " + std::to_string(g) + " has shape " + m.shape());
      continue;
    }
    if (!is_special_orthogonal(m, rep.form, tol)) {
      problems.push_back("generator " + std::to_string(g) + " is not special orthogonal");
    }
  }
  if (!rep.blocks.empty()) {
    std::size_t total = 0;
    for (auto b : rep.blocks) total += b;
    if (total != d) problems.emplace_back("declared blocks do not sum to the dimension");
  }
  if (rep.group.kind == GroupTag::Kind::zp_zq && problems.empty()) {
    const long orders[2] = {rep.group.p, rep.group.q};
    for (int g = 1; g <= 2; ++g) {
      auto it = rep.generators.find(g);
      if (it == rep.generators.end()) {
        problems.push_back("missing generator " + std::to_string(g));
        continue;
      }
      const Matrix<T> pw = power(it->second, static_cast<unsigned long>(orders[g - 1]));
      if (!approx_equal(pw, Matrix<T>::identity(d), tol)) {
        problems.push_back("generator " + std::to_string(g) + " does not have order dividing " +
                           std::to_string(orders[g - 1]));
      }
    }
  }
  return problems;
}

}  // namespace sotrace
