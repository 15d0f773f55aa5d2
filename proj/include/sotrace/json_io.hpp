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
 * @file json_io.hpp
 * @brief JSON encoding of scalars, matrices and representations.
 *
 * Matrix:
 *   {"d": 2, "backend": "exact", "entries": [["1/2", "0"], ["0", "-3"], ...]}
 * Entries are row-major [re, im] pairs; exact parts are "p/q" strings and
 * float parts are numbers.
 *
 * Representation: the matrix fields "d" and "backend" plus
 *   "form": "standard" | "j",
 *   "group": {"kind": "free"} | {"kind": "zp_zq", "p": 17, "q": 19},
 *   "generators": {"1": <matrix>, "2": <matrix>},
 *   "blocks": [14, 4]            (optional)
 */

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sotrace/errors.hpp"
#include "sotrace/representation.hpp"

namespace sotrace {

using json = nlohmann::json;

template <ScalarType T>
json scalar_to_json(const T& x) {
  if constexpr (is_exact_v<T>) {
    return json::array({to_fraction_string(x.real()), to_fraction_string(x.imag())});
  } else {
    return json::array({x.real(), x.imag()});
  }
}

namespace detail {

inline mpq_class rational_from_json(const json& j) {
  if (j.is_string()) return GaussRational::parse(j.get<std::string>()).real();
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  throw std::invalid_argument("exact scalar parts must be \"p/q\" strings or integers");
}

inline double real_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return GaussRational::parse(j.get<std::string>()).real().get_d();
  throw std::invalid_argument("float scalar parts must be numbers");
}

}  // namespace detail

/// Accepts [re, im], a bare real part, or a "p/q" string.
template <ScalarType T>
T scalar_from_json(const json& j) {
  json re = j, im = 0;
  if (j.is_array()) {
    if (j.size() != 2) throw std::invalid_argument("scalar must be [re, im]");
    re = j[0];
    im = j[1];
  }
  if constexpr (is_exact_v<T>) {
    return GaussRational(detail::rational_from_json(re), detail::rational_from_json(im));
  } else {
    return Complex{detail::real_from_json(re), detail::real_from_json(im)};
  }
}

template <ScalarType T>
json matrix_to_json(const Matrix<T>& m) {
  json entries = json::array();
  for (const auto& x : m.data()) entries.push_back(scalar_to_json(x));
  return json{{"d", m.dim()}, {"backend", std::string(to_string(ScalarTraits<T>::backend))}, {"entries", entries}};
}

inline Backend backend_of(const json& j) {
  if (!j.is_object() || !j.contains("backend")) throw std::invalid_argument("JSON object lacks \"backend\"");
  return parse_backend(j.at("backend").get<std::string>());
}

template <ScalarType T>
Matrix<T> matrix_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("matrix JSON must be an object");
  if (backend_of(j) != ScalarTraits<T>::backend) {
    throw backend_error("matrix backend is " + j.at("backend").get<std::string>() + ", expected " +
                        std::string(to_string(ScalarTraits<T>::backend)));
  }
  const long d = j.at("d").get<long>();
  if (d <= 0) throw dimension_error("matrix dimension must be positive");
  const json& entries = j.at("entries");
  const auto du = static_cast<std::size_t>(d);
  if (!entries.is_array() || entries.size() != du * du) {
    throw dimension_error("matrix of dimension " + std::to_string(d) + " needs " + std::to_string(d * d) +
                          " entries");
  }
  Matrix<T> m(du, du);
  for (std::size_t k = 0; k < du * du; ++k) m(k / du, k % du) = scalar_from_json<T>(entries[k]);
  return m;
}

using AnyMatrix = std::variant<ExactMatrix, FloatMatrix>;

inline AnyMatrix any_matrix_from_json(const json& j) {
  if (backend_of(j) == Backend::exact) return matrix_from_json<GaussRational>(j);
  return matrix_from_json<Complex>(j);
}

inline json group_to_json(const GroupTag& g) {
  if (g.kind == GroupTag::Kind::free) return json{{"kind", "free"}};
  return json{{"kind", "zp_zq"}, {"p", g.p}, {"q", g.q}};
}

inline GroupTag group_from_json(const json& j) {
  const std::string kind = j.value("kind", "free");
  if (kind == "free") return GroupTag::free_group();
  if (kind == "zp_zq") return GroupTag::cyclic_product(j.at("p").get<long>(), j.at("q").get<long>());
  throw std::invalid_argument("unknown group kind '" + kind + "'");
}

template <ScalarType T>
json rep_to_json(const Representation<T>& rep) {
  json gens = json::object();
  for (const auto& [g, m] : rep.generators) gens[std::to_string(g)] = matrix_to_json(m);
  json j{{"d", rep.dim()},
         {"backend", std::string(to_string(ScalarTraits<T>::backend))},
         {"form", rep.form == Form::standard ? "standard" : "j"},
         {"group", group_to_json(rep.group)},
         {"generators", gens}};
  if (!rep.blocks.empty()) j["blocks"] = rep.blocks;
  return j;
}

enum class ValidationMode { strict, warn, off };

inline ValidationMode parse_validation_mode(const std::string& s) {
  if (s == "strict") return ValidationMode::strict;
  if (s == "warn") return ValidationMode::warn;
  if (s == "off") return ValidationMode::off;
  throw config_error("unknown validation mode '" + s + "'");
}

/// Parses a representation and checks it. Strict mode throws
/// validation_error; warn mode appends to *warnings.
template <ScalarType T>
Representation<T> rep_from_json(const json& j, ValidationMode mode = ValidationMode::strict,
                                const Tolerance& tol = {}, std::vector<std::string>* warnings = nullptr) {
  if (!j.is_object()) throw std::invalid_argument("representation JSON must be an object");
  Representation<T> rep;
  const std::string form = j.value("form", "standard");
  if (form == "standard") rep.form = Form::standard;
  else if (form == "j") rep.form = Form::j;
  else throw std::invalid_argument("unknown form '" + form + "'");
  if (j.contains("group")) rep.group = group_from_json(j.at("group"));
  for (const auto& [key, value] : j.at("generators").items()) {
    json m = value;
    if (!m.contains("backend") && j.contains("backend")) m["backend"] = j.at("backend");
    if (!m.contains("d") && j.contains("d")) m["d"] = j.at("d");
    rep.generators.emplace(std::stoi(key), matrix_from_json<T>(m));
  }
  if (j.contains("blocks")) rep.blocks = j.at("blocks").get<std::vector<std::size_t>>();
  if (rep.generators.empty()) throw std::invalid_argument("representation has no generators");
  if (j.contains("d") && j.at("d").get<std::size_t>() != rep.dim()) {
    throw dimension_error("declared d does not match generator size");
  }
  if (mode == ValidationMode::off) return rep;
  const auto problems = validate(rep, tol);
  if (problems.empty()) return rep;
  if (mode == ValidationMode::strict) {
    std::string msg = "representation failed validation:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw validation_error(msg);
  }
  if (warnings) warnings->insert(warnings->end(), problems.begin(), problems.end());
  return rep;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump(2) << "\n";
}

/// Inline JSON text, or a path to a JSON file.
inline json json_text_or_file(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    try {
      return json::parse(arg);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("malformed inline JSON: ") + e.what());
    }
  }
  return read_json_file(arg);
}

template <ScalarType T>
Matrix<T> load_matrix(const std::string& path) {
  return matrix_from_json<T>(read_json_file(path));
}

template <ScalarType T>
void save_matrix(const std::string& path, const Matrix<T>& m) {
  write_json_file(path, matrix_to_json(m));
}

template <ScalarType T>
Representation<T> load_rep(const std::string& path, ValidationMode mode = ValidationMode::strict,
                           const Tolerance& tol = {}, std::vector<std::string>* warnings = nullptr) {
  return rep_from_json<T>(read_json_file(path), mode, tol, warnings);
}

template <ScalarType T>
void save_rep(const std::string& path, const Representation<T>& rep) {
  write_json_file(path, rep_to_json(rep));
}

}  // namespace sotrace
