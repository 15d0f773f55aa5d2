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
 * @file report.hpp
 * @brief Run configuration and machine-readable verification reports.
 */

#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sotrace/errors.hpp"
#include "sotrace/json_io.hpp"
#include "sotrace/scalar.hpp"

namespace sotrace {

struct CheckRecord {
  std::string id;
  std::string anchor;
  json params = json::object();
  bool pass = false;
  double residual = 0.0;
  double runtime_ms = 0.0;
  std::string detail;
};

struct Report {
  std::string suite;
  json config = json::object();
  std::vector<CheckRecord> checks;

  [[nodiscard]] bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  [[nodiscard]] std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.pass ? 0 : 1;
    return n;
  }

  /// Runtime fields are the only nondeterministic content; drop them to
  /// compare two runs byte for byte.
  [[nodiscard]] json to_json(bool with_runtime = true) const {
    json checks_json = json::array();
    for (const auto& c : checks) {
      json r{{"id", c.id},
             {"anchor", c.anchor},
             {"params", c.params},
             {"status", c.pass ? "pass" : "fail"},
             {"residual", c.residual}};
      if (!c.detail.empty()) r["detail"] = c.detail;
      if (with_runtime) r["runtime_ms"] = c.runtime_ms;
      checks_json.push_back(std::move(r));
    }
    return json{{"suite", suite},
                {"config", config},
                {"checks", checks_json},
                {"summary", {{"total", checks.size()}, {"failed", failures()}, {"passed", passed()}}}};
  }
};

struct CheckOutcome {
  bool pass = false;
  double residual = 0.0;
  std::string detail;
};

class ReportBuilder {
 public:
  explicit ReportBuilder(std::string suite, json config = json::object()) {
    report_.suite = std::move(suite);
    report_.config = std::move(config);
  }

  void run(std::string id, std::string anchor, json params, const std::function<CheckOutcome()>& body) {
    CheckRecord rec;
    rec.id = std::move(id);
    rec.anchor = std::move(anchor);
    rec.params = std::move(params);
    const auto t0 = std::chrono::steady_clock::now();
    CheckOutcome out;
    try {
      out = body();
    } catch (const std::exception& e) {
      out = {false, 0.0, std::string("exception: ") + e.what()};
    }
    rec.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rec.pass = out.pass;
    rec.residual = out.residual;
    rec.detail = std::move(out.detail);
    report_.checks.push_back(std::move(rec));
  }

  Report take() { return std::move(report_); }

 private:
  Report report_;
};

/// Parameters shared by all suites. Unset keys keep the defaults below.
struct RunConfig {
  long n = 7;
  long p = 17;
  long q = 19;
  long m = 3;            // eta block count for the genericity suite
  long eta_p = 7;
  long eta_q = 11;
  json c = "2";
  json c1 = "2";
  json c2 = "3";
  std::uint64_t seed = 1;
  long seeds = 3;        // counterexample: consecutive seeds starting at seed
  long samples = 50;     // genericity: number of random samples
  long instances = 20;   // identities: random instances per check
  long instances_naive10 = 2;
  long max_len = 4;
  Tolerance tol;
  std::optional<Backend> backend;
  std::string output;
  ValidationMode validation = ValidationMode::strict;

  [[nodiscard]] json to_json() const {
    json j{{"n", n},         {"p", p},         {"q", q},
           {"m", m},         {"eta_p", eta_p}, {"eta_q", eta_q},
           {"c", c},         {"c1", c1},       {"c2", c2},
           {"seed", seed},   {"seeds", seeds}, {"samples", samples},
           {"instances", instances},           {"instances_naive10", instances_naive10},
           {"max_len", max_len},
           {"abs_eps", tol.abs_eps},           {"rel_eps", tol.rel_eps},
           {"rank_pivot_eps", tol.rank_pivot_eps}};
    if (backend) j["backend"] = std::string(to_string(*backend));
    return j;
  }
};

namespace detail {

template <class V>
void read_key(const json& j, const char* key, V& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<V>();
  } catch (const json::exception& e) {
    throw config_error(std::string("config key '") + key + "': " + e.what());
  }
}

inline void env_override(const char* name, double& out) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return;
  char* end = nullptr;
  const double x = std::strtod(v, &end);
  if (end == v || *end != '\0') throw config_error(std::string(name) + " is not a number");
  out = x;
}

}  // namespace detail

inline RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw config_error("config must be a JSON object");
  static const char* known[] = {"n", "p", "q", "m", "eta_p", "eta_q", "c", "c1", "c2", "seed", "seeds",
                                "samples", "instances", "instances_naive10", "max_len", "abs_eps",
                                "rel_eps", "rank_pivot_eps", "backend", "output", "validation"};
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw config_error("unknown config key '" + key + "'");
  }
  RunConfig cfg;
  detail::read_key(j, "n", cfg.n);
  detail::read_key(j, "p", cfg.p);
  detail::read_key(j, "q", cfg.q);
  detail::read_key(j, "m", cfg.m);
  detail::read_key(j, "eta_p", cfg.eta_p);
  detail::read_key(j, "eta_q", cfg.eta_q);
  if (j.contains("c")) cfg.c = j.at("c");
  if (j.contains("c1")) cfg.c1 = j.at("c1");
  if (j.contains("c2")) cfg.c2 = j.at("c2");
  detail::read_key(j, "seed", cfg.seed);
  detail::read_key(j, "seeds", cfg.seeds);
  detail::read_key(j, "samples", cfg.samples);
  detail::read_key(j, "instances", cfg.instances);
  detail::read_key(j, "instances_naive10", cfg.instances_naive10);
  detail::read_key(j, "max_len", cfg.max_len);
  detail::read_key(j, "abs_eps", cfg.tol.abs_eps);
  detail::read_key(j, "rel_eps", cfg.tol.rel_eps);
  detail::read_key(j, "rank_pivot_eps", cfg.tol.rank_pivot_eps);
  detail::read_key(j, "output", cfg.output);
  if (j.contains("backend")) {
    try {
      cfg.backend = parse_backend(j.at("backend").get<std::string>());
    } catch (const std::exception& e) {
      throw config_error(e.what());
    }
  }
  if (j.contains("validation")) cfg.validation = parse_validation_mode(j.at("validation").get<std::string>());
  return cfg;
}

/// SOTRACE_ABS_EPS, SOTRACE_REL_EPS and SOTRACE_RANK_EPS replace the
/// corresponding tolerances.
inline void apply_env_overrides(RunConfig& cfg) {
  detail::env_override("SOTRACE_ABS_EPS", cfg.tol.abs_eps);
  detail::env_override("SOTRACE_REL_EPS", cfg.tol.rel_eps);
  detail::env_override("SOTRACE_RANK_EPS", cfg.tol.rank_pivot_eps);
  if (!cfg.tol.valid()) throw config_error("tolerances must be nonnegative");
}

}  // namespace sotrace
