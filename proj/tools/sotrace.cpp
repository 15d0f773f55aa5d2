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

// sotrace: command-line front end.
//
//   sotrace q-eval   --args matrices.json [--naive]
//   sotrace construct --what {dc|iota|alpha14|psi|eta|rho|sigma} --params <json|path>
//   sotrace verify   --suite {identities|counterexample|genericity|separation} [--config <json|path>]
//   sotrace separate --repA a.json --repB b.json --invariant {trace|q} --maxlen L
//
// Exit codes: 0 success / all checks pass, 1 a check failed, 2 bad input.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sotrace/json_io.hpp"
#include "sotrace/sotrace.hpp"
#include "sotrace/suites.hpp"

namespace {

using namespace sotrace;

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(out, j);
  }
}

Tolerance env_tolerance() {
  RunConfig cfg;
  apply_env_overrides(cfg);
  return cfg.tol;
}

// ---------------------------------------------------------------- q-eval

template <ScalarType T>
json q_eval_typed(const json& list, bool naive) {
  std::vector<Matrix<T>> args;
  for (const auto& m : list) args.push_back(matrix_from_json<T>(m));
  const T v = naive ? q_naive(args) : q_fast(args);
  return json{{"value", scalar_to_json(v)},
              {"mode", naive ? "naive" : "fast"},
              {"backend", std::string(to_string(ScalarTraits<T>::backend))}};
}

int cmd_q_eval(const std::string& path, bool naive, const std::string& out) {
  const json j = read_json_file(path);
  const json list = j.is_array() ? j : j.at("args");
  if (!list.is_array() || list.empty()) throw std::invalid_argument("--args needs a non-empty list of matrices");
  const Backend backend = backend_of(list.front());
  emit(backend == Backend::exact ? q_eval_typed<GaussRational>(list, naive) : q_eval_typed<Complex>(list, naive), out);
  return 0;
}

// ------------------------------------------------------------- construct

std::uint64_t seed_of(const json& p) { return p.value("seed", std::uint64_t{1}); }

template <ScalarType T>
Matrix<T> matrix_param(const json& p, const char* key, std::size_t d) {
  if (p.contains(key)) {
    const json& m = p.at(key);
    return matrix_from_json<T>(m.is_string() ? read_json_file(m.get<std::string>()) : m);
  }
  return random_so<T>(d, seed_of(p));
}

template <ScalarType T>
json construct_exactable(const std::string& what, const json& p, const Tolerance& tol) {
  if (what == "dc") return matrix_to_json(d_c(scalar_from_json<T>(p.at("c"))));
  if (what == "iota") {
    const auto n = p.at("n").get<std::size_t>();
    return matrix_to_json(iota_c(matrix_param<T>(p, "a", 4), scalar_from_json<T>(p.at("c")), n, tol));
  }
  // sigma
  const json& r = p.at("rep");
  const json rj = r.is_string() ? read_json_file(r.get<std::string>()) : r;
  return rep_to_json(sigma_involution(rep_from_json<T>(rj, ValidationMode::strict, tol)));
}

json construct(const std::string& what, const json& p, const Tolerance& tol) {
  if (!p.is_object()) throw config_error("--params must be a JSON object");
  if (what == "dc" || what == "iota" || what == "sigma") {
    Backend backend = Backend::exact;
    if (what == "sigma") {
      const json& r = p.at("rep");
      backend = backend_of(r.is_string() ? read_json_file(r.get<std::string>()) : r);
    } else if (p.contains("backend")) {
      backend = parse_backend(p.at("backend").get<std::string>());
    }
    return backend == Backend::exact ? construct_exactable<GaussRational>(what, p, tol)
                                     : construct_exactable<Complex>(what, p, tol);
  }
  if (what == "alpha14") return matrix_to_json(alpha14(matrix_param<Complex>(p, "a", 5), default_sym2_frame(), tol));
  if (what == "psi") {
    return rep_to_json(psi_a(matrix_param<Complex>(p, "a", 5), p.at("p").get<long>(), p.at("q").get<long>(), tol));
  }
  if (what == "eta") {
    const auto m = p.at("m").get<std::size_t>();
    return rep_to_json(
        eta_a(matrix_param<Complex>(p, "a", 2 * m), p.at("p").get<long>(), p.at("q").get<long>(), m, tol));
  }
  if (what == "rho") {
    const long n = p.at("n").get<long>();
    const long pp = p.at("p").get<long>(), qq = p.at("q").get<long>();
    if (!p.contains("a5")) return rep_to_json(counterexample_rep(n, pp, qq, seed_of(p), tol));
    std::optional<FloatMatrix> a2m;
    if (p.contains("a2m")) a2m = matrix_param<Complex>(p, "a2m", static_cast<std::size_t>(2 * n - 14));
    return rep_to_json(rho_construction(static_cast<std::size_t>(n), pp, qq, matrix_param<Complex>(p, "a5", 5), a2m, tol));
  }
  throw config_error("unknown construction '" + what + "'");
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& suite, const std::string& config, bool no_runtime, const std::string& out) {
  RunConfig cfg = config.empty() ? RunConfig{} : config_from_json(json_text_or_file(config));
  apply_env_overrides(cfg);
  const Report report = run_suite(cfg, suite);
  const std::string target = out.empty() ? cfg.output : out;
  emit(json::array({report.to_json(!no_runtime)}), target);
  if (!target.empty()) {
    std::cerr << suite << ": " << report.checks.size() - report.failures() << "/" << report.checks.size()
              << " checks passed\n";
  }
  return report.passed() ? 0 : kExitFail;
}

// -------------------------------------------------------------- separate

template <ScalarType T>
json separate_typed(const json& a, const json& b, const std::string& invariant, int maxlen, ValidationMode mode,
                    const Tolerance& tol) {
  std::vector<std::string> warnings;
  const auto ra = rep_from_json<T>(a, mode, tol, &warnings);
  const auto rb = rep_from_json<T>(b, mode, tol, &warnings);
  SeparationReport rep;
  if (invariant == "trace") rep = trace_separation(ra, rb, maxlen, tol);
  else if (invariant == "q") rep = q_separation(ra, rb, maxlen, tol);
  else throw config_error("--invariant must be trace or q");
  json j{{"verdict", rep.verdict()},
         {"invariant", to_string(rep.kind)},
         {"max_len", rep.max_len},
         {"words_checked", rep.words_checked},
         {"max_residual", rep.max_residual}};
  if (rep.witness) {
    j["witness"] = rep.witness->to_string();
    j["values"] = json::array({scalar_to_json(rep.value_a), scalar_to_json(rep.value_b)});
  }
  if (!warnings.empty()) j["warnings"] = warnings;
  return j;
}

int cmd_separate(const std::string& a, const std::string& b, const std::string& invariant, int maxlen,
                 const std::string& validation, const std::string& out) {
  if (maxlen < 0) throw config_error("--maxlen must be >= 0");
  const Tolerance tol = env_tolerance();
  const json ja = read_json_file(a), jb = read_json_file(b);
  const ValidationMode mode = parse_validation_mode(validation);
  const Backend ba = backend_of(ja), bb = backend_of(jb);
  if (ba != bb) throw backend_error("--repA and --repB use different backends");
  emit(ba == Backend::exact ? separate_typed<GaussRational>(ja, jb, invariant, maxlen, mode, tol)
                            : separate_typed<Complex>(ja, jb, invariant, maxlen, mode, tol),
       out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sotrace: invariants and constructions for SO(2n, C) character varieties"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out;
  app.add_option("-o,--out", out, "Write JSON output to this file instead of stdout");

  auto* q_eval = app.add_subcommand("q-eval", "Evaluate Q on n matrices of size 2n");
  std::string args_path;
  bool naive = false;
  q_eval->add_option("--args", args_path, "JSON list of matrices (or {\"args\": [...]})")->required();
  q_eval->add_flag("--naive", naive, "Use the literal permutation sum (2n <= 10)");

  auto* construct_cmd = app.add_subcommand("construct", "Build a matrix or representation");
  std::string what, params = "{}";
  construct_cmd->add_option("--what", what, "dc|iota|alpha14|psi|eta|rho|sigma")
      ->required()
      ->check(CLI::IsMember({"dc", "iota", "alpha14", "psi", "eta", "rho", "sigma"}));
  construct_cmd->add_option("--params", params, "Inline JSON object or path to one");

  auto* verify = app.add_subcommand("verify", "Run a verification suite and print its report");
  std::string suite, config;
  bool no_runtime = false;
  verify->add_option("--suite", suite, "identities|counterexample|genericity|separation")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  verify->add_option("--config", config, "Inline JSON object or path to one");
  verify->add_flag("--no-runtime", no_runtime, "Omit runtime fields so reports compare byte for byte");

  auto* separate = app.add_subcommand("separate", "Search for a word separating two representations");
  std::string rep_a, rep_b, invariant = "trace", validation = "strict";
  int maxlen = 4;
  separate->add_option("--repA", rep_a, "First representation JSON")->required();
  separate->add_option("--repB", rep_b, "Second representation JSON")->required();
  separate->add_option("--invariant", invariant, "trace|q")->check(CLI::IsMember({"trace", "q"}));
  separate->add_option("--maxlen", maxlen, "Longest word searched");
  separate->add_option("--validation", validation, "strict|warn|off")->check(CLI::IsMember({"strict", "warn", "off"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*q_eval) return cmd_q_eval(args_path, naive, out);
    if (*construct_cmd) {
      emit(construct(what, json_text_or_file(params), env_tolerance()), out);
      return 0;
    }
    if (*verify) return cmd_verify(suite, config, no_runtime, out);
    if (*separate) return cmd_separate(rep_a, rep_b, invariant, maxlen, validation, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
