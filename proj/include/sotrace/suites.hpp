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
 * @file suites.hpp
 * @brief The verification suites behind `sotrace verify`.
 *
 *  identities      exact identities of Q, iota_c and alpha_{c1,c2}
 *  counterexample  the trace-indistinguishable, non-conjugate pair rho, sigma(rho)
 *  genericity      sampled irreducibility and F-span rates
 *  separation      Q_n against sigma on random SO(4) and SO(6) representations
 *
 * Q is normalized literally as the signed sum over S_{2n}, so Q of a 2x2
 * matrix is 2 (a12 - a21) and Q(D_c) = 2i (c - 1/c). The closed forms below
 * carry that normalization.
 */

#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "sotrace/json_io.hpp"
#include "sotrace/q_invariant.hpp"
#include "sotrace/rep_analysis.hpp"
#include "sotrace/report.hpp"
#include "sotrace/so_constructions.hpp"
#include "sotrace/sym2.hpp"

namespace sotrace {

inline constexpr double kTraceAgreementEps = 1e-8;
inline constexpr double kQVanishEps = 1e-6;
inline constexpr double kGenericRate = 0.95;

/// Q(D_c) under the literal normalization.
template <ScalarType T>
T q_of_dc(const T& c) {
  return ScalarTraits<T>::from_int(2) * ScalarTraits<T>::imag_unit() * (c - ScalarTraits<T>::one() / c);
}

inline GaussRational factorial(long n) {
  mpz_class f = 1;
  for (long k = 2; k <= n; ++k) f *= k;
  return GaussRational(mpq_class(f));
}

/// Q_n(iota_c(a)) = 1/2 Q(D_c)^{n-2} n! Q_2(a).
template <ScalarType T>
T iota_power_closed_form(const Matrix<T>& a, const T& c, long n) {
  const T half = ScalarTraits<T>::one() / ScalarTraits<T>::from_int(2);
  T fact = ScalarTraits<T>::one();
  for (long k = 2; k <= n; ++k) fact *= ScalarTraits<T>::from_int(k);
  return half * ipow(q_of_dc(c), n - 2) * fact * q_n(a);
}

/// Q_{n-1,1}(iota_c1(a1), iota_c2(a2)) =
///   Q(D_c1)^{n-2} (n-1)! Q_{1,1}(a1, a2) + 1/2 (n-2) (n-1)! Q(D_c2) Q(D_c1)^{n-3} Q_2(a1).
template <ScalarType T>
T iota_mixed_closed_form(const Matrix<T>& a1, const Matrix<T>& a2, const T& c1, const T& c2, long n) {
  const T half = ScalarTraits<T>::one() / ScalarTraits<T>::from_int(2);
  T fact = ScalarTraits<T>::one();
  for (long k = 2; k <= n - 1; ++k) fact *= ScalarTraits<T>::from_int(k);
  const T d1 = q_of_dc(c1);
  const T d2 = q_of_dc(c2);
  return ipow(d1, n - 2) * fact * q_kl(a1, a2, 1, 1) +
         half * ScalarTraits<T>::from_int(n - 2) * fact * d2 * ipow(d1, n - 3) * q_n(a1);
}

/// Generator images restricted to the diagonal block [off, off + size).
template <ScalarType T>
Representation<T> restrict_block(const Representation<T>& rep, std::size_t off, std::size_t size) {
  Representation<T> out;
  out.form = rep.form;
  out.group = rep.group;
  for (const auto& [g, m] : rep.generators) out.generators.emplace(g, diagonal_block(m, off, size));
  return out;
}

namespace detail {

/// FNV-1a of the check id mixed with the run seed, so each check draws an
/// independent, reproducible stream.
inline std::uint64_t check_seed(std::uint64_t seed, const std::string& id) {
  std::uint64_t h = 1469598103934665603ULL ^ seed;
  for (unsigned char ch : id) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

template <ScalarType T>
double diff_magnitude(const T& a, const T& b) {
  return std::abs(to_complex(a) - to_complex(b));
}

/// Tracks exact equality over many instances.
struct ExactTally {
  std::size_t mismatches = 0;
  std::size_t total = 0;
  double worst = 0.0;

  void add(const GaussRational& got, const GaussRational& want) {
    ++total;
    if (!(got == want)) {
      ++mismatches;
      worst = std::max(worst, diff_magnitude(got, want));
    }
  }

  [[nodiscard]] CheckOutcome outcome() const {
    return {mismatches == 0, worst,
            std::to_string(total - mismatches) + "/" + std::to_string(total) + " exact matches"};
  }
};

inline json merged(json base, const json& extra) {
  base.update(extra);
  return base;
}

inline std::string word_list_detail(std::size_t count, int max_len) {
  return std::to_string(count) + " words up to length " + std::to_string(max_len);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// identities

inline Report run_identities(const RunConfig& cfg) {
  using E = GaussRational;
  using EM = ExactMatrix;
  ReportBuilder b("identities", cfg.to_json());
  const E c = scalar_from_json<E>(cfg.c);
  const E c1 = scalar_from_json<E>(cfg.c1);
  const E c2 = scalar_from_json<E>(cfg.c2);
  const auto inst = static_cast<std::size_t>(cfg.instances);
  const int max_len = static_cast<int>(cfg.max_len);
  auto rng_for = [&](const std::string& id) { return SampleRng(detail::check_seed(cfg.seed, id)); };
  auto random_args = [](SampleRng& rng, std::size_t n) {
    std::vector<EM> args;
    for (std::size_t k = 0; k < n; ++k) args.push_back(random_complex_matrix<E>(2 * n, rng));
    return args;
  };

  for (std::size_t n = 1; n <= 5; ++n) {
    const std::size_t count = n == 5 ? static_cast<std::size_t>(cfg.instances_naive10) : inst;
    if (count == 0) continue;
    const std::string id = "q.oracle.2n=" + std::to_string(2 * n);
    b.run(id, "fast matching-sum evaluator equals the literal signed permutation sum",
          {{"two_n", 2 * n}, {"instances", count}}, [&] {
            auto rng = rng_for(id);
            detail::ExactTally t;
            for (std::size_t k = 0; k < count; ++k) {
              const auto args = random_args(rng, n);
              t.add(q_fast(args), q_naive(args));
            }
            return t.outcome();
          });
  }

  b.run("q.closed_form.2x2", "Q([[a11,a12],[a21,a22]]) = 2(a12 - a21)", {{"instances", inst}}, [&] {
    auto rng = rng_for("q.closed_form.2x2");
    detail::ExactTally t;
    for (std::size_t k = 0; k < inst; ++k) {
      const EM a = random_complex_matrix<E>(2, rng);
      t.add(q_naive(std::vector<EM>{a}), E(2) * (a(0, 1) - a(1, 0)));
    }
    return t.outcome();
  });

  b.run("q.closed_form.dc", "Q(D_c) = 2i(c - 1/c)", {{"c", json::array({cfg.c, cfg.c1, cfg.c2})}}, [&] {
    detail::ExactTally t;
    for (const E& x : {c, c1, c2}) t.add(q_naive(std::vector<EM>{d_c(x)}), q_of_dc(x));
    return t.outcome();
  });

  b.run("q.skew_dependence", "Q depends only on the skew parts A_i - A_i^T", {{"instances", inst}}, [&] {
    auto rng = rng_for("q.skew_dependence");
    detail::ExactTally t;
    for (std::size_t k = 0; k < inst; ++k) {
      const std::size_t n = 1 + k % 4;
      auto args = random_args(rng, n);
      const E before = q_fast(args);
      for (auto& a : args) {
        const EM r = random_complex_matrix<E>(2 * n, rng);
        a += r + r.transpose();
      }
      t.add(q_fast(args), before);
    }
    return t.outcome();
  });

  b.run("q.symmetry", "Q is symmetric in its arguments", {{"instances", inst}}, [&] {
    auto rng = rng_for("q.symmetry");
    detail::ExactTally t;
    for (std::size_t k = 0; k < inst; ++k) {
      const std::size_t n = 2 + k % 3;
      auto args = random_args(rng, n);
      const E before = q_fast(args);
      std::rotate(args.begin(), args.begin() + 1, args.end());
      std::swap(args.front(), args.back());
      t.add(q_fast(args), before);
    }
    return t.outcome();
  });

  b.run("q.pfaffian", "Q_n(A) = 2^n n! Pf(A - A^T)", {{"instances", inst}}, [&] {
    auto rng = rng_for("q.pfaffian");
    detail::ExactTally t;
    for (std::size_t k = 0; k < inst; ++k) {
      const long n = 1 + static_cast<long>(k % 5);
      const EM a = random_complex_matrix<E>(static_cast<std::size_t>(2 * n), rng);
      t.add(q_n(a), ipow(E(2), n) * factorial(n) * pfaffian(skew_part(a)));
    }
    return t.outcome();
  });

  for (std::size_t n = 2; n <= 5; ++n) {
    const std::string id = "q.block_split.n=" + std::to_string(n);
    b.run(id, "block-diagonal arguments: Q(A_1..A_n) = sum_i Q(B_1..^B_i..B_n) Q(C_i)",
          {{"n", n}, {"instances", inst}}, [&] {
            auto rng = rng_for(id);
            detail::ExactTally t;
            for (std::size_t k = 0; k < inst; ++k) {
              std::vector<EM> bs, cs, as;
              for (std::size_t i = 0; i < n; ++i) {
                bs.push_back(random_complex_matrix<E>(2 * n - 2, rng));
                cs.push_back(random_complex_matrix<E>(2, rng));
                as.push_back(block_diag({bs.back(), cs.back()}));
              }
              E sum;
              for (std::size_t i = 0; i < n; ++i) {
                std::vector<EM> rest;
                for (std::size_t j = 0; j < n; ++j)
                  if (j != i) rest.push_back(bs[j]);
                sum += q_fast(rest) * q_fast(std::vector<EM>{cs[i]});
              }
              t.add(q_fast(as), sum);
            }
            return t.outcome();
          });
  }

  for (long n = 2; n <= 5; ++n) {
    const std::string id = "q.kl_recursion.n=" + std::to_string(n);
    b.run(id, "Q_{k,l}(A_1,A_2) = k Q_{k-1,l}(B_1,B_2) Q(C_1) + l Q_{k,l-1}(B_1,B_2) Q(C_2)",
          {{"n", n}, {"instances", inst}}, [&] {
            auto rng = rng_for(id);
            detail::ExactTally t;
            const auto sz = static_cast<std::size_t>(2 * n - 2);
            for (std::size_t k = 0; k < inst; ++k) {
              const EM b1 = random_complex_matrix<E>(sz, rng), b2 = random_complex_matrix<E>(sz, rng);
              const EM k1 = random_complex_matrix<E>(2, rng), k2 = random_complex_matrix<E>(2, rng);
              const EM a1 = block_diag({b1, k1}), a2 = block_diag({b2, k2});
              const E qc1 = q_n(k1), qc2 = q_n(k2);
              for (long kk = 0; kk <= n; ++kk) {
                const long ll = n - kk;
                const E rhs = E(kk) * q_kl(b1, b2, kk - 1, ll) * qc1 + E(ll) * q_kl(b1, b2, kk, ll - 1) * qc2;
                t.add(q_kl(a1, a2, kk, ll), rhs);
              }
            }
            return t.outcome();
          });
  }

  b.run("q.kl_negative", "Q_{k,l} = 0 when k < 0 or l < 0", json::object(), [&] {
    auto rng = rng_for("q.kl_negative");
    const EM a = random_complex_matrix<E>(4, rng), bm = random_complex_matrix<E>(4, rng);
    detail::ExactTally t;
    t.add(q_kl(a, bm, -1, 3), E(0));
    t.add(q_kl(a, bm, 3, -1), E(0));
    return t.outcome();
  });

  const std::vector<std::pair<json, E>> c_values{{cfg.c, c}, {cfg.c1, c1}, {cfg.c2, c2}};
  for (const auto& entry : c_values) {
    const json& label = entry.first;
    const E& cv = entry.second;
    for (long n = 3; n <= 5; ++n) {
      const std::string id = "q.iota_power.c=" + label.dump() + ".n=" + std::to_string(n);
      b.run(id, "Q_n(iota_c(A)) = 1/2 Q(D_c)^{n-2} n! Q_2(A)", {{"c", label}, {"n", n}, {"instances", inst}}, [&] {
        auto rng = rng_for(id);
        detail::ExactTally t;
        for (std::size_t k = 0; k < inst; ++k) {
          const EM a = random_so<E>(4, rng.uniform_int(0, 1L << 30));
          t.add(q_n(iota_c(a, cv, static_cast<std::size_t>(n))), iota_power_closed_form(a, cv, n));
        }
        return t.outcome();
      });
    }
  }

  for (long n = 3; n <= 5; ++n) {
    const std::string id = "q.iota_mixed.n=" + std::to_string(n);
    b.run(id,
          "Q_{n-1,1}(iota_c1(A_1), iota_c2(A_2)) = Q(D_c1)^{n-2} (n-1)! Q_{1,1}(A_1,A_2) + "
          "1/2 (n-2)(n-1)! Q(D_c2) Q(D_c1)^{n-3} Q_2(A_1)",
          {{"c1", cfg.c1}, {"c2", cfg.c2}, {"n", n}, {"instances", inst}}, [&] {
            auto rng = rng_for(id);
            detail::ExactTally t;
            for (std::size_t k = 0; k < inst; ++k) {
              const EM a1 = random_so<E>(4, rng.uniform_int(0, 1L << 30));
              const EM a2 = random_so<E>(4, rng.uniform_int(0, 1L << 30));
              const auto nn = static_cast<std::size_t>(n);
              t.add(q_kl(iota_c(a1, c1, nn), iota_c(a2, c2, nn), n - 1, 1), iota_mixed_closed_form(a1, a2, c1, c2, n));
            }
            return t.outcome();
          });
  }

  const auto words = enumerate_words(max_len);
  for (std::size_t n = 3; n <= 4; ++n) {
    const std::string id = "q.obvious_embedding.n=" + std::to_string(n);
    b.run(id, "Q_n vanishes on alpha_{1,1} images since Q(D_1) = 0", {{"n", n}, {"max_len", max_len}}, [&] {
      const auto rho = random_representation<E>(4, detail::check_seed(cfg.seed, id));
      const auto img = alpha_c1c2(rho, E(1), E(1), n);
      detail::ExactTally t;
      for (const Word& w : words) t.add(q_n(img(w)), E(0));
      auto out = t.outcome();
      out.detail += ", " + detail::word_list_detail(words.size(), max_len);
      return out;
    });
  }

  for (std::size_t n = 3; n <= 5; ++n) {
    const std::string id = "trace.pushforward.n=" + std::to_string(n);
    b.run(id, "tr alpha_{c1,c2}(rho)(g) = tr rho(g) + (c + 1/c)(n-2), c = c1^{w1(g)} c2^{w2(g)}",
          {{"c1", cfg.c1}, {"c2", cfg.c2}, {"n", n}, {"max_len", max_len}}, [&] {
            const auto rho = random_representation<E>(4, detail::check_seed(cfg.seed, id));
            const auto img = alpha_c1c2(rho, c1, c2, n);
            detail::ExactTally t;
            for (const Word& w : words) {
              const auto ab = abelianize(w);
              const E cw = ipow(c1, ab.exponents[0]) * ipow(c2, ab.exponents[1]);
              t.add(trace(img(w)), trace(rho(w)) + (cw + E(1) / cw) * E(static_cast<long>(n) - 2));
            }
            return t.outcome();
          });
    const std::string id2 = "alpha.word_image.n=" + std::to_string(n);
    b.run(id2, "alpha_{c1,c2}(rho)(g) = iota_c(rho(g)), c = c1^{w1(g)} c2^{w2(g)}",
          {{"c1", cfg.c1}, {"c2", cfg.c2}, {"n", n}, {"max_len", max_len}}, [&] {
            const auto rho = random_representation<E>(4, detail::check_seed(cfg.seed, id2));
            const auto img = alpha_c1c2(rho, c1, c2, n);
            std::size_t bad = 0;
            for (const Word& w : words) {
              const auto ab = abelianize(w);
              const E cw = ipow(c1, ab.exponents[0]) * ipow(c2, ab.exponents[1]);
              if (!(img(w) == iota_c(rho(w), cw, n))) ++bad;
            }
            return CheckOutcome{bad == 0, static_cast<double>(bad), detail::word_list_detail(words.size(), max_len)};
          });
  }

  for (std::size_t n = 2; n <= 3; ++n) {
    const std::string id = "q.conjugation_invariance.n=" + std::to_string(n);
    b.run(id, "Q is invariant under simultaneous SO(2n) conjugation", {{"n", n}, {"instances", inst}}, [&] {
      auto rng = rng_for(id);
      detail::ExactTally t;
      for (std::size_t k = 0; k < inst; ++k) {
        auto args = random_args(rng, n);
        const EM g = random_so<E>(2 * n, rng.uniform_int(0, 1L << 30));
        const E before = q_fast(args);
        for (auto& a : args) a = g * a * g.transpose();
        t.add(q_fast(args), before);
      }
      return t.outcome();
    });
    const std::string id2 = "q.sigma_negation.n=" + std::to_string(n);
    b.run(id2, "conjugation by diag(-1,1,...,1) negates Q_n", {{"n", n}, {"instances", inst}}, [&] {
      auto rng = rng_for(id2);
      detail::ExactTally t;
      const EM m = sigma_matrix<E>(2 * n);
      for (std::size_t k = 0; k < inst; ++k) {
        const EM a = random_complex_matrix<E>(2 * n, rng);
        t.add(q_n(m * a * m), -q_n(a));
      }
      return t.outcome();
    });
  }
  return b.take();
}

// ---------------------------------------------------------------------------
// counterexample

inline void validate_counterexample_config(const RunConfig& cfg) {
  if (cfg.n == 8) throw config_error("n=8 excluded: the construction needs n = 7 or n >= 9");
  if (cfg.n < 7) throw config_error("counterexample needs n = 7 or n >= 9, got n=" + std::to_string(cfg.n));
  const long floor = std::max<long>(2 * cfg.n - 14, 16);
  if (cfg.p <= floor || cfg.q <= floor) {
    throw config_error("counterexample needs p, q > max(2n-14, 16) = " + std::to_string(floor));
  }
  if (cfg.seeds < 0) throw config_error("seeds must be >= 0");
  if (cfg.max_len < 0) throw config_error("max_len must be >= 0");
  if (cfg.backend && *cfg.backend != Backend::floating) {
    throw config_error("counterexample runs on the float backend (roots of unity)");
  }
}

/// The n >= 9 summand uses a second SO(2n-14) sample derived from the seed.
inline Representation<Complex> counterexample_rep(long n, long p, long q, std::uint64_t seed,
                                                  const Tolerance& tol = {}) {
  const FloatMatrix a5 = random_so<Complex>(5, seed);
  std::optional<FloatMatrix> a2m;
  if (n >= 9) a2m = random_so<Complex>(static_cast<std::size_t>(2 * n - 14), seed ^ 0x9e3779b97f4a7c15ULL);
  return rho_construction(static_cast<std::size_t>(n), p, q, a5, a2m, tol);
}

inline Report run_counterexample(const RunConfig& cfg) {
  validate_counterexample_config(cfg);
  ReportBuilder b("counterexample", cfg.to_json());
  const int max_len = static_cast<int>(cfg.max_len);
  const auto words = enumerate_words(max_len);
  for (long s = 0; s < cfg.seeds; ++s) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(s);
    const json base{{"n", cfg.n}, {"p", cfg.p}, {"q", cfg.q}, {"seed", seed}};
    const std::string tag = ".seed=" + std::to_string(seed);
    std::optional<Representation<Complex>> rho_opt;
    b.run("cx.construct" + tag, "rho lands in SO(2n) with generator orders p and q", base, [&] {
      rho_opt = counterexample_rep(cfg.n, cfg.p, cfg.q, seed, cfg.tol);
      const auto problems = validate(*rho_opt, cfg.tol);
      return CheckOutcome{problems.empty(), static_cast<double>(problems.size()),
                          problems.empty() ? "dimension " + std::to_string(rho_opt->dim()) : problems.front()};
    });
    if (!rho_opt) continue;
    const auto& rho = *rho_opt;
    const auto sigma_rho = sigma_involution(rho);

    b.run("cx.irreducible" + tag, "each summand of rho is irreducible (commutant of dimension 1)", base, [&] {
      const std::size_t dim = commutant_dimension(rho.generator_images(), cfg.tol);
      bool ok = dim == rho.blocks.size();
      std::size_t off = 0;
      std::string detail = "commutant dimension " + std::to_string(dim);
      for (std::size_t bsz : rho.blocks) {
        const bool irr = is_irreducible(restrict_block(rho, off, bsz), cfg.tol);
        detail += "; block " + std::to_string(bsz) + (irr ? " irreducible" : " reducible");
        ok = ok && irr;
        off += bsz;
      }
      return CheckOutcome{ok, static_cast<double>(dim), detail};
    });

    b.run("cx.traces_agree" + tag, "tr rho(g) = tr sigma(rho)(g) on every word",
          detail::merged(base, json{{"max_len", max_len}, {"eps", kTraceAgreementEps}}), [&] {
            const auto sep = trace_separation(rho, sigma_rho, max_len, Tolerance{kTraceAgreementEps, 0.0, cfg.tol.rank_pivot_eps});
            return CheckOutcome{!sep.separated, sep.max_residual,
                                sep.verdict() + ", " + detail::word_list_detail(sep.words_checked, max_len)};
          });

    b.run("cx.q_vanishes" + tag, "Q_n(rho(g)) = 0 for every word g",
          detail::merged(base, json{{"max_len", max_len}, {"eps", kQVanishEps}}), [&] {
            double worst = 0.0;
            for (const Word& w : words) worst = std::max(worst, std::abs(q_n(rho(w))));
            return CheckOutcome{worst <= kQVanishEps, worst, detail::word_list_detail(words.size(), max_len)};
          });

    b.run("cx.certificate" + tag,
          "every orthogonal intertwiner from rho to sigma(rho) has determinant -1, so they are O- but not "
          "SO-conjugate",
          base, [&] {
            const auto cert = so_conjugacy_certificate(rho, sigma_rho, cfg.tol);
            double worst = 0.0;
            for (const auto& d : cert.determinants) worst = std::max(worst, std::abs(d + 1.0));
            const bool ok = cert.verdict == ConjugacyVerdict::o_but_not_so_conjugate &&
                            cert.intertwiner_dim == rho.blocks.size();
            std::string detail = "verdict " + to_string(cert.verdict) + ", intertwiner dimension " +
                                 std::to_string(cert.intertwiner_dim);
            if (!cert.note.empty()) detail += ", " + cert.note;
            return CheckOutcome{ok, worst, detail};
          });

    b.run("cx.eigenvalue_one" + tag, "eigenvalue 1 of alpha(psi(g)) on z-perp has multiplicity >= 2",
          detail::merged(base, json{{"max_len", max_len}}), [&] {
            std::size_t worst = kZPerpDim;
            for (const Word& w : words) {
              FloatMatrix m = diagonal_block(rho(w), 0, kZPerpDim);
              for (std::size_t i = 0; i < kZPerpDim; ++i) m(i, i) -= 1.0;
              worst = std::min(worst, kernel_dimension(m, cfg.tol));
            }
            return CheckOutcome{worst >= 2, static_cast<double>(worst),
                                "smallest multiplicity " + std::to_string(worst)};
          });
  }
  return b.take();
}

// ---------------------------------------------------------------------------
// genericity

inline void validate_genericity_config(const RunConfig& cfg) {
  if (cfg.samples < 0) throw config_error("samples must be >= 0");
  if (cfg.p < kPsiMinOrder || cfg.q < kPsiMinOrder) throw config_error("psi_A needs p, q > 16");
  if (cfg.m < static_cast<long>(kEtaMinBlocks)) throw config_error("eta_A needs m >= 2");
  if (cfg.eta_p <= 2 * cfg.m || cfg.eta_q <= 2 * cfg.m) throw config_error("eta_A needs p, q > 2m");
  if (cfg.backend && *cfg.backend != Backend::floating) throw config_error("genericity runs on the float backend");
}

inline Report run_genericity(const RunConfig& cfg) {
  validate_genericity_config(cfg);
  ReportBuilder b("genericity", cfg.to_json());
  if (cfg.samples == 0) return b.take();
  const long n = cfg.samples;
  auto rate_outcome = [](long hits, long total) {
    const double rate = static_cast<double>(hits) / static_cast<double>(total);
    return CheckOutcome{rate >= kGenericRate, rate,
                        std::to_string(hits) + "/" + std::to_string(total) + " samples"};
  };

  b.run("gen.eta_irreducible", "eta_A is irreducible for A off a proper closed subset of SO(2m)",
        {{"m", cfg.m}, {"p", cfg.eta_p}, {"q", cfg.eta_q}, {"samples", n}, {"threshold", kGenericRate}}, [&] {
          long hits = 0;
          for (long s = 0; s < n; ++s) {
            const auto a = random_so<Complex>(static_cast<std::size_t>(2 * cfg.m), cfg.seed + static_cast<std::uint64_t>(s));
            hits += is_irreducible(eta_a(a, cfg.eta_p, cfg.eta_q, static_cast<std::size_t>(cfg.m), cfg.tol), cfg.tol) ? 1 : 0;
          }
          return rate_outcome(hits, n);
        });

  b.run("gen.alpha_psi_irreducible", "alpha o psi_A is irreducible for A off a proper closed subset of SO(5)",
        {{"p", cfg.p}, {"q", cfg.q}, {"samples", n}, {"threshold", kGenericRate}}, [&] {
          long hits = 0;
          for (long s = 0; s < n; ++s) {
            const auto a = random_so<Complex>(5, cfg.seed + static_cast<std::uint64_t>(s));
            hits += is_irreducible(compose_alpha14(psi_a(a, cfg.p, cfg.q, cfg.tol), cfg.tol), cfg.tol) ? 1 : 0;
          }
          return rate_outcome(hits, n);
        });

  b.run("gen.f_span.cyclic", "dim(F + alpha(A)F) = 4 for the cyclic permutation matrix", json::object(), [&] {
    const std::size_t d = f_span_dimension(to_float(cyclic_permutation<GaussRational>()), default_sym2_frame(), cfg.tol);
    return CheckOutcome{d == 4, static_cast<double>(d), "rank " + std::to_string(d)};
  });

  b.run("gen.f_span.random", "dim(F + alpha(A)F) = 4 for A off a proper closed subset of SO(5)",
        {{"samples", n}, {"threshold", kGenericRate}}, [&] {
          long hits = 0;
          for (long s = 0; s < n; ++s) {
            const auto a = random_so<Complex>(5, cfg.seed + static_cast<std::uint64_t>(s));
            hits += f_span_dimension(a, default_sym2_frame(), cfg.tol) == 4 ? 1 : 0;
          }
          return rate_outcome(hits, n);
        });

  b.run("gen.q_separates_sigma", "traces plus Q_n separate a generic SO(4) representation from its sigma image",
        {{"samples", n}, {"max_len", 2}, {"threshold", kGenericRate}}, [&] {
          long hits = 0;
          for (long s = 0; s < n; ++s) {
            const auto rho = random_representation<Complex>(4, cfg.seed + static_cast<std::uint64_t>(s));
            hits += q_separation(rho, sigma_involution(rho), 2, cfg.tol).separated ? 1 : 0;
          }
          return rate_outcome(hits, n);
        });
  return b.take();
}

// ---------------------------------------------------------------------------
// separation

inline Report run_separation(const RunConfig& cfg) {
  if (cfg.max_len < 0) throw config_error("max_len must be >= 0");
  ReportBuilder b("separation", cfg.to_json());
  const int max_len = static_cast<int>(cfg.max_len);
  const bool exact = !cfg.backend || *cfg.backend == Backend::exact;

  auto body = [&](auto tag) {
    using T = decltype(tag);
    for (std::size_t d : {4, 6}) {
      const std::string sfx = ".d=" + std::to_string(d);
      const auto rho = random_representation<T>(d, detail::check_seed(cfg.seed, "separation" + sfx));
      const auto srho = sigma_involution(rho);
      const auto words = enumerate_words(max_len);
      b.run("sep.sigma_negates_q" + sfx, "Q_n(sigma(rho)(g)) = -Q_n(rho(g)) on every word",
            {{"d", d}, {"max_len", max_len}}, [&] {
              std::size_t bad = 0;
              double worst = 0.0;
              for (const Word& w : words) {
                const T a = q_n(srho(w)), bq = q_n(rho(w));
                if (!approx_equal(a, -bq, cfg.tol)) {
                  ++bad;
                  worst = std::max(worst, detail::diff_magnitude(a, -bq));
                }
              }
              return CheckOutcome{bad == 0, worst, detail::word_list_detail(words.size(), max_len)};
            });
      b.run("sep.traces_agree" + sfx, "tr sigma(rho)(g) = tr rho(g) on every word", {{"d", d}, {"max_len", max_len}}, [&] {
        const auto sep = trace_separation(rho, srho, max_len, cfg.tol);
        return CheckOutcome{!sep.separated, sep.max_residual, sep.verdict()};
      });
      b.run("sep.q_witness" + sfx, "Q_n separates rho from sigma(rho) with a word of length <= 2",
            {{"d", d}, {"max_len", 2}}, [&] {
              const auto sep = q_separation(rho, srho, 2, cfg.tol);
              const std::string w = sep.witness ? sep.witness->to_string() : "none";
              return CheckOutcome{sep.separated && sep.witness->length() <= 2, sep.max_residual,
                                  sep.verdict() + ", witness " + w};
            });
      b.run("sep.self" + sfx, "rho is not separated from itself", {{"d", d}, {"max_len", max_len}}, [&] {
        const auto sep = q_separation(rho, rho, max_len, cfg.tol);
        return CheckOutcome{!sep.separated, sep.max_residual, sep.verdict()};
      });
    }
  };
  if (exact) body(GaussRational{});
  else body(Complex{});
  return b.take();
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"identities", "counterexample", "genericity", "separation"};
  return names;
}

/// Runs the named suite. Throws config_error for invalid configurations.
inline Report run_suite(const RunConfig& cfg, const std::string& suite) {
  if (!cfg.tol.valid()) throw config_error("tolerances must be nonnegative");
  if (suite == "identities") {
    if (cfg.backend && *cfg.backend != Backend::exact) throw config_error("identities run on the exact backend");
    if (cfg.instances < 0 || cfg.instances_naive10 < 0) throw config_error("instance counts must be >= 0");
    if (cfg.max_len < 0) throw config_error("max_len must be >= 0");
    for (const json* c : {&cfg.c, &cfg.c1, &cfg.c2}) {
      GaussRational v;
      try {
        v = scalar_from_json<GaussRational>(*c);
      } catch (const std::exception& e) {
        throw config_error(std::string("c values must be exact rationals: ") + e.what());
      }
      if (v.is_zero()) throw config_error("c values must be nonzero");
    }
    return run_identities(cfg);
  }
  if (suite == "counterexample") return run_counterexample(cfg);
  if (suite == "genericity") return run_genericity(cfg);
  if (suite == "separation") return run_separation(cfg);
  throw config_error("unknown suite '" + suite + "'");
}

}  // namespace sotrace
