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
 * @file scalar.hpp
 * @brief The two scalar backends used throughout the library.
 *
 * - GaussRational: exact a + b i with a, b in Q (GMP rationals). Equality is
 *   decidable and arithmetic is bit-exact.
 * - Complex = std::complex<double>: the floating backend. Every comparison
 *   goes through a Tolerance.
 *
 * Algorithms are templates over the scalar type; ScalarTraits<T> supplies the
 * backend-specific pieces (zero tests, magnitudes, conversion).
 */

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "sotrace/errors.hpp"

namespace sotrace {

enum class Backend { exact, floating };

inline std::string_view to_string(Backend b) {
  return b == Backend::exact ? "exact" : "float";
}

inline Backend parse_backend(std::string_view s) {
  if (s == "exact") return Backend::exact;
  if (s == "float") return Backend::floating;
  throw backend_error("unknown backend '" + std::string(s) + "'");
}

/// Absolute/relative thresholds for the floating backend. The exact backend
/// ignores them.
struct Tolerance {
  double abs_eps = 1e-9;
  double rel_eps = 1e-9;
  double rank_pivot_eps = 1e-8;

  /// |x| is treated as zero when |x| <= abs_eps + rel_eps * scale.
  [[nodiscard]] double bound(double scale) const { return abs_eps + rel_eps * scale; }

  [[nodiscard]] bool valid() const {
    return abs_eps >= 0 && rel_eps >= 0 && rank_pivot_eps >= 0;
  }
};

class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussRational(long num, unsigned long den) : re_(num, den) { re_.canonicalize(); }
  GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  explicit GaussRational(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }

  /// Parses "p/q" or "p" strings for both parts.
  static GaussRational parse(const std::string& re, const std::string& im = "0") {
    mpq_class r, i;
    if (r.set_str(re, 10) != 0 || i.set_str(im, 10) != 0) {
      throw std::invalid_argument("malformed rational '" + re + "', '" + im + "'");
    }
    if (r.get_den() == 0 || i.get_den() == 0) throw std::invalid_argument("zero denominator");
    return {r, i};
  }

  static GaussRational i() { return {mpq_class(0), mpq_class(1)}; }

  [[nodiscard]] const mpq_class& real() const { return re_; }
  [[nodiscard]] const mpq_class& imag() const { return im_; }
  [[nodiscard]] bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  [[nodiscard]] bool is_real() const { return sgn(im_) == 0; }

  [[nodiscard]] GaussRational conj() const { return {re_, -im_}; }
  [[nodiscard]] mpq_class norm() const { return re_ * re_ + im_ * im_; }

  [[nodiscard]] std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussRational operator-() const { return {-re_, -im_}; }

  GaussRational& operator+=(const GaussRational& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
      re_ *= o.re_;
      return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
      re_ /= o.re_;
      return *this;
    }
    mpq_class n = o.norm();
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussRational& x) {
    os << x.re_.get_str();
    if (sgn(x.im_) != 0) os << (sgn(x.im_) > 0 ? "+" : "-") << mpq_class(abs(x.im_)).get_str() << "i";
    return os;
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

using Complex = std::complex<double>;

template <class T>
concept ScalarType = std::same_as<T, GaussRational> || std::same_as<T, Complex>;

template <class T>
inline constexpr bool is_exact_v = std::same_as<T, GaussRational>;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussRational> {
  static constexpr Backend backend = Backend::exact;
  static GaussRational zero() { return {}; }
  static GaussRational one() { return GaussRational(1); }
  static GaussRational imag_unit() { return GaussRational::i(); }
  static GaussRational from_int(long v) { return GaussRational(v); }
  static bool is_zero(const GaussRational& x, const Tolerance& /*tol*/, double /*scale*/ = 0) {
    return x.is_zero();
  }
  static double magnitude(const GaussRational& x) { return std::abs(x.to_complex()); }
  static Complex to_complex(const GaussRational& x) { return x.to_complex(); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr Backend backend = Backend::floating;
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex imag_unit() { return {0.0, 1.0}; }
  static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static bool is_zero(const Complex& x, const Tolerance& tol, double scale = 0) {
    return std::abs(x) <= tol.bound(scale);
  }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static Complex to_complex(const Complex& x) { return x; }
};

template <ScalarType T>
bool approx_equal(const T& a, const T& b, const Tolerance& tol = {}) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= tol.bound(scale);
  }
}

/// Integer power by repeated squaring; negative exponents invert.
template <ScalarType T>
T ipow(T base, long e) {
  if (e < 0) {
    base = ScalarTraits<T>::one() / base;
    e = -e;
  }
  T result = ScalarTraits<T>::one();
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

inline Complex to_complex(const GaussRational& x) { return x.to_complex(); }
inline Complex to_complex(const Complex& x) { return x; }

/// Rational "p/q" string for the exact backend.
inline std::string to_fraction_string(const mpq_class& q) { return q.get_str(); }

}  // namespace sotrace
