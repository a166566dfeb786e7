// Copyright 2026 The bctk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "json.hpp"

namespace bctk {

/// Base class for every error raised by the kernel. Mathematical check
/// failures are never thrown; they are reported through `verify::Report`.
class Error : public std::logic_error {
 public:
  explicit Error(const std::string& message) : std::logic_error(message) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& message) : Error(message) {}
};

using Rational = mpq_class;

/// Numeric policy for the two supported scalar backends. All kernel
/// templates are written against this interface only.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";

  static Rational make(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw Error("zero denominator");
    Rational r(static_cast<long>(num), static_cast<unsigned long>(den < 0 ? -den : den));
    if (den < 0) r = -r;
    r.canonicalize();
    return r;
  }
  static bool is_zero(const Rational& x, double /*tol*/) { return sgn(x) == 0; }
  static bool is_negative(const Rational& x, double /*tol*/) { return sgn(x) < 0; }
  static bool equal(const Rational& a, const Rational& b, double /*tol*/) { return a == b; }
  static double to_double(const Rational& x) { return x.get_d(); }

  static nlohmann::json to_json(const Rational& x) {
    return nlohmann::json::array({integer_json(x.get_num()), integer_json(x.get_den())});
  }
  static Rational from_json(const nlohmann::json& j) {
    if (j.is_array() && j.size() == 2) {
      Rational r(mpz_class(integer_text(j[0])), mpz_class(integer_text(j[1])));
      if (r.get_den() == 0) throw Error("zero denominator in JSON scalar");
      r.canonicalize();
      return r;
    }
    if (j.is_number_integer()) return make(j.get<std::int64_t>());
    throw Error("expected [num,den] scalar, got " + j.dump());
  }

 private:
  static nlohmann::json integer_json(const mpz_class& z) {
    if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
    return z.get_str();
  }
  static std::string integer_text(const nlohmann::json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
    throw Error("expected integer in JSON scalar, got " + j.dump());
  }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";

  static double make(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw Error("zero denominator");
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static bool is_zero(double x, double tol) { return std::fabs(x) <= tol; }
  static bool is_negative(double x, double tol) { return x < -tol; }
  static bool equal(double a, double b, double tol) { return std::fabs(a - b) <= tol; }
  static double to_double(double x) { return x; }

  static nlohmann::json to_json(double x) { return x; }
  static double from_json(const nlohmann::json& j) {
    if (j.is_array() && j.size() == 2) {
      return j[0].get<double>() / j[1].get<double>();
    }
    if (j.is_number()) return j.get<double>();
    throw Error("expected scalar, got " + j.dump());
  }
};

/// Default entrywise absolute tolerance of the float backend.
inline constexpr double kDefaultTolerance = 1e-12;

template <class S>
S scalar(std::int64_t num, std::int64_t den = 1) {
  return ScalarTraits<S>::make(num, den);
}

/// Parses "p", "p/q" or "-p/q".
template <class S>
S parse_fraction(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return scalar<S>(std::stoll(text));
    return scalar<S>(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw Error("malformed fraction '" + text + "'");
  } catch (const std::out_of_range&) {
    throw Error("fraction out of range '" + text + "'");
  }
}

template <class S>
std::string format_scalar(const S& x) {
  if constexpr (std::is_same_v<S, Rational>) {
    return x.get_str();
  } else {
    nlohmann::json j = x;
    return j.dump();
  }
}

}  // namespace bctk
