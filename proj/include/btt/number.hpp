// Copyright 2026 The btt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

#include "btt/error.hpp"

namespace btt {

using Rational = mpq_class;

/// Canonical p/q. The two-argument mpq_class constructor does not reduce.
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Number-kind policy. Every template in the library is instantiated with
/// either `Rational` (exact mode) or `double` (floating mode).
template <class Num>
struct NumTraits;

template <>
struct NumTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";

  /// Positivity threshold: a value is "positive" iff it exceeds tau().
  static Rational tau() { return Rational(0); }

  static double to_double(const Rational& q) { return q.get_d(); }
  static Rational from_double(double d) { return Rational(d); }
  static Rational from_rational(const Rational& q) { return q; }
  static Rational to_rational(const Rational& q) { return q; }

  static std::string to_string(const Rational& q) { return q.get_str(); }

  /// Accepts "p", "p/q" and plain decimals such as "-1.25".
  static Rational parse(std::string_view s) {
    if (s.empty()) throw InputError("empty number");
    std::string str(s);
    if (str.front() == '+') str.erase(0, 1);
    auto dot = str.find('.');
    if (dot == std::string::npos) {
      Rational q;
      if (q.set_str(str, 10) != 0 || q.get_den() == 0) {
        throw InputError("malformed number '" + std::string(s) + "'");
      }
      q.canonicalize();
      return q;
    }
    std::string digits = str.substr(0, dot) + str.substr(dot + 1);
    std::size_t frac_len = str.size() - dot - 1;
    if (digits.empty() || digits == "-") throw InputError("malformed number '" + std::string(s) + "'");
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw InputError("malformed number '" + std::string(s) + "'");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
};

template <>
struct NumTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";

  static double tau() { return 1e-7; }

  static double to_double(double d) { return d; }
  static double from_double(double d) { return d; }
  static double from_rational(const Rational& q) { return q.get_d(); }
  static Rational to_rational(double d) { return Rational(d); }

  static std::string to_string(double d) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), d);
    return std::string(buf, res.ptr);
  }

  static double parse(std::string_view s) {
    if (s.find('/') != std::string_view::npos) {
      return NumTraits<Rational>::parse(s).get_d();
    }
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double d = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), d);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw InputError("malformed number '" + std::string(s) + "'");
    }
    return d;
  }
};

template <class Num>
double to_double(const Num& v) {
  return NumTraits<Num>::to_double(v);
}

template <class Num>
std::string num_to_string(const Num& v) {
  return NumTraits<Num>::to_string(v);
}

}  // namespace btt
