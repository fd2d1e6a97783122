/*
   Copyright 2026 The dpcover Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef DPCOVER_RATIONAL_HPP
#define DPCOVER_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace dpcover {

// Expression templates are off so that arithmetic always yields values.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;
// Always in lowest terms with a positive denominator; zero is 0/1.
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline Integer numerator_of(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer denominator_of(const Rational& x) { return boost::multiprecision::denominator(x); }

inline bool is_integer(const Rational& x) { return denominator_of(x) == 1; }

/// "num/den" with decimal digits; the denominator is always printed.
inline std::string to_fraction_string(const Rational& x) {
    return numerator_of(x).str() + "/" + denominator_of(x).str();
}

/// Human form: "7", "-3/4".
inline std::string to_short_string(const Rational& x) {
    if (is_integer(x)) return numerator_of(x).str();
    return to_fraction_string(x);
}

/// Accepts "n", "-n", "n/d". Throws InvalidArgument on malformed text or d = 0.
inline Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s) -> Integer {
        if (s.empty()) throw InvalidArgument("malformed rational: '" + std::string(text) + "'");
        std::size_t i = 0;
        if (s[0] == '-' || s[0] == '+') i = 1;
        if (i == s.size()) throw InvalidArgument("malformed rational: '" + std::string(text) + "'");
        for (std::size_t j = i; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9')
                throw InvalidArgument("malformed rational: '" + std::string(text) + "'");
        return Integer(std::string(s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    Integer num = parse_int(text.substr(0, slash));
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

/// x^e for any integer e; x must be nonzero when e < 0.
inline Rational pow(const Rational& x, long e) {
    if (e < 0) {
        if (x == 0) throw MathError("zero raised to a negative power");
        return Rational(1) / pow(x, -e);
    }
    Rational result = 1, base = x;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

/// Exact integer square root if n is a perfect square.
inline std::optional<Integer> exact_sqrt(const Integer& n) {
    if (n < 0) return std::nullopt;
    Integer s = boost::multiprecision::sqrt(n);
    if (s * s == n) return s;
    return std::nullopt;
}

/// Exact square root of a nonnegative rational, if it is a rational square.
inline std::optional<Rational> exact_sqrt(const Rational& x) {
    if (x < 0) return std::nullopt;
    auto n = exact_sqrt(numerator_of(x));
    auto d = exact_sqrt(denominator_of(x));
    if (!n || !d) return std::nullopt;
    return Rational(*n, *d);
}

}  // namespace dpcover

#endif
