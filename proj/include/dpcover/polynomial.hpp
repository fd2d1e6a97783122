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

#ifndef DPCOVER_POLYNOMIAL_HPP
#define DPCOVER_POLYNOMIAL_HPP

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace dpcover {

// Dense univariate polynomial over a field T; coefficient i belongs to x^i.
// Kept trimmed: no trailing zeros, the zero polynomial is empty.
template <class T>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial constant(const T& c) { return Polynomial(std::vector<T>{c}); }
    static Polynomial monomial(const T& c, std::size_t degree) {
        std::vector<T> v(degree + 1, T(0));
        v[degree] = c;
        return Polynomial(std::move(v));
    }

    bool is_zero() const noexcept { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    const std::vector<T>& coefficients() const noexcept { return c_; }

    /// Coefficient of x^i, zero past the degree.
    T operator[](std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    T leading() const { return c_.empty() ? T(0) : c_.back(); }

    T operator()(const T& x) const {
        T acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// p(c x)
    Polynomial scaled_argument(const T& c) const {
        std::vector<T> v = c_;
        T factor(1);
        for (auto& coeff : v) {
            coeff = coeff * factor;
            factor = factor * c;
        }
        return Polynomial(std::move(v));
    }

    template <class F>
    Polynomial map_coefficients(F&& f) const {
        std::vector<T> v;
        v.reserve(c_.size());
        for (const auto& coeff : c_) v.push_back(f(coeff));
        return Polynomial(std::move(v));
    }

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
        std::vector<T> v(std::max(p.c_.size(), q.c_.size()), T(0));
        for (std::size_t i = 0; i < p.c_.size(); ++i) v[i] = v[i] + p.c_[i];
        for (std::size_t i = 0; i < q.c_.size(); ++i) v[i] = v[i] + q.c_[i];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial& p) {
        return p.map_coefficients([](const T& c) { return -c; });
    }
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-q); }
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
        if (p.is_zero() || q.is_zero()) return {};
        std::vector<T> v(p.c_.size() + q.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < p.c_.size(); ++i)
            for (std::size_t j = 0; j < q.c_.size(); ++j) v[i + j] = v[i + j] + p.c_[i] * q.c_[j];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator*(const T& s, const Polynomial& p) {
        return p.map_coefficients([&](const T& c) { return s * c; });
    }

    /// Division with remainder; throws MathError on a zero divisor.
    friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero()) throw MathError("polynomial division by zero");
        std::vector<T> rem = a.c_;
        if (a.degree() < b.degree()) return {Polynomial{}, a};
        std::vector<T> quo(a.c_.size() - b.c_.size() + 1, T(0));
        const T lead = b.c_.back();
        for (long i = static_cast<long>(quo.size()) - 1; i >= 0; --i) {
            T coef = rem[i + b.c_.size() - 1] / lead;
            quo[i] = coef;
            if (coef == T(0)) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) rem[i + j] = rem[i + j] - coef * b.c_[j];
        }
        return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
    }

    friend Polynomial derivative(const Polynomial& p) {
        if (p.c_.size() <= 1) return {};
        std::vector<T> v(p.c_.size() - 1, T(0));
        for (std::size_t i = 1; i < p.c_.size(); ++i) v[i - 1] = T(static_cast<long>(i)) * p.c_[i];
        return Polynomial(std::move(v));
    }

    friend Polynomial gcd(Polynomial a, Polynomial b) {
        while (!b.is_zero()) {
            auto r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        return (T(1) / a.leading()) * a;
    }

    friend bool operator==(const Polynomial& p, const Polynomial& q) { return p.c_ == q.c_; }
    friend bool operator!=(const Polynomial& p, const Polynomial& q) { return !(p == q); }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
        if (p.is_zero()) return os << "0";
        bool first = true;
        for (std::size_t i = 0; i < p.c_.size(); ++i) {
            if (p.c_[i] == T(0)) continue;
            if (!first) os << " + ";
            os << "(" << p.c_[i] << ")";
            if (i > 0) os << "*t^" << i;
            first = false;
        }
        return os;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }

    std::vector<T> c_;
};

}  // namespace dpcover

#endif
