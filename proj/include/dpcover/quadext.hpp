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

#ifndef DPCOVER_QUADEXT_HPP
#define DPCOVER_QUADEXT_HPP

#include <cstdint>
#include <ostream>
#include <string>

#include "rational.hpp"

namespace dpcover {

/*
 * QuadExt: an element a + b*r of Q(r), r = sqrt(q), q a positive integer.
 *
 * The base q travels with every value. A base of 0 marks a plain rational
 * constant that combines with any base. When q is a perfect square s^2 the
 * value is folded to (a + b*s) + 0*r on construction, so equality is plain
 * component equality and "rational" means b == 0.
 *
 * Ordering and sign() use the real embedding r = +sqrt(q).
 */
class QuadExt {
public:
    QuadExt() = default;
    QuadExt(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
    QuadExt(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
    QuadExt(Rational a, Rational b, std::int64_t q) : a_(std::move(a)), b_(std::move(b)), q_(q) {
        canonicalize();
    }

    /// The generator r = sqrt(q) itself.
    static QuadExt root(std::int64_t q) { return QuadExt(0, 1, q); }

    const Rational& a() const noexcept { return a_; }
    const Rational& b() const noexcept { return b_; }
    std::int64_t base() const noexcept { return q_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    /// a - b*r. Identity on rationals, hence on every value when q is a square.
    QuadExt conjugate() const { return QuadExt(a_, -b_, q_); }

    /// Field norm a^2 - q b^2.
    Rational norm() const { return a_ * a_ - b_ * b_ * Rational(q_); }

    /// Sign under r = +sqrt(q): -1, 0 or +1.
    int sign() const {
        int sa = a_.sign(), sb = b_.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: compare a^2 with q b^2
        int cmp = (a_ * a_).compare(b_ * b_ * Rational(q_));
        return sa > 0 ? cmp : -cmp;
    }

    QuadExt operator-() const { return QuadExt(-a_, -b_, q_); }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        return QuadExt(x.a_ + y.a_, x.b_ + y.b_, common_base(x, y));
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
        return QuadExt(x.a_ - y.a_, x.b_ - y.b_, common_base(x, y));
    }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        std::int64_t q = common_base(x, y);
        if (x.b_ == 0) return QuadExt(x.a_ * y.a_, x.a_ * y.b_, q);
        if (y.b_ == 0) return QuadExt(x.a_ * y.a_, x.b_ * y.a_, q);
        return QuadExt(x.a_ * y.a_ + x.b_ * y.b_ * Rational(q), x.a_ * y.b_ + x.b_ * y.a_, q);
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
        if (y.is_zero()) throw MathError("division by zero in Q(r)");
        std::int64_t q = common_base(x, y);
        if (y.b_ == 0) return QuadExt(x.a_ / y.a_, x.b_ / y.a_, q);
        Rational den = y.norm();
        QuadExt num = x * y.conjugate();
        return QuadExt(num.a_ / den, num.b_ / den, q);
    }

    QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
    QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
    QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }
    QuadExt& operator/=(const QuadExt& y) { return *this = *this / y; }

    friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }
    friend bool operator<(const QuadExt& x, const QuadExt& y) { return (x - y).sign() < 0; }
    friend bool operator>(const QuadExt& x, const QuadExt& y) { return y < x; }

    std::string str() const {
        if (b_ == 0) return to_short_string(a_);
        std::string bs;
        if (b_ == 1) bs = "r";
        else if (b_ == -1) bs = "-r";
        else bs = to_short_string(b_) + "*r";
        if (a_ == 0) return bs;
        if (bs[0] == '-') return to_short_string(a_) + " - " + bs.substr(1);
        return to_short_string(a_) + " + " + bs;
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadExt& x) { return os << x.str(); }

private:
    static std::int64_t common_base(const QuadExt& x, const QuadExt& y) {
        if (x.q_ == y.q_) return x.q_;
        if (x.b_ == 0 && (y.b_ != 0 || x.q_ == 0)) return y.q_;
        if (y.b_ == 0) return x.q_;
        throw InvalidArgument("mixing Q(sqrt(" + std::to_string(x.q_) + ")) and Q(sqrt(" +
                              std::to_string(y.q_) + "))");
    }

    void canonicalize() {
        if (q_ < 0) throw InvalidArgument("Q(r) base must be nonnegative");
        if (b_ == 0) return;
        if (q_ == 0) throw InvalidArgument("irrational part without a base");
        if (auto s = exact_sqrt(Integer(q_))) {
            a_ += b_ * Rational(*s);
            b_ = 0;
        }
    }

    Rational a_{0};
    Rational b_{0};
    std::int64_t q_ = 0;
};

/// x^e, e any integer (x != 0 for e < 0).
inline QuadExt pow(const QuadExt& x, long e) {
    if (e < 0) return QuadExt(1) / pow(x, -e);
    QuadExt result(Rational(1), Rational(0), x.base()), base = x;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

inline QuadExt conjugate(const QuadExt& x) { return x.conjugate(); }

}  // namespace dpcover

#endif
