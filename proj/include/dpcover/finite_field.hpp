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

#ifndef DPCOVER_FINITE_FIELD_HPP
#define DPCOVER_FINITE_FIELD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace dpcover {

inline bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// (p, e) with q = p^e, or nullopt when q is not a prime power.
inline std::optional<std::pair<std::int64_t, int>> prime_power(std::int64_t q) {
    if (q < 2) return std::nullopt;
    std::int64_t p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q % p != 0) p = q;
    int e = 0;
    std::int64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1) return std::nullopt;
    return std::make_pair(p, e);
}

class FieldSpec;

// An element of F_q. The value is the base-p packing c0 + c1 p + ... of the
// coefficient vector, so 0 is zero and 1 is one. Only meaningful together
// with the FieldSpec that produced it.
struct FieldElement {
    std::uint32_t code = 0;

    friend bool operator==(FieldElement a, FieldElement b) { return a.code == b.code; }
    friend bool operator!=(FieldElement a, FieldElement b) { return a.code != b.code; }
    friend bool operator<(FieldElement a, FieldElement b) { return a.code < b.code; }
};

/*
 * F_q = F_p[x]/(modulus) for an odd prime p. The modulus is the
 * lexicographically smallest monic irreducible of degree e, comparing
 * coefficients from the constant term upward. Addition, multiplication,
 * inverse and the quadratic character are tabulated at construction.
 */
class FieldSpec {
public:
    FieldSpec(std::int64_t p, int e) : p_(p), e_(e) {
        if (p == 2) throw InvalidArgument("p must be odd (characteristic 2 is not supported)");
        if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not a prime");
        if (e < 1) throw InvalidArgument("field degree must be >= 1");
        std::int64_t q = 1;
        for (int i = 0; i < e; ++i) {
            q *= p;
            if (q > 65536) throw InvalidArgument("field order too large for tabulated arithmetic");
        }
        q_ = static_cast<std::uint32_t>(q);
        modulus_ = find_modulus();
        build_tables();
    }

    /// Builds F_q from q alone; q must be an odd prime power.
    static FieldSpec from_order(std::int64_t q) {
        auto pe = prime_power(q);
        if (!pe) throw InvalidArgument(std::to_string(q) + " is not a prime power");
        return FieldSpec(pe->first, pe->second);
    }

    std::int64_t p() const noexcept { return p_; }
    int e() const noexcept { return e_; }
    std::uint32_t q() const noexcept { return q_; }
    /// Monic modulus, low degree first (length e + 1).
    const std::vector<std::int64_t>& modulus() const noexcept { return modulus_; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }
    FieldElement element(std::uint32_t code) const {
        if (code >= q_) throw InvalidArgument("field element code out of range");
        return {code};
    }
    /// The image of an integer under Z -> F_p -> F_q.
    FieldElement from_int(std::int64_t n) const {
        n %= p_;
        if (n < 0) n += p_;
        return {static_cast<std::uint32_t>(n)};
    }
    FieldElement from_coeffs(const std::vector<std::int64_t>& coeffs) const {
        if (coeffs.size() != static_cast<std::size_t>(e_)) throw InvalidArgument("coefficient count != e");
        std::uint32_t code = 0;
        for (int i = e_ - 1; i >= 0; --i) {
            std::int64_t c = coeffs[i] % p_;
            if (c < 0) c += p_;
            code = code * static_cast<std::uint32_t>(p_) + static_cast<std::uint32_t>(c);
        }
        return {code};
    }
    std::vector<std::int64_t> coeffs(FieldElement a) const {
        std::vector<std::int64_t> c(e_);
        std::uint32_t v = a.code;
        for (int i = 0; i < e_; ++i) {
            c[i] = v % p_;
            v /= static_cast<std::uint32_t>(p_);
        }
        return c;
    }

    FieldElement add(FieldElement a, FieldElement b) const { return {add_[a.code * q_ + b.code]}; }
    FieldElement neg(FieldElement a) const { return {neg_[a.code]}; }
    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
    FieldElement mul(FieldElement a, FieldElement b) const { return {mul_[a.code * q_ + b.code]}; }
    FieldElement inv(FieldElement a) const {
        if (a.code == 0) throw MathError("inverse of zero in F_" + std::to_string(q_));
        return {inv_[a.code]};
    }
    FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
    /// a^k by square-and-multiply; k may be negative for nonzero a.
    FieldElement pow(FieldElement a, std::int64_t k) const {
        if (k < 0) return pow(inv(a), -k);
        FieldElement result = one(), base = a;
        while (k > 0) {
            if (k & 1) result = mul(result, base);
            base = mul(base, base);
            k >>= 1;
        }
        return result;
    }

    /// Quadratic character on F_q^x: +1 on squares, -1 on nonsquares.
    /// chi(0) is a contract violation and throws MathError.
    int chi(FieldElement a) const {
        if (a.code == 0) throw MathError("quadratic character of zero");
        return chi_[a.code];
    }

    /// The nonsquare with the smallest code.
    FieldElement first_nonsquare() const {
        for (std::uint32_t c = 1; c < q_; ++c)
            if (chi_[c] < 0) return {c};
        throw MathError("no nonsquare");  // unreachable for odd q
    }

    /// Integer for prime fields, "c0,c1,..." otherwise.
    std::string to_string(FieldElement a) const {
        if (e_ == 1) return std::to_string(a.code);
        std::string s;
        auto c = coeffs(a);
        for (int i = 0; i < e_; ++i) s += (i ? "," : "") + std::to_string(c[i]);
        return s;
    }

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.p_ == b.p_ && a.e_ == b.e_; }

private:
    using Poly = std::vector<std::int64_t>;  // low degree first, over F_p

    Poly poly_mod(Poly a, const Poly& m) const {
        const std::size_t dm = m.size() - 1;
        const std::int64_t lead_inv = inv_mod_p(m.back());
        while (a.size() > dm) {
            std::int64_t c = a.back() % p_ * lead_inv % p_;
            std::size_t shift = a.size() - 1 - dm;
            for (std::size_t j = 0; j <= dm; ++j) {
                a[shift + j] = ((a[shift + j] - c * m[j]) % p_ + p_) % p_;
            }
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        return a;
    }

    std::int64_t inv_mod_p(std::int64_t a) const {
        std::int64_t result = 1, base = ((a % p_) + p_) % p_, k = p_ - 2;
        while (k > 0) {
            if (k & 1) result = result * base % p_;
            base = base * base % p_;
            k >>= 1;
        }
        return result;
    }

    // Monic polynomial of the given degree from a base-p index of its lower coefficients.
    Poly monic_from_index(std::int64_t index, int degree) const {
        Poly m(degree + 1, 0);
        for (int i = 0; i < degree; ++i) {
            m[i] = index % p_;
            index /= p_;
        }
        m[degree] = 1;
        return m;
    }

    bool is_irreducible(const Poly& m) const {
        const int deg = static_cast<int>(m.size()) - 1;
        for (int d = 1; 2 * d <= deg; ++d) {
            std::int64_t count = 1;
            for (int i = 0; i < d; ++i) count *= p_;
            for (std::int64_t idx = 0; idx < count; ++idx) {
                if (poly_mod(m, monic_from_index(idx, d)).empty()) return false;
            }
        }
        return true;
    }

    Poly find_modulus() const {
        if (e_ == 1) return {0, 1};
        // Index order with the constant term as the least significant digit is
        // not lexicographic low-degree-first, so compare explicitly.
        std::int64_t count = 1;
        for (int i = 0; i < e_; ++i) count *= p_;
        std::optional<Poly> best;
        for (std::int64_t idx = 0; idx < count; ++idx) {
            Poly m = monic_from_index(idx, e_);
            if (best && !(m < *best)) continue;
            if (is_irreducible(m)) best = m;
        }
        return *best;
    }

    void build_tables() {
        const std::uint32_t q = q_;
        add_.assign(static_cast<std::size_t>(q) * q, 0);
        mul_.assign(static_cast<std::size_t>(q) * q, 0);
        neg_.assign(q, 0);
        inv_.assign(q, 0);
        chi_.assign(q, 0);
        std::vector<Poly> polys(q);
        for (std::uint32_t a = 0; a < q; ++a) polys[a] = coeffs(FieldElement{a});
        auto encode = [&](const Poly& c) {
            std::uint32_t code = 0;
            for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
                code = code * static_cast<std::uint32_t>(p_) + static_cast<std::uint32_t>(c[i]);
            return code;
        };
        for (std::uint32_t a = 0; a < q; ++a) {
            for (std::uint32_t b = 0; b < q; ++b) {
                Poly s(e_);
                for (int i = 0; i < e_; ++i) s[i] = (polys[a][i] + polys[b][i]) % p_;
                add_[a * q + b] = encode(s);
                Poly prod(2 * e_ - 1, 0);
                for (int i = 0; i < e_; ++i)
                    for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + polys[a][i] * polys[b][j]) % p_;
                while (!prod.empty() && prod.back() == 0) prod.pop_back();
                prod = poly_mod(prod, modulus_);
                prod.resize(e_, 0);
                mul_[a * q + b] = encode(prod);
            }
        }
        for (std::uint32_t a = 0; a < q; ++a) {
            for (std::uint32_t b = 0; b < q; ++b) {
                if (add_[a * q + b] == 0) neg_[a] = b;
                if (mul_[a * q + b] == 1) inv_[a] = b;
            }
        }
        // Euler's criterion: a^{(q-1)/2} = +-1.
        for (std::uint32_t a = 1; a < q; ++a) {
            FieldElement h = pow(FieldElement{a}, (static_cast<std::int64_t>(q) - 1) / 2);
            chi_[a] = (h.code == 1) ? 1 : -1;
        }
    }

    std::int64_t p_;
    int e_;
    std::uint32_t q_ = 0;
    Poly modulus_;
    std::vector<std::uint32_t> add_, mul_, neg_, inv_;
    std::vector<int> chi_;
};

}  // namespace dpcover

#endif
