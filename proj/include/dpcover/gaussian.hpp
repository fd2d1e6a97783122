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

#ifndef DPCOVER_GAUSSIAN_HPP
#define DPCOVER_GAUSSIAN_HPP

#include "polynomial.hpp"
#include "quadext.hpp"
#include "rational.hpp"

namespace dpcover {

// Evaluation point for Gaussian coefficients. Any rational other than 0 and 1
// is allowed so identities can be sampled at negative or fractional q.
class GaussianContext {
public:
    explicit GaussianContext(Rational q) : q_(std::move(q)) {
        if (q_ == 0 || q_ == 1) throw InvalidArgument("Gaussian coefficients need q not in {0, 1}");
    }
    const Rational& q() const noexcept { return q_; }

private:
    Rational q_;
};

/// [n choose k]_q for all integers n, k: 0 when k < 0, otherwise the product
/// prod_{i<k} (q^{n-i} - 1)/(q^{k-i} - 1). Negative n is allowed.
inline Rational gauss(long n, long k, const GaussianContext& ctx) {
    if (k < 0) return 0;
    const Rational& q = ctx.q();
    Rational num = 1, den = 1;
    for (long i = 0; i < k; ++i) {
        num *= pow(q, n - i) - 1;
        den *= pow(q, k - i) - 1;
    }
    return num / den;
}

inline Rational gauss(long n, long k, long q) { return gauss(n, k, GaussianContext(Rational(q))); }

/// E_m(t) = prod_{i<m} (1 + q^i t).
inline Polynomial<QuadExt> e_poly(long m, const GaussianContext& ctx) {
    if (m < 0) throw InvalidArgument("E_m needs m >= 0");
    Polynomial<QuadExt> result = Polynomial<QuadExt>::constant(QuadExt(1));
    for (long i = 0; i < m; ++i) result = result * Polynomial<QuadExt>{QuadExt(1), QuadExt(pow(ctx.q(), i))};
    return result;
}

}  // namespace dpcover

#endif
