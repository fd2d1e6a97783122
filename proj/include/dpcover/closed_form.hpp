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

#ifndef DPCOVER_CLOSED_FORM_HPP
#define DPCOVER_CLOSED_FORM_HPP

#include <string>
#include <vector>

#include "gaussian.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "quadext.hpp"
#include "report.hpp"
#include "scheme.hpp"

namespace dpcover {

inline void require_scheme_parameters(long n, long q) {
    if (n < 1) throw InvalidArgument("n must be >= 1");
    if (q < 5 || q % 4 != 1 || !prime_power(q)) throw InvalidArgument("q must be a prime power with q = 1 mod 4");
}

/// +sqrt(q) for sign = 1, -sqrt(q) for sign = -1 (the image under r -> -r).
inline QuadExt r_value(long q, int sign = 1) {
    const QuadExt r = QuadExt::root(q);
    return sign > 0 ? r : -r;
}

/*
 * (L_1)_{kj} = p_{1j}^k of the cover scheme. For k <= n row k holds c_k at
 * k-1, a_k/2 at k, b_k at k+1 and a_k/2 at 2n+1-k; row 2n+1-k is its mirror
 * image. Contributions landing on the same entry add (only b_n = 0 does).
 */
inline Matrix<Rational> l1_closed(long n, long q) {
    require_scheme_parameters(n, q);
    const long d = 2 * n + 1;
    Matrix<Rational> m(d + 1, d + 1);
    for (long k = 0; k <= n; ++k) {
        const Rational half_a = drg_a(k, q) / 2;
        const long mk = d - k;  // mirror row
        auto put = [&](long row, long col, const Rational& v) { m(row, col) += v; };
        if (k >= 1) {
            put(k, k - 1, drg_c(k, q));
            put(mk, mk + 1, drg_c(k, q));
        }
        put(k, k, half_a);
        put(mk, mk, half_a);
        if (k + 1 <= d) {
            put(k, k + 1, drg_b(k, n, q));
            put(mk, mk - 1, drg_b(k, n, q));
        }
        put(k, mk, half_a);
        put(mk, k, half_a);
    }
    return m;
}

/// sigma_j = r^{-j} (j <= n), -r^{-(2n+1-j)} (j > n), for r = sign * sqrt(q).
inline std::vector<QuadExt> q_sequence(long n, long q, int sign = 1) {
    require_scheme_parameters(n, q);
    const QuadExt r = r_value(q, sign);
    std::vector<QuadExt> s;
    for (long j = 0; j <= 2 * n + 1; ++j) s.push_back(j <= n ? pow(r, -j) : -pow(r, -(2 * n + 1 - j)));
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s[i] == s[j]) throw VerificationError("sigma sequence not distinct");
    return s;
}

/*
 * s_l(x) = A_l x^l + B_l x^{l-2} with
 *   odd l:  A_l = r^l [n-l+1, 1],               B_l = r^{2-l} [l-1, 1]
 *   even l: A_l = r^l ([n-l+1, 1] - r^{-l}),    B_l = r^{2-l} ([l-1, 1] + r^{l-2}).
 * For l < 2 the x^{l-2} coefficient must vanish; this is checked. A_l may be
 * zero (l = n+1 with n even), so s_l has degree at most l and its x^l
 * coefficient, not its leading one, carries the eigenvalue.
 */
inline std::vector<Polynomial<QuadExt>> s_family(long n, long q, int sign = 1) {
    require_scheme_parameters(n, q);
    const QuadExt r = r_value(q, sign);
    auto g1 = [&](long m) { return lift_rational(gauss(m, 1, q), q); };
    std::vector<Polynomial<QuadExt>> out;
    for (long l = 0; l <= 2 * n + 1; ++l) {
        QuadExt lead, low;
        if (l % 2 == 1) {
            lead = pow(r, l) * g1(n - l + 1);
            low = pow(r, 2 - l) * g1(l - 1);
        } else {
            lead = pow(r, l) * (g1(n - l + 1) - pow(r, -l));
            low = pow(r, 2 - l) * (g1(l - 1) + pow(r, l - 2));
        }
        if (l < 2 && !low.is_zero())
            throw VerificationError("s_" + std::to_string(l) + " has a nonzero negative-degree term");
        std::vector<QuadExt> c(l + 1, QuadExt(0));
        c[l] = lead;
        if (l >= 2) c[l - 2] = low;
        out.emplace_back(std::move(c));
    }
    return out;
}

/*
 * sum_j (L_1)_{kj} sigma_j^l = s_l(sigma_k) for all k, l; sigma distinct;
 * deg s_l <= l with pairwise distinct x^l coefficients, i.e. the coefficient
 * matrix is triangular with distinct diagonal. counts["top_coefficient_zero"]
 * records how many s_l have a zero x^l coefficient (degree below l).
 */
inline Report verify_q_sequence(const Matrix<Rational>& l1, const std::vector<QuadExt>& sigma,
                                const std::vector<Polynomial<QuadExt>>& s, long q) {
    Report rep;
    const std::size_t w = l1.rows();
    if (sigma.size() != w || s.size() != w || l1.cols() != w) {
        rep.fail("shape mismatch");
        return rep;
    }
    for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = i + 1; j < w; ++j)
            if (sigma[i] == sigma[j]) rep.fail("sigma not distinct");
    std::int64_t holds = 0, zero_top = 0;
    for (std::size_t l = 0; l < w; ++l) {
        if (s[l].degree() > static_cast<long>(l)) rep.fail("deg s_" + std::to_string(l) + " > " + std::to_string(l));
        zero_top += s[l][l].is_zero();
        for (std::size_t m = l + 1; m < w; ++m)
            if (s[l][l] == s[m][m]) rep.fail("x^l coefficients of s_" + std::to_string(l) + " and s_" + std::to_string(m) + " coincide");
        for (std::size_t k = 0; k < w; ++k) {
            QuadExt lhs(0);
            for (std::size_t j = 0; j < w; ++j) lhs += lift_rational(l1(k, j), q) * pow(sigma[j], static_cast<long>(l));
            if (lhs != s[l](sigma[k])) {
                rep.fail("identity fails at (k,l) = (" + std::to_string(k) + "," + std::to_string(l) + "): " +
                         lhs.str() + " vs " + s[l](sigma[k]).str());
            } else {
                ++holds;
            }
        }
    }
    rep.counts["identities_holding"] = holds;
    rep.counts["top_coefficient_zero"] = zero_top;
    return rep;
}

struct ClosedFormEigenmatrices {
    Matrix<QuadExt> p_tilde, p_hat, m_tilde, m_hat, p_full;
};

/// P~_ij (hat = false) or P^_ij (hat = true) for r = sign * sqrt(q).
inline QuadExt p_aux_entry(long n, long q, long i, long j, bool hat, int sign = 1) {
    const QuadExt r = r_value(q, sign);
    QuadExt s(0);
    for (long l = 0; l <= j; ++l) {
        const long e = (hat ? 0 : j - 2 * l) + (j - l) * (j - l) + l * l;
        const Rational g = gauss(i, l, q) * gauss(n - i, j - l, q);
        if (g == 0) continue;
        const QuadExt term = pow(r, e) * lift_rational(g, q);
        s += (l % 2 == 0) ? term : -term;
    }
    return s;
}

/// Tridiagonal: diagonal (0, a_1..a_n) (zero when hat), superdiagonal b_0..b_{n-1}, subdiagonal (1, c_2..c_n).
inline Matrix<QuadExt> m_aux(long n, long q, bool hat) {
    Matrix<QuadExt> m(n + 1, n + 1);
    for (long i = 0; i <= n; ++i) {
        if (!hat && i >= 1) m(i, i) = lift_rational(drg_a(i, q), q);
        if (i + 1 <= n) m(i, i + 1) = lift_rational(drg_b(i, n, q), q);
        if (i >= 1) m(i, i - 1) = lift_rational(drg_c(i, q), q);
    }
    return m;
}

/*
 * The full P by interleaving: row 2t is row t of P~ followed by its mirror,
 * row 2t+1 is row t of P^ followed by its negated mirror.
 */
inline ClosedFormEigenmatrices eigenmatrices_closed(long n, long q, int sign = 1) {
    require_scheme_parameters(n, q);
    ClosedFormEigenmatrices cf;
    cf.p_tilde = Matrix<QuadExt>(n + 1, n + 1);
    cf.p_hat = Matrix<QuadExt>(n + 1, n + 1);
    for (long i = 0; i <= n; ++i)
        for (long j = 0; j <= n; ++j) {
            cf.p_tilde(i, j) = p_aux_entry(n, q, i, j, false, sign);
            cf.p_hat(i, j) = p_aux_entry(n, q, i, j, true, sign);
        }
    cf.m_tilde = m_aux(n, q, false);
    cf.m_hat = m_aux(n, q, true);
    const long d = 2 * n + 1;
    cf.p_full = Matrix<QuadExt>(d + 1, d + 1);
    for (long i = 0; i <= d; ++i) {
        const bool odd = i % 2 == 1;
        const Matrix<QuadExt>& src = odd ? cf.p_hat : cf.p_tilde;
        for (long j = 0; j <= n; ++j) {
            const QuadExt v = src(i / 2, j);
            cf.p_full(i, j) = v;
            cf.p_full(i, d - j) = odd ? -v : v;
        }
    }
    return cf;
}

/// Residuals P~ M~ - D~ P~ and P^ M^ - D^ P^ with D = diag of column 1.
inline Report verify_eigenvector_relations(const ClosedFormEigenmatrices& cf) {
    Report rep;
    auto residual_zero = [](const Matrix<QuadExt>& p, const Matrix<QuadExt>& m) {
        Matrix<QuadExt> dm(p.rows(), p.rows());
        for (std::size_t i = 0; i < p.rows(); ++i) dm(i, i) = p(i, 1);
        return (p * m - dm * p).is_zero();
    };
    if (!residual_zero(cf.p_tilde, cf.m_tilde)) rep.fail("P~ M~ != D~ P~");
    if (!residual_zero(cf.p_hat, cf.m_hat)) rep.fail("P^ M^ != D^ P^");
    return rep;
}

/// Even rows symmetric and odd rows antisymmetric under j -> 2n+1-j; row 0 sums to 2 prod (q^i + 1).
inline Report verify_p_full_shape(const ClosedFormEigenmatrices& cf, long n, long q) {
    Report rep;
    const long d = 2 * n + 1;
    for (long i = 0; i <= d; ++i)
        for (long j = 0; j <= d; ++j) {
            const QuadExt mirrored = (i % 2 == 0) ? cf.p_full(i, d - j) : -cf.p_full(i, d - j);
            if (cf.p_full(i, j) != mirrored) rep.fail("row " + std::to_string(i) + " has the wrong mirror symmetry");
        }
    QuadExt total(0);
    for (long j = 0; j <= d; ++j) total += cf.p_full(0, j);
    Rational expected = 2;
    for (long i = 1; i <= n; ++i) expected *= pow(Rational(q), i) + 1;
    if (total != lift_rational(expected, q)) rep.fail("row 0 does not sum to 2 prod (q^i + 1)");
    return rep;
}

/*
 * The closed-form P equals the spectral P up to row order. Rows are matched
 * by their A_1 eigenvalue (column 1); `row_order` receives, for each closed
 * form row, the index of the matching spectral row.
 */
inline Report crosscheck_p(const SpectralData& sd, const ClosedFormEigenmatrices& cf,
                           std::vector<int>* row_order = nullptr) {
    Report rep;
    const std::size_t w = sd.P.rows();
    if (cf.p_full.rows() != w) {
        rep.fail("size mismatch: " + sd.P.shape() + " vs " + cf.p_full.shape());
        return rep;
    }
    std::vector<int> order(w, -1);
    for (std::size_t i = 0; i < w; ++i) {
        for (std::size_t k = 0; k < w; ++k)
            if (sd.P(k, 1) == cf.p_full(i, 1)) order[i] = static_cast<int>(k);
        if (order[i] < 0) {
            rep.fail("closed-form row " + std::to_string(i) + " has eigenvalue " + cf.p_full(i, 1).str() +
                     " not found in the spectral P");
            return rep;
        }
        for (std::size_t j = 0; j < w; ++j)
            if (sd.P(order[i], j) != cf.p_full(i, j)) {
                rep.fail("entry (" + std::to_string(i) + "," + std::to_string(j) + "): closed form " +
                         cf.p_full(i, j).str() + ", spectral " + sd.P(order[i], j).str());
                return rep;
            }
    }
    if (row_order) *row_order = order;
    return rep;
}

/// Positions in the spectral P of the x^l coefficients of s_0, s_1, ... (an idempotent ordering).
inline std::vector<int> ordering_from_leading_coefficients(const SpectralData& sd,
                                                           const std::vector<Polynomial<QuadExt>>& s) {
    std::vector<int> order;
    for (std::size_t l = 0; l < s.size(); ++l) {
        const QuadExt top = s[l][l];
        int found = -1;
        for (std::size_t k = 0; k < sd.P.rows(); ++k)
            if (sd.P(k, 1) == top) found = static_cast<int>(k);
        if (found < 0) throw VerificationError("x^l coefficient " + top.str() + " is not an eigenvalue");
        order.push_back(found);
    }
    return order;
}

// Identities for Gaussian coefficients and E_m, checked on sample grids.

/// [n,k] = q^k [n-1,k] + [n-1,k-1] = [n-1,k] + q^{n-k} [n-1,k-1].
inline Report check_gauss_recurrences(const std::vector<Rational>& qs, long lo, long hi) {
    Report rep;
    std::int64_t count = 0;
    for (const auto& q : qs) {
        const GaussianContext c(q);
        for (long n = lo; n <= hi; ++n)
            for (long k = lo; k <= hi; ++k) {
                const Rational g = gauss(n, k, c);
                if (g != pow(q, k) * gauss(n - 1, k, c) + gauss(n - 1, k - 1, c) ||
                    g != gauss(n - 1, k, c) + pow(q, n - k) * gauss(n - 1, k - 1, c))
                    rep.fail("recurrence fails at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                             " q=" + to_short_string(q));
                ++count;
            }
    }
    rep.counts["cases"] = count;
    return rep;
}

/*
 * [-n,k] = (-q^{-n})^k q^{-e} [n+k-1,k] with e = binom(k,2) when
 * `binomial_shift` is set and e = 0 otherwise. Only the shifted form agrees
 * with the product formula for k >= 2.
 */
inline Report check_gauss_negation(const std::vector<Rational>& qs, long lo, long hi, bool binomial_shift = false) {
    Report rep;
    std::int64_t count = 0;
    for (const auto& q : qs) {
        const GaussianContext c(q);
        for (long n = lo; n <= hi; ++n)
            for (long k = lo; k <= hi; ++k) {
                Rational rhs = 0;
                if (k >= 0) {
                    rhs = pow(-pow(q, -n), k) * gauss(n + k - 1, k, c);
                    if (binomial_shift) rhs *= pow(q, -(k * (k - 1) / 2));
                }
                if (gauss(-n, k, c) != rhs)
                    rep.fail("negation rule fails at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                             " q=" + to_short_string(q) + ": " + to_short_string(gauss(-n, k, c)) + " vs " +
                             to_short_string(rhs));
                else
                    ++rep.counts["holding"];
                ++count;
            }
    }
    rep.counts["cases"] = count;
    return rep;
}

/// [n,k][k,l] = [n,l][n-l,k-l].
inline Report check_gauss_product_rule(const std::vector<Rational>& qs, long lo, long hi) {
    Report rep;
    std::int64_t count = 0;
    for (const auto& q : qs) {
        const GaussianContext c(q);
        for (long n = lo; n <= hi; ++n)
            for (long k = lo; k <= hi; ++k)
                for (long l = lo; l <= hi; ++l) {
                    if (gauss(n, k, c) * gauss(k, l, c) != gauss(n, l, c) * gauss(n - l, k - l, c))
                        rep.fail("product rule fails at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                 " l=" + std::to_string(l) + " q=" + to_short_string(q));
                    ++count;
                }
    }
    rep.counts["cases"] = count;
    return rep;
}

/// [n,k] = [n,n-k] for 0 <= k <= n <= hi.
inline Report check_gauss_symmetry(const std::vector<Rational>& qs, long hi) {
    Report rep;
    std::int64_t count = 0;
    for (const auto& q : qs) {
        const GaussianContext c(q);
        for (long n = 0; n <= hi; ++n)
            for (long k = 0; k <= n; ++k) {
                if (gauss(n, k, c) != gauss(n, n - k, c))
                    rep.fail("symmetry fails at n=" + std::to_string(n) + " k=" + std::to_string(k));
                ++count;
            }
    }
    rep.counts["cases"] = count;
    return rep;
}

/*
 * For m <= max_m, as polynomials in t:
 *   E_m(-qt)(1 - t) = (1 - q^m t) E_m(-t)
 *   E_m(q^2 t)(1 + qt) = (1 + q^{m+1} t) E_m(qt)
 *   E_m(r^3 t)(1 + rt) = (1 + r q^m t) E_m(rt),  r = sqrt(q).
 */
inline Report check_e_poly_shifts(const std::vector<long>& qs, long max_m) {
    using Poly = Polynomial<QuadExt>;
    Report rep;
    std::int64_t count = 0;
    for (long qv : qs) {
        const GaussianContext c{Rational(qv)};
        const QuadExt q = lift_rational(Rational(qv), qv), r = QuadExt::root(qv), one(1);
        for (long m = 0; m <= max_m; ++m) {
            const Poly e = e_poly(m, c);
            const QuadExt qm = pow(q, m);
            if (e.scaled_argument(-q) * Poly{one, -one} != Poly{one, -qm} * e.scaled_argument(-one))
                rep.fail("first shift fails at m=" + std::to_string(m) + " q=" + std::to_string(qv));
            if (e.scaled_argument(q * q) * Poly{one, q} != Poly{one, q * qm} * e.scaled_argument(q))
                rep.fail("second shift fails at m=" + std::to_string(m) + " q=" + std::to_string(qv));
            if (e.scaled_argument(r * r * r) * Poly{one, r} != Poly{one, r * qm} * e.scaled_argument(r))
                rep.fail("third shift fails at m=" + std::to_string(m) + " q=" + std::to_string(qv));
            count += 3;
        }
    }
    rep.counts["cases"] = count;
    return rep;
}

}  // namespace dpcover

#endif
