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

#include <gtest/gtest.h>

#include "dpcover/closed_form.hpp"

using namespace dpcover;

namespace {

struct Built {
    DualPolarGraph graph;
    CoherenceTable table;
    CoverGraph cover;
    IntersectionTensor tensor;
    SpectralData sd;
    Built(int q, int n)
        : graph(SymplecticSpace::over(q, n)), table(graph), cover(table), tensor(verify_cover_scheme(cover)),
          sd(spectral_data(tensor, q)) {}
};

Built& instance(int q, int n) {
    static std::map<std::pair<int, int>, std::unique_ptr<Built>> cache;
    auto& slot = cache[{q, n}];
    if (!slot) slot = std::make_unique<Built>(q, n);
    return *slot;
}

// Direct product formula, independent of the library's gauss().
Rational gauss_oracle(long n, long k, const Rational& q) {
    if (k < 0) return 0;
    Rational v = 1;
    for (long i = 0; i < k; ++i) v *= (pow(q, n - i) - 1) / (pow(q, k - i) - 1);
    return v;
}

}  // namespace

TEST(L1Closed, MatchesBruteForce) {
    for (auto [q, n] : std::vector<std::pair<int, int>>{{5, 1}, {9, 1}, {13, 1}, {5, 2}, {9, 2}})
        EXPECT_EQ(intersection_matrix(instance(q, n).tensor, 1), l1_closed(n, q)) << q << "," << n;
}

TEST(L1Closed, Entries) {
    const auto l1 = l1_closed(2, 5);
    for (int j = 0; j < 6; ++j) EXPECT_EQ(l1(0, j), Rational(j == 1 ? 30 : 0));
    EXPECT_EQ(l1(1, 1), Rational(2));
    EXPECT_EQ(l1(1, 4), Rational(2));
    EXPECT_THROW(l1_closed(2, 7), InvalidArgument);
    EXPECT_THROW(l1_closed(0, 5), InvalidArgument);
}

TEST(QSequence, Values) {
    const QuadExt r = QuadExt::root(5);
    const std::vector<QuadExt> expect{1, QuadExt(1) / r, QuadExt(Rational(1, 5)), QuadExt(Rational(-1, 5)),
                                      QuadExt(-1) / r, -1};
    EXPECT_EQ(q_sequence(2, 5), expect);
    for (long n = 1; n <= 3; ++n) {
        const auto s = s_family(n, 5);
        EXPECT_EQ(s[0].degree(), 0);
        EXPECT_EQ(s[0][0], QuadExt(5 * gauss(n, 1, 5)));  // k_1 = q [n,1]
        EXPECT_EQ(s[1], Polynomial<QuadExt>::monomial(r * QuadExt(gauss(n, 1, 5)), 1));
    }
}

TEST(QSequence, TheIdentityHoldsOnBruteForceL1) {
    for (auto [q, n] : std::vector<std::pair<int, int>>{{5, 1}, {9, 1}, {13, 1}, {5, 2}, {9, 2}}) {
        const auto l1 = intersection_matrix(instance(q, n).tensor, 1);
        for (int sign : {1, -1}) {
            const auto sigma = q_sequence(n, q, sign);
            const auto s = s_family(n, q, sign);
            const std::size_t w = l1.rows();
            // independent evaluation of sum_j p_{1j}^k sigma_j^l - s_l(sigma_k)
            for (std::size_t k = 0; k < w; ++k)
                for (std::size_t l = 0; l < w; ++l) {
                    QuadExt lhs(0), rhs(0), power(1);
                    for (std::size_t j = 0; j < w; ++j) lhs += QuadExt(l1(k, j)) * pow(sigma[j], static_cast<long>(l));
                    for (long e = 0; e <= s[l].degree(); ++e, power *= sigma[k]) rhs += s[l][e] * power;
                    EXPECT_EQ(lhs, rhs) << q << "," << n << " k=" << k << " l=" << l;
                }
            auto rep = verify_q_sequence(l1, sigma, s, q);
            EXPECT_TRUE(rep) << rep.failure;
            EXPECT_EQ(rep.counts["identities_holding"], static_cast<std::int64_t>(w * w));
        }
    }
}

TEST(QSequence, OrderingsAgreeWithKrein) {
    auto& b = instance(5, 2);
    const auto ords = q_poly_orderings(krein(b.sd));
    std::set<std::vector<int>> from_formula;
    for (int sign : {1, -1}) from_formula.insert(ordering_from_leading_coefficients(b.sd, s_family(2, 5, sign)));
    EXPECT_EQ(from_formula, std::set<std::vector<int>>(ords.begin(), ords.end()));
}

TEST(Eigenmatrices, LineCase) {
    const QuadExt r = QuadExt::root(5);
    const auto cf = eigenmatrices_closed(1, 5);
    EXPECT_EQ(cf.p_tilde, (Matrix<QuadExt>{{1, 5}, {1, -1}}));
    EXPECT_EQ(cf.p_hat, (Matrix<QuadExt>{{1, r}, {1, -r}}));
    EXPECT_EQ(cf.p_full, (Matrix<QuadExt>{{1, 5, 5, 1}, {1, r, -r, -1}, {1, -1, -1, 1}, {1, -r, r, -1}}));
}

TEST(Eigenmatrices, Entries) {
    const auto cf = eigenmatrices_closed(2, 5);
    EXPECT_EQ(cf.p_tilde(0, 2), QuadExt(125));
    EXPECT_EQ(cf.p_hat(1, 1), QuadExt(0));
    for (long j = 0; j <= 2; ++j)
        EXPECT_EQ(cf.p_tilde(0, j), pow(QuadExt::root(5), j + j * j) * QuadExt(gauss_oracle(2, j, 5)));
}

TEST(Eigenmatrices, ResidualsVanish) {
    for (long q : {5, 9, 13, 25, 29})
        for (long n = 1; n <= 4; ++n)
            for (int sign : {1, -1}) {
                const auto cf = eigenmatrices_closed(n, q, sign);
                EXPECT_TRUE(verify_eigenvector_relations(cf)) << q << "," << n;
                EXPECT_TRUE(verify_p_full_shape(cf, n, q)) << q << "," << n;
            }
}

TEST(Eigenmatrices, MatchSpectralP) {
    for (auto [q, n] : std::vector<std::pair<int, int>>{{5, 1}, {9, 1}, {13, 1}, {5, 2}, {9, 2}})
        for (int sign : {1, -1}) {
            auto rep = crosscheck_p(instance(q, n).sd, eigenmatrices_closed(n, q, sign));
            EXPECT_TRUE(rep) << q << "," << n << ": " << rep.failure;
        }
}

TEST(Eigenmatrices, MismatchIsReported) {
    auto cf = eigenmatrices_closed(1, 5);
    cf.p_full(2, 3) = QuadExt(7);
    EXPECT_FALSE(crosscheck_p(instance(5, 1).sd, cf));
}

TEST(GaussIdentities, Recurrences) {
    const std::vector<Rational> qs{2, 3, 5, 7, 9, 13, Rational(1, 2), -2};
    EXPECT_TRUE(check_gauss_recurrences(qs, -6, 10));
    for (const auto& q : qs)
        for (long n = -6; n <= 10; ++n)
            for (long k = -6; k <= 10; ++k) {
                const GaussianContext c(q);
                ASSERT_EQ(gauss(n, k, c), gauss_oracle(n, k, q));
                EXPECT_EQ(gauss(n, k, c), pow(q, k) * gauss(n - 1, k, c) + gauss(n - 1, k - 1, c));
            }
}

TEST(GaussIdentities, ProductRuleAndSymmetry) {
    const std::vector<Rational> qs{2, 3, 5, 7, 9, 13, Rational(1, 2), -2};
    EXPECT_TRUE(check_gauss_product_rule(qs, -6, 10));
    EXPECT_TRUE(check_gauss_symmetry(qs, 10));
}

TEST(GaussIdentities, NegationWithBinomialShift) {
    // [-n, k] = (-1)^k q^{-nk - binom(k,2)} [n+k-1, k]
    const std::vector<Rational> qs{2, 3, 5, 7, 9, 13, Rational(1, 2), -2};
    EXPECT_TRUE(check_gauss_negation(qs, -6, 10, true));
    for (const auto& q : qs)
        for (long n = -6; n <= 10; ++n)
            for (long k = 0; k <= 10; ++k) {
                const Rational sign = k % 2 ? -1 : 1;
                EXPECT_EQ(gauss_oracle(-n, k, q), sign * pow(q, -n * k - k * (k - 1) / 2) * gauss_oracle(n + k - 1, k, q));
            }
}

TEST(GaussIdentities, NegationWithoutShiftFailsForPairs) {
    auto rep = check_gauss_negation({Rational(5)}, -1, 2, false);
    EXPECT_FALSE(rep);
    EXPECT_EQ(gauss(-1, 2, 5), Rational(1, 125));
}

TEST(GaussIdentities, GeneratingPolynomialShifts) { EXPECT_TRUE(check_e_poly_shifts({5, 9, 13, 25}, 8)); }
