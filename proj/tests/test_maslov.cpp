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

#include "dpcover/maslov.hpp"

using namespace dpcover;

namespace {

// For n = 1, X = <x> and Y = <y> with x, y scaled so their first nonzero
// coordinate is 1; then sigma(X, Y) = chi(B(x, y)).
int sigma_n1_oracle(const SymplecticSpace& s, const Subspace& X, const Subspace& Y) {
    return s.field().chi(s.form(X.row(0), Y.row(0)));
}

}  // namespace

TEST(SigmaPair, LineExamples) {
    auto s = SymplecticSpace::over(5, 1);
    const auto& F = s.field();
    auto X = s.span({s.e(1)}), Y = s.span({s.f(1)});
    EXPECT_EQ(sigma_pair(s, X, Y), 1);
    EXPECT_EQ(sigma_pair(s, X, s.span({s.add(s.e(1), s.scale(F.from_int(2), s.f(1)))})), -1);
    EXPECT_THROW(sigma_pair(s, X, X), InvalidArgument);
}

TEST(SigmaPair, RejectsThreeModFour) {
    auto s = SymplecticSpace::over(7, 1);
    EXPECT_THROW(sigma_pair(s, s.span({s.e(1)}), s.span({s.f(1)})), InvalidArgument);
    DualPolarGraph g(SymplecticSpace::over(3, 1));
    EXPECT_THROW(CoherenceTable{g}, InvalidArgument);
}

TEST(SigmaPair, MatchesLineOracleExhaustively) {
    for (int q : {5, 9, 13}) {
        DualPolarGraph g(SymplecticSpace::over(q, 1));
        CoherenceTable t(g);
        for (std::size_t x = 0; x < g.size(); ++x)
            for (std::size_t y = 0; y < g.size(); ++y) {
                if (x == y) continue;
                EXPECT_EQ(t.sigma(x, y), sigma_n1_oracle(g.space(), g.generator(x), g.generator(y)));
                EXPECT_EQ(t.sigma(x, y), t.sigma(y, x));
            }
    }
}

TEST(SigmaPair, SymmetricOnPlanes) {
    for (int q : {5, 9}) {
        DualPolarGraph g(SymplecticSpace::over(q, 2));
        std::mt19937_64 rng(q);
        std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
        for (int t = 0; t < 1000; ++t) {
            const auto x = pick(rng), y = pick(rng);
            if (x == y) continue;
            EXPECT_EQ(sigma_pair(g.space(), g.generator(x), g.generator(y)),
                      sigma_pair(g.space(), g.generator(y), g.generator(x)));
        }
    }
}

TEST(SigmaTriple, Examples) {
    auto s2 = SymplecticSpace::over(5, 2);
    auto X = s2.span({s2.e(1), s2.e(2)}), Y = s2.span({s2.f(1), s2.e(2)}), Z = s2.span({s2.f(1), s2.f(2)});
    EXPECT_EQ(sigma_triple(s2, X, Y, Z), 1);

    auto s1 = SymplecticSpace::over(5, 1);
    const auto& F = s1.field();
    auto line = [&](long alpha) { return s1.span({s1.add(s1.e(1), s1.scale(F.from_int(alpha), s1.f(1)))}); };
    auto E = s1.span({s1.e(1)}), Fl = s1.span({s1.f(1)});
    for (long alpha = 1; alpha < 5; ++alpha)
        EXPECT_EQ(sigma_triple(s1, E, Fl, line(alpha)), F.chi(F.from_int(alpha))) << alpha;
    EXPECT_EQ(sigma_triple(s1, E, Fl, line(2)), -1);
    EXPECT_EQ(sigma_triple(s1, E, Fl, line(4)), 1);
}

TEST(TwoGraph, ExhaustiveOnLines) {
    DualPolarGraph g(SymplecticSpace::over(5, 1));
    CoherenceTable t(g);
    auto rep = verify_two_graph(t, 0, 1);
    ASSERT_TRUE(rep) << rep.failure;
    EXPECT_EQ(rep.counts["four_sets"], 15);
    EXPECT_EQ(rep.counts["triples"], 20);
    // independent census
    int coherent = 0;
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = a + 1; b < 6; ++b)
            for (std::size_t c = b + 1; c < 6; ++c) {
                const auto& s = g.space();
                const int v = sigma_n1_oracle(s, g.generator(a), g.generator(b)) *
                              sigma_n1_oracle(s, g.generator(b), g.generator(c)) *
                              sigma_n1_oracle(s, g.generator(a), g.generator(c));
                coherent += v == 1;
            }
    EXPECT_EQ(coherent, 10);
    EXPECT_EQ(rep.counts["coherent_triples"], coherent);
}

TEST(TwoGraph, SampledOnLargerInstances) {
    DualPolarGraph g52(SymplecticSpace::over(5, 2));
    CoherenceTable t52(g52);
    auto r = verify_two_graph(t52, 10000, 3);
    EXPECT_TRUE(r) << r.failure;
    DualPolarGraph g91(SymplecticSpace::over(9, 1));
    CoherenceTable t91(g91);
    r = verify_two_graph(t91, 10000, 4);
    EXPECT_TRUE(r) << r.failure;
}

TEST(Invariance, SymplecticElementsPreserveTriples) {
    DualPolarGraph g(SymplecticSpace::over(5, 2));
    CoherenceTable t(g);
    auto rep = verify_invariance(t, sp_sample_elements(g.space(), 20, 9), 500, 10);
    ASSERT_TRUE(rep) << rep.failure;
    EXPECT_EQ(rep.counts["sign_flips"], 0);
}

TEST(Invariance, NonsquareSimilarityFlipsOddTriangles) {
    auto s = SymplecticSpace::over(5, 2);
    const auto& F = s.field();
    const auto eta = F.first_nonsquare();
    auto X = s.span({s.e(1), s.e(2)}), Y = s.span({s.f(1), s.e(2)});
    auto Z = s.span({s.add(s.e(1), s.f(1)), s.e(2)}), Zp = s.span({s.add(s.e(1), s.scale(eta, s.f(1))), s.e(2)});
    EXPECT_EQ(sigma_triple(s, X, Y, Z), 1);
    EXPECT_EQ(sigma_triple(s, X, Y, Zp), -1);
    auto g = nonsquare_similarity(s);
    EXPECT_EQ(image(s, X, g), X);
    EXPECT_EQ(image(s, Y, g), Y);
    EXPECT_EQ(image(s, Z, g), Zp);

    DualPolarGraph graph(s);
    CoherenceTable t(graph);
    auto rep = verify_invariance(t, {g}, 500, 5);
    ASSERT_TRUE(rep) << rep.failure;
    EXPECT_GT(rep.counts["sign_flips"], 0);
}

TEST(Coherence, HalfSplits) {
    DualPolarGraph g52(SymplecticSpace::over(5, 2));
    CoherenceTable t52(g52);
    auto rep = verify_half_coherent(t52);
    ASSERT_TRUE(rep) << rep.failure;
    EXPECT_EQ(rep.counts["split_1"], 2);
    EXPECT_EQ(rep.counts["split_2"], 12);
    auto x = g52.id_of({g52.space().e(1), g52.space().e(2)}), y = g52.id_of({g52.space().f(1), g52.space().e(2)});
    auto split = coherent_split_count(t52, x, y);
    EXPECT_EQ(split.coherent, 2u);
    EXPECT_EQ(split.incoherent, 2u);

    DualPolarGraph g91(SymplecticSpace::over(9, 1));
    CoherenceTable t91(g91);
    auto s91 = coherent_split_count(t91, 0, 1);
    EXPECT_EQ(s91.coherent, 4u);
    EXPECT_EQ(s91.incoherent, 4u);
    EXPECT_TRUE(verify_half_coherent(t91));
}

TEST(Coherence, GeodesicTriples) {
    DualPolarGraph g(SymplecticSpace::over(5, 2));
    CoherenceTable t(g);
    auto rep = verify_geodesic_coherence(t);
    ASSERT_TRUE(rep) << rep.failure;
    // 156 choices of X, 30 neighbours Y, then b_1 = 25 vertices Z adjacent to Y at distance 2 from X
    EXPECT_EQ(rep.counts["geodesic_triples"], 156 * 30 * 25);
}

TEST(Coherence, GaugeInvariance) {
    for (int q : {5, 9}) {
        DualPolarGraph g(SymplecticSpace::over(q, 2));
        CoherenceTable t(g);
        auto rep = verify_gauge_invariance(t, 1000, 7);
        EXPECT_TRUE(rep) << rep.failure;
    }
}
