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

#include "dpcover/double_cover.hpp"
#include "dpcover/matrix.hpp"

using namespace dpcover;

namespace {

struct Instance {
    DualPolarGraph graph;
    CoherenceTable table;
    CoverGraph cover;
    Instance(int q, int n) : graph(SymplecticSpace::over(q, n)), table(graph), cover(table) {}
};

std::vector<std::vector<long>> adjacency(const CoverGraph& c) {
    std::vector<std::vector<long>> a(c.size(), std::vector<long>(c.size(), 0));
    for (std::size_t u = 0; u < c.size(); ++u)
        for (std::size_t v = 0; v < c.size(); ++v) a[u][v] = c.adjacent(CoverGraph::vertex(u), CoverGraph::vertex(v));
    return a;
}

std::vector<std::vector<long>> multiply(const std::vector<std::vector<long>>& a, const std::vector<std::vector<long>>& b) {
    const std::size_t n = a.size();
    std::vector<std::vector<long>> c(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (a[i][k])
                for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

}  // namespace

TEST(CoverGraph, RelationIndexExamples) {
    Instance in(5, 2);
    const auto& s = in.graph.space();
    const auto x = in.graph.id_of({s.e(1), s.e(2)}), y = in.graph.id_of({s.f(1), s.e(2)});
    ASSERT_EQ(in.table.sigma(x, y), 1);
    EXPECT_EQ(in.cover.relation_index(SignedVertex{x, 1}, SignedVertex{x, 1}), 0);
    EXPECT_EQ(in.cover.relation_index(SignedVertex{x, 1}, SignedVertex{x, -1}), 5);
    EXPECT_EQ(in.cover.relation_index(SignedVertex{x, 1}, SignedVertex{y, -1}), 4);
    EXPECT_EQ(in.cover.relation_index(SignedVertex{x, 1}, SignedVertex{y, 1}), 1);
}

TEST(CoverGraph, Degrees) {
    for (auto [q, n, deg] : std::vector<std::tuple<int, int, std::size_t>>{{5, 1, 5}, {5, 2, 30}, {9, 1, 9}}) {
        Instance in(q, n);
        for (std::size_t u = 0; u < in.cover.size(); ++u) {
            auto nb = in.cover.neighbors(CoverGraph::vertex(u));
            EXPECT_EQ(nb.size(), deg);
            for (const auto& v : nb) EXPECT_NE(v.gen, CoverGraph::vertex(u).gen);
        }
    }
}

TEST(CoverGraph, IcosahedronSpectrum) {
    Instance in(5, 1);
    ASSERT_EQ(in.cover.size(), 12u);
    EXPECT_EQ(in.cover.diameter(), 3);
    const auto a = adjacency(in.cover);
    Matrix<Rational> A(12, 12);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 12; ++j) A(i, j) = a[i][j];
    // (x - 5)(x^2 - 5)^3 (x + 1)^5
    using P = Polynomial<Rational>;
    P expect{-5, 1};
    for (int i = 0; i < 3; ++i) expect = expect * P{-5, 0, 1};
    for (int i = 0; i < 5; ++i) expect = expect * P{1, 1};
    EXPECT_EQ(characteristic_polynomial(A), expect);
    // every vertex neighbourhood of the icosahedron induces a 5-cycle
    for (std::size_t u = 0; u < 12; ++u) {
        std::vector<std::size_t> nb;
        for (std::size_t v = 0; v < 12; ++v)
            if (a[u][v]) nb.push_back(v);
        for (auto v : nb) {
            int inside = 0;
            for (auto w : nb) inside += a[v][w];
            EXPECT_EQ(inside, 2);
        }
    }
}

TEST(CoverGraph, CoveringAndTriangles) {
    for (auto [q, n] : std::vector<std::pair<int, int>>{{5, 1}, {5, 2}, {9, 1}}) {
        Instance in(q, n);
        EXPECT_TRUE(verify_covering(in.cover));
        auto rep = verify_triangle_lifts(in.cover);
        ASSERT_TRUE(rep) << rep.failure;
        EXPECT_EQ(rep.counts["coherent_triangles"], rep.counts["incoherent_triangles"]);
    }
}

TEST(CoverGraph, DistancesAgreeWithRelations) {
    for (auto [q, n] : std::vector<std::pair<int, int>>{{5, 1}, {5, 2}, {9, 1}}) {
        Instance in(q, n);
        auto rep = verify_cover_distances(in.cover);
        ASSERT_TRUE(rep) << rep.failure;
        EXPECT_EQ(in.cover.diameter(), std::max(n + 1, 3));
    }
}

TEST(CoverGraph, LengthThreePathCounts) {
    Instance in(5, 2);
    const auto a = adjacency(in.cover);
    const auto a3 = multiply(multiply(a, a), a);
    std::set<long> antipodal, other;
    for (std::size_t u = 0; u < a.size(); ++u)
        for (std::size_t v = 0; v < a.size(); ++v) {
            const int d = in.cover.bfs_distance(CoverGraph::vertex(u), CoverGraph::vertex(v));
            if (d != 3) continue;
            ((u ^ 1) == v ? antipodal : other).insert(a3[u][v]);
            EXPECT_EQ(in.cover.antipodal_by_paths(CoverGraph::vertex(u), CoverGraph::vertex(v)), (u ^ 1) == v);
        }
    EXPECT_EQ(antipodal, std::set<long>{60});
    // Pairs over base distance 2 with mismatched sign. Each of the c_2 = 6
    // common base neighbours Y gives a1/2 + a2/2 = 2 + 12 continuations.
    EXPECT_EQ(other, std::set<long>{84});
    auto rep = verify_cover_distances(in.cover);
    EXPECT_EQ(rep.counts["paths3_antipodal"], 60);
    EXPECT_EQ(rep.counts["paths3_other"], 84);

    Instance ico(5, 1);
    EXPECT_EQ(ico.cover.count_walks3({0, 1}, {0, -1}), 10u);
}

TEST(CoverGraph, GeodesicLifts) {
    Instance in(5, 2);
    const auto& g = in.graph;
    std::size_t checked = 0;
    for (std::size_t x = 0; x < g.size(); ++x)
        for (auto y : g.neighbors(x))
            for (auto z : g.neighbors(y)) {
                if (g.distance(x, z) != 2) continue;
                const auto up = in.cover.lift_geodesic({x, y, z}, 1), down = in.cover.lift_geodesic({x, y, z}, -1);
                ASSERT_EQ(up.back().sign, in.table.sigma(x, z));
                for (std::size_t i = 0; i < up.size(); ++i) EXPECT_EQ(up[i].sign, -down[i].sign);
                ++checked;
            }
    EXPECT_EQ(checked, 156u * 30 * 25);
    auto edge = in.cover.lift_geodesic({0, g.neighbors(0)[0]}, 1);
    EXPECT_EQ(edge.back().sign, in.table.sigma(0, g.neighbors(0)[0]));
    // a triangle is not a geodesic
    const std::size_t y = g.neighbors(0)[0];
    std::size_t z = 0;
    for (auto w : g.neighbors(y))
        if (w != 0 && g.distance(0, w) == 1) z = w;
    EXPECT_THROW(in.cover.lift_geodesic({0, y, z}, 1), InvalidArgument);
}

TEST(CoverGraph, SymplecticMapsLiftToAutomorphisms) {
    Instance in(5, 2);
    for (const auto& g : sp_sample_elements(in.graph.space(), 5, 21)) {
        const auto perm = induced_permutation(in.graph, g);
        const auto f = switching_lift(in.table, perm);
        ASSERT_TRUE(f.has_value());
        auto rep = verify_cover_automorphism(in.cover, perm, *f);
        EXPECT_TRUE(rep) << rep.failure;
        EXPECT_EQ(rep.counts["edges_checked"], 312 * 30);
    }
    // a similarity with nonsquare multiplier flips odd triangles, so no sign function exists
    const auto perm = induced_permutation(in.graph, nonsquare_similarity(in.graph.space()));
    EXPECT_FALSE(switching_lift(in.table, perm).has_value());
}
