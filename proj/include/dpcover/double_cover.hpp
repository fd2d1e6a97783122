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

#ifndef DPCOVER_DOUBLE_COVER_HPP
#define DPCOVER_DOUBLE_COVER_HPP

#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "maslov.hpp"

namespace dpcover {

struct SignedVertex {
    std::size_t gen = 0;
    int sign = 1;  // +1 or -1

    friend bool operator==(const SignedVertex&, const SignedVertex&) = default;
};

/*
 * The cover on generators x {+1, -1}: (X, e) ~ (Y, e') iff d(X, Y) = 1 and
 * e e' = sigma(X, Y). Vertex id is 2 * gen + (sign < 0), so fibres are
 * contiguous and the antipode of id v is v ^ 1.
 */
class CoverGraph {
public:
    explicit CoverGraph(const CoherenceTable& table) : table_(&table) {}

    const CoherenceTable& table() const noexcept { return *table_; }
    const DualPolarGraph& base() const noexcept { return table_->graph(); }
    int n() const noexcept { return base().n(); }
    std::size_t size() const noexcept { return 2 * base().size(); }

    static std::size_t id(const SignedVertex& v) { return 2 * v.gen + (v.sign < 0 ? 1 : 0); }
    static SignedVertex vertex(std::size_t id) { return {id / 2, (id & 1) ? -1 : 1}; }

    std::vector<SignedVertex> neighbors(const SignedVertex& u) const {
        std::vector<SignedVertex> out;
        for (auto y : base().neighbors(u.gen)) out.push_back({y, u.sign * table_->sigma(u.gen, y)});
        return out;
    }
    std::vector<std::size_t> neighbor_ids(std::size_t u) const {
        std::vector<std::size_t> out;
        for (const auto& v : neighbors(vertex(u))) out.push_back(id(v));
        return out;
    }

    bool adjacent(const SignedVertex& u, const SignedVertex& v) const {
        return u.gen != v.gen && base().distance(u.gen, v.gen) == 1 && u.sign * v.sign == table_->sigma(u.gen, v.gen);
    }

    /// k when d(X, Y) = k and e e' = sigma(X, Y) (sigma(X, X) = +1), else 2n + 1 - k.
    int relation_index(const SignedVertex& u, const SignedVertex& v) const {
        const int k = base().distance(u.gen, v.gen);
        return u.sign * v.sign == table_->sigma_or_one(u.gen, v.gen) ? k : 2 * n() + 1 - k;
    }
    int relation_index(std::size_t u, std::size_t v) const { return relation_index(vertex(u), vertex(v)); }

    /// Graph distances from u to every vertex id (-1 when unreachable).
    std::vector<int> bfs_distances(const SignedVertex& u) const {
        std::vector<int> dist(size(), -1);
        std::deque<std::size_t> queue{id(u)};
        dist[id(u)] = 0;
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            for (auto w : neighbor_ids(v))
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
        }
        return dist;
    }
    int bfs_distance(const SignedVertex& u, const SignedVertex& v) const { return bfs_distances(u)[id(v)]; }

    int diameter() const {
        int diam = 0;
        for (std::size_t u = 0; u < size(); ++u)
            for (int d : bfs_distances(vertex(u))) {
                if (d < 0) return -1;
                diam = std::max(diam, d);
            }
        return diam;
    }

    /// Walks u = w0 ~ w1 ~ w2 ~ w3 = v. Between vertices at distance 3 these
    /// are exactly the paths of length 3.
    std::uint64_t count_walks3(const SignedVertex& u, const SignedVertex& v) const {
        std::uint64_t count = 0;
        const auto nv = neighbors(v);
        for (const auto& w : neighbors(u))
            for (const auto& z : nv)
                if (adjacent(w, z)) ++count;
        return count;
    }

    /// Distance 3 joined by exactly q(q^n - 1)/2 paths of length 3.
    bool antipodal_by_paths(const SignedVertex& u, const SignedVertex& v) const {
        if (bfs_distance(u, v) != 3) return false;
        std::uint64_t qn = 1;
        for (int i = 0; i < n(); ++i) qn *= base().field().q();
        return count_walks3(u, v) == base().field().q() * (qn - 1) / 2;
    }

    /// The lift of a geodesic of the base graph starting at (path[0], start_sign).
    std::vector<SignedVertex> lift_geodesic(const std::vector<std::size_t>& path, int start_sign) const {
        if (start_sign != 1 && start_sign != -1) throw InvalidArgument("start sign must be +1 or -1");
        for (std::size_t i = 0; i < path.size(); ++i)
            for (std::size_t j = i + 1; j < path.size(); ++j)
                if (base().distance(path[i], path[j]) != static_cast<int>(j - i))
                    throw InvalidArgument("lift_geodesic: path is not a geodesic");
        std::vector<SignedVertex> lift;
        if (path.empty()) return lift;
        lift.push_back({path[0], start_sign});
        for (std::size_t i = 1; i < path.size(); ++i)
            lift.push_back({path[i], lift.back().sign * table_->sigma(path[i - 1], path[i])});
        return lift;
    }

private:
    const CoherenceTable* table_;
};

/// Each neighbour of X lifts to exactly one neighbour of (X, e); adjacency symmetric.
inline Report verify_covering(const CoverGraph& c) {
    Report rep;
    const DualPolarGraph& g = c.base();
    for (std::size_t x = 0; x < g.size(); ++x)
        for (int e : {1, -1}) {
            const SignedVertex u{x, e};
            for (auto y : g.neighbors(x)) {
                const int lifts = c.adjacent(u, {y, 1}) + c.adjacent(u, {y, -1});
                if (lifts != 1) {
                    rep.fail("neighbour " + std::to_string(y) + " of " + std::to_string(x) + " lifts " +
                             std::to_string(lifts) + " times");
                    return rep;
                }
                for (int f : {1, -1})
                    if (c.adjacent(u, {y, f}) != c.adjacent({y, f}, u)) {
                        rep.fail("adjacency not symmetric");
                        return rep;
                    }
            }
            if (c.adjacent(u, {x, -e})) rep.fail("antipode adjacent");
        }
    return rep;
}

/// Coherent triangles lift to two triangles, incoherent ones to a 6-cycle.
inline Report verify_triangle_lifts(const CoverGraph& c) {
    Report rep;
    const DualPolarGraph& g = c.base();
    std::int64_t coherent = 0, incoherent = 0;
    for (std::size_t x = 0; x < g.size(); ++x) {
        const auto nx = g.neighbors(x);
        for (auto y : nx) {
            if (y <= x) continue;
            for (auto z : nx) {
                if (z <= y || g.distance(y, z) != 1) continue;
                // components of the 6-vertex preimage, by walking from (x,+)
                std::vector<SignedVertex> lifted;
                for (auto gen : {x, static_cast<std::size_t>(y), static_cast<std::size_t>(z)})
                    for (int e : {1, -1}) lifted.push_back({gen, e});
                std::vector<bool> seen(6, false);
                std::deque<int> queue{0};
                seen[0] = true;
                int reached = 1, edges = 0;
                for (int a = 0; a < 6; ++a)
                    for (int b = a + 1; b < 6; ++b) edges += c.adjacent(lifted[a], lifted[b]);
                while (!queue.empty()) {
                    const int a = queue.front();
                    queue.pop_front();
                    for (int b = 0; b < 6; ++b)
                        if (!seen[b] && c.adjacent(lifted[a], lifted[b])) {
                            seen[b] = true;
                            ++reached;
                            queue.push_back(b);
                        }
                }
                const bool is_coherent = c.table().triple(x, y, z) == 1;
                const bool ok = edges == 6 && (is_coherent ? reached == 3 : reached == 6);
                if (!ok) {
                    rep.fail("triangle (" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) +
                             ") lifts wrongly");
                    return rep;
                }
                (is_coherent ? coherent : incoherent) += 1;
            }
        }
    }
    rep.counts["coherent_triangles"] = coherent;
    rep.counts["incoherent_triangles"] = incoherent;
    return rep;
}

/*
 * Exhaustive: BFS distance equals the relation-derived distance
 * (relation k <= n: k; relation 2n+1: 3; relation 2n+1-k, k >= 1: k+1), antipodal_by_paths holds exactly
 * for antipodes, and the length-3 path counts between vertices at distance 3
 * are recorded in counts ("paths3_antipodal", "paths3_other").
 */
inline Report verify_cover_distances(const CoverGraph& c) {
    Report rep;
    const int n = c.n();
    std::uint64_t qn = 1;
    for (int i = 0; i < n; ++i) qn *= c.base().field().q();
    const std::uint64_t antipodal_paths = c.base().field().q() * (qn - 1) / 2;
    for (std::size_t u = 0; u < c.size(); ++u) {
        const SignedVertex su = CoverGraph::vertex(u);
        const auto dist = c.bfs_distances(su);
        for (std::size_t v = 0; v < c.size(); ++v) {
            const SignedVertex sv = CoverGraph::vertex(v);
            const int rel = c.relation_index(su, sv);
            const int expected = rel <= n ? rel : rel == 2 * n + 1 ? 3 : (2 * n + 1 - rel) + 1;
            if (dist[v] != expected) {
                rep.fail("pair (" + std::to_string(u) + "," + std::to_string(v) + ") at distance " +
                         std::to_string(dist[v]) + " but relation " + std::to_string(rel));
                return rep;
            }
            const bool antipode = (u ^ 1) == v;
            if (dist[v] == 3) {
                const std::uint64_t paths = c.count_walks3(su, sv);
                const char* key = antipode ? "paths3_antipodal" : "paths3_other";
                auto it = rep.counts.find(key);
                if (it == rep.counts.end()) rep.counts[key] = static_cast<std::int64_t>(paths);
                else if (it->second != static_cast<std::int64_t>(paths)) {
                    rep.fail(std::string(key) + " not constant");
                    return rep;
                }
                if ((paths == antipodal_paths) != antipode) {
                    rep.fail("path count does not single out the antipode of " + std::to_string(u));
                    return rep;
                }
            } else if (antipode) {
                rep.fail("antipode of " + std::to_string(u) + " at distance " + std::to_string(dist[v]));
                return rep;
            }
        }
    }
    return rep;
}

/*
 * For a permutation g of the generators, the sign function f with f(0) = 1
 * and sigma(gX, gY) = f(X) f(Y) sigma(X, Y) for all X != Y, if it exists.
 * Then (X, e) -> (gX, f(X) e) is an automorphism of the cover.
 */
inline std::optional<std::vector<int>> switching_lift(const CoherenceTable& t, const std::vector<std::uint32_t>& perm) {
    const std::size_t g = t.graph().size();
    if (perm.size() != g) throw InvalidArgument("permutation size differs from the generator count");
    std::vector<int> f(g, 1);
    for (std::size_t x = 1; x < g; ++x) f[x] = t.sigma(perm[0], perm[x]) * t.sigma(0, x);
    for (std::size_t x = 0; x < g; ++x)
        for (std::size_t y = x + 1; y < g; ++y)
            if (t.sigma(perm[x], perm[y]) != f[x] * f[y] * t.sigma(x, y)) return std::nullopt;
    return f;
}

/// (X, e) -> (perm X, f(X) e) maps every edge of the cover to an edge.
inline Report verify_cover_automorphism(const CoverGraph& c, const std::vector<std::uint32_t>& perm,
                                        const std::vector<int>& f) {
    Report rep;
    std::int64_t edges = 0;
    for (std::size_t u = 0; u < c.size(); ++u) {
        const SignedVertex su = CoverGraph::vertex(u);
        const SignedVertex iu{perm[su.gen], f[su.gen] * su.sign};
        for (const auto& v : c.neighbors(su)) {
            if (!c.adjacent(iu, {perm[v.gen], f[v.gen] * v.sign})) {
                rep.fail("edge at vertex " + std::to_string(u) + " is not preserved");
                return rep;
            }
            ++edges;
        }
    }
    rep.counts["edges_checked"] = edges;
    return rep;
}

}  // namespace dpcover

#endif
