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

#ifndef DPCOVER_MASLOV_HPP
#define DPCOVER_MASLOV_HPP

#include <atomic>
#include <cstdint>
#include <mutex>
#include <random>
#include <unordered_map>
#include <vector>

#include "symplectic.hpp"

namespace dpcover {

inline void require_q_one_mod_four(const FieldSpec& F) {
    if (F.q() % 4 != 1) throw InvalidArgument("q = " + std::to_string(F.q()) + " is not 1 mod 4");
}

/// delta_X of the ordered basis: determinant of its coordinates w.r.t. X's
/// canonical RREF basis.
inline FieldElement delta(const FieldSpec& F, const Subspace& x, const std::vector<Vec>& basis) {
    const std::size_t n = x.dim();
    std::vector<FieldElement> coords;
    coords.reserve(n * n);
    for (const auto& v : basis) {
        auto c = x.coordinates(v);
        coords.insert(coords.end(), c.begin(), c.end());
    }
    return determinant(F, std::move(coords), n);
}

/*
 * sigma from explicit ordered bases x_1..x_n of X and y_1..y_n of Y with
 * x_i = y_i for i > k, k = d(X, Y):
 *   chi(delta_X(x) * delta_Y(y) * det[B(x_i, y_j)]_{i,j <= k}).
 */
inline int sigma_from_bases(const SymplecticSpace& space, const Subspace& x, const Subspace& y,
                            const std::vector<Vec>& xb, const std::vector<Vec>& yb, std::size_t k) {
    const FieldSpec& F = space.field();
    std::vector<FieldElement> gram(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) gram[i * k + j] = space.form(xb[i], yb[j]);
    const FieldElement value =
        F.mul(F.mul(delta(F, x, xb), delta(F, y, yb)), determinant(F, std::move(gram), k));
    return F.chi(value);
}

namespace detail {

// Appends to `basis` the vectors of `candidates` that are independent of it,
// in order, until it spans a space of dimension `target`; returns the
// appended vectors.
inline std::vector<Vec> greedy_extend(const FieldSpec& F, const std::vector<Vec>& start,
                                      const std::vector<Vec>& candidates, std::size_t target) {
    std::vector<Vec> current = start;
    std::vector<Vec> added;
    const std::size_t m = candidates.empty() ? 0 : candidates.front().size();
    for (const auto& v : candidates) {
        if (current.size() == target) break;
        current.push_back(v);
        std::vector<FieldElement> flat;
        for (const auto& w : current) flat.insert(flat.end(), w.begin(), w.end());
        if (rank_of(F, std::move(flat), current.size(), m) == current.size()) added.push_back(v);
        else current.pop_back();
    }
    return added;
}

}  // namespace detail

/// The Maslov sign sigma(X, Y) for distinct generators X, Y.
inline int sigma_pair(const SymplecticSpace& space, const Subspace& x, const Subspace& y) {
    const FieldSpec& F = space.field();
    require_q_one_mod_four(F);
    if (!space.is_generator(x) || !space.is_generator(y)) throw InvalidArgument("sigma_pair: not a generator");
    if (x == y) throw InvalidArgument("sigma_pair: X = Y");
    const Subspace meet = intersect(F, x, y);
    const std::size_t n = x.dim(), k = n - meet.dim();
    const auto tail = meet.basis();
    std::vector<Vec> xb = detail::greedy_extend(F, tail, x.basis(), n);
    std::vector<Vec> yb = detail::greedy_extend(F, tail, y.basis(), n);
    xb.insert(xb.end(), tail.begin(), tail.end());
    yb.insert(yb.end(), tail.begin(), tail.end());
    return sigma_from_bases(space, x, y, xb, yb, k);
}

/// sigma(X, Y) recomputed from randomly chosen bases (a random basis of
/// X cap Y and random completions inside X and Y).
inline int sigma_pair_random_bases(const SymplecticSpace& space, const Subspace& x, const Subspace& y,
                                   std::mt19937_64& rng) {
    const FieldSpec& F = space.field();
    require_q_one_mod_four(F);
    if (x == y) throw InvalidArgument("sigma_pair: X = Y");
    std::uniform_int_distribution<std::uint32_t> coin(0, F.q() - 1);
    const std::size_t m = space.dim();
    auto random_combination = [&](const Subspace& s) {
        Vec v(m, F.zero());
        for (std::size_t i = 0; i < s.dim(); ++i) {
            const FieldElement c{coin(rng)};
            for (std::size_t j = 0; j < m; ++j) v[j] = F.add(v[j], F.mul(c, s.matrix()[i * m + j]));
        }
        return v;
    };
    auto random_basis_completion = [&](const Subspace& s, const std::vector<Vec>& start) {
        std::vector<Vec> added;
        while (start.size() + added.size() < s.dim()) {
            std::vector<Vec> current = start;
            current.insert(current.end(), added.begin(), added.end());
            auto more = detail::greedy_extend(F, current, {random_combination(s)}, s.dim());
            added.insert(added.end(), more.begin(), more.end());
        }
        return added;
    };
    const Subspace meet = intersect(F, x, y);
    const std::size_t n = x.dim(), k = n - meet.dim();
    const std::vector<Vec> tail = meet.dim() ? random_basis_completion(meet, {}) : std::vector<Vec>{};
    std::vector<Vec> xb = random_basis_completion(x, tail);
    std::vector<Vec> yb = random_basis_completion(y, tail);
    xb.insert(xb.end(), tail.begin(), tail.end());
    yb.insert(yb.end(), tail.begin(), tail.end());
    return sigma_from_bases(space, x, y, xb, yb, k);
}

/*
 * Memoized sigma over the generators of a dual polar graph, keyed by
 * unordered id pairs. Dense (one byte per pair) for small graphs, a locked
 * hash map otherwise. Filling is pure, so concurrent duplicate work is benign.
 */
class CoherenceTable {
public:
    explicit CoherenceTable(const DualPolarGraph& graph) : graph_(&graph) {
        require_q_one_mod_four(graph.field());
        if (graph.size() <= DualPolarGraph::kDenseLimit)
            dense_ = std::vector<std::atomic<std::int8_t>>(graph.size() * graph.size());
    }

    const DualPolarGraph& graph() const noexcept { return *graph_; }

    int sigma(std::size_t x, std::size_t y) const {
        if (x == y) throw InvalidArgument("sigma: X = Y");
        if (x > y) std::swap(x, y);
        if (!dense_.empty()) {
            auto& slot = dense_[x * graph_->size() + y];
            std::int8_t v = slot.load(std::memory_order_relaxed);
            if (v == 0) {
                v = static_cast<std::int8_t>(compute(x, y));
                slot.store(v, std::memory_order_relaxed);
            }
            return v;
        }
        const std::uint64_t key = static_cast<std::uint64_t>(x) * graph_->size() + y;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = sparse_.find(key);
            if (it != sparse_.end()) return it->second;
        }
        const int v = compute(x, y);
        std::lock_guard<std::mutex> lock(mutex_);
        sparse_.emplace(key, static_cast<std::int8_t>(v));
        return v;
    }

    /// sigma with the convention sigma(X, X) = +1 used by the cover relations.
    int sigma_or_one(std::size_t x, std::size_t y) const { return x == y ? 1 : sigma(x, y); }

    int triple(std::size_t x, std::size_t y, std::size_t z) const {
        if (x == y || y == z || x == z) throw InvalidArgument("sigma_triple: arguments not distinct");
        return sigma(x, y) * sigma(y, z) * sigma(z, x);
    }

    /// Fills every pair; afterwards concurrent reads never write.
    void warm() const {
        for (std::size_t x = 0; x < graph_->size(); ++x)
            for (std::size_t y = x + 1; y < graph_->size(); ++y) sigma(x, y);
    }

private:
    int compute(std::size_t x, std::size_t y) const {
        return sigma_pair(graph_->space(), graph_->generator(x), graph_->generator(y));
    }

    const DualPolarGraph* graph_;
    mutable std::vector<std::atomic<std::int8_t>> dense_;
    mutable std::unordered_map<std::uint64_t, std::int8_t> sparse_;
    mutable std::mutex mutex_;
};

/// sigma(X, Y, Z) = sigma(X, Y) sigma(Y, Z) sigma(Z, X).
inline int sigma_triple(const SymplecticSpace& space, const Subspace& x, const Subspace& y, const Subspace& z) {
    if (x == y || y == z || x == z) throw InvalidArgument("sigma_triple: arguments not distinct");
    return sigma_pair(space, x, y) * sigma_pair(space, y, z) * sigma_pair(space, z, x);
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace detail {

inline std::vector<std::size_t> distinct_sample(std::size_t count, std::size_t universe, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, universe - 1);
    std::vector<std::size_t> out;
    while (out.size() < count) {
        const std::size_t v = pick(rng);
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    return out;
}

}  // namespace detail

/*
 * Every 4-set of generators contains an even number of coherent triples.
 * Exhaustive when there are at most `exhaustive_limit` 4-sets, otherwise
 * `trials` seeded samples. Census counts: four_sets, coherent_triples,
 * triples (the last two only in exhaustive mode).
 */
inline Report verify_two_graph(const CoherenceTable& table, std::size_t trials, std::uint64_t seed,
                               std::uint64_t exhaustive_limit = 100000) {
    Report rep;
    const std::size_t g = table.graph().size();
    auto check = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
        const int coherent = (table.triple(a, b, c) == 1) + (table.triple(a, b, d) == 1) +
                             (table.triple(a, c, d) == 1) + (table.triple(b, c, d) == 1);
        if (coherent % 2 != 0) {
            rep.fail("4-set {" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," +
                     std::to_string(d) + "} has " + std::to_string(coherent) + " coherent triples");
            return false;
        }
        return true;
    };
    if (g < 4) return rep;
    if (binomial(g, 4) <= exhaustive_limit) {
        std::int64_t sets = 0, coherent = 0, triples = 0;
        for (std::size_t a = 0; a < g; ++a)
            for (std::size_t b = a + 1; b < g; ++b)
                for (std::size_t c = b + 1; c < g; ++c) {
                    ++triples;
                    coherent += table.triple(a, b, c) == 1;
                    for (std::size_t d = c + 1; d < g; ++d) {
                        ++sets;
                        if (!check(a, b, c, d)) return rep;
                    }
                }
        rep.counts["four_sets"] = sets;
        rep.counts["triples"] = triples;
        rep.counts["coherent_triples"] = coherent;
        return rep;
    }
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        auto s = detail::distinct_sample(4, g, rng);
        if (!check(s[0], s[1], s[2], s[3])) return rep;
    }
    rep.counts["four_sets"] = static_cast<std::int64_t>(trials);
    return rep;
}

/*
 * sigma(X^g, Y^g, Z^g) = chi(mu_g)^{d(X,Y)+d(Y,Z)+d(Z,X)} sigma(X, Y, Z) on
 * `trials` seeded random triples for each similarity g.
 */
inline Report verify_invariance(const CoherenceTable& table, const std::vector<Isometry>& elements,
                                std::size_t trials, std::uint64_t seed) {
    Report rep;
    const DualPolarGraph& graph = table.graph();
    const FieldSpec& F = graph.field();
    std::mt19937_64 rng(seed);
    std::int64_t checked = 0, flips = 0;
    for (std::size_t e = 0; e < elements.size(); ++e) {
        const Isometry& g = elements[e];
        if (!verify_similarity(graph.space(), g)) {
            rep.fail("element " + std::to_string(e) + " is not a similarity");
            return rep;
        }
        const int chi_mu = F.chi(g.multiplier);
        for (std::size_t t = 0; t < trials; ++t) {
            auto s = detail::distinct_sample(3, graph.size(), rng);
            const std::size_t gx = graph.id_of(image(graph.space(), graph.generator(s[0]), g));
            const std::size_t gy = graph.id_of(image(graph.space(), graph.generator(s[1]), g));
            const std::size_t gz = graph.id_of(image(graph.space(), graph.generator(s[2]), g));
            const int dsum = graph.distance(s[0], s[1]) + graph.distance(s[1], s[2]) + graph.distance(s[2], s[0]);
            const int factor = (dsum % 2 == 0) ? 1 : chi_mu;
            if (table.triple(gx, gy, gz) != factor * table.triple(s[0], s[1], s[2])) {
                rep.fail("element " + std::to_string(e) + " violates the transformation law on triple (" +
                         std::to_string(s[0]) + "," + std::to_string(s[1]) + "," + std::to_string(s[2]) + ")");
                return rep;
            }
            flips += factor == -1;
            ++checked;
        }
    }
    rep.counts["triples_checked"] = checked;
    rep.counts["sign_flips"] = flips;
    return rep;
}

struct CoherentSplit {
    std::uint64_t coherent = 0;
    std::uint64_t incoherent = 0;
};

/// Over Z with d(X, Z) = d(X, Y) and d(Y, Z) = 1, how many triples (X, Y, Z) are coherent.
inline CoherentSplit coherent_split_count(const CoherenceTable& table, std::size_t x, std::size_t y) {
    if (x == y) throw InvalidArgument("coherent_split_count: X = Y");
    const DualPolarGraph& g = table.graph();
    const int k = g.distance(x, y);
    CoherentSplit split;
    for (auto z : g.neighbors(y)) {
        if (z == x || g.distance(x, z) != k) continue;
        if (table.triple(x, y, z) == 1) ++split.coherent;
        else ++split.incoherent;
    }
    return split;
}

/// Every geodesic triple (d(X,Y) + d(Y,Z) = d(X,Z)) is coherent; exhaustive.
inline Report verify_geodesic_coherence(const CoherenceTable& table) {
    Report rep;
    const DualPolarGraph& g = table.graph();
    std::int64_t count = 0;
    for (std::size_t x = 0; x < g.size(); ++x)
        for (std::size_t z = 0; z < g.size(); ++z) {
            const int dxz = g.distance(x, z);
            if (dxz < 2) continue;
            for (std::size_t y = 0; y < g.size(); ++y) {
                if (y == x || y == z || g.distance(x, y) + g.distance(y, z) != dxz) continue;
                ++count;
                if (table.triple(x, y, z) != 1) {
                    rep.fail("geodesic triple (" + std::to_string(x) + "," + std::to_string(y) + "," +
                             std::to_string(z) + ") is not coherent");
                    return rep;
                }
            }
        }
    rep.counts["geodesic_triples"] = count;
    return rep;
}

/// Every ordered pair at distance k >= 1 splits as ((q^k-1)/2, (q^k-1)/2); exhaustive.
inline Report verify_half_coherent(const CoherenceTable& table) {
    Report rep;
    const DualPolarGraph& g = table.graph();
    const std::uint64_t q = g.field().q();
    for (std::size_t x = 0; x < g.size(); ++x)
        for (std::size_t y = 0; y < g.size(); ++y) {
            if (x == y) continue;
            const int k = g.distance(x, y);
            std::uint64_t half = 1;
            for (int i = 0; i < k; ++i) half *= q;
            half = (half - 1) / 2;
            auto s = coherent_split_count(table, x, y);
            if (s.coherent != half || s.incoherent != half) {
                rep.fail("pair (" + std::to_string(x) + "," + std::to_string(y) + ") splits as (" +
                         std::to_string(s.coherent) + "," + std::to_string(s.incoherent) + ")");
                return rep;
            }
            rep.counts["split_" + std::to_string(k)] = static_cast<std::int64_t>(half);
        }
    return rep;
}

/// Same sigma from randomized basis choices on `trials` random pairs.
inline Report verify_gauge_invariance(const CoherenceTable& table, std::size_t trials, std::uint64_t seed) {
    Report rep;
    const DualPolarGraph& g = table.graph();
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        auto s = detail::distinct_sample(2, g.size(), rng);
        const int v = sigma_pair_random_bases(g.space(), g.generator(s[0]), g.generator(s[1]), rng);
        if (v != table.sigma(s[0], s[1])) {
            rep.fail("pair (" + std::to_string(s[0]) + "," + std::to_string(s[1]) + ") changes sign under a basis change");
            return rep;
        }
    }
    rep.counts["pairs_checked"] = static_cast<std::int64_t>(trials);
    return rep;
}

}  // namespace dpcover

#endif
