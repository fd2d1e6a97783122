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

#ifndef DPCOVER_SYMPLECTIC_HPP
#define DPCOVER_SYMPLECTIC_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "finite_field.hpp"
#include "gaussian.hpp"
#include "report.hpp"

namespace dpcover {

using Vec = std::vector<FieldElement>;

/// Row reduces the rows x cols matrix `m` (row-major) to RREF in place and
/// returns the pivot columns. Zero rows end up at the bottom.
inline std::vector<std::size_t> reduce_rows(const FieldSpec& F, std::vector<FieldElement>& m, std::size_t rows,
                                            std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p * cols + c].code == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m[p * cols + j], m[r * cols + j]);
        const FieldElement inv = F.inv(m[r * cols + c]);
        for (std::size_t j = c; j < cols; ++j) m[r * cols + j] = F.mul(m[r * cols + j], inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const FieldElement f = m[i * cols + c];
            if (f.code == 0) continue;
            const FieldElement nf = F.neg(f);
            for (std::size_t j = c; j < cols; ++j)
                m[i * cols + j] = F.add(m[i * cols + j], F.mul(nf, m[r * cols + j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank_of(const FieldSpec& F, std::vector<FieldElement> m, std::size_t rows, std::size_t cols) {
    return reduce_rows(F, m, rows, cols).size();
}

/// Determinant of an n x n matrix over F_q.
inline FieldElement determinant(const FieldSpec& F, std::vector<FieldElement> m, std::size_t n) {
    FieldElement det = F.one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p * n + c].code == 0) ++p;
        if (p == n) return F.zero();
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m[p * n + j], m[c * n + j]);
            det = F.neg(det);
        }
        const FieldElement piv = m[c * n + c];
        det = F.mul(det, piv);
        const FieldElement inv = F.inv(piv);
        for (std::size_t i = c + 1; i < n; ++i) {
            const FieldElement f = F.mul(m[i * n + c], inv);
            if (f.code == 0) continue;
            const FieldElement nf = F.neg(f);
            for (std::size_t j = c; j < n; ++j) m[i * n + j] = F.add(m[i * n + j], F.mul(nf, m[c * n + j]));
        }
    }
    return det;
}

// A subspace of F_q^ambient held as its canonical RREF basis, so equal
// subspaces have identical matrices.
class Subspace {
public:
    Subspace() = default;

    /// Row space of the given vectors (dependent or zero vectors are fine).
    static Subspace span(const FieldSpec& F, const std::vector<Vec>& vectors, std::size_t ambient) {
        std::vector<FieldElement> m;
        m.reserve(vectors.size() * ambient);
        for (const auto& v : vectors) {
            if (v.size() != ambient) throw InvalidArgument("vector length != ambient dimension");
            m.insert(m.end(), v.begin(), v.end());
        }
        return from_matrix(F, std::move(m), vectors.size(), ambient);
    }

    static Subspace from_matrix(const FieldSpec& F, std::vector<FieldElement> m, std::size_t rows,
                                std::size_t ambient) {
        Subspace s;
        s.ambient_ = ambient;
        s.pivots_ = reduce_rows(F, m, rows, ambient);
        s.dim_ = s.pivots_.size();
        m.resize(s.dim_ * ambient);
        s.rows_ = std::move(m);
        return s;
    }

    /// Already-reduced rows, e.g. produced by the enumerator.
    static Subspace from_rref(std::vector<FieldElement> rows, std::vector<std::size_t> pivots,
                              std::size_t ambient) {
        Subspace s;
        s.ambient_ = ambient;
        s.dim_ = pivots.size();
        s.rows_ = std::move(rows);
        s.pivots_ = std::move(pivots);
        return s;
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t ambient() const noexcept { return ambient_; }
    const std::vector<FieldElement>& matrix() const noexcept { return rows_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    Vec row(std::size_t i) const {
        return Vec(rows_.begin() + i * ambient_, rows_.begin() + (i + 1) * ambient_);
    }
    std::vector<Vec> basis() const {
        std::vector<Vec> b;
        for (std::size_t i = 0; i < dim_; ++i) b.push_back(row(i));
        return b;
    }

    /// Coordinates of v (assumed to lie in the subspace) w.r.t. the RREF rows:
    /// the entries of v at the pivot columns.
    Vec coordinates(const Vec& v) const {
        Vec c(dim_);
        for (std::size_t i = 0; i < dim_; ++i) c[i] = v[pivots_[i]];
        return c;
    }

    bool contains(const FieldSpec& F, const Vec& v) const {
        // v - sum c_i row_i must vanish
        Vec rest = v;
        for (std::size_t i = 0; i < dim_; ++i) {
            const FieldElement c = F.neg(v[pivots_[i]]);
            if (c.code == 0) continue;
            for (std::size_t j = 0; j < ambient_; ++j) rest[j] = F.add(rest[j], F.mul(c, rows_[i * ambient_ + j]));
        }
        return std::all_of(rest.begin(), rest.end(), [](FieldElement x) { return x.code == 0; });
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.dim_ == b.dim_ && a.rows_ == b.rows_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }
    friend bool operator<(const Subspace& a, const Subspace& b) {
        if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
        return a.rows_ < b.rows_;
    }

private:
    std::size_t ambient_ = 0;
    std::size_t dim_ = 0;
    std::vector<FieldElement> rows_;
    std::vector<std::size_t> pivots_;
};

struct SubspaceHash {
    std::size_t operator()(const Subspace& s) const noexcept {
        std::size_t h = s.dim() * 1000003u;
        for (auto x : s.matrix()) h = h * 131u + x.code;
        return h;
    }
};

/// X cap Y, from the left kernel of the stacked basis matrix.
inline Subspace intersect(const FieldSpec& F, const Subspace& x, const Subspace& y) {
    if (x.ambient() != y.ambient()) throw InvalidArgument("intersect: different ambient spaces");
    const std::size_t m = x.ambient(), kx = x.dim(), ky = y.dim(), rows = kx + ky;
    if (kx == 0 || ky == 0) return Subspace::span(F, {}, m);
    // Transposed stack: m x rows; a kernel vector (a, b) gives a.X = -b.Y.
    std::vector<FieldElement> t(m * rows);
    for (std::size_t i = 0; i < kx; ++i)
        for (std::size_t j = 0; j < m; ++j) t[j * rows + i] = x.matrix()[i * m + j];
    for (std::size_t i = 0; i < ky; ++i)
        for (std::size_t j = 0; j < m; ++j) t[j * rows + kx + i] = y.matrix()[i * m + j];
    auto pivots = reduce_rows(F, t, m, rows);
    std::vector<bool> is_pivot(rows, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vec> vectors;
    for (std::size_t free = 0; free < rows; ++free) {
        if (is_pivot[free]) continue;
        Vec coeff(kx, F.zero());
        if (free < kx) coeff[free] = F.one();
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (pivots[r] < kx) coeff[pivots[r]] = F.neg(t[r * rows + free]);
        Vec v(m, F.zero());
        for (std::size_t i = 0; i < kx; ++i)
            for (std::size_t j = 0; j < m; ++j) v[j] = F.add(v[j], F.mul(coeff[i], x.matrix()[i * m + j]));
        vectors.push_back(std::move(v));
    }
    return Subspace::span(F, vectors, m);
}

/// X + Y.
inline Subspace sum(const FieldSpec& F, const Subspace& x, const Subspace& y) {
    auto b = x.basis();
    for (auto& v : y.basis()) b.push_back(v);
    return Subspace::span(F, b, x.ambient());
}

/*
 * (V, B): V = F_q^{2n} with coordinates ordered e_1..e_n, f_1..f_n and the
 * hyperbolic form B(e_i, f_j) = delta_ij, B(e_i, e_j) = B(f_i, f_j) = 0.
 */
class SymplecticSpace {
public:
    SymplecticSpace(std::shared_ptr<const FieldSpec> field, int n) : field_(std::move(field)), n_(n) {
        if (!field_) throw InvalidArgument("null field");
        if (n < 1) throw InvalidArgument("n must be >= 1");
    }
    static SymplecticSpace over(std::int64_t q, int n) {
        return SymplecticSpace(std::make_shared<const FieldSpec>(FieldSpec::from_order(q)), n);
    }

    const FieldSpec& field() const noexcept { return *field_; }
    const std::shared_ptr<const FieldSpec>& field_ptr() const noexcept { return field_; }
    int n() const noexcept { return n_; }
    std::size_t dim() const noexcept { return 2 * static_cast<std::size_t>(n_); }
    std::uint32_t q() const noexcept { return field_->q(); }

    FieldElement form(const Vec& u, const Vec& v) const {
        const FieldSpec& F = *field_;
        FieldElement s = F.zero();
        for (int i = 0; i < n_; ++i) {
            s = F.add(s, F.mul(u[i], v[n_ + i]));
            s = F.sub(s, F.mul(u[n_ + i], v[i]));
        }
        return s;
    }

    /// Gram matrix of B (2n x 2n, row-major).
    std::vector<FieldElement> gram() const {
        const std::size_t m = dim();
        std::vector<FieldElement> g(m * m, field_->zero());
        for (int i = 0; i < n_; ++i) {
            g[i * m + n_ + i] = field_->one();
            g[(n_ + i) * m + i] = field_->neg(field_->one());
        }
        return g;
    }

    /// Basis vectors, 1-based: e(1)..e(n), f(1)..f(n).
    Vec e(int i) const { return unit(i - 1); }
    Vec f(int i) const { return unit(n_ + i - 1); }
    Vec zero_vector() const { return Vec(dim(), field_->zero()); }

    Vec add(const Vec& u, const Vec& v) const {
        Vec w(dim());
        for (std::size_t i = 0; i < dim(); ++i) w[i] = field_->add(u[i], v[i]);
        return w;
    }
    Vec scale(FieldElement c, const Vec& v) const {
        Vec w(dim());
        for (std::size_t i = 0; i < dim(); ++i) w[i] = field_->mul(c, v[i]);
        return w;
    }

    Subspace span(const std::vector<Vec>& vectors) const { return Subspace::span(*field_, vectors, dim()); }

    bool is_totally_isotropic(const Subspace& s) const {
        for (std::size_t i = 0; i < s.dim(); ++i)
            for (std::size_t j = i + 1; j < s.dim(); ++j)
                if (form(s.row(i), s.row(j)).code != 0) return false;
        return true;
    }
    bool is_generator(const Subspace& s) const {
        return s.ambient() == dim() && s.dim() == static_cast<std::size_t>(n_) && is_totally_isotropic(s);
    }

private:
    Vec unit(int idx) const {
        Vec v(dim(), field_->zero());
        v[idx] = field_->one();
        return v;
    }

    std::shared_ptr<const FieldSpec> field_;
    int n_;
};

/// prod_{i=1}^n (q^i + 1), saturating at UINT64_MAX.
inline std::uint64_t predicted_generator_count(std::uint64_t q, int n) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 1, qi = 1;
    for (int i = 1; i <= n; ++i) {
        if (qi > kMax / q) return kMax;
        qi *= q;
        if (qi == kMax || total > kMax / (qi + 1)) return kMax;
        total *= qi + 1;
    }
    return total;
}

inline constexpr std::uint64_t kDefaultGeneratorCap = 1'000'000;

/*
 * All generators (maximal totally isotropic subspaces) of (V, B), sorted by
 * their RREF matrices. For each pivot set the rows are filled top to bottom;
 * a row is kept only if it is orthogonal to the rows above it, so every
 * complete matrix is a totally isotropic n-space in canonical form.
 */
inline std::vector<Subspace> enumerate_generators(const SymplecticSpace& space,
                                                  std::uint64_t cap = kDefaultGeneratorCap) {
    const std::uint64_t predicted = predicted_generator_count(space.q(), space.n());
    if (predicted > cap)
        throw ResourceCap("generator count " +
                              (predicted == std::numeric_limits<std::uint64_t>::max() ? std::string("> 2^64")
                                                                                       : std::to_string(predicted)) +
                              " exceeds cap " + std::to_string(cap),
                          predicted);
    const FieldSpec& F = space.field();
    const std::size_t n = space.n(), m = space.dim();
    const std::uint32_t q = F.q();
    std::vector<Subspace> out;
    out.reserve(predicted);

    std::vector<std::size_t> pivots(n);
    std::vector<FieldElement> rows(n * m);

    std::function<void(std::size_t)> fill_row;
    std::vector<bool> is_pivot(m);
    fill_row = [&](std::size_t r) {
        if (r == n) {
            out.push_back(Subspace::from_rref(rows, pivots, m));
            return;
        }
        std::vector<std::size_t> free_cols;
        for (std::size_t c = pivots[r] + 1; c < m; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
        FieldElement* row = &rows[r * m];
        std::fill(row, row + m, F.zero());
        row[pivots[r]] = F.one();
        std::vector<std::uint32_t> digits(free_cols.size(), 0);
        while (true) {
            for (std::size_t t = 0; t < free_cols.size(); ++t) row[free_cols[t]] = FieldElement{digits[t]};
            bool ok = true;
            Vec current(row, row + m);
            for (std::size_t s = 0; s < r && ok; ++s) {
                Vec above(rows.begin() + s * m, rows.begin() + (s + 1) * m);
                ok = space.form(above, current).code == 0;
            }
            if (ok) fill_row(r + 1);
            // next digit assignment
            std::size_t t = 0;
            while (t < digits.size() && ++digits[t] == q) digits[t++] = 0;
            if (t == digits.size()) break;
        }
        std::fill(row, row + m, F.zero());
    };

    // Pivot sets in lexicographic order.
    std::vector<std::size_t> comb(n);
    for (std::size_t i = 0; i < n; ++i) comb[i] = i;
    while (true) {
        pivots = comb;
        std::fill(is_pivot.begin(), is_pivot.end(), false);
        for (auto c : pivots) is_pivot[c] = true;
        fill_row(0);
        std::size_t i = n;
        while (i > 0 && comb[i - 1] == m - n + i - 1) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (std::size_t j = i; j < n; ++j) comb[j] = comb[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

/*
 * The dual polar graph on the generators. Vertex ids are positions in the
 * sorted enumeration. Distances are tabulated when the vertex count is at
 * most kDenseLimit, otherwise computed per query.
 */
class DualPolarGraph {
public:
    static constexpr std::size_t kDenseLimit = 4096;

    explicit DualPolarGraph(SymplecticSpace space, std::uint64_t cap = kDefaultGeneratorCap)
        : space_(std::move(space)), generators_(enumerate_generators(space_, cap)) {
        index_.reserve(generators_.size());
        for (std::size_t i = 0; i < generators_.size(); ++i) index_.emplace(generators_[i], i);
        if (generators_.size() <= kDenseLimit) build_tables();
    }

    const SymplecticSpace& space() const noexcept { return space_; }
    const FieldSpec& field() const noexcept { return space_.field(); }
    int n() const noexcept { return space_.n(); }
    std::size_t size() const noexcept { return generators_.size(); }
    const std::vector<Subspace>& generators() const noexcept { return generators_; }
    const Subspace& generator(std::size_t id) const { return generators_.at(id); }

    std::optional<std::size_t> find(const Subspace& s) const {
        auto it = index_.find(s);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t id_of(const Subspace& s) const {
        auto id = find(s);
        if (!id) throw InvalidArgument("subspace is not a generator of this space");
        return *id;
    }
    std::size_t id_of(const std::vector<Vec>& spanning) const { return id_of(space_.span(spanning)); }

    /// n - dim(X cap Y) via the rank of the stacked bases.
    int distance(std::size_t x, std::size_t y) const {
        if (!dist_.empty()) return dist_[x * size() + y];
        return compute_distance(generators_[x], generators_[y]);
    }

    int compute_distance(const Subspace& x, const Subspace& y) const {
        std::vector<FieldElement> stacked = x.matrix();
        stacked.insert(stacked.end(), y.matrix().begin(), y.matrix().end());
        return static_cast<int>(rank_of(field(), std::move(stacked), x.dim() + y.dim(), space_.dim())) - n();
    }

    std::vector<std::uint32_t> neighbors(std::size_t x) const {
        if (!adj_.empty()) return adj_[x];
        std::vector<std::uint32_t> out;
        for (std::size_t y = 0; y < size(); ++y)
            if (distance(x, y) == 1) out.push_back(static_cast<std::uint32_t>(y));
        return out;
    }

    /// Number of generators at each distance from x.
    std::map<int, std::uint64_t> distance_profile(std::size_t x) const {
        std::map<int, std::uint64_t> profile;
        for (std::size_t y = 0; y < size(); ++y) ++profile[distance(x, y)];
        return profile;
    }

private:
    void build_tables() {
        const std::size_t g = size();
        dist_.assign(g * g, 0);
        adj_.assign(g, {});
        for (std::size_t x = 0; x < g; ++x)
            for (std::size_t y = x + 1; y < g; ++y) {
                auto d = static_cast<std::uint8_t>(compute_distance(generators_[x], generators_[y]));
                dist_[x * g + y] = dist_[y * g + x] = d;
                if (d == 1) {
                    adj_[x].push_back(static_cast<std::uint32_t>(y));
                    adj_[y].push_back(static_cast<std::uint32_t>(x));
                }
            }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    SymplecticSpace space_;
    std::vector<Subspace> generators_;
    std::unordered_map<Subspace, std::size_t, SubspaceHash> index_;
    std::vector<std::uint8_t> dist_;
    std::vector<std::vector<std::uint32_t>> adj_;
};

// Dual polar graph parameters of Sp(2n, q).
inline Rational drg_a(long k, long q) { return pow(Rational(q), k) - 1; }
inline Rational drg_b(long k, long n, long q) { return pow(Rational(q), k + 1) * gauss(n - k, 1, q); }
inline Rational drg_c(long k, long q) { return gauss(k, 1, q); }

/*
 * Tallies, for every ordered pair (X, Y) at distance k and every neighbour Z
 * of Y, whether d(X, Z) is k-1, k or k+1, and checks the tallies against
 * c_k, a_k, b_k for every pair. Also checks that no diamond is induced: the
 * common neighbours of any edge are pairwise adjacent.
 */
inline Report verify_drg_parameters(const DualPolarGraph& g) {
    Report rep;
    const long q = g.space().q(), n = g.n();
    for (std::size_t x = 0; x < g.size(); ++x) {
        for (std::size_t y = 0; y < g.size(); ++y) {
            const int k = g.distance(x, y);
            long c = 0, a = 0, b = 0;
            for (auto z : g.neighbors(y)) {
                const int dz = g.distance(x, z);
                if (dz == k - 1) ++c;
                else if (dz == k) ++a;
                else if (dz == k + 1) ++b;
                else rep.fail("neighbour jumps distance by more than one");
            }
            const Rational ec = k == 0 ? Rational(0) : drg_c(k, q);
            const Rational ea = k == 0 ? Rational(0) : drg_a(k, q);
            const Rational eb = k == n ? Rational(0) : drg_b(k, n, q);
            if (Rational(c) != ec || Rational(a) != ea || Rational(b) != eb) {
                rep.fail("pair (" + std::to_string(x) + "," + std::to_string(y) + ") at distance " +
                         std::to_string(k) + " has (c,a,b)=(" + std::to_string(c) + "," + std::to_string(a) + "," +
                         std::to_string(b) + ")");
                return rep;
            }
            rep.counts["c_" + std::to_string(k)] = c;
            rep.counts["a_" + std::to_string(k)] = a;
            rep.counts["b_" + std::to_string(k)] = b;
        }
    }
    // no induced diamond
    for (std::size_t x = 0; x < g.size(); ++x) {
        auto nx = g.neighbors(x);
        for (auto y : nx) {
            if (y < x) continue;
            std::vector<std::uint32_t> common;
            for (auto z : nx)
                if (z != y && g.distance(y, z) == 1) common.push_back(z);
            for (std::size_t i = 0; i < common.size(); ++i)
                for (std::size_t j = i + 1; j < common.size(); ++j)
                    if (g.distance(common[i], common[j]) != 1) {
                        rep.fail("induced diamond on edge (" + std::to_string(x) + "," + std::to_string(y) + ")");
                        return rep;
                    }
        }
    }
    return rep;
}

// A similarity of B: v -> v * matrix with B(u g, v g) = multiplier * B(u, v).
struct Isometry {
    std::vector<FieldElement> matrix;  // 2n x 2n, row-major, acting on row vectors
    FieldElement multiplier;
};

inline Vec apply(const SymplecticSpace& space, const Vec& v, const Isometry& g) {
    const FieldSpec& F = space.field();
    const std::size_t m = space.dim();
    Vec w(m, F.zero());
    for (std::size_t i = 0; i < m; ++i) {
        if (v[i].code == 0) continue;
        for (std::size_t j = 0; j < m; ++j) w[j] = F.add(w[j], F.mul(v[i], g.matrix[i * m + j]));
    }
    return w;
}

inline Subspace image(const SymplecticSpace& space, const Subspace& s, const Isometry& g) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < s.dim(); ++i) rows.push_back(apply(space, s.row(i), g));
    return space.span(rows);
}

/// Checks B(e_i g, e_j g) = multiplier * B(e_i, e_j) on all basis pairs and invertibility.
inline bool verify_similarity(const SymplecticSpace& space, const Isometry& g) {
    const FieldSpec& F = space.field();
    const std::size_t m = space.dim();
    if (g.matrix.size() != m * m || g.multiplier.code == 0) return false;
    const auto gram = space.gram();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < m; ++i) rows.emplace_back(g.matrix.begin() + i * m, g.matrix.begin() + (i + 1) * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (space.form(rows[i], rows[j]) != F.mul(g.multiplier, gram[i * m + j])) return false;
    return rank_of(F, g.matrix, m, m) == m;
}

inline Isometry identity_isometry(const SymplecticSpace& space) {
    const std::size_t m = space.dim();
    Isometry g{std::vector<FieldElement>(m * m, space.field().zero()), space.field().one()};
    for (std::size_t i = 0; i < m; ++i) g.matrix[i * m + i] = space.field().one();
    return g;
}

inline Isometry compose(const SymplecticSpace& space, const Isometry& a, const Isometry& b) {
    const FieldSpec& F = space.field();
    const std::size_t m = space.dim();
    Isometry c{std::vector<FieldElement>(m * m, F.zero()), F.mul(a.multiplier, b.multiplier)};
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            const FieldElement aik = a.matrix[i * m + k];
            if (aik.code == 0) continue;
            for (std::size_t j = 0; j < m; ++j)
                c.matrix[i * m + j] = F.add(c.matrix[i * m + j], F.mul(aik, b.matrix[k * m + j]));
        }
    return c;
}

/// Transvection x -> x + a B(x, v) v.
inline Isometry transvection(const SymplecticSpace& space, const Vec& v, FieldElement a) {
    const FieldSpec& F = space.field();
    const std::size_t m = space.dim();
    Isometry t = identity_isometry(space);
    for (std::size_t i = 0; i < m; ++i) {
        Vec ei(m, F.zero());
        ei[i] = F.one();
        const FieldElement coef = F.mul(a, space.form(ei, v));
        if (coef.code == 0) continue;
        for (std::size_t j = 0; j < m; ++j) t.matrix[i * m + j] = F.add(t.matrix[i * m + j], F.mul(coef, v[j]));
    }
    return t;
}

/// `count` seeded random products of 4n symplectic transvections. Each is
/// checked to preserve B before it is returned.
inline std::vector<Isometry> sp_sample_elements(const SymplecticSpace& space, std::size_t count, std::uint64_t seed) {
    const FieldSpec& F = space.field();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> coin(0, F.q() - 1);
    std::uniform_int_distribution<std::uint32_t> nonzero(1, F.q() - 1);
    std::vector<Isometry> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        Isometry g = identity_isometry(space);
        for (int t = 0; t < 4 * space.n(); ++t) {
            Vec v(space.dim());
            do {
                for (auto& x : v) x = FieldElement{coin(rng)};
            } while (std::all_of(v.begin(), v.end(), [](FieldElement x) { return x.code == 0; }));
            g = compose(space, g, transvection(space, v, FieldElement{nonzero(rng)}));
        }
        if (!verify_similarity(space, g) || g.multiplier != F.one())
            throw VerificationError("sampled element does not preserve B");
        out.push_back(std::move(g));
    }
    return out;
}

/// e_1 -> e_1, e_i -> eta e_i (i >= 2), f_1 -> eta f_1, f_i -> f_i (i >= 2),
/// with eta the first nonsquare; multiplier eta.
inline Isometry nonsquare_similarity(const SymplecticSpace& space) {
    const FieldSpec& F = space.field();
    const std::size_t m = space.dim();
    const int n = space.n();
    const FieldElement eta = F.first_nonsquare();
    Isometry g{std::vector<FieldElement>(m * m, F.zero()), eta};
    for (int i = 0; i < n; ++i) {
        g.matrix[i * m + i] = (i == 0) ? F.one() : eta;
        g.matrix[(n + i) * m + n + i] = (i == 0) ? eta : F.one();
    }
    if (!verify_similarity(space, g)) throw VerificationError("nonsquare similarity check failed");
    return g;
}

/// Permutation of generator ids induced by a similarity; throws if some image
/// is not a generator.
inline std::vector<std::uint32_t> induced_permutation(const DualPolarGraph& g, const Isometry& h) {
    std::vector<std::uint32_t> perm(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) {
        auto id = g.find(image(g.space(), g.generator(x), h));
        if (!id) throw VerificationError("similarity maps a generator outside the generator set");
        perm[x] = static_cast<std::uint32_t>(*id);
    }
    return perm;
}

}  // namespace dpcover

#endif
