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

#ifndef DPCOVER_SCHEME_HPP
#define DPCOVER_SCHEME_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "double_cover.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "quadext.hpp"

namespace dpcover {

class SchemeError : public VerificationError {
public:
    enum class Kind { NotAPartition, IdentityNotR0, NotSymmetric, NonConstant };
    SchemeError(Kind kind, const std::string& what) : VerificationError(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

class EigenvalueOutsideField : public MathError {
public:
    using MathError::MathError;
};

class RepeatedEigenvalue : public MathError {
public:
    using MathError::MathError;
};

// N points, classes 0..d, and the relation index of each ordered pair.
struct SchemeInstance {
    std::size_t N = 0;
    int d = 0;
    std::function<int(std::size_t, std::size_t)> relation;
};

/// The cover's relations R_0..R_{2n+1} on vertex ids.
inline SchemeInstance cover_scheme_instance(const CoverGraph& c) {
    return {c.size(), 2 * c.n() + 1, [&c](std::size_t u, std::size_t v) { return c.relation_index(u, v); }};
}

// p[i][j][k], stored flat.
class IntersectionTensor {
public:
    IntersectionTensor() = default;
    explicit IntersectionTensor(int d) : d_(d), p_(static_cast<std::size_t>((d + 1) * (d + 1) * (d + 1)), 0) {}

    int d() const noexcept { return d_; }
    std::int64_t& operator()(int i, int j, int k) { return p_[index(i, j, k)]; }
    std::int64_t operator()(int i, int j, int k) const { return p_[index(i, j, k)]; }
    std::int64_t valency(int i) const { return (*this)(i, i, 0); }
    std::int64_t point_count() const {
        std::int64_t s = 0;
        for (int i = 0; i <= d_; ++i) s += valency(i);
        return s;
    }

    friend bool operator==(const IntersectionTensor&, const IntersectionTensor&) = default;

private:
    std::size_t index(int i, int j, int k) const {
        if (i < 0 || j < 0 || k < 0 || i > d_ || j > d_ || k > d_) throw InvalidArgument("tensor index out of range");
        return (static_cast<std::size_t>(i) * (d_ + 1) + j) * (d_ + 1) + k;
    }

    int d_ = 0;
    std::vector<std::int64_t> p_;
};

namespace detail {

inline std::string pair_str(std::size_t x, std::size_t y) {
    return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

// Runs body(begin, end) over [0, count) split into `threads` contiguous blocks.
inline void parallel_blocks(std::size_t count, unsigned threads,
                            const std::function<void(std::size_t, std::size_t, unsigned)>& body) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        body(0, count, 0);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t b = t * chunk, e = std::min(count, b + chunk);
        pool.emplace_back([&, b, e, t] { body(b, e, t); });
    }
    for (auto& th : pool) th.join();
}

struct PendingFailure {
    std::size_t order = SIZE_MAX;
    SchemeError::Kind kind{};
    std::string what;
    void offer(std::size_t at, SchemeError::Kind k, std::string w) {
        if (at < order) {
            order = at;
            kind = k;
            what = std::move(w);
        }
    }
};

inline void raise_first(const std::vector<PendingFailure>& fails) {
    const PendingFailure* best = nullptr;
    for (const auto& f : fails)
        if (f.order != SIZE_MAX && (!best || f.order < best->order)) best = &f;
    if (best) throw SchemeError(best->kind, best->what);
}

}  // namespace detail

/*
 * Exhaustive check of the scheme axioms. The relation table is materialised,
 * checked to be a symmetric partition with R_0 the identity, then for every
 * ordered pair (x, y) the histogram of (R(x,z), R(z,y)) over all z is compared
 * with the one of the first pair seen in the same relation. O(N^3).
 */
inline IntersectionTensor verify_scheme(const SchemeInstance& s, unsigned threads = 1) {
    const std::size_t N = s.N;
    const int d = s.d, w = d + 1;
    std::vector<std::uint8_t> rel(N * N);
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = 0; y < N; ++y) {
            const int r = s.relation(x, y);
            if (r < 0 || r > d)
                throw SchemeError(SchemeError::Kind::NotAPartition,
                                  "pair " + detail::pair_str(x, y) + " has relation index " + std::to_string(r));
            if ((r == 0) != (x == y))
                throw SchemeError(SchemeError::Kind::IdentityNotR0, "pair " + detail::pair_str(x, y) +
                                                                        " has relation " + std::to_string(r));
            rel[x * N + y] = static_cast<std::uint8_t>(r);
        }
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = x + 1; y < N; ++y)
            if (rel[x * N + y] != rel[y * N + x])
                throw SchemeError(SchemeError::Kind::NotSymmetric,
                                  "relation " + std::to_string(rel[x * N + y]) + " not symmetric at " +
                                      detail::pair_str(x, y));

    // Reference pair per relation: the first in row-major order.
    std::vector<std::optional<std::pair<std::size_t, std::size_t>>> ref(w);
    for (std::size_t p = 0; p < N * N; ++p)
        if (!ref[rel[p]]) ref[rel[p]] = std::make_pair(p / N, p % N);
    IntersectionTensor t(d);
    auto histogram = [&](std::size_t x, std::size_t y, std::vector<std::int64_t>& h) {
        std::fill(h.begin(), h.end(), 0);
        const std::uint8_t* rx = &rel[x * N];
        for (std::size_t z = 0; z < N; ++z) ++h[rx[z] * w + rel[z * N + y]];
    };
    std::vector<std::int64_t> h(w * w);
    for (int k = 0; k <= d; ++k) {
        if (!ref[k]) throw SchemeError(SchemeError::Kind::NotAPartition, "relation " + std::to_string(k) + " is empty");
        histogram(ref[k]->first, ref[k]->second, h);
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j) t(i, j, k) = h[i * w + j];
    }

    std::vector<detail::PendingFailure> fails(std::max(1u, threads));
    detail::parallel_blocks(N, threads, [&](std::size_t b, std::size_t e, unsigned tid) {
        std::vector<std::int64_t> hh(w * w);
        for (std::size_t x = b; x < e; ++x)
            for (std::size_t y = 0; y < N; ++y) {
                if (fails[tid].order != SIZE_MAX) return;
                const int k = rel[x * N + y];
                histogram(x, y, hh);
                for (int i = 0; i <= d; ++i)
                    for (int j = 0; j <= d; ++j)
                        if (hh[i * w + j] != t(i, j, k)) {
                            fails[tid].offer(x * N + y, SchemeError::Kind::NonConstant,
                                             "p_" + std::to_string(i) + "," + std::to_string(j) + "^" +
                                                 std::to_string(k) + " is " + std::to_string(hh[i * w + j]) +
                                                 " at " + detail::pair_str(x, y) + " but " +
                                                 std::to_string(t(i, j, k)) + " at " +
                                                 detail::pair_str(ref[k]->first, ref[k]->second));
                            return;
                        }
            }
    });
    detail::raise_first(fails);
    return t;
}

/*
 * The same exhaustive check specialised to the cover. For a base pair (X, Y)
 * the histogram over Z of (d(X,Z), d(Z,Y), sigma(X,Z), sigma(Z,Y)) determines
 * the (R(u,z), R(z,v)) histogram of all four lifts (u, v) at once, so the
 * cost is O(|V|^3) instead of O((2|V|)^3).
 */
inline IntersectionTensor verify_cover_scheme(const CoverGraph& c, unsigned threads = 1) {
    const DualPolarGraph& g = c.base();
    const CoherenceTable& table = c.table();
    const std::size_t G = g.size();
    const int n = c.n(), d = 2 * n + 1, w = d + 1, nd = n + 1;
    table.warm();

    auto rel = [&](int dist, int sign_product, int sigma) { return sign_product == sigma ? dist : d - dist; };
    std::vector<std::optional<std::pair<std::size_t, std::size_t>>> ref(w);
    std::vector<std::vector<std::int64_t>> ref_hist(w);

    // code(x, z) = 2 d(X,Z) + [sigma(X,Z) = -1]; the histogram over Z of
    // (code(x,z), code(z,y)) gives the 4 lift histograms.
    const int nc = 2 * nd;
    std::vector<std::uint8_t> code(G * G);
    for (std::size_t x = 0; x < G; ++x)
        for (std::size_t z = 0; z < G; ++z)
            code[x * G + z] = static_cast<std::uint8_t>(2 * g.distance(x, z) + (table.sigma_or_one(x, z) < 0));
    auto lift_histograms = [&](std::size_t x, std::size_t y, std::vector<std::int64_t>& h,
                               std::array<std::vector<std::int64_t>, 4>& out) {
        std::fill(h.begin(), h.end(), 0);
        const std::uint8_t* cx = &code[x * G];
        const std::uint8_t* cy = &code[y * G];  // code is symmetric
        for (std::size_t z = 0; z < G; ++z) ++h[cx[z] * nc + cy[z]];
        for (int lift = 0; lift < 4; ++lift) {
            const int eps = (lift & 2) ? -1 : 1, eps2 = (lift & 1) ? -1 : 1;
            auto& o = out[lift];
            o.assign(w * w, 0);
            for (int c1 = 0; c1 < nc; ++c1)
                for (int c2 = 0; c2 < nc; ++c2) {
                    const std::int64_t cnt = h[c1 * nc + c2];
                    if (!cnt) continue;
                    const int a = c1 / 2, s1 = (c1 & 1) ? -1 : 1, b = c2 / 2, s2 = (c2 & 1) ? -1 : 1;
                    for (int zeta : {1, -1}) o[rel(a, eps * zeta, s1) * w + rel(b, zeta * eps2, s2)] += cnt;
                }
        }
    };

    std::vector<std::int64_t> h(nc * nc);
    std::array<std::vector<std::int64_t>, 4> out;
    for (std::size_t x = 0; x < G; ++x)
        for (std::size_t y = 0; y < G; ++y) {
            bool need = false;
            for (int lift = 0; lift < 4; ++lift) {
                const int eps = (lift & 2) ? -1 : 1, eps2 = (lift & 1) ? -1 : 1;
                need |= !ref[rel(g.distance(x, y), eps * eps2, table.sigma_or_one(x, y))];
            }
            if (!need) continue;
            lift_histograms(x, y, h, out);
            for (int lift = 0; lift < 4; ++lift) {
                const int eps = (lift & 2) ? -1 : 1, eps2 = (lift & 1) ? -1 : 1;
                const int k = rel(g.distance(x, y), eps * eps2, table.sigma_or_one(x, y));
                if (ref[k]) continue;
                ref[k] = std::make_pair(CoverGraph::id({x, eps}), CoverGraph::id({y, eps2}));
                ref_hist[k] = out[lift];
            }
        }
    IntersectionTensor t(d);
    for (int k = 0; k <= d; ++k) {
        if (!ref[k]) throw SchemeError(SchemeError::Kind::NotAPartition, "relation " + std::to_string(k) + " is empty");
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j) t(i, j, k) = ref_hist[k][i * w + j];
    }

    std::vector<detail::PendingFailure> fails(std::max(1u, threads));
    detail::parallel_blocks(G, threads, [&](std::size_t b, std::size_t e, unsigned tid) {
        std::vector<std::int64_t> hh(nc * nc);
        std::array<std::vector<std::int64_t>, 4> oo;
        for (std::size_t x = b; x < e; ++x)
            for (std::size_t y = 0; y < G; ++y) {
                if (fails[tid].order != SIZE_MAX) return;
                lift_histograms(x, y, hh, oo);
                for (int lift = 0; lift < 4; ++lift) {
                    const int eps = (lift & 2) ? -1 : 1, eps2 = (lift & 1) ? -1 : 1;
                    const std::size_t u = CoverGraph::id({x, eps}), v = CoverGraph::id({y, eps2});
                    const int k = rel(g.distance(x, y), eps * eps2, table.sigma_or_one(x, y));
                    for (int i = 0; i <= d; ++i)
                        for (int j = 0; j <= d; ++j)
                            if (oo[lift][i * w + j] != t(i, j, k)) {
                                fails[tid].offer(x * G + y, SchemeError::Kind::NonConstant,
                                                 "p_" + std::to_string(i) + "," + std::to_string(j) + "^" +
                                                     std::to_string(k) + " is " +
                                                     std::to_string(oo[lift][i * w + j]) + " at " +
                                                     detail::pair_str(u, v) + " but " + std::to_string(t(i, j, k)) +
                                                     " at " + detail::pair_str(ref[k]->first, ref[k]->second));
                                return;
                            }
                }
            }
    });
    detail::raise_first(fails);
    return t;
}

/// p_ij^k = p_ji^k, sum_j p_ij^k = k_i, k_k p_ij^k = k_i p_kj^i.
inline Report check_tensor_identities(const IntersectionTensor& t) {
    Report rep;
    const int d = t.d();
    for (int i = 0; i <= d; ++i)
        for (int k = 0; k <= d; ++k) {
            std::int64_t row = 0;
            for (int j = 0; j <= d; ++j) {
                row += t(i, j, k);
                if (t(i, j, k) != t(j, i, k))
                    rep.fail("p_" + std::to_string(i) + std::to_string(j) + "^" + std::to_string(k) + " not symmetric");
                if (t.valency(k) * t(i, j, k) != t.valency(i) * t(k, j, i))
                    rep.fail("k_k p_ij^k != k_i p_kj^i at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                             std::to_string(k) + ")");
            }
            if (row != t.valency(i)) rep.fail("row sum of L_" + std::to_string(i) + " at " + std::to_string(k));
        }
    return rep;
}

/// (L_i)_{kj} = p_ij^k.
inline Matrix<Rational> intersection_matrix(const IntersectionTensor& t, int i) {
    if (i < 0 || i > t.d()) throw InvalidArgument("intersection_matrix: index out of range");
    Matrix<Rational> m(t.d() + 1, t.d() + 1);
    for (int k = 0; k <= t.d(); ++k)
        for (int j = 0; j <= t.d(); ++j) m(k, j) = Rational(t(i, j, k));
    return m;
}

inline QuadExt lift_rational(const Rational& x, std::int64_t q) { return QuadExt(x, Rational(0), q); }

inline Matrix<QuadExt> to_quadext(const Matrix<Rational>& m, std::int64_t q) {
    return m.map([q](const Rational& x) { return lift_rational(x, q); });
}

/*
 * Eigenvalues of an integer matrix whose characteristic polynomial splits
 * over Q(sqrt(q)) into distinct linear factors. Integer roots are searched in
 * [-rho, rho] (rho the largest absolute row sum); the remaining factor must
 * split into quadratics x^2 - s x + (s^2 - q c^2)/4 with integers s, c.
 * Returned in decreasing order.
 */
inline std::vector<QuadExt> eigenvalues_in_quadratic_field(const Matrix<Rational>& a, std::int64_t q) {
    const std::size_t n = a.rows();
    Polynomial<Rational> chi = characteristic_polynomial(a);
    Integer rho = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (!is_integer(a(i, j))) throw InvalidArgument("eigenvalue search needs an integer matrix");
            s += abs(numerator_of(a(i, j)));
        }
        rho = std::max(rho, s);
    }
    const long bound = static_cast<long>(rho);
    std::vector<QuadExt> roots;
    auto divide_out = [&](const Polynomial<Rational>& f) {
        auto [quot, rem] = divmod(chi, f);
        if (!rem.is_zero()) return false;
        chi = quot;
        return true;
    };
    for (long v = -bound; v <= bound && chi.degree() > 0; ++v) {
        const Polynomial<Rational> lin{Rational(-v), Rational(1)};
        if (divide_out(lin)) {
            if (divide_out(lin)) throw RepeatedEigenvalue("repeated eigenvalue " + std::to_string(v));
            roots.emplace_back(Rational(v), Rational(0), q);
        }
    }
    if (chi.degree() > 0) {
        // |a +- b r| <= rho with 2a = s and 2b = c.
        for (long s = -2 * bound; s <= 2 * bound && chi.degree() > 0; ++s)
            for (long c = 1; static_cast<double>(c) * c * q <= 4.0 * bound * bound && chi.degree() > 0; ++c) {
                const Integer D = Integer(q) * c * c;
                if ((Integer(s) * s - D) % 4 != 0) continue;
                const Polynomial<Rational> quad{Rational(Integer(s) * s - D) / 4, Rational(-s), Rational(1)};
                if (divide_out(quad)) {
                    if (divide_out(quad))
                        throw RepeatedEigenvalue("repeated quadratic eigenvalue pair with trace " + std::to_string(s));
                    const QuadExt x(Rational(s, 2), Rational(c, 2), q);
                    if (x.is_rational()) throw MathError("quadratic factor with rational roots left over");
                    roots.push_back(x);
                    roots.push_back(x.conjugate());
                }
            }
    }
    if (chi.degree() > 0) {
        std::ostringstream os;
        os << chi;
        throw EigenvalueOutsideField("characteristic polynomial factor " + os.str() + " does not split over Q(sqrt(" +
                                     std::to_string(q) + "))");
    }
    std::sort(roots.begin(), roots.end(), [](const QuadExt& x, const QuadExt& y) { return x > y; });
    return roots;
}

struct SpectralData {
    std::int64_t N = 0;
    std::int64_t q = 0;  // the base of Q(r)
    Matrix<QuadExt> P;   // P(j, i): eigenvalue of A_i on E_j
    Matrix<QuadExt> Q;   // N P^{-1}
    std::vector<QuadExt> eigenvalues;
    std::vector<QuadExt> valencies;
    std::vector<QuadExt> multiplicities;

    int d() const { return static_cast<int>(P.rows()) - 1; }
};

/// Checks PQ = NI, P(0,.) = valencies, P(.,0) = 1, Q(.,0) = 1, sum k = sum m = N, m_j positive.
inline Report check_spectral_invariants(const SpectralData& sd) {
    Report rep;
    const std::size_t w = sd.P.rows();
    const QuadExt N = lift_rational(Rational(sd.N), sd.q);
    if (sd.P * sd.Q != N * Matrix<QuadExt>::identity(w)) rep.fail("PQ != NI");
    QuadExt sk(0), sm(0);
    for (std::size_t i = 0; i < w; ++i) {
        if (sd.P(i, 0) != QuadExt(1)) rep.fail("P column 0 not all ones");
        if (sd.Q(i, 0) != QuadExt(1)) rep.fail("Q column 0 not all ones");
        if (sd.P(0, i) != sd.valencies[i]) rep.fail("P row 0 differs from the valencies");
        if (sd.multiplicities[i].sign() <= 0) rep.fail("multiplicity " + std::to_string(i) + " not positive");
        sk += sd.valencies[i];
        sm += sd.multiplicities[i];
    }
    if (sk != N) rep.fail("valencies do not sum to N");
    if (sm != N) rep.fail("multiplicities do not sum to N");
    return rep;
}

/*
 * P from the left eigenvectors of L_1 normalised to first entry 1, rows in
 * decreasing order of the A_1 eigenvalue; Q = N P^{-1}.
 */
inline SpectralData spectral_data(const IntersectionTensor& t, std::int64_t q) {
    const int d = t.d();
    const std::size_t w = d + 1;
    const Matrix<Rational> L1 = intersection_matrix(t, 1);
    SpectralData sd;
    sd.N = t.point_count();
    sd.q = q;
    sd.eigenvalues = eigenvalues_in_quadratic_field(L1, q);
    if (sd.eigenvalues.size() != w) throw MathError("wrong number of eigenvalues");
    const Matrix<QuadExt> L1t = to_quadext(L1.transpose(), q);
    sd.P = Matrix<QuadExt>(w, w);
    for (std::size_t j = 0; j < w; ++j) {
        const auto ker = kernel(L1t - sd.eigenvalues[j] * Matrix<QuadExt>::identity(w));
        if (ker.size() != 1) throw RepeatedEigenvalue("eigenspace of dimension " + std::to_string(ker.size()));
        if (ker[0][0].is_zero()) throw MathError("left eigenvector with zero first entry");
        for (std::size_t i = 0; i < w; ++i) sd.P(j, i) = ker[0][i] / ker[0][0];
    }
    sd.Q = lift_rational(Rational(sd.N), q) * inverse(sd.P);
    for (std::size_t i = 0; i < w; ++i) {
        sd.valencies.push_back(lift_rational(Rational(t.valency(static_cast<int>(i))), q));
        sd.multiplicities.push_back(sd.Q(0, i));
    }
    auto rep = check_spectral_invariants(sd);
    if (!rep) throw VerificationError("spectral data: " + rep.failure);
    return sd;
}

/// Some entry of P has a nonzero sqrt(q) component.
inline bool splitting_field_irrational(const SpectralData& sd) {
    for (std::size_t i = 0; i < sd.P.rows(); ++i)
        for (std::size_t j = 0; j < sd.P.cols(); ++j)
            if (!sd.P(i, j).is_rational()) return true;
    return false;
}

/// The row permutation induced on P by r -> -r, if conjugation permutes rows.
inline std::optional<std::vector<std::size_t>> galois_row_permutation(const Matrix<QuadExt>& P) {
    const std::size_t w = P.rows();
    std::vector<std::size_t> perm(w);
    std::vector<bool> used(w, false);
    for (std::size_t i = 0; i < w; ++i) {
        std::vector<QuadExt> conj;
        for (std::size_t j = 0; j < w; ++j) conj.push_back(P(i, j).conjugate());
        bool found = false;
        for (std::size_t k = 0; k < w && !found; ++k)
            if (!used[k] && P.row(k) == conj) {
                perm[i] = k;
                used[k] = found = true;
            }
        if (!found) return std::nullopt;
    }
    return perm;
}

// q[i][j][k] over Q(r).
class KreinTensor {
public:
    KreinTensor() = default;
    explicit KreinTensor(int d) : d_(d), v_(static_cast<std::size_t>((d + 1) * (d + 1) * (d + 1))) {}
    int d() const noexcept { return d_; }
    QuadExt& operator()(int i, int j, int k) { return v_[(static_cast<std::size_t>(i) * (d_ + 1) + j) * (d_ + 1) + k]; }
    const QuadExt& operator()(int i, int j, int k) const {
        return v_[(static_cast<std::size_t>(i) * (d_ + 1) + j) * (d_ + 1) + k];
    }

private:
    int d_ = 0;
    std::vector<QuadExt> v_;
};

/// q_ij^k = (m_i m_j / N) sum_l P_il P_jl P_kl / k_l^2 (rows of P indexed by idempotents).
inline KreinTensor krein_from_eigenmatrix(const Matrix<QuadExt>& P, const std::vector<QuadExt>& valencies,
                                          const std::vector<QuadExt>& multiplicities, const QuadExt& N) {
    const int d = static_cast<int>(P.rows()) - 1;
    KreinTensor kt(d);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j)
            for (int k = 0; k <= d; ++k) {
                QuadExt s(0);
                for (int l = 0; l <= d; ++l) s += P(i, l) * P(j, l) * P(k, l) / (valencies[l] * valencies[l]);
                kt(i, j, k) = multiplicities[i] * multiplicities[j] / N * s;
            }
    return kt;
}

/// Krein parameters of a scheme, with sum_j q_ij^k = m_i verified.
inline KreinTensor krein(const SpectralData& sd) {
    const int d = sd.d();
    const KreinTensor kt =
        krein_from_eigenmatrix(sd.P, sd.valencies, sd.multiplicities, lift_rational(Rational(sd.N), sd.q));
    for (int i = 0; i <= d; ++i)
        for (int k = 0; k <= d; ++k) {
            QuadExt s(0);
            for (int j = 0; j <= d; ++j) s += kt(i, j, k);
            if (s != sd.multiplicities[i]) throw VerificationError("Krein row sum differs from m_" + std::to_string(i));
        }
    return kt;
}

/// Entries with negative real value, as (i, j, k) triples.
inline std::vector<std::array<int, 3>> krein_negative_entries(const KreinTensor& kt) {
    std::vector<std::array<int, 3>> out;
    for (int i = 0; i <= kt.d(); ++i)
        for (int j = 0; j <= kt.d(); ++j)
            for (int k = 0; k <= kt.d(); ++k)
                if (kt(i, j, k).sign() < 0) out.push_back({i, j, k});
    return out;
}

/// (L*_i)_{kj} = q_ij^k.
inline Matrix<QuadExt> krein_matrix(const KreinTensor& kt, int i) {
    Matrix<QuadExt> m(kt.d() + 1, kt.d() + 1);
    for (int k = 0; k <= kt.d(); ++k)
        for (int j = 0; j <= kt.d(); ++j) m(k, j) = kt(i, j, k);
    return m;
}

inline constexpr int kMaxOrderingClasses = 12;

/*
 * Orderings pi of the idempotents (pi[0] = 0) for which the matrix with
 * entries q_{pi1, pi b}^{pi a} is tridiagonal with nonzero off-diagonal.
 * Depth-first, extending the order one idempotent at a time.
 */
inline std::vector<std::vector<int>> q_poly_orderings(const KreinTensor& kt) {
    const int d = kt.d();
    if (d > kMaxOrderingClasses) throw ResourceCap("ordering search limited to d <= 12", static_cast<std::uint64_t>(d));
    std::vector<std::vector<int>> out;
    if (d == 0) return {{0}};
    std::vector<int> pi{0};
    std::vector<bool> used(d + 1, false);
    used[0] = true;
    std::function<void()> extend = [&]() {
        const int a = static_cast<int>(pi.size());  // position to fill
        if (a == d + 1) {
            out.push_back(pi);
            return;
        }
        for (int c = 1; c <= d; ++c) {
            if (used[c]) continue;
            const int e1 = (a == 1) ? c : pi[1];
            // new row/column a must touch only a-1 among earlier positions
            bool ok = !kt(e1, c, pi[a - 1]).is_zero() && !kt(e1, pi[a - 1], c).is_zero();
            for (int b = 0; b + 1 < a && ok; ++b) ok = kt(e1, c, pi[b]).is_zero() && kt(e1, pi[b], c).is_zero();
            if (!ok) continue;
            used[c] = true;
            pi.push_back(c);
            extend();
            pi.pop_back();
            used[c] = false;
        }
    };
    extend();
    return out;
}

/// q_{pi1, pi j}^{pi j} = 0 for every j.
inline bool q_bipartite_check(const KreinTensor& kt, const std::vector<int>& ordering) {
    for (int j = 0; j <= kt.d(); ++j)
        if (!kt(ordering[1], ordering[j], ordering[j]).is_zero()) return false;
    return true;
}

inline constexpr std::size_t kIdempotentCap = 400;

/*
 * E_j = (1/N) sum_i Q_ij A_i with A_i the relation matrices. Checks
 * E_i E_j = delta_ij E_j, sum_j E_j = I and A_1 E_j = P_j1 E_j entry by entry.
 * Entries of Q are scaled to integers a + b r so that all products are exact
 * 128-bit integer sums; for each pair (x, y) the product over z is grouped by
 * the relation pair (R(x,z), R(z,y)).
 */
inline Report verify_idempotents(const SpectralData& sd, const SchemeInstance& s) {
    Report rep;
    const std::size_t N = s.N;
    if (N > kIdempotentCap)
        throw ResourceCap("verify_idempotents is limited to N <= " + std::to_string(kIdempotentCap), N);
    if (static_cast<std::int64_t>(N) != sd.N) throw InvalidArgument("scheme size differs from spectral data");
    const int d = sd.d(), w = d + 1;
    const std::int64_t q = sd.q;

    Integer den = 1;
    for (int i = 0; i < w; ++i)
        for (int j = 0; j < w; ++j) {
            den = lcm(den, denominator_of(sd.Q(i, j).a()));
            den = lcm(den, denominator_of(sd.Q(i, j).b()));
            den = lcm(den, denominator_of(sd.P(j, 1).a()));
            den = lcm(den, denominator_of(sd.P(j, 1).b()));
        }
    struct Z2 {
        __int128 a = 0, b = 0;
    };
    auto scaled = [&](const QuadExt& x) {
        const Rational sa = x.a() * Rational(den), sb = x.b() * Rational(den);
        const Integer ia = numerator_of(sa), ib = numerator_of(sb);
        if (abs(ia) > Integer(1) << 40 || abs(ib) > Integer(1) << 40)
            throw ResourceCap("idempotent entries too large for exact 128-bit accumulation", 0);
        return Z2{static_cast<long long>(ia), static_cast<long long>(ib)};
    };
    auto mul = [q](const Z2& x, const Z2& y) { return Z2{x.a * y.a + q * x.b * y.b, x.a * y.b + x.b * y.a}; };
    std::vector<Z2> Qs(w * w), P1(w);
    for (int i = 0; i < w; ++i) {
        for (int j = 0; j < w; ++j) Qs[i * w + j] = scaled(sd.Q(i, j));
        P1[i] = scaled(sd.P(i, 1));
    }
    // sum_j E_j = I  <=>  sum_j Q_aj = N [a = 0]
    for (int a = 0; a < w; ++a) {
        Z2 sum;
        for (int j = 0; j < w; ++j) sum.a += Qs[a * w + j].a, sum.b += Qs[a * w + j].b;
        const __int128 expect = a == 0 ? static_cast<__int128>(sd.N) * static_cast<long long>(den) : 0;
        if (sum.a != expect || sum.b != 0) rep.fail("sum of idempotents differs from I on relation " + std::to_string(a));
    }

    std::vector<std::uint8_t> rel(N * N);
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = 0; y < N; ++y) rel[x * N + y] = static_cast<std::uint8_t>(s.relation(x, y));
    const __int128 Nden = static_cast<__int128>(N) * static_cast<long long>(den);
    std::vector<std::int64_t> h(w * w);
    for (std::size_t x = 0; x < N && rep.passed; ++x)
        for (std::size_t y = 0; y < N && rep.passed; ++y) {
            std::fill(h.begin(), h.end(), 0);
            for (std::size_t z = 0; z < N; ++z) ++h[rel[x * N + z] * w + rel[z * N + y]];
            const int rxy = rel[x * N + y];
            for (int i = 0; i < w; ++i)
                for (int j = i; j < w; ++j) {
                    // (N den)^2 (E_i E_j)(x,y) = sum_{a,b} h[a][b] Qs_ai Qs_bj
                    Z2 acc;
                    for (int a = 0; a < w; ++a)
                        for (int b = 0; b < w; ++b) {
                            if (!h[a * w + b]) continue;
                            const Z2 p = mul(Qs[a * w + i], Qs[b * w + j]);
                            acc.a += p.a * h[a * w + b];
                            acc.b += p.b * h[a * w + b];
                        }
                    // (N den)^2 E_j(x,y) = N den Qs_{rxy, j}
                    const Z2 rhs = i == j ? Z2{Nden * Qs[rxy * w + j].a, Nden * Qs[rxy * w + j].b} : Z2{};
                    if (acc.a != rhs.a || acc.b != rhs.b) {
                        rep.fail("E_" + std::to_string(i) + " E_" + std::to_string(j) + " wrong at " +
                                 detail::pair_str(x, y));
                        break;
                    }
                }
            for (int j = 0; j < w && rep.passed; ++j) {
                // N den^2 (A_1 E_j)(x,y) = den sum_b h[1][b] Qs_bj ; N den^2 P_j1 E_j(x,y) = P1_j Qs_{rxy,j}
                Z2 lhs;
                for (int b = 0; b < w; ++b) {
                    lhs.a += static_cast<__int128>(h[1 * w + b]) * static_cast<long long>(den) * Qs[b * w + j].a;
                    lhs.b += static_cast<__int128>(h[1 * w + b]) * static_cast<long long>(den) * Qs[b * w + j].b;
                }
                const Z2 rhs = mul(P1[j], Qs[rxy * w + j]);
                if (lhs.a != rhs.a || lhs.b != rhs.b)
                    rep.fail("A_1 E_" + std::to_string(j) + " != P_" + std::to_string(j) + "1 E_" + std::to_string(j) +
                             " at " + detail::pair_str(x, y));
            }
        }
    return rep;
}

}  // namespace dpcover

#endif
