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

#ifndef DPCOVER_FEASIBILITY_HPP
#define DPCOVER_FEASIBILITY_HPP

#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matrix.hpp"
#include "quadext.hpp"
#include "scheme.hpp"

namespace dpcover {

/*
 * Evaluates a rational expression in one variable r over Q(sqrt q):
 *   expr   := term (('+' | '-') term)*
 *   term   := unary (('*' | '/') unary | unary)*      juxtaposition multiplies
 *   unary  := ('-' | '+') unary | power
 *   power  := atom ('^' integer)?
 *   atom   := integer | 'r' | '(' expr ')'
 * so "2r^2" is 2 * (r^2) and "2(r^4 + r^2)" is a product.
 */
class ExpressionEvaluator {
public:
    ExpressionEvaluator(std::string_view text, QuadExt r) : s_(text), r_(std::move(r)) {}

    QuadExt evaluate() {
        pos_ = 0;
        QuadExt v = expr();
        skip();
        if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool starts_atom() {
        skip();
        if (pos_ >= s_.size()) return false;
        const char c = s_[pos_];
        return c == 'r' || c == '(' || std::isdigit(static_cast<unsigned char>(c));
    }
    [[noreturn]] void error(const std::string& what) const {
        throw InvalidArgument("expression \"" + std::string(s_) + "\" at " + std::to_string(pos_) + ": " + what);
    }

    QuadExt expr() {
        QuadExt v = term();
        while (true) {
            if (peek('+')) {
                ++pos_;
                v += term();
            } else if (peek('-')) {
                ++pos_;
                v -= term();
            } else {
                return v;
            }
        }
    }
    QuadExt term() {
        QuadExt v = unary();
        while (true) {
            if (peek('*')) {
                ++pos_;
                v *= unary();
            } else if (peek('/')) {
                ++pos_;
                const QuadExt den = unary();
                if (den.is_zero()) throw MathError("division by zero in \"" + std::string(s_) + "\"");
                v /= den;
            } else if (starts_atom()) {
                v *= power();
            } else {
                return v;
            }
        }
    }
    QuadExt unary() {
        if (peek('-')) {
            ++pos_;
            return -unary();
        }
        if (peek('+')) {
            ++pos_;
            return unary();
        }
        return power();
    }
    QuadExt power() {
        QuadExt base = atom();
        if (!peek('^')) return base;
        ++pos_;
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) error("exponent expected");
        return pow(base, std::stol(std::string(s_.substr(start, pos_ - start))));
    }
    QuadExt atom() {
        skip();
        if (pos_ >= s_.size()) error("operand expected");
        const char c = s_[pos_];
        if (c == 'r') {
            ++pos_;
            return r_;
        }
        if (c == '(') {
            ++pos_;
            QuadExt v = expr();
            if (!peek(')')) error("')' expected");
            ++pos_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return QuadExt(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
        }
        error("operand expected");
    }

    std::string_view s_;
    QuadExt r_;
    std::size_t pos_ = 0;
};

inline QuadExt evaluate_expression(std::string_view text, const QuadExt& r) {
    return ExpressionEvaluator(text, r).evaluate();
}

using TemplateMatrix = std::array<std::array<const char*, 5>, 5>;

// The 4-class parameter tables, as rational functions of r.
inline const TemplateMatrix kTemplateP = {{
    {"1", "(r^4 + r^3 + r^2 + r)/2", "(r^4 - r^3 + r^2 - r)/2", "(r^6 + r^4)/2", "(r^6 - r^4)/2"},
    {"1", "(r^3 + r^2 + r - 1)/2", "(-r^3 + r^2 - r - 1)/2", "(r^4 - r^2)/2", "(-r^4 - r^2)/2"},
    {"1", "(r^2 - 1)/2", "(r^2 - 1)/2", "-r^2", "0"},
    {"1", "(-r^2 - 1)/2", "(-r^2 - 1)/2", "0", "r^2"},
    {"1", "(-r^3 - r^2 - r - 1)/2", "(r^3 - r^2 + r - 1)/2", "(r^4 + r^2)/2", "(-r^4 + r^2)/2"},
}};

inline const TemplateMatrix kTemplateQ = {{
    {"1", "(r^4 - 1)/2", "(r^6 + r^4 + r^2 + 1)/2", "(r^6 - r^4 + r^2 - 1)/2", "(r^4 + 1)/2"},
    {"1", "(r^4 - 2r + 1)/(2r)", "(r^5 - r^4 + r - 1)/(2r)", "(-r^5 + r^4 - r + 1)/(2r)", "(-r^4 - 1)/(2r)"},
    {"1", "(-r^4 - 2r - 1)/(2r)", "(r^5 + r^4 + r + 1)/(2r)", "(-r^5 - r^4 - r - 1)/(2r)", "(r^4 + 1)/(2r)"},
    {"1", "(r^4 - 2r^2 + 1)/(2r^2)", "(-r^4 - 1)/(r^2)", "0", "(r^4 + 1)/(2r^2)"},
    {"1", "(-r^4 - 2r^2 - 1)/(2r^2)", "0", "(r^4 + 1)/(r^2)", "(-r^4 - 1)/(2r^2)"},
}};

inline const TemplateMatrix kTemplateL0 = {{
    {"1", "0", "0", "0", "0"},
    {"0", "1", "0", "0", "0"},
    {"0", "0", "1", "0", "0"},
    {"0", "0", "0", "1", "0"},
    {"0", "0", "0", "0", "1"},
}};

inline const TemplateMatrix kTemplateL1 = {{
    {"0", "(r^4 + r^3 + r^2 + r)/2", "0", "0", "0"},
    {"1", "(r^2 + 2r - 3)/4", "(r^2 - 1)/4", "(r^4 + r^3)/2", "0"},
    {"0", "(r^2 + 2r + 1)/4", "(r^2 - 1)/4", "0", "(r^4 + r^3)/2"},
    {"0", "(r^2 + 2r + 1)/2", "0", "(r^4 + r^3 + r^2 - r - 2)/4", "(r^4 + r^3 - r^2 - r)/4"},
    {"0", "0", "(r^2 + 1)/2", "(r^4 + r^3 + r^2 + r)/4", "(r^4 + r^3 - r^2 + r - 2)/4"},
}};

inline const TemplateMatrix kTemplateL2 = {{
    {"0", "0", "(r^4 - r^3 + r^2 - r)/2", "0", "0"},
    {"0", "(r^2 - 1)/4", "(r^2 - 2r + 1)/4", "0", "(r^4 - r^3)/2"},
    {"1", "(r^2 - 1)/4", "(r^2 - 2r - 3)/4", "(r^4 - r^3)/2", "0"},
    {"0", "0", "(r^2 - 2r + 1)/2", "(r^4 - r^3 + r^2 + r - 2)/4", "(r^4 - r^3 - r^2 + r)/4"},
    {"0", "(r^2 + 1)/2", "0", "(r^4 - r^3 + r^2 - r)/4", "(r^4 - r^3 - r^2 - r - 2)/4"},
}};

inline const TemplateMatrix kTemplateL3 = {{
    {"0", "0", "0", "(r^6 + r^4)/2", "0"},
    {"0", "(r^4 + r^3)/2", "0", "(r^6 + r^4 - 2r^3)/4", "(r^6 - r^4)/4"},
    {"0", "0", "(r^4 - r^3)/2", "(r^6 + r^4 + 2r^3)/4", "(r^6 - r^4)/4"},
    {"1", "(r^4 + r^3 + r^2 - r - 2)/4", "(r^4 - r^3 + r^2 + r - 2)/4", "(r^6 + 2r^4 - 3r^2)/4", "(r^6 - 2r^4 + r^2)/4"},
    {"0", "(r^4 + r^3 + r^2 + r)/4", "(r^4 - r^3 + r^2 - r)/4", "(r^6 - r^2)/4", "(r^6 - r^2)/4"},
}};

inline const TemplateMatrix kTemplateL4 = {{
    {"0", "0", "0", "0", "(r^6 - r^4)/2"},
    {"0", "0", "(r^4 - r^3)/2", "(r^6 - r^4)/4", "(r^6 - 3r^4 + 2r^3)/4"},
    {"0", "(r^4 + r^3)/2", "0", "(r^6 - r^4)/4", "(r^6 - 3r^4 - 2r^3)/4"},
    {"0", "(r^4 + r^3 - r^2 - r)/4", "(r^4 - r^3 - r^2 + r)/4", "(r^6 - 2r^4 + r^2)/4", "(r^6 - 2r^4 + r^2)/4"},
    {"1", "(r^4 + r^3 - r^2 + r - 2)/4", "(r^4 - r^3 - r^2 - r - 2)/4", "(r^6 - r^2)/4", "(r^6 - 4r^4 + 3r^2)/4"},
}};

inline const TemplateMatrix kTemplateL0Star = {{
    {"1", "0", "0", "0", "0"},
    {"0", "1", "0", "0", "0"},
    {"0", "0", "1", "0", "0"},
    {"0", "0", "0", "1", "0"},
    {"0", "0", "0", "0", "1"},
}};

inline const TemplateMatrix kTemplateL1Star = {{
    {"0", "(r^4 - 1)/2", "0", "0", "0"},
    {"1", "(r^6 - 5r^4 - 3r^2 - 1)/(2(r^4 + r^2))", "(r^8 +2r^4 + 1)/(2(r^4 + r^2))", "0", "0"},
    {"0", "(r^6 - r^4 + r^2 - 1)/(2(r^4 + r^2))", "(r^8 - 4r^2 + 3)/(4(r^4 + r^2))", "(r^6 - r^4 + r^2 - 1)/(4r^2)", "0"},
    {"0", "0", "(r^6 + r^4 + r^2 + 1)/(4r^2)", "(r^6 - 3r^4 - 3r^2 - 3)/(4r^2)", "(r^4 + 1)/(2r^2)"},
    {"0", "0", "0", "(r^6 - r^4 + r^2 - 1)/(2r^2)", "(r^4 - 2r^2 + 1)/(2r^2)"},
}};

inline const TemplateMatrix kTemplateL2Star = {{
    {"0", "0", "(r^6 + r^4 + r^2 + 1)/2", "0", "0"},
    {"0", "(r^8 + 2r^4 + 1)/(2(r^4 + r^2))", "(r^10 + r^8 + 2r^6 - 2r^4 + r^2 - 3)/(4(r^4 + r^2))", "(r^8 + 2r^4 + 1)/(4r^2)", "0"},
    {"1", "(r^8 - 4r^2 + 3)/(4(r^4 + r^2))", "(r^10 + 3r^8 + 2r^6 - 2r^4 + r^2 - 5)/(4(r^4 + r^2))", "(r^8 - 2r^6 + 2r^4 - 2r^2 + 1)/(4r^2)", "(r^6 + r^4 + r^2 + 1)/(4r^2)"},
    {"0", "(r^6 + r^4 + r^2 + 1)/(4r^2)", "(r^8 - 1)/(4r^2)", "(r^8 + 2r^4 + 1)/(4r^2)", "(r^6 - r^4 + r^2 - 1)/(4r^2)"},
    {"0", "0", "(r^8 + 2r^6 + 2r^4 + 2r^2 + 1)/(4r^2)", "(r^8 - 2r^6 + 2r^4 - 2r^2 + 1)/(4r^2)", "(r^6 - r^4 + r^2 - 1)/(2r^2)"},
}};

inline const TemplateMatrix kTemplateL3Star = {{
    {"0", "0", "0", "(r^6 - r^4 + r^2 - 1)/2", "0"},
    {"0", "0", "(r^8 + 2r^4 + 1)/(4r^2)", "(r^10 - 3r^8 - 2r^6 - 6r^4 - 3r^2 - 3)/(4(r^4 + r^2))", "(r^8 + 2r^4 + 1)/(2(r^4 + r^2))"},
    {"0", "(r^6 - r^4 + r^2 - 1)/(4r^2)", "(r^8 - 2r^6 + 2r^4 - 2r^2 + 1)/(4r^2)", "(r^10 - r^8 + 2r^6 - 2r^4 + r^2 - 1)/(4(r^4 + r^2))", "(r^8 - 2r^6 + 2r^4 - 2r^2 + 1)/(4(r^4 + r^2))"},
    {"1", "(r^6 - 3r^4 - 3r^2 - 3)/(4r^2)", "(r^8 + 2r^4 + 1)/(4r^2)", "(r^8 - 4r^6 + 4r^4 - 4r^2 + 3)/(4r^2)", "(r^6 - r^4 + r^2 - 1)/(4r^2)"},
    {"0", "(r^6 - r^4 + r^2 - 1)/(2r^2)", "(r^8 - 2r^6 + 2r^4 - 2r^2 + 1)/(4r^2)", "(r^8 - 2r^6 + 2r^4 - 2r^2 + 1)/(4r^2)", "0"},
}};

inline const TemplateMatrix kTemplateL4Star = {{
    {"0", "0", "0", "0", "(r^4+1)/2"},
    {"0", "0", "0", "(r^8 + 2r^4 + 1)/(2(r^4 + r^2))", "(r^6 - r^4 + r^2 - 1)/(2(r^4 + r^2))"},
    {"0", "0", "(r^6 + r^4 + r^2 + 1)/(4r^2)", "(r^8 - 2r^6 + 2r^4 - 2r^2 + 1)/(4(r^4 + r^2))", "(r^6 - r^4 + r^2 - 1)/(2(r^4 + r^2))"},
    {"0", "(r^4 + 1)/(2r^2)", "(r^6 - r^4 + r^2 - 1)/(4r^2)", "(r^6 - r^4 + r^2 - 1)/(4r^2)", "0"},
    {"1", "(r^4 - 2r^2 + 1)/(2r^2)", "(r^6 - r^4 + r^2 - 1)/(2r^2)", "0", "0"},
}};
inline const std::array<const TemplateMatrix*, 5> kTemplateL = {&kTemplateL0, &kTemplateL1, &kTemplateL2,
                                                                 &kTemplateL3, &kTemplateL4};
inline const std::array<const TemplateMatrix*, 5> kTemplateLStar = {
    &kTemplateL0Star, &kTemplateL1Star, &kTemplateL2Star, &kTemplateL3Star, &kTemplateL4Star};

inline Matrix<QuadExt> instantiate(const TemplateMatrix& t, const QuadExt& r) {
    Matrix<QuadExt> m(t.size(), t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j < t.size(); ++j) m(i, j) = evaluate_expression(t[i][j], r);
    return m;
}

// Parameters of a symmetric d-class scheme; L and Lstar are optional.
struct ParameterSet {
    int d = 0;
    QuadExt r;  // evaluation point, when built from templates
    Matrix<QuadExt> P, Q;
    std::vector<Matrix<QuadExt>> L, Lstar;
};

/// The 4-class tables at r (r != 0, +-1).
inline ParameterSet four_class_parameters(const QuadExt& r) {
    if (r.is_zero() || r == QuadExt(1) || r == QuadExt(-1)) throw InvalidArgument("r must not be 0 or +-1");
    ParameterSet ps;
    ps.d = 4;
    ps.r = r;
    ps.P = instantiate(kTemplateP, r);
    ps.Q = instantiate(kTemplateQ, r);
    for (auto* t : kTemplateL) ps.L.push_back(instantiate(*t, r));
    for (auto* t : kTemplateLStar) ps.Lstar.push_back(instantiate(*t, r));
    return ps;
}

/// "3" -> 3, "sqrt:5" -> sqrt(5), "-3" -> -3.
inline QuadExt parse_r_value(const std::string& text) {
    try {
        if (text.rfind("sqrt:", 0) == 0) {
            const long q = std::stol(text.substr(5));
            if (q <= 0) throw InvalidArgument("sqrt argument must be positive");
            return QuadExt::root(q);
        }
        return QuadExt(parse_rational(text));
    } catch (const std::logic_error&) {
        throw InvalidArgument("r must be a rational number or sqrt:<q>, got \"" + text + "\"");
    }
}

/*
 * Sums that the tables must satisfy independently of feasibility: row 0 of
 * P and Q have equal totals, each L_i has row sums P(0, i), each L*_i has row
 * sums Q(0, i), L_0 and L*_0 are identities.
 */
inline Report check_transcription(const ParameterSet& ps) {
    Report rep;
    const int w = ps.d + 1;
    QuadExt sp(0), sq(0);
    for (int j = 0; j < w; ++j) sp += ps.P(0, j), sq += ps.Q(0, j);
    if (sp != sq) rep.fail("P and Q row 0 totals differ");
    auto rows = [&](const std::vector<Matrix<QuadExt>>& ms, const Matrix<QuadExt>& top, const char* name) {
        for (int i = 0; i < static_cast<int>(ms.size()); ++i)
            for (int k = 0; k < w; ++k) {
                QuadExt s(0);
                for (int j = 0; j < w; ++j) s += ms[i](k, j);
                if (s != top(0, i))
                    rep.fail(std::string(name) + "_" + std::to_string(i) + " row " + std::to_string(k) +
                             " sums to " + s.str());
            }
        if (!ms.empty() && ms[0] != Matrix<QuadExt>::identity(w)) rep.fail(std::string(name) + "_0 is not I");
    };
    rows(ps.L, ps.P, "L");
    rows(ps.Lstar, ps.Q, "L*");
    return rep;
}

struct FeasibilityCheck {
    std::string name;
    bool passed = true;
    std::string witness;
};

struct FeasibilityReport {
    std::vector<FeasibilityCheck> checks;
    QuadExt N;
    std::vector<QuadExt> valencies, multiplicities;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    const FeasibilityCheck* first_failure() const {
        for (const auto& c : checks)
            if (!c.passed) return &c;
        return nullptr;
    }
    const FeasibilityCheck& check(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return c;
        throw InvalidArgument("no check named " + name);
    }
};

inline bool is_nonneg_integer(const QuadExt& x) { return x.is_rational() && is_integer(x.a()) && x.a() >= 0; }
inline bool is_positive_integer(const QuadExt& x) { return is_nonneg_integer(x) && x.a() > 0; }

/// p_ij^k = (1 / (N k_k)) sum_l m_l P_li P_lj P_lk.
inline std::vector<Matrix<QuadExt>> intersection_matrices_from_eigenmatrix(const Matrix<QuadExt>& P,
                                                                          const std::vector<QuadExt>& m,
                                                                          const QuadExt& N) {
    const std::size_t w = P.rows();
    std::vector<Matrix<QuadExt>> L(w, Matrix<QuadExt>(w, w));
    for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = 0; j < w; ++j)
            for (std::size_t k = 0; k < w; ++k) {
                QuadExt s(0);
                for (std::size_t l = 0; l < w; ++l) s += m[l] * P(l, i) * P(l, j) * P(l, k);
                L[i](k, j) = s / (N * P(0, k));
            }
    return L;
}

/*
 * Runs every check and records the outcome; never throws on a mathematical
 * failure. Checks: pq_identity, valencies_positive_integral,
 * multiplicities_positive_integral, p_tensor_nonneg_integral, krein_nonneg,
 * handshake, L_consistency, Lstar_consistency.
 */
inline FeasibilityReport check_feasibility(const ParameterSet& ps) {
    FeasibilityReport rep;
    const std::size_t w = ps.P.rows();
    auto add = [&](const std::string& name, bool ok, const std::string& witness) {
        rep.checks.push_back({name, ok, ok ? std::string() : witness});
    };
    for (std::size_t i = 0; i < w; ++i) {
        rep.valencies.push_back(ps.P(0, i));
        rep.multiplicities.push_back(ps.Q(0, i));
    }
    rep.N = QuadExt(0);
    for (const auto& m : rep.multiplicities) rep.N += m;

    {
        bool ok = true;
        std::string witness;
        const Matrix<QuadExt> pq = ps.P * ps.Q;
        for (std::size_t i = 0; i < w && ok; ++i)
            for (std::size_t j = 0; j < w && ok; ++j)
                if (pq(i, j) != (i == j ? rep.N : QuadExt(0))) {
                    ok = false;
                    witness = "(PQ)(" + std::to_string(i) + "," + std::to_string(j) + ") = " + pq(i, j).str() +
                              ", N = " + rep.N.str();
                }
        add("pq_identity", ok, witness);
    }
    auto positive_integral = [&](const std::vector<QuadExt>& v, const char* label) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!is_positive_integer(v[i])) return std::string(label) + "_" + std::to_string(i) + " = " + v[i].str();
        return std::string();
    };
    const std::string kw = positive_integral(rep.valencies, "k");
    add("valencies_positive_integral", kw.empty(), kw);
    const std::string mw = positive_integral(rep.multiplicities, "m");
    add("multiplicities_positive_integral", mw.empty(), mw);

    std::vector<Matrix<QuadExt>> L;
    bool p_ok = !rep.N.is_zero();
    std::string p_witness = p_ok ? "" : "N = 0";
    if (p_ok) {
        try {
            L = intersection_matrices_from_eigenmatrix(ps.P, rep.multiplicities, rep.N);
        } catch (const MathError& e) {
            p_ok = false;
            p_witness = e.what();
        }
    }
    for (std::size_t i = 0; i < L.size() && p_ok; ++i)
        for (std::size_t k = 0; k < w && p_ok; ++k)
            for (std::size_t j = 0; j < w && p_ok; ++j)
                if (!is_nonneg_integer(L[i](k, j))) {
                    p_ok = false;
                    p_witness = "p_" + std::to_string(i) + std::to_string(j) + "^" + std::to_string(k) + " = " +
                                L[i](k, j).str();
                }
    add("p_tensor_nonneg_integral", p_ok, p_witness);

    std::optional<KreinTensor> kt;
    std::string k_witness;
    try {
        kt = krein_from_eigenmatrix(ps.P, rep.valencies, rep.multiplicities, rep.N);
        const auto neg = krein_negative_entries(*kt);
        if (!neg.empty())
            k_witness = "q_" + std::to_string(neg[0][0]) + std::to_string(neg[0][1]) + "^" +
                        std::to_string(neg[0][2]) + " = " + (*kt)(neg[0][0], neg[0][1], neg[0][2]).str();
    } catch (const MathError& e) {
        k_witness = e.what();
    }
    add("krein_nonneg", k_witness.empty(), k_witness);

    std::string h_witness;
    for (std::size_t i = 1; i < w && h_witness.empty(); ++i) {
        const QuadExt e = rep.valencies[i] * rep.N;
        if (!(e.is_rational() && is_integer(e.a()) && numerator_of(e.a()) % 2 == 0))
            h_witness = "k_" + std::to_string(i) + " N = " + e.str();
    }
    add("handshake", h_witness.empty(), h_witness);

    auto compare = [&](const std::vector<Matrix<QuadExt>>& given, const std::vector<Matrix<QuadExt>>& computed,
                       const char* label) {
        if (given.empty()) return std::string();
        if (computed.size() != given.size()) return std::string("not computable");
        for (std::size_t i = 0; i < given.size(); ++i)
            for (std::size_t k = 0; k < w; ++k)
                for (std::size_t j = 0; j < w; ++j)
                    if (given[i](k, j) != computed[i](k, j))
                        return std::string(label) + "_" + std::to_string(i) + "(" + std::to_string(k) + "," +
                               std::to_string(j) + "): given " + given[i](k, j).str() + ", computed " +
                               computed[i](k, j).str();
        return std::string();
    };
    const std::string lw = compare(ps.L, L, "L");
    add("L_consistency", lw.empty(), lw);
    std::vector<Matrix<QuadExt>> Lstar;
    if (kt)
        for (int i = 0; i <= kt->d(); ++i) Lstar.push_back(krein_matrix(*kt, i));
    const std::string sw = compare(ps.Lstar, Lstar, "L*");
    add("Lstar_consistency", sw.empty(), sw);
    return rep;
}

inline bool is_tridiagonal_with_nonzero_offdiagonal(const Matrix<QuadExt>& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const bool band = (i > j ? i - j : j - i) <= 1;
            if (!band && !m(i, j).is_zero()) return false;
            if (band && i != j && m(i, j).is_zero()) return false;
        }
    return true;
}

/// Computed L*_i equal the given tables exactly and L*_1 is tridiagonal.
inline Report verify_lstar(const ParameterSet& ps) {
    Report rep;
    const std::size_t w = ps.P.rows();
    QuadExt N(0);
    std::vector<QuadExt> k, m;
    for (std::size_t i = 0; i < w; ++i) {
        k.push_back(ps.P(0, i));
        m.push_back(ps.Q(0, i));
        N += ps.Q(0, i);
    }
    const KreinTensor kt = krein_from_eigenmatrix(ps.P, k, m, N);
    for (std::size_t i = 0; i < ps.Lstar.size(); ++i) {
        const Matrix<QuadExt> c = krein_matrix(kt, static_cast<int>(i));
        for (std::size_t a = 0; a < w; ++a)
            for (std::size_t b = 0; b < w; ++b)
                if (c(a, b) != ps.Lstar[i](a, b)) {
                    rep.fail("L*_" + std::to_string(i) + "(" + std::to_string(a) + "," + std::to_string(b) +
                             "): computed " + c(a, b).str() + ", table " + ps.Lstar[i](a, b).str());
                    return rep;
                }
    }
    if (!is_tridiagonal_with_nonzero_offdiagonal(krein_matrix(kt, 1))) rep.fail("computed L*_1 is not tridiagonal");
    return rep;
}

}  // namespace dpcover

#endif
