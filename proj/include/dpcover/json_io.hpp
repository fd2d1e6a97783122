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

#ifndef DPCOVER_JSON_IO_HPP
#define DPCOVER_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "feasibility.hpp"
#include "quadext.hpp"
#include "scheme.hpp"
#include "symplectic.hpp"

namespace dpcover {

// nlohmann::json keeps object keys in a std::map, so dumps are key-sorted.
using Json = nlohmann::json;

inline Json to_json(const Rational& x) { return to_fraction_string(x); }

inline Json to_json(const QuadExt& x) {
    return Json{{"a", to_fraction_string(x.a())}, {"b", to_fraction_string(x.b())}, {"q", x.base()}};
}

inline QuadExt quadext_from_json(const Json& j) {
    try {
        return QuadExt(parse_rational(j.at("a").get<std::string>()), parse_rational(j.at("b").get<std::string>()),
                       j.at("q").get<std::int64_t>());
    } catch (const Json::exception& e) {
        throw InvalidArgument(std::string("malformed number object: ") + e.what());
    }
}

template <class T>
Json to_json(const Matrix<T>& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

template <class T>
Json to_json(const std::vector<T>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

inline Json to_json(const Report& r) {
    Json j{{"passed", r.passed}, {"counts", r.counts}};
    if (!r.passed) j["failure"] = r.failure;
    return j;
}

inline Json to_json(const IntersectionTensor& t) {
    Json out = Json::array();
    for (int i = 0; i <= t.d(); ++i) {
        Json a = Json::array();
        for (int j = 0; j <= t.d(); ++j) {
            Json b = Json::array();
            for (int k = 0; k <= t.d(); ++k) b.push_back(t(i, j, k));
            a.push_back(std::move(b));
        }
        out.push_back(std::move(a));
    }
    return out;
}

inline Json to_json(const KreinTensor& t) {
    Json out = Json::array();
    for (int i = 0; i <= t.d(); ++i) {
        Json a = Json::array();
        for (int j = 0; j <= t.d(); ++j) {
            Json b = Json::array();
            for (int k = 0; k <= t.d(); ++k) b.push_back(to_json(t(i, j, k)));
            a.push_back(std::move(b));
        }
        out.push_back(std::move(a));
    }
    return out;
}

/// Row-major generator matrices: integers over prime fields, coefficient strings otherwise.
inline Json generators_to_json(const DualPolarGraph& g) {
    const FieldSpec& F = g.space().field();
    const bool prime = F.e() == 1;
    Json out = Json::array();
    for (const auto& s : g.generators()) {
        Json m = Json::array();
        for (std::size_t i = 0; i < s.dim(); ++i) {
            Json row = Json::array();
            for (auto x : s.row(i)) {
                if (prime) row.push_back(x.code);
                else row.push_back(F.to_string(x));
            }
            m.push_back(std::move(row));
        }
        out.push_back(std::move(m));
    }
    return out;
}

inline Json scheme_to_json(const SpectralData& sd, const IntersectionTensor& t, const KreinTensor& kt,
                           const std::vector<std::vector<int>>& orderings) {
    return Json{{"N", sd.N},
                {"d", sd.d()},
                {"valencies", to_json(sd.valencies)},
                {"multiplicities", to_json(sd.multiplicities)},
                {"P", to_json(sd.P)},
                {"Q", to_json(sd.Q)},
                {"p_tensor", to_json(t)},
                {"krein_tensor", to_json(kt)},
                {"q_poly_orderings", orderings}};
}

inline Json to_json(const FeasibilityReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json j{{"name", c.name}, {"passed", c.passed}};
        if (!c.passed) j["witness"] = c.witness;
        checks.push_back(std::move(j));
    }
    return Json{{"N", to_json(r.N)},
                {"valencies", to_json(r.valencies)},
                {"multiplicities", to_json(r.multiplicities)},
                {"checks", std::move(checks)},
                {"passed", r.passed()}};
}

}  // namespace dpcover

#endif
