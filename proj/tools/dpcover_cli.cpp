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

// dpcover: construction, verification and export for double covers of
// symplectic dual polar graphs.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input,
// 3 resource cap.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dpcover/dpcover.hpp"

using namespace dpcover;

namespace {

enum Exit { kOk = 0, kVerification = 1, kInvalid = 2, kCap = 3 };

struct RunConfig {
    long q = 5;
    long n = 1;
    std::string r;
    std::vector<std::string> sweep;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string out;
    std::string format = "json";
    std::uint64_t cap_generators = kDefaultGeneratorCap;
    std::vector<std::string> suites;
    bool formula_only = false;
};

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw InvalidArgument("cannot open " + cfg.out);
    f << text;
}

void emit(const RunConfig& cfg, const Json& j) { emit(cfg, j.dump(2) + "\n"); }

Json config_json(const RunConfig& cfg) {
    return Json{{"q", cfg.q}, {"n", cfg.n}, {"seed", cfg.seed}, {"threads", cfg.threads}};
}

int cmd_enumerate(const RunConfig& cfg) {
    require_scheme_parameters(cfg.n, cfg.q);
    DualPolarGraph g(SymplecticSpace::over(cfg.q, static_cast<int>(cfg.n)), cfg.cap_generators);
    Json profile = Json::object();
    for (auto [k, count] : g.distance_profile(0)) profile[std::to_string(k)] = count;
    emit(cfg, Json{{"config", config_json(cfg)},
                   {"generator_count", g.size()},
                   {"distance_profile", profile},
                   {"generators", generators_to_json(g)}});
    return kOk;
}

int cmd_scheme(const RunConfig& cfg) {
    require_scheme_parameters(cfg.n, cfg.q);
    DualPolarGraph g(SymplecticSpace::over(cfg.q, static_cast<int>(cfg.n)), cfg.cap_generators);
    CoherenceTable table(g);
    CoverGraph cover(table);
    Json checks = Json::object();
    IntersectionTensor t;
    try {
        t = verify_cover_scheme(cover, cfg.threads);
        checks["scheme"] = Json{{"passed", true}};
    } catch (const SchemeError& e) {
        checks["scheme"] = Json{{"passed", false}, {"failure", e.what()}};
        emit(cfg, Json{{"config", config_json(cfg)}, {"checks", checks}, {"passed", false}});
        return kVerification;
    }
    const SpectralData sd = spectral_data(t, cfg.q);
    const KreinTensor kt = krein(sd);
    const auto ords = q_poly_orderings(kt);
    bool passed = true;
    auto record = [&](const std::string& name, const Report& r) {
        checks[name] = to_json(r);
        passed = passed && r.passed;
    };
    record("tensor_identities", check_tensor_identities(t));
    record("spectral_invariants", check_spectral_invariants(sd));
    Report krein_rep;
    if (!krein_negative_entries(kt).empty()) krein_rep.fail("negative Krein parameter");
    record("krein_nonneg", krein_rep);
    Report ord_rep;
    if (ords.size() != 2) ord_rep.fail(std::to_string(ords.size()) + " Q-polynomial orderings");
    record("q_poly_orderings", ord_rep);
    if (cover.size() <= kIdempotentCap) record("idempotents", verify_idempotents(sd, cover_scheme_instance(cover)));
    Json bipartite = Json::array();
    for (const auto& o : ords) bipartite.push_back(q_bipartite_check(kt, o));
    emit(cfg, Json{{"config", config_json(cfg)},
                   {"scheme", scheme_to_json(sd, t, kt, ords)},
                   {"N", sd.N},
                   {"q_bipartite", bipartite},
                   {"splitting_field_rational", !splitting_field_irrational(sd)},
                   {"checks", checks},
                   {"passed", passed}});
    return passed ? kOk : kVerification;
}

int cmd_crosscheck(const RunConfig& cfg) {
    require_scheme_parameters(cfg.n, cfg.q);
    const long n = cfg.n, q = cfg.q;
    Json checks = Json::object();
    bool passed = true;
    auto record = [&](const std::string& name, const Report& r) {
        checks[name] = to_json(r);
        passed = passed && r.passed;
    };
    for (int sign : {1, -1}) {
        const std::string suffix = sign > 0 ? "" : "_conjugate";
        const auto cf = eigenmatrices_closed(n, q, sign);
        record("eigenvector_residuals" + suffix, verify_eigenvector_relations(cf));
        record("p_full_shape" + suffix, verify_p_full_shape(cf, n, q));
    }
    if (cfg.formula_only) {
        const auto l1 = l1_closed(n, q);
        for (int sign : {1, -1})
            record(sign > 0 ? "q_sequence_closed_l1" : "q_sequence_closed_l1_conjugate",
                   verify_q_sequence(l1, q_sequence(n, q, sign), s_family(n, q, sign), q));
    } else {
        DualPolarGraph g(SymplecticSpace::over(q, static_cast<int>(n)), cfg.cap_generators);
        CoherenceTable table(g);
        CoverGraph cover(table);
        const auto t = verify_cover_scheme(cover, cfg.threads);
        const auto l1 = intersection_matrix(t, 1);
        Report l1_rep;
        if (l1 != l1_closed(n, q)) l1_rep.fail("L_1 differs from the closed form");
        record("l1", l1_rep);
        const auto sd = spectral_data(t, q);
        for (int sign : {1, -1}) {
            const std::string suffix = sign > 0 ? "" : "_conjugate";
            record("q_sequence" + suffix, verify_q_sequence(l1, q_sequence(n, q, sign), s_family(n, q, sign), q));
            record("p" + suffix, crosscheck_p(sd, eigenmatrices_closed(n, q, sign)));
        }
    }
    emit(cfg, Json{{"config", config_json(cfg)},
                   {"formula_only", cfg.formula_only},
                   {"p_full", to_json(eigenmatrices_closed(n, q).p_full)},
                   {"checks", checks},
                   {"passed", passed}});
    return passed ? kOk : kVerification;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

int cmd_feasibility(const RunConfig& cfg) {
    std::vector<std::string> values = cfg.sweep;
    if (!cfg.r.empty()) values.insert(values.begin(), cfg.r);
    if (values.empty()) throw InvalidArgument("feasibility needs --r or --sweep");
    bool all = true;
    Json reports = Json::array();
    std::ostringstream csv;
    csv << "r,q,N,verdict,first_failing_check\n";
    for (const auto& text : values) {
        const QuadExt r = parse_r_value(text);
        ParameterSet ps;
        try {
            ps = four_class_parameters(r);
        } catch (const MathError& e) {
            throw InvalidArgument("r = " + text + ": " + e.what());
        }
        const FeasibilityReport rep = check_feasibility(ps);
        const Report lstar = verify_lstar(ps);
        const bool ok = rep.passed() && lstar.passed;
        all = all && ok;
        const auto* first = rep.first_failure();
        const std::string first_name = first ? first->name : (lstar.passed ? "" : "lstar_tridiagonal");
        csv << csv_field(text) << "," << csv_field((r * r).str()) << "," << csv_field(rep.N.str()) << ","
            << (ok ? "pass" : "fail") << "," << first_name << "\n";
        Json j = to_json(rep);
        j["r"] = text;
        j["r_value"] = to_json(r);
        j["lstar"] = to_json(lstar);
        j["passed"] = ok;
        reports.push_back(std::move(j));
    }
    if (cfg.format == "csv") emit(cfg, csv.str());
    else if (values.size() == 1 && cfg.sweep.empty()) emit(cfg, reports[0]);
    else emit(cfg, Json{{"reports", reports}, {"passed", all}});
    return all ? kOk : kVerification;
}

// Property suites at desk scale (q = 5, n <= 2).
std::map<std::string, std::function<Report(const RunConfig&)>> suites() {
    std::map<std::string, std::function<Report(const RunConfig&)>> s;
    s["exact_algebra"] = [](const RunConfig&) {
        Report r;
        const QuadExt x = QuadExt::root(5);
        if (x * x != QuadExt(5)) r.fail("r^2 != q");
        if (gauss(4, 2, 5) != Rational(806)) r.fail("[4,2]_5 != 806");
        const std::vector<Rational> qs{2, 3, 5, Rational(1, 2), -2};
        if (!check_gauss_recurrences(qs, -6, 10)) r.fail("Gaussian recurrences");
        if (!check_gauss_product_rule(qs, -6, 10)) r.fail("Gaussian product rule");
        if (!check_e_poly_shifts({5, 9}, 8)) r.fail("E_m shifts");
        return r;
    };
    s["finite_field"] = [](const RunConfig&) {
        Report r;
        for (int q : {5, 9, 13, 25}) {
            FieldSpec F = FieldSpec::from_order(q);
            int squares = 0;
            for (std::uint32_t a = 1; a < F.q(); ++a) {
                squares += F.chi({a}) == 1;
                for (std::uint32_t b = 1; b < F.q(); ++b)
                    if (F.chi(F.mul({a}, {b})) != F.chi({a}) * F.chi({b})) r.fail("chi not multiplicative");
            }
            if (squares != q / 2) r.fail("wrong square count");
            if (F.chi(F.from_int(-1)) != 1) r.fail("-1 not a square");
        }
        return r;
    };
    s["symplectic"] = [](const RunConfig& cfg) {
        Report r;
        for (int n : {1, 2}) {
            DualPolarGraph g(SymplecticSpace::over(5, n), cfg.cap_generators);
            if (g.size() != predicted_generator_count(5, n)) r.fail("generator count");
            auto drg = verify_drg_parameters(g);
            if (!drg) r.fail(drg.failure);
        }
        return r;
    };
    s["maslov"] = [](const RunConfig& cfg) {
        Report r;
        for (int n : {1, 2}) {
            DualPolarGraph g(SymplecticSpace::over(5, n), cfg.cap_generators);
            CoherenceTable t(g);
            for (const auto& rep : {verify_two_graph(t, 10000, cfg.seed), verify_geodesic_coherence(t),
                                    verify_half_coherent(t), verify_gauge_invariance(t, 1000, cfg.seed),
                                    verify_invariance(t, sp_sample_elements(g.space(), 20, cfg.seed), 50, cfg.seed)})
                if (!rep) r.fail(rep.failure);
        }
        return r;
    };
    s["double_cover"] = [](const RunConfig& cfg) {
        Report r;
        for (int n : {1, 2}) {
            DualPolarGraph g(SymplecticSpace::over(5, n), cfg.cap_generators);
            CoherenceTable t(g);
            CoverGraph c(t);
            for (const auto& rep : {verify_covering(c), verify_triangle_lifts(c), verify_cover_distances(c)})
                if (!rep) r.fail(rep.failure);
        }
        return r;
    };
    s["scheme"] = [](const RunConfig& cfg) {
        Report r;
        for (int n : {1, 2}) {
            DualPolarGraph g(SymplecticSpace::over(5, n), cfg.cap_generators);
            CoherenceTable t(g);
            CoverGraph c(t);
            const auto tensor = verify_cover_scheme(c, cfg.threads);
            const auto sd = spectral_data(tensor, 5);
            const auto kt = krein(sd);
            if (!krein_negative_entries(kt).empty()) r.fail("negative Krein parameter");
            if (q_poly_orderings(kt).size() != 2) r.fail("ordering count");
            auto idem = verify_idempotents(sd, cover_scheme_instance(c));
            if (!idem) r.fail(idem.failure);
        }
        return r;
    };
    s["closed_form"] = [](const RunConfig& cfg) {
        Report r;
        for (long n : {1, 2}) {
            DualPolarGraph g(SymplecticSpace::over(5, static_cast<int>(n)), cfg.cap_generators);
            CoherenceTable t(g);
            CoverGraph c(t);
            const auto tensor = verify_cover_scheme(c, cfg.threads);
            const auto l1 = intersection_matrix(tensor, 1);
            if (l1 != l1_closed(n, 5)) r.fail("L_1 closed form");
            const auto sd = spectral_data(tensor, 5);
            for (int sign : {1, -1}) {
                auto qs = verify_q_sequence(l1, q_sequence(n, 5, sign), s_family(n, 5, sign), 5);
                if (!qs) r.fail(qs.failure);
                auto cp = crosscheck_p(sd, eigenmatrices_closed(n, 5, sign));
                if (!cp) r.fail(cp.failure);
            }
        }
        return r;
    };
    s["feasibility"] = [](const RunConfig&) {
        Report r;
        for (long v : {3, 5, 7}) {
            const auto ps = four_class_parameters(QuadExt(v));
            if (!check_transcription(ps)) r.fail("transcription at r=" + std::to_string(v));
            if (!check_feasibility(ps).passed()) r.fail("feasibility at r=" + std::to_string(v));
            if (!verify_lstar(ps)) r.fail("L* at r=" + std::to_string(v));
        }
        return r;
    };
    return s;
}

int cmd_selftest(const RunConfig& cfg) {
    const auto all = suites();
    std::vector<std::string> chosen = cfg.suites;
    if (chosen.empty())
        for (const auto& [name, fn] : all) chosen.push_back(name);
    for (const auto& name : chosen)
        if (!all.count(name)) throw InvalidArgument("unknown suite " + name);
    bool ok = true;
    Json results = Json::object();
    for (const auto& name : chosen) {
        const auto t0 = std::chrono::steady_clock::now();
        const Report rep = all.at(name)(cfg);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cerr << (rep ? "pass " : "FAIL ") << name << " (" << secs << " s)" << (rep ? "" : ": " + rep.failure) << "\n";
        Json j = to_json(rep);
        j["seconds"] = secs;
        results[name] = j;
        ok = ok && rep.passed;
    }
    emit(cfg, Json{{"suites", results}, {"passed", ok}, {"seed", cfg.seed}});
    return ok ? kOk : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dpcover: double covers of symplectic dual polar graphs"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--out", cfg.out, "output file (default stdout)");
        sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--cap-generators", cfg.cap_generators, "maximum generator count")->check(CLI::PositiveNumber);
    };
    auto geometry = [&](CLI::App* sub) {
        sub->add_option("--q", cfg.q, "field order, a prime power = 1 mod 4")->required();
        sub->add_option("--n", cfg.n, "rank")->required();
    };

    auto* enumerate = app.add_subcommand("enumerate", "list generators and the distance profile");
    geometry(enumerate);
    common(enumerate);
    auto* scheme = app.add_subcommand("scheme", "build and verify the association scheme");
    geometry(scheme);
    common(scheme);
    auto* cross = app.add_subcommand("crosscheck", "compare closed forms with brute force");
    geometry(cross);
    common(cross);
    cross->add_flag("--formula-only", cfg.formula_only, "skip the graph construction");
    auto* feas = app.add_subcommand("feasibility", "check the 4-class parameter tables at r");
    common(feas);
    feas->add_option("--r", cfg.r, "integer, rational or sqrt:<q>");
    feas->add_option("--sweep", cfg.sweep, "comma-separated r values")->delimiter(',');
    auto* self = app.add_subcommand("selftest", "run the property suites");
    common(self);
    self->add_option("--suite", cfg.suites, "suite name (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (*enumerate) return cmd_enumerate(cfg);
        if (*scheme) return cmd_scheme(cfg);
        if (*cross) return cmd_crosscheck(cfg);
        if (*feas) return cmd_feasibility(cfg);
        if (*self) return cmd_selftest(cfg);
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const ResourceCap& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kCap;
    } catch (const std::exception& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kVerification;
    }
    return kInvalid;
}
