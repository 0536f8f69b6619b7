/* Copyright 2026 The dtower Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// dtower: verify, supersingular, enumerate, genus, ihara.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dtower/dtower.hpp"
#include "dtower/serialize.hpp"

using namespace dtower;

namespace {

struct RunConfig {
    std::uint64_t q = 3;
    std::optional<std::string> zeta;
    std::optional<std::string> eta;
    std::string mode = "reduced";
    std::optional<std::string> t_point;
    std::uint64_t seed = 7;
    int points = 20;
    std::string k = "";
    std::string format = "json";
    std::string output;
    std::size_t nu_choice = 0;
};

[[noreturn]] void config_error(const std::string& field, const std::string& why) {
    throw Error(Errc::ConfigError, "config field '" + field + "': " + why);
}

/// Fills fields absent from the command line from a JSON config file.
void merge_config(RunConfig& c, const std::string& path, const CLI::App& sub) {
    std::ifstream in(path);
    if (!in) config_error("config", "cannot read " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const std::exception& e) {
        config_error("config", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) config_error("config", "top level must be an object");
    auto given = [&](const char* flag) { return sub.count(flag) > 0; };
    auto lit = [&](const json& v, const char* name) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_array()) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (!v[i].is_number_integer()) config_error(name, "coefficients must be integers");
                if (i) s += "+";
                s += std::to_string(v[i].get<long long>()) + (i == 0 ? "" : "*g" + (i > 1 ? "^" + std::to_string(i) : ""));
            }
            return s;
        }
        config_error(name, "expected a literal string or a coefficient array");
    };
    for (const auto& [key, v] : j.items()) {
        if (key == "p" || key == "q_exponent") continue;
        if (key == "q") {
            if (!v.is_number_unsigned()) config_error("q", "must be a positive integer");
            if (!given("--q")) c.q = v.get<std::uint64_t>();
        } else if (key == "zeta") {
            if (!given("--zeta")) c.zeta = lit(v, "zeta");
        } else if (key == "zeta_modulus") {
            // Only the canonical modulus is supported; accept it when it matches.
            continue;
        } else if (key == "eta") {
            if (!given("--eta")) c.eta = lit(v, "eta");
        } else if (key == "mode") {
            if (!v.is_string() || (v != "reduced" && v != "specialized")) config_error("mode", "reduced | specialized");
            if (!given("--mode")) c.mode = v.get<std::string>();
        } else if (key == "t_point") {
            if (!given("--t-point")) c.t_point = lit(v, "t_point");
        } else if (key == "seed") {
            if (!v.is_number_unsigned()) config_error("seed", "must be a non-negative integer");
            if (!given("--seed")) c.seed = v.get<std::uint64_t>();
        } else if (key == "points") {
            if (!v.is_number_unsigned() || v.get<int>() < 1) config_error("points", "must be a positive integer");
            if (!given("--points")) c.points = v.get<int>();
        } else if (key == "k" || key == "k_max") {
            if (!given("--k")) c.k = v.is_string() ? v.get<std::string>() : std::to_string(v.get<long>());
        } else if (key == "format") {
            if (!given("--format")) c.format = v.get<std::string>();
        } else if (key == "output") {
            if (!given("--output")) c.output = v.get<std::string>();
        } else if (key == "nu_choice") {
            if (!given("--nu-choice")) c.nu_choice = v.get<std::size_t>();
        } else {
            config_error(key, "unknown key");
        }
    }
    if (j.contains("p") || j.contains("q_exponent")) {
        if (!j.contains("p") || !j.contains("q_exponent")) config_error("p", "p and q_exponent go together");
        if (!given("--q")) {
            std::uint64_t q = 1;
            for (int i = 0; i < j["q_exponent"].get<int>(); ++i) q *= j["p"].get<std::uint64_t>();
            c.q = q;
        }
    }
}

std::pair<long, long> parse_k(const std::string& s, long dflt_lo, long dflt_hi) {
    if (s.empty()) return {dflt_lo, dflt_hi};
    try {
        const auto dots = s.find("..");
        if (dots == std::string::npos) {
            const long v = std::stol(s);
            return {v, v};
        }
        return {std::stol(s.substr(0, dots)), std::stol(s.substr(dots + 2))};
    } catch (const std::exception&) {
        config_error("k", "expected N or A..B, got '" + s + "'");
    }
}

TowerParams reduced_params(const RunConfig& c) {
    if (!c.eta) config_error("eta", "reduced mode needs --eta");
    const FiniteField F2 = field_q_pow(decompose_q(c.q), 2);
    const FieldElement z = c.zeta ? parse_element(*c.zeta, F2) : default_zeta(c.q);
    return build_params(c.q, z, parse_element(*c.eta, F2), c.nu_choice);
}

void emit(const RunConfig& c, const std::string& content) {
    if (c.output.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
    } else {
        atomic_write(c.output, content.back() == '\n' ? content : content + "\n");
    }
}

json header(const RunConfig& c, const char* command) {
    return {{"command", command}, {"q", c.q}, {"seed", c.seed}};
}

int cmd_verify(const RunConfig& c) {
    std::vector<SuiteResult> suites;
    std::optional<TowerParams> P;
    if (c.eta) P = reduced_params(c);
    const auto seed = c.seed;
    suites.push_back(suite_well_definedness(c.q, Mode::Specialized, c.points, seed));
    if (P) suites.push_back(suite_well_definedness(c.q, Mode::Reduced, c.points, seed, &*P));
    suites.push_back(suite_annihilator(c.q, Mode::Specialized, c.points, seed + 1));
    if (P) suites.push_back(suite_annihilator(c.q, Mode::Reduced, c.points, seed + 1, &*P));
    suites.push_back(suite_isogeny(c.q, c.points, seed + 2));
    suites.push_back(suite_factorization(c.q, c.points, seed + 3));
    const ReconReport R = reconcile_printed_forms(c.q, c.points, seed + 4);
    SuiteResult rs;
    rs.name = "printed_form_reconciliation q=" + std::to_string(c.q);
    for (const auto& e : R.entries)
        if (e.role == "derivation") rs.expect(e.status(), e.name);

    bool ok = rs.pass();
    json out = header(c, "verify");
    if (P) out["params_digest"] = params_digest(*P);
    json arr = json::array();
    std::ostringstream matrix;
    matrix << "suite                                          checks  result\n";
    auto row = [&](const SuiteResult& s) {
        std::string name = s.name;
        name.resize(46, ' ');
        matrix << name << ' ' << std::to_string(s.checks) << std::string(8 - std::min<std::size_t>(7, std::to_string(s.checks).size()), ' ')
               << (s.pass() ? "PASS" : "FAIL") << '\n';
        for (const auto& n : s.notes) matrix << "    " << n << '\n';
    };
    for (const auto& s : suites) {
        ok = ok && s.pass();
        arr.push_back(to_json(s));
        row(s);
    }
    row(rs);
    arr.push_back(to_json(rs));
    out["suites"] = arr;
    out["reconciliation"] = to_json(R);
    out["all_pass"] = ok;
    matrix << "printed forms:\n";
    for (const auto& e : R.entries)
        if (e.role == "printed")
            matrix << "    " << e.name << ": " << e.holds << "/" << e.samples << (e.status() ? " holds" : " differs") << '\n';
    std::cout << matrix.str();
    if (!c.output.empty()) atomic_write(c.output, out.dump(2) + "\n");
    std::cout << (ok ? "ALL PASS" : "FAILURES PRESENT") << std::endl;
    return ok ? 0 : 1;
}

int cmd_supersingular(const RunConfig& c) {
    const TowerParams P = reduced_params(c);
    const auto cmp = compare_supersingular(P);
    auto arr = [&](const std::vector<FieldElement>& v) {
        json a = json::array();
        for (const auto& x : v) a.push_back(to_json(x));
        return a;
    };
    json sub = json::array();
    bool in_q2 = true;
    for (const auto& j : cmp.direct) {
        auto r = restrict_to(j, P.Fq2);
        in_q2 = in_q2 && r.has_value();
        sub.push_back(r ? json(r->str()) : json(nullptr));
    }
    const bool ok = cmp.direct == cmp.display && cmp.direct.size() == P.q() + 1 && in_q2;
    if (c.format == "csv") {
        std::ostringstream os;
        os << "j_fq4,j_fq2,display_agrees\n";
        for (std::size_t i = 0; i < cmp.direct.size(); ++i) {
            os << '"' << cmp.direct[i].str() << "\"," << '"' << (sub[i].is_null() ? "" : sub[i].get<std::string>())
               << "\"," << (std::find(cmp.display.begin(), cmp.display.end(), cmp.direct[i]) != cmp.display.end())
               << '\n';
        }
        emit(c, os.str());
    } else {
        json out = header(c, "supersingular");
        out["params_digest"] = params_digest(P);
        out["field"] = to_json(P.Fq4);
        out["direct"] = arr(cmp.direct);
        out["direct_in_Fq2"] = sub;
        out["display_criterion"] = arr(cmp.display);
        out["simplified_criterion"] = arr(cmp.simplified);
        out["display_agrees"] = cmp.direct == cmp.display;
        out["simplified_agrees"] = cmp.direct == cmp.simplified;
        out["size"] = cmp.direct.size();
        emit(c, out.dump(2));
    }
    return ok ? 0 : 1;
}

int cmd_enumerate(const RunConfig& c) {
    const TowerParams P = reduced_params(c);
    const auto [lo, hi] = parse_k(c.k, 1, 3);
    (void)lo;
    const TowerEnumeration E = enumerate_tower(P, hi);
    if (c.format == "csv") {
        std::ostringstream os;
        os << "k,count,expected,invalid\n";
        for (const auto& L : E.levels) os << L.k << ',' << L.count << ',' << L.expected << ',' << L.invalid << '\n';
        emit(c, os.str());
    } else {
        json out = header(c, "enumerate");
        json counts = json::array();
        for (const auto& L : E.levels) counts.push_back(L.count);
        out["counts"] = counts;
        out.update(to_json(E, P));
        emit(c, out.dump(2));
    }
    return E.all_match() ? 0 : 1;
}

int cmd_genus(const RunConfig& c) {
    const auto [lo, hi] = parse_k(c.k, 1, 10);
    if (lo < 1 || hi < lo) config_error("k", "need 1 <= A <= B");
    const auto rows = genus_table(c.q, lo, hi);
    bool ok = true;
    for (const auto& r : rows) ok = ok && r.genus == genus_general(c.q, 2, 1, 1, 1, {{{1, r.k}}});
    if (c.format == "csv") {
        emit(c, genus_csv(rows));
    } else {
        json out = header(c, "genus");
        json a = json::array();
        for (const auto& r : rows) a.push_back(to_json(r));
        out["rows"] = a;
        out["general_form_agrees"] = ok;
        emit(c, out.dump(2));
    }
    return ok ? 0 : 1;
}

int cmd_ihara(const RunConfig& c) {
    const auto [lo, hi] = parse_k(c.k, 30, 30);
    (void)lo;
    const IharaTable t = ihara_table(c.q, hi);
    const bool ok = t.above_bound && t.decreasing;
    if (c.format == "csv") {
        emit(c, genus_csv(t.rows));
    } else {
        json out = header(c, "ihara");
        json a = json::array();
        for (const auto& r : t.rows) a.push_back(to_json(r));
        out["rows"] = a;
        out["bound"] = static_cast<long long>(t.bound.num);
        out["min_ratio_num"] = i128_str(t.min_ratio.num);
        out["min_ratio_den"] = i128_str(t.min_ratio.den);
        out["above_bound"] = t.above_bound;
        out["strictly_decreasing"] = t.decreasing;
        out["last_gap"] = (t.rows.back().ratio - t.bound).to_double();
        emit(c, out.dump(2));
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "dtower: rank-two Drinfeld modules, I_inf^k isogeny towers and their I_eta reduction.\n"
        "Element literals use the form a+b*g over the canonical generator g of F_{q^2}\n"
        "(any single letter is accepted as the generator symbol, e.g. 1+2i). Worker threads for\n"
        "enumeration come from DTOWER_WORKERS (default 1)."};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string config_path;

    auto add_common = [&](CLI::App* s) {
        s->add_option("--config", config_path, "JSON config file (keys: p, q_exponent, q, zeta, eta, mode, t_point, seed, points, k)");
        s->add_option("--q", cfg.q, "prime power q");
        s->add_option("--zeta", cfg.zeta, "zeta in F_{q^2} \\ F_q (default: g)");
        s->add_option("--eta", cfg.eta, "eta in F_{q^2} for reduced mode, e.g. 1+2*g");
        s->add_option("--mode", cfg.mode, "reduced | specialized");
        s->add_option("--t-point", cfg.t_point, "specialization point (specialized mode)");
        s->add_option("--seed", cfg.seed, "seed for specialization sampling");
        s->add_option("--points", cfg.points, "number of specialization points per suite");
        s->add_option("--k", cfg.k, "level N or range A..B");
        s->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
        s->add_option("--output", cfg.output, "output path (written atomically); stdout if absent");
        s->add_option("--nu-choice", cfg.nu_choice, "index of the (q+1)-th root used for nu");
    };
    auto* verify = app.add_subcommand("verify", "run the identity suites and print a pass/fail matrix");
    auto* ss = app.add_subcommand("supersingular", "supersingular j-invariants of the reduced minimal model");
    auto* en = app.add_subcommand("enumerate", "enumerate supersingular tower points over F_{q^4}");
    auto* ge = app.add_subcommand("genus", "genus table");
    auto* ih = app.add_subcommand("ihara", "supersingular count / genus ratios");
    for (auto* s : {verify, ss, en, ge, ih}) add_common(s);

    CLI11_PARSE(app, argc, argv);
    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!config_path.empty()) merge_config(cfg, config_path, *sub);
        decompose_q(cfg.q);
        if (cfg.points < 1) config_error("points", "must be positive");
        if (sub == verify) return cmd_verify(cfg);
        if (sub == ss) return cmd_supersingular(cfg);
        if (sub == en) return cmd_enumerate(cfg);
        if (sub == ge) return cmd_genus(cfg);
        if (sub == ih) return cmd_ihara(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
    return 2;
}
