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

/**
 * @file serialize.hpp
 * @brief JSON and CSV forms of fields, elements, skew polynomials, modules, chains, point sets and tables,
 *        plus element literal parsing and atomic file output.
 *
 * Requires nlohmann/json (json.hpp on the include path).
 */

#ifndef DTOWER_SERIALIZE_HPP
#define DTOWER_SERIALIZE_HPP

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "suites.hpp"

namespace dtower {

using json = nlohmann::ordered_json;

inline json to_json(const FieldElement& a) {
    json j = json::array();
    for (auto c : a.coeffs()) j.push_back(c);
    return j;
}

inline json to_json(const FiniteField& F) {
    json mod = json::array();
    for (auto c : F.modulus()) mod.push_back(c);
    return {{"p", F.p()}, {"m", F.m()}, {"modulus", mod}};
}

inline json to_json(const SkewPoly& f) {
    json c = json::array();
    for (const auto& a : f.coeffs()) c.push_back(to_json(a));
    return {{"twist_q", f.twist_q()}, {"coeffs", c}};
}

inline json to_json(const DrinfeldModule& M) {
    return {{"model", model_name(M.model)},       {"type_tag", type_name(M.type_tag)},
            {"twist_level", M.twist_level},       {"field", to_json(M.field())},
            {"parameter", to_json(M.parameter)},  {"phi_x", to_json(M.phi_x)},
            {"phi_y", to_json(M.phi_y)}};
}

inline json to_json(const TowerParams& P) {
    json j = {{"mode", P.mode == Mode::Reduced ? "reduced" : "specialized"},
              {"q", P.q()},
              {"p", P.qs.p},
              {"q_exponent", P.qs.e},
              {"Fq2", to_json(P.Fq2)},
              {"zeta", to_json(P.zeta2)}};
    if (P.mode == Mode::Reduced) j["eta"] = to_json(P.eta2);
    j["base_field"] = to_json(P.base);
    j["t"] = to_json(P.t);
    j["T"] = to_json(P.T);
    j["x"] = to_json(P.x);
    j["y"] = to_json(P.y);
    j["ambient"] = to_json(P.ambient);
    j["nu_extension_m"] = P.nu_extension;
    j["nu_choice"] = P.nu_choice;
    j["nu"] = to_json(P.nu);
    if (P.mode == Mode::Reduced) {
        json z = json::array();
        for (const auto& c : P.z_eta_coeffs()) z.push_back(to_json(c));
        j["z_eta_coeffs"] = z;
    }
    return j;
}

/// FNV-1a 64 over the canonical params JSON, as 16 hex digits.
inline std::string params_digest(const TowerParams& P) {
    const std::string s = to_json(P).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline json to_json(const NormalizedChain& ch) {
    json lv = json::array();
    for (const auto& l : ch.levels) {
        json e = {{"k", l.k}, {"param", to_json(l.lambda)}};
        e["torsion_choice"] = l.u ? to_json(*l.u) : json(nullptr);
        lv.push_back(e);
    }
    return {{"model", "normalized"}, {"start", to_json(ch.levels.front().lambda)}, {"levels", lv},
            {"omega", to_json(ch.omega)}};
}

inline json to_json(const MinimalChain& ch) {
    json lv = json::array();
    for (const auto& l : ch.levels) {
        json e = {{"k", l.k}, {"param", to_json(l.j)}};
        e["torsion_choice"] = l.w ? to_json(*l.w) : json(nullptr);
        if (l.delta_pow) e["delta_pow"] = to_json(*l.delta_pow);
        lv.push_back(e);
    }
    return {{"model", "minimal"}, {"start", to_json(ch.levels.front().j)}, {"levels", lv},
            {"omega", to_json(ch.omega)}};
}

inline json to_json(const TowerEnumeration& E, const TowerParams& P) {
    json ss = json::array();
    for (const auto& j : E.supersingular) ss.push_back(to_json(j));
    json lv = json::array();
    for (const auto& L : E.levels) {
        json pts = json::array();
        for (const auto& pt : L.points) {
            json row = json::array({to_json(pt.j0)});
            for (const auto& w : pt.ws) row.push_back(to_json(w));
            pts.push_back(row);
        }
        lv.push_back({{"k", L.k}, {"count", L.count}, {"expected", L.expected}, {"invalid", L.invalid},
                      {"points", pts}});
    }
    json w = json::array();
    for (const auto& s : E.warnings) w.push_back(s);
    return {{"params_digest", params_digest(P)}, {"field", to_json(P.Fq4)}, {"supersingular", ss},
            {"levels", lv}, {"warnings", w}};
}

inline std::string i128_str(__int128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    std::string s;
    while (v != 0) {
        const int d = static_cast<int>(v % 10);
        s.push_back(static_cast<char>('0' + (d < 0 ? -d : d)));
        v /= 10;
    }
    if (neg) s.push_back('-');
    return {s.rbegin(), s.rend()};
}

inline json to_json(const GenusRow& r) {
    json j = {{"k", r.k}, {"epsilon", r.epsilon}, {"kappa", r.kappa}, {"genus", r.genus}, {"ss_count", r.ss_count}};
    if (r.has_ratio) {
        j["ratio_num"] = static_cast<long long>(r.ratio.num);
        j["ratio_den"] = static_cast<long long>(r.ratio.den);
        j["ratio"] = r.ratio.to_double();
    } else {
        j["ratio_num"] = nullptr;
        j["ratio_den"] = nullptr;
        j["ratio"] = nullptr;
    }
    return j;
}

/// k,epsilon,kappa,genus,ss_count,ratio_num,ratio_den; the ratio columns are empty when the genus is 0.
inline std::string genus_csv(const std::vector<GenusRow>& rows) {
    std::ostringstream os;
    os << "k,epsilon,kappa,genus,ss_count,ratio_num,ratio_den\n";
    for (const auto& r : rows) {
        os << r.k << ',' << r.epsilon << ',' << r.kappa << ',' << r.genus << ',' << r.ss_count << ',';
        if (r.has_ratio) os << i128_str(r.ratio.num) << ',' << i128_str(r.ratio.den);
        else os << ',';
        os << '\n';
    }
    return os.str();
}

inline json to_json(const SuiteResult& r) {
    json n = json::array();
    for (const auto& s : r.notes) n.push_back(s);
    return {{"name", r.name}, {"pass", r.pass()}, {"checks", r.checks}, {"failures", r.failures}, {"notes", n}};
}

inline json to_json(const ReconReport& R) {
    json e = json::array();
    for (const auto& x : R.entries)
        e.push_back({{"name", x.name},
                     {"role", x.role},
                     {"statement", x.printed},
                     {"samples", x.samples},
                     {"holds", x.holds},
                     {"status", x.status() ? "holds" : (x.holds == 0 ? "fails" : "partial")}});
    return {{"specializations", R.specializations}, {"derivation_identities_hold", R.derivation_ok()}, {"entries", e}};
}

/// Parses "a + b*g + c*g^2" (also "a+bg", "1+2i") over the canonical generator of F. Any single letter names g.
inline FieldElement parse_element(const std::string& text, const FiniteField& F) {
    std::vector<std::int64_t> coeffs(F.m(), 0);
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw Error(Errc::ConfigError, "empty element literal");
    std::size_t i = 0;
    char symbol = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        std::int64_t coef = 1;
        bool has_num = false;
        std::size_t st = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i > st) {
            coef = std::stoll(s.substr(st, i - st));
            has_num = true;
        }
        if (i < s.size() && s[i] == '*') ++i;
        std::int64_t power = 0;
        if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
            if (symbol != 0 && s[i] != symbol) throw Error(Errc::ConfigError, "mixed generator symbols in " + text);
            symbol = s[i++];
            power = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                st = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (i == st) throw Error(Errc::ConfigError, "missing exponent in " + text);
                power = std::stoll(s.substr(st, i - st));
            }
        } else if (!has_num) {
            throw Error(Errc::ConfigError, "cannot parse element literal '" + text + "'");
        }
        if (i < s.size() && s[i] != '+' && s[i] != '-')
            throw Error(Errc::ConfigError, "unexpected character in element literal '" + text + "'");
        if (power >= static_cast<std::int64_t>(F.m())) {
            // Reduce through field arithmetic for powers beyond the basis.
            FieldElement extra = F.from_int(sign * coef) * F.gen().pow(static_cast<std::uint64_t>(power));
            const auto d = extra.coeffs();
            for (std::size_t k = 0; k < d.size(); ++k) coeffs[k] += d[k];
        } else {
            coeffs[static_cast<std::size_t>(power)] += sign * coef;
        }
    }
    return F.from_coeffs(coeffs);
}

/// Coefficient list form ([a, b, ...]) or literal string.
inline FieldElement element_from_json(const json& j, const FiniteField& F) {
    if (j.is_string()) return parse_element(j.get<std::string>(), F);
    if (j.is_array()) {
        std::vector<std::int64_t> c;
        for (const auto& x : j) c.push_back(x.get<std::int64_t>());
        if (c.size() > F.m()) throw Error(Errc::ConfigError, "too many coefficients for the field");
        return F.from_coeffs(c);
    }
    if (j.is_number_integer()) return F.from_int(j.get<std::int64_t>());
    throw Error(Errc::ConfigError, "element must be a string literal or a coefficient array");
}

/// Writes to `path` through a temporary file in the same directory and a rename.
inline void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty()) dir = ".";
    fs::create_directories(dir);
    const fs::path tmp = dir / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::ConfigError, "cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw Error(Errc::ConfigError, "write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error(Errc::ConfigError, "rename to " + path + " failed: " + ec.message());
    }
}

}  // namespace dtower

#endif  // DTOWER_SERIALIZE_HPP
