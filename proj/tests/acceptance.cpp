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

// Acceptance runner: one [PASS]/[FAIL] line per criterion; exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "dtower/dtower.hpp"
#include "dtower/serialize.hpp"

using namespace dtower;

namespace {

constexpr int kPoints = 20;
constexpr std::uint64_t kSeed = 7;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int n, const std::string& title, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::ostringstream secs;
    secs << std::fixed << std::setprecision(2) << s;
    std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << title << " -- " << o.detail << " ("
              << secs.str() << " s)" << std::endl;
}

double elapsed(const std::function<void()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome suites(const std::vector<SuiteResult>& rs, double limit = 0.0, double secs = 0.0) {
    Outcome o{true, {}};
    for (const auto& r : rs) {
        o.pass = o.pass && r.pass();
        o.detail += r.name + " " + std::to_string(r.checks - r.failures) + "/" + std::to_string(r.checks) + "; ";
        for (const auto& n : r.notes) o.detail += "[" + n + "] ";
    }
    if (limit > 0.0) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(2) << secs;
        o.detail += "time " + s.str() + " s (limit " + std::to_string(static_cast<int>(limit)) + " s)";
        o.pass = o.pass && secs < limit;
    }
    return o;
}

FieldElement f9(std::int64_t a, std::int64_t b) {
    return make_field(3, 2).from_coeffs(std::vector<std::int64_t>{a, b});
}

TowerParams reduced3() { return build_params(3, f9(0, 1), f9(1, 2)); }

}  // namespace

int main(int argc, char** argv) {
    const std::string report_path = argc > 1 ? argv[1] : "reconciliation_report.json";
    const TowerParams R3 = reduced3();

    criterion(1, "well-definedness of both models (q=2,3 specialized; q=3 reduced)", [&] {
        std::vector<SuiteResult> rs;
        const double s = elapsed([&] {
            rs.push_back(suite_well_definedness(2, Mode::Specialized, kPoints, kSeed));
            rs.push_back(suite_well_definedness(3, Mode::Specialized, kPoints, kSeed));
            rs.push_back(suite_well_definedness(3, Mode::Reduced, kPoints, kSeed, &R3));
        });
        return suites(rs, 10.0, s);
    });

    criterion(2, "annihilator oracle: right gcd equals the closed form", [&] {
        return suites({suite_annihilator(2, Mode::Specialized, kPoints, kSeed + 1),
                       suite_annihilator(3, Mode::Specialized, kPoints, kSeed + 1),
                       suite_annihilator(3, Mode::Reduced, kPoints, kSeed + 1, &R3)});
    });

    criterion(3, "isogeny relations at level 1 and j-update forms", [&] {
        return suites({suite_isogeny(2, kPoints, kSeed + 2), suite_isogeny(3, kPoints, kSeed + 2)});
    });

    criterion(4, "factorization of the level equations through the nabla roots", [&] {
        return suites({suite_factorization(2, kPoints, kSeed + 3), suite_factorization(3, kPoints, kSeed + 3)});
    });

    criterion(5, "supersingular set for q=3, zeta=i, eta=1+2i", [&] {
        SupersingularCompare c;
        const double s = elapsed([&] { c = compare_supersingular(R3); });
        std::vector<FieldElement> want{f9(1, 0), f9(1, 1), f9(0, 2), f9(2, 2)};
        std::sort(want.begin(), want.end());
        auto restricted = [&](const std::vector<FieldElement>& v) {
            std::vector<FieldElement> out;
            for (const auto& j : v)
                if (auto r = restrict_to(j, R3.Fq2)) out.push_back(*r);
            std::sort(out.begin(), out.end());
            return out;
        };
        const auto direct = restricted(c.direct), display = restricted(c.display);
        std::string d = "direct {";
        for (std::size_t i = 0; i < direct.size(); ++i) d += (i ? ", " : "") + direct[i].str();
        d += "}, display criterion " + std::string(display == direct ? "agrees" : "differs");
        d += ", simplified display finds " + std::to_string(c.simplified.size()) + " (recorded only)";
        std::ostringstream t;
        t << std::fixed << std::setprecision(3) << s;
        d += ", time " + t.str() + " s";
        return Outcome{direct == want && c.direct.size() == 4 && display == direct && s < 5.0, d};
    });

    criterion(6, "tower counts over F_81 for k=1..5 with re-validation", [&] {
        TowerEnumeration E;
        const double s = elapsed([&] { E = enumerate_tower(R3, 5); });
        bool ok = E.levels.size() == 5 && E.warnings.empty();
        std::string d = "counts";
        const std::uint64_t want[] = {16, 48, 144, 432, 1296};
        long revalidated = 0;
        for (std::size_t i = 0; i < E.levels.size(); ++i) {
            const TowerLevel& L = E.levels[i];
            d += " " + std::to_string(L.count);
            ok = ok && i < 5 && L.count == want[i] && L.points.size() == L.count;
            for (const auto& pt : L.points) {
                const bool v = validate_point(R3, pt) && pt.ws.size() == static_cast<std::size_t>(L.k);
                ok = ok && v;
                revalidated += v;
            }
        }
        std::ostringstream t;
        t << std::fixed << std::setprecision(2) << s;
        d += "; re-validated " + std::to_string(revalidated) + " points; time " + t.str() + " s";
        return Outcome{ok && s < 60.0, d};
    });

    criterion(7, "genus formula and its general form for k=1..10", [&] {
        bool ok = genus(3, 1) == 0 && genus(3, 2) == 2 && genus(3, 3) == 12;
        std::string d = "genus(3,1..3) = " + std::to_string(genus(3, 1)) + "," + std::to_string(genus(3, 2)) + "," +
                        std::to_string(genus(3, 3));
        int agree = 0;
        for (long k = 1; k <= 10; ++k)
            if (genus(3, k) == genus_general(3, 2, 1, 1, 1, {{{1, k}}})) ++agree;
        ok = ok && agree == 10;
        d += "; general form agrees at " + std::to_string(agree) + "/10 levels";
        return Outcome{ok, d};
    });

    criterion(8, "supersingular/genus ratio above 8 and decreasing for k=2..30", [&] {
        const IharaTable t = ihara_table(3, 30);
        const double gap = (t.rows.back().ratio - t.bound).to_double();
        std::ostringstream d;
        d << "ratio_30 = " << i128_str(t.rows.back().ratio.num) << "/" << i128_str(t.rows.back().ratio.den)
          << ", |ratio_30 - 8| = " << std::scientific << std::setprecision(3) << gap
          << ", above bound: " << (t.above_bound ? "yes" : "no") << ", strictly decreasing: " << (t.decreasing ? "yes" : "no");
        return Outcome{t.above_bound && t.decreasing && gap > 0 && gap < 0.01, d.str()};
    });

    criterion(9, "kernel cardinalities of the annihilator and of the chains (k<=3)", [&] {
        const KernelReport K = kernel_report(R3, 3);
        std::string d = "annihilator kernel " + std::to_string(K.annihilator_kernel) + " in F_3^" +
                        std::to_string(K.annihilator_ambient_m) + "; chain kernels";
        for (auto n : K.chain_kernels) d += " " + std::to_string(n);
        d += " in F_3^" + std::to_string(K.chain_ambient_m) + "; nested: " + (K.nested ? "yes" : "no");
        const bool ok = K.annihilator_kernel == 9 && K.chain_kernels == std::vector<std::size_t>{3, 9, 27} && K.nested;
        return Outcome{ok, d};
    });

    criterion(10, "printed-statement reconciliation report", [&] {
        const ReconReport R = reconcile_printed_forms(3, kPoints, kSeed + 4);
        json out = {{"q", 3}, {"seed", kSeed + 4}};
        out.update(to_json(R));
        atomic_write(report_path, out.dump(2) + "\n");
        int printed = 0, printed_hold = 0;
        for (const auto& e : R.entries)
            if (e.role == "printed") {
                ++printed;
                printed_hold += e.status();
            }
        std::string d = std::to_string(R.specializations) + " specializations; derivation identities " +
                        (R.derivation_ok() ? "all hold" : "FAIL") + "; printed forms holding " +
                        std::to_string(printed_hold) + "/" + std::to_string(printed) + "; report at " + report_path;
        return Outcome{R.derivation_ok() && R.specializations >= kPoints, d};
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
