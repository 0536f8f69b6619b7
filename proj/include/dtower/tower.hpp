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
 * @file tower.hpp
 * @brief The I_eta-reduced tower over F_{q^4}: supersingular j, point enumeration, genus and Ihara analytics.
 */

#ifndef DTOWER_TOWER_HPP
#define DTOWER_TOWER_HPP

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "recursion.hpp"

namespace dtower {

// ---------------------------------------------------------------------------------------------------------------
// Supersingular j.

namespace detail {
inline void require_reduced(const TowerParams& P) {
    if (P.mode != Mode::Reduced) throw Error(Errc::InvalidParams, "operation needs reduced-mode params");
}
}  // namespace detail

/// (eta^{q+1} - zeta^{q+1}) Phi_x - (eta + eta^q - zeta - zeta^q) Phi_y + 1 for the reduced minimal model.
inline SkewPoly z_eta_image(const TowerParams& P, const FieldElement& j) {
    detail::require_reduced(P);
    const DrinfeldModule M = build_minimal(P, j, 0);
    const FiniteField& F = M.field();
    const auto c = P.z_eta_coeffs();
    const auto q = P.q();
    return SkewPoly::constant(embed(c[0], F), q) * M.phi_x + SkewPoly::constant(embed(c[1], F), q) * M.phi_y +
           SkewPoly::constant(F.one(), q);
}

/// (j / (1 - zeta^{1-q}) + eta zeta^{-1} - 1)^{q+1} + (zeta^{-1} - zeta^{-q})(eta - eta^q)
inline FieldElement supersingular_display(const TowerParams& P, const FieldElement& j) {
    const FiniteField& F = j.field();
    const auto q = P.q();
    const FieldElement z = P.lift(P.zeta, F), e = P.lift(P.eta2, F), one = F.one();
    return (j / (one - z / z.pow(q)) + e / z - one).pow(q + 1) + (z.inv() - z.pow(q).inv()) * (e - e.pow(q));
}

/// (j + (eta - zeta)/(zeta - zeta^{1-q}))^{q+1} + (eta - eta^q)/(zeta - zeta^q)
inline FieldElement supersingular_simplified(const TowerParams& P, const FieldElement& j) {
    const FiniteField& F = j.field();
    const auto q = P.q();
    const FieldElement z = P.lift(P.zeta, F), e = P.lift(P.eta2, F);
    return (j + (e - z) / (z - z / z.pow(q))).pow(q + 1) + (e - e.pow(q)) / (z - z.pow(q));
}

/// All nonzero j in F_{q^4} whose reduced z_eta image has vanishing tau^2 coefficient, in code order.
inline std::vector<FieldElement> supersingular_j_set(const TowerParams& P) {
    detail::require_reduced(P);
    if (supersingular_display(P, P.Fq4.zero()).is_zero())
        throw Error(Errc::DegenerateEta, "j = 0 satisfies the supersingular criterion; choose another eta");
    std::vector<FieldElement> out;
    for (std::uint32_t c = 1; c < P.Fq4.size(); ++c) {
        const FieldElement j = P.Fq4.element(c);
        if (z_eta_image(P, j).coeff(2).is_zero()) out.push_back(j);
    }
    return out;
}

/// Zero set of a scalar criterion over nonzero j in F_{q^4}.
template <class Criterion>
std::vector<FieldElement> j_scan(const TowerParams& P, Criterion crit) {
    detail::require_reduced(P);
    std::vector<FieldElement> out;
    for (std::uint32_t c = 1; c < P.Fq4.size(); ++c) {
        const FieldElement j = P.Fq4.element(c);
        if (crit(P, j).is_zero()) out.push_back(j);
    }
    return out;
}

// ---------------------------------------------------------------------------------------------------------------
// Points.

struct TowerPoint {
    FieldElement j0;
    std::vector<FieldElement> ws;

    friend bool operator==(const TowerPoint& a, const TowerPoint& b) { return a.j0 == b.j0 && a.ws == b.ws; }
    friend bool operator<(const TowerPoint& a, const TowerPoint& b) {
        if (a.j0 != b.j0) return a.j0 < b.j0;
        return std::lexicographical_compare(a.ws.begin(), a.ws.end(), b.ws.begin(), b.ws.end());
    }
};

/// True iff every level equation holds and no w equals the excluded nabla value.
inline bool validate_point(const TowerParams& P, const TowerPoint& pt) {
    if (pt.j0.is_zero()) return false;
    try {
        for (std::size_t i = 0; i < pt.ws.size(); ++i) {
            const long k = static_cast<long>(i) + 1;
            const FieldElement& w = pt.ws[i];
            if (w.is_zero()) return false;
            if (k == 1) {
                if (!Xi_eval(P, pt.j0, w, 0).is_zero()) return false;
            } else {
                const FieldElement& wp = pt.ws[i - 1];
                if (!Xi_nabla_eval(P, wp, w, k - 1).is_zero()) return false;
                if (w == w_nabla(P, wp, k - 1)) return false;
            }
        }
    } catch (const Error&) {
        return false;
    }
    return true;
}

struct ExtendResult {
    std::vector<TowerPoint> points;
    std::vector<std::string> warnings;
};

inline unsigned worker_count() {
    if (const char* s = std::getenv("DTOWER_WORKERS")) {
        const long v = std::strtol(s, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
    }
    return 1;
}

namespace detail {

inline std::vector<TowerPoint> children(const TowerParams& P, const TowerPoint& pt, std::string& warn) {
    std::vector<TowerPoint> out;
    const FiniteField& F = P.Fq4;
    if (!validate_point(P, pt)) {
        warn = "point fails its level equations; no children";
        return out;
    }
    std::vector<FieldElement> roots;
    std::optional<FieldElement> excluded;
    const long k = static_cast<long>(pt.ws.size());
    if (k == 0) {
        roots = Xi_roots(P, pt.j0, 0, F);
    } else {
        roots = poly_roots(Xi_nabla_poly(P, pt.ws.back(), k), F);
        excluded = w_nabla(P, pt.ws.back(), k);
    }
    for (const auto& r : roots) {
        if (excluded && r == *excluded) {
            warn = "excluded nabla value is a root of the reduced level equation";
            continue;
        }
        TowerPoint c = pt;
        c.ws.push_back(r);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace detail

/// All children of each point at the next level, over F_{q^4}. Workers split the input; order is input order.
inline ExtendResult extend_points(const TowerParams& P, const std::vector<TowerPoint>& points,
                                  unsigned workers = worker_count()) {
    detail::require_reduced(P);
    const std::size_t n = points.size();
    std::vector<std::vector<TowerPoint>> kids(n);
    std::vector<std::string> warns(n);
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) kids[i] = detail::children(P, points[i], warns[i]);
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        work(0, n);
    } else {
        std::vector<std::thread> th;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
            if (lo < hi) th.emplace_back(work, lo, hi);
        }
        for (auto& t : th) t.join();
    }
    ExtendResult res;
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& c : kids[i]) res.points.push_back(std::move(c));
        if (!warns[i].empty()) res.warnings.push_back("input point " + std::to_string(i) + ": " + warns[i]);
    }
    std::sort(res.points.begin(), res.points.end());
    res.points.erase(std::unique(res.points.begin(), res.points.end()), res.points.end());
    return res;
}

struct TowerLevel {
    long k = 0;
    std::uint64_t count = 0;
    std::uint64_t expected = 0;
    std::uint64_t invalid = 0;  // points failing independent re-validation
    std::vector<TowerPoint> points;
};

struct TowerEnumeration {
    std::vector<FieldElement> supersingular;
    std::vector<TowerLevel> levels;
    std::vector<std::string> warnings;

    bool all_match() const {
        for (const auto& l : levels)
            if (l.count != l.expected || l.invalid != 0) return false;
        return true;
    }
};

/// (q+1)^2 q^{k-1}
inline std::uint64_t expected_count(std::uint64_t q, long k) {
    std::uint64_t v = (q + 1) * (q + 1);
    for (long i = 1; i < k; ++i) v *= q;
    return v;
}

inline TowerEnumeration enumerate_tower(const TowerParams& P, long k_max, unsigned workers = worker_count()) {
    detail::require_reduced(P);
    if (k_max < 1) throw Error(Errc::InvalidParams, "k_max must be at least 1");
    TowerEnumeration E;
    E.supersingular = supersingular_j_set(P);
    std::vector<TowerPoint> cur;
    for (const auto& j : E.supersingular) cur.push_back({j, {}});
    for (long k = 1; k <= k_max; ++k) {
        ExtendResult r = extend_points(P, cur, workers);
        for (auto& w : r.warnings) E.warnings.push_back("level " + std::to_string(k) + ": " + w);
        TowerLevel L;
        L.k = k;
        L.count = r.points.size();
        L.expected = expected_count(P.q(), k);
        for (const auto& pt : r.points)
            if (!validate_point(P, pt)) ++L.invalid;
        L.points = r.points;
        cur = std::move(r.points);
        E.levels.push_back(std::move(L));
    }
    return E;
}

// ---------------------------------------------------------------------------------------------------------------
// Genus and Ihara analytics (exact).

struct Rational {
    __int128 num = 0;
    __int128 den = 1;

    static __int128 gcd(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    Rational() = default;
    Rational(__int128 n, __int128 d = 1) : num(n), den(d) {
        if (den == 0) throw Error(Errc::InvalidParams, "zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const __int128 g = gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    friend Rational operator+(const Rational& a, const Rational& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Rational operator-(const Rational& a, const Rational& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend Rational operator*(const Rational& a, const Rational& b) { return {a.num * b.num, a.den * b.den}; }
    friend Rational operator/(const Rational& a, const Rational& b) { return {a.num * b.den, a.den * b.num}; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    bool is_integer() const { return den == 1; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline __int128 ipow(__int128 b, long e) {
    __int128 r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

struct IdealFactorization {
    std::vector<std::pair<long, long>> primes;  // (degree d_i, multiplicity r_i)
    std::size_t s() const { return primes.size(); }
};

struct EpsKappa {
    __int128 epsilon = 1;
    __int128 kappa = 1;
};

/// epsilon = prod q_i^{r_i-1}(q_i+1), kappa = prod (q_i^{floor(r_i/2)} + q_i^{r_i-floor(r_i/2)-1}), q_i = q^{d_i}.
inline EpsKappa epsilon_kappa(const IdealFactorization& f, std::uint64_t q) {
    EpsKappa ek;
    for (const auto& [d, r] : f.primes) {
        if (d < 1 || r < 1) throw Error(Errc::InvalidParams, "prime degrees and multiplicities must be positive");
        const __int128 qi = ipow(static_cast<__int128>(q), d);
        ek.epsilon *= ipow(qi, r - 1) * (qi + 1);
        ek.kappa *= ipow(qi, r / 2) + ipow(qi, r - r / 2 - 1);
    }
    return ek;
}

inline long to_integer(const Rational& g, const char* what) {
    if (!g.is_integer()) throw Error(Errc::NonInteger, what);
    return static_cast<long>(g.num);
}

/// -1 + q^{k-1}(q+1)/(q-1) - 2/(q-1) (q^{floor(k/2)} + q^{k-floor(k/2)-1} - 1)
inline long genus(std::uint64_t q, long k) {
    if (k < 1) throw Error(Errc::InvalidParams, "k must be at least 1");
    const __int128 Q = q;
    const Rational g = Rational(-1) + Rational(ipow(Q, k - 1) * (Q + 1), Q - 1) -
                       Rational(2, Q - 1) * Rational(ipow(Q, k / 2) + ipow(Q, k - k / 2 - 1) - 1);
    return to_integer(g, "genus formula produced a non-integer");
}

/// 1 + (q^delta - 1) eps P(q) / ((q^2-1)(q-1)) - P(1) delta / (q-1) (kappa + 2^{s-1}(q-2)) + Delta,
/// Delta = -P(-1) 2^{s-1} q / (q+1) when delta is odd and all primes have even degree, else 0.
inline long genus_general(std::uint64_t q, long delta, long PK_q, long PK_1, long PK_m1, const IdealFactorization& f) {
    if (delta < 1 || f.s() < 1) throw Error(Errc::InvalidParams, "delta and s must be at least 1");
    const __int128 Q = q;
    const EpsKappa ek = epsilon_kappa(f, q);
    const __int128 two_s1 = ipow(2, static_cast<long>(f.s()) - 1);
    Rational g = Rational(1) + Rational((ipow(Q, delta) - 1) * ek.epsilon * PK_q, (Q * Q - 1) * (Q - 1)) -
                 Rational(static_cast<__int128>(PK_1) * delta, Q - 1) * Rational(ek.kappa + two_s1 * (Q - 2));
    bool all_even = true;
    for (const auto& pr : f.primes) all_even = all_even && (pr.first % 2 == 0);
    if (delta % 2 == 1 && all_even) g = g - Rational(static_cast<__int128>(PK_m1) * two_s1 * Q, Q + 1);
    return to_integer(g, "general genus formula produced a non-integer");
}

struct GenusRow {
    long k = 0;
    long long epsilon = 0;
    long long kappa = 0;
    long genus = 0;
    long long ss_count = 0;
    Rational ratio;       // ss_count / genus; meaningful only when has_ratio
    bool has_ratio = false;
};

inline GenusRow genus_row(std::uint64_t q, long k) {
    GenusRow r;
    r.k = k;
    const EpsKappa ek = epsilon_kappa({{{1, k}}}, q);
    r.epsilon = static_cast<long long>(ek.epsilon);
    r.kappa = static_cast<long long>(ek.kappa);
    r.genus = genus(q, k);
    r.ss_count = static_cast<long long>(expected_count(q, k));
    if (r.genus > 0) {
        r.ratio = Rational(r.ss_count, r.genus);
        r.has_ratio = true;
    }
    return r;
}

inline std::vector<GenusRow> genus_table(std::uint64_t q, long k_lo, long k_hi) {
    std::vector<GenusRow> rows;
    for (long k = k_lo; k <= k_hi; ++k) rows.push_back(genus_row(q, k));
    return rows;
}

struct IharaTable {
    std::vector<GenusRow> rows;
    Rational bound;            // q^2 - 1
    Rational min_ratio;
    bool above_bound = true;   // every ratio > q^2 - 1
    bool decreasing = true;    // ratio strictly decreasing in k
};

inline IharaTable ihara_table(std::uint64_t q, long k_max) {
    if (k_max < 2) throw Error(Errc::InvalidParams, "k_max must be at least 2");
    IharaTable t;
    t.bound = Rational(static_cast<__int128>(q) * q - 1);
    t.rows = genus_table(q, 2, k_max);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const Rational& r = t.rows[i].ratio;
        if (!t.rows[i].has_ratio || !(r > t.bound)) t.above_bound = false;
        if (i > 0 && !(r < t.rows[i - 1].ratio)) t.decreasing = false;
        if (i == 0 || r < t.min_ratio) t.min_ratio = r;
    }
    return t;
}

}  // namespace dtower

#endif  // DTOWER_TOWER_HPP
