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
 * @file suites.hpp
 * @brief Verification suites over random specialization points.
 *
 * An identity in the transcendental t (and lambda, j) is checked by exact evaluation at sampled points of the
 * verification field. Sampling uses raw std::mt19937_64 output reduced modulo the field size, so a seed fixes the
 * points on every platform.
 */

#ifndef DTOWER_SUITES_HPP
#define DTOWER_SUITES_HPP

#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tower.hpp"

namespace dtower {

struct SuiteResult {
    std::string name;
    long checks = 0;
    long failures = 0;
    std::vector<std::string> notes;
    double seconds = 0.0;

    bool pass() const { return checks > 0 && failures == 0; }
    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            ++failures;
            if (notes.size() < 20) notes.push_back("failed: " + what);
        }
    }
};

class Sampler {
   public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    FieldElement element(const FiniteField& F) { return F.element(static_cast<std::uint32_t>(rng_() % F.size())); }

    FieldElement nonzero(const FiniteField& F) {
        for (;;) {
            const FieldElement a = element(F);
            if (!a.is_zero()) return a;
        }
    }

    /// Specialized params at a fresh t where nu exists.
    TowerParams specialized(std::uint64_t q) {
        const FiniteField W = verification_field(q);
        const FieldElement z = default_zeta(q);
        for (;;) {
            try {
                return build_params_specialized(q, z, element(W));
            } catch (const Error&) {
            }
        }
    }

    std::mt19937_64& rng() { return rng_; }

   private:
    std::mt19937_64 rng_;
};

namespace detail {

template <class F>
SuiteResult timed(const std::string& name, F body) {
    SuiteResult r;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        ++r.failures;
        r.notes.push_back(std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

/// A nonzero lambda whose level-1 xi has a root in `field`, with that root.
inline std::pair<FieldElement, FieldElement> lambda_with_root(const TowerParams& P, Sampler& S,
                                                              const FiniteField& field) {
    for (;;) {
        const FieldElement lam = S.nonzero(field);
        auto r = xi_roots(P, lam, 1, field);
        if (!r.empty()) return {lam, r[S.rng()() % r.size()]};
    }
}

inline std::pair<FieldElement, FieldElement> j_with_root(const TowerParams& P, Sampler& S, const FiniteField& field) {
    for (;;) {
        const FieldElement j = S.nonzero(field);
        auto r = Xi_roots(P, j, 0, field);
        if (!r.empty()) return {j, r[S.rng()() % r.size()]};
    }
}

inline Poly poly_sub(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), b[0].field().zero());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

/// Params list: `points` specialized samples, or the single reduced params repeated.
inline std::vector<TowerParams> param_points(std::uint64_t q, Mode mode, int points, Sampler& S,
                                             const TowerParams* reduced) {
    std::vector<TowerParams> out;
    for (int i = 0; i < points; ++i) out.push_back(mode == Mode::Reduced ? *reduced : S.specialized(q));
    return out;
}

/// Field in which parameters are sampled for a params set.
inline FiniteField sample_field(const TowerParams& P) { return P.ambient; }

}  // namespace detail

/// Degree, leading types, algebra relation, commutation and constant terms for both models and both parities.
inline SuiteResult suite_well_definedness(std::uint64_t q, Mode mode, int points, std::uint64_t seed,
                                          const TowerParams* reduced = nullptr) {
    const std::string name = std::string("well_definedness q=") + std::to_string(q) +
                             (mode == Mode::Reduced ? " reduced" : " specialized");
    return detail::timed(name, [&](SuiteResult& r) {
        Sampler S(seed);
        for (const auto& P : detail::param_points(q, mode, points, S, reduced)) {
            const FiniteField F = detail::sample_field(P);
            for (long k = 0; k < 2; ++k) {
                const auto rn = verify_module(P, build_normalized(P, S.nonzero(F), k));
                const auto rm = verify_module(P, build_minimal(P, S.nonzero(F), k));
                for (const auto* rep : {&rn, &rm})
                    for (const auto& c : rep->checks)
                        if (c.name.rfind("gcd", 0) != 0) r.expect(c.pass, c.name + " k=" + std::to_string(k));
            }
        }
    });
}

/// right_gcd_monic(phi_x, phi_y) against the closed-form I_inf annihilator (and the I_0 pair).
inline SuiteResult suite_annihilator(std::uint64_t q, Mode mode, int points, std::uint64_t seed,
                                     const TowerParams* reduced = nullptr) {
    const std::string name = std::string("annihilator_gcd q=") + std::to_string(q) +
                             (mode == Mode::Reduced ? " reduced" : " specialized");
    return detail::timed(name, [&](SuiteResult& r) {
        Sampler S(seed);
        for (const auto& P : detail::param_points(q, mode, points, S, reduced)) {
            const FiniteField F = detail::sample_field(P);
            for (long k = 0; k < 2; ++k) {
                for (Model m : {Model::Normalized, Model::Minimal}) {
                    const FieldElement par = S.nonzero(F);
                    const DrinfeldModule M =
                        m == Model::Normalized ? build_normalized(P, par, k) : build_minimal(P, par, k);
                    r.expect(right_gcd_monic(M.phi_x, M.phi_y) == annihilator(P, M, Ideal::Iinf),
                             std::string(model_name(m)) + " I_inf k=" + std::to_string(k));
                    const LevelData L = P.level(k, M.field());
                    const SkewPoly c = SkewPoly::constant((L.zeta * L.zeta_q).inv(), q);
                    r.expect(right_gcd_monic(M.phi_x - c, M.phi_y) == annihilator(P, M, Ideal::I0),
                             std::string(model_name(m)) + " I_0 k=" + std::to_string(k));
                }
            }
        }
    });
}

/// Level-1 isogenies of both models, the j-update forms, level-2 normalized chains and the isogeny square.
inline SuiteResult suite_isogeny(std::uint64_t q, int points, std::uint64_t seed) {
    return detail::timed("isogeny q=" + std::to_string(q), [&](SuiteResult& r) {
        Sampler S(seed);
        for (int i = 0; i < points; ++i) {
            const TowerParams P = S.specialized(q);
            const FiniteField& W = P.ambient;
            // Normalized: (tau - u1) phi^{lambda0} = phi^{sigma; lambda1} (tau - u1).
            auto [lam0, u1] = detail::lambda_with_root(P, S, W);
            const FieldElement lam1 = next_lambda(P, lam0, u1, 1);
            const DrinfeldModule N0 = build_normalized(P, lam0, 0);
            const DrinfeldModule N1 = build_normalized(P, lam1, 1);
            const SkewPoly om1 = SkewPoly::tau_minus(u1, q);
            r.expect(verify_isogeny(N0, N1, om1), "normalized level 1");
            r.expect(!verify_isogeny(N0, build_normalized(P, lam1 + W.one(), 1), om1), "perturbed lambda rejected");
            // Level 2 along a non-excluded root.
            const FieldElement un = u_nabla(P, lam0, u1, 1);
            for (const auto& u2 : xi_roots(P, lam1, 2, W)) {
                if (u2 == un) continue;
                const FieldElement lam2 = next_lambda(P, lam1, u2, 2);
                r.expect(verify_isogeny(N0, build_normalized(P, lam2, 2), SkewPoly::tau_minus(u2, q) * om1),
                         "normalized level 2");
                break;
            }
            // Isogeny square: the same torsion datum in minimal coordinates is w1 = u1 / lambda0^q.
            const FieldElement j0n = j_invariant(P, lam0, 0);
            const FieldElement w1n = u1 / lam0.pow(q);
            r.expect(Xi_eval(P, j0n, w1n, 0).is_zero(), "square: w1 = u1/lambda0^q solves Xi^{j0}");
            r.expect(next_j(P, w1n, 1) == j_invariant(P, lam1, 1), "square: j1 = j(phi^{sigma; lambda1})");

            // Minimal: delta1 (tau - w1) Phi^{j0} = Phi^{sigma; j1} delta1 (tau - w1).
            auto [j0, w1] = detail::j_with_root(P, S, W);
            const FieldElement j1 = next_j(P, w1, 1);
            r.expect(j1 == next_j_from_prev(P, j0, w1, 1), "j1 forms agree");
            r.expect(j_from_w1(P, w1) == j0, "j0 recovered from w1");
            r.expect(j_from_w1_alt(P, w1) == j0, "j0 recovered from w1 (second form)");
            const DrinfeldModule M0 = build_minimal(P, j0, 0);
            const DrinfeldModule M1 = build_minimal(P, j1, 1);
            r.expect(verify_scaled_isogeny(M0, M1, w1, delta_pow(P, w1, 1)), "minimal level 1");
            r.expect(!verify_scaled_isogeny(M0, build_minimal(P, j1 + W.one(), 1), w1, delta_pow(P, w1, 1)),
                     "perturbed j rejected");
        }
    });
}

/// xi = xi_nabla (u - u^nabla), Xi = Xi_nabla (w - w^nabla), nabla values are roots, annihilator splittings.
inline SuiteResult suite_factorization(std::uint64_t q, int points, std::uint64_t seed) {
    return detail::timed("factorization q=" + std::to_string(q), [&](SuiteResult& r) {
        Sampler S(seed);
        for (int i = 0; i < points; ++i) {
            const TowerParams P = S.specialized(q);
            const FiniteField& W = P.ambient;
            auto [lam0, u1] = detail::lambda_with_root(P, S, W);
            const FieldElement lam1 = next_lambda(P, lam0, u1, 1);
            const FieldElement un = u_nabla(P, lam0, u1, 1);
            r.expect(xi_eval(P, lam1, un, 2).is_zero(), "u^nabla is a root of xi at level 2");
            const Poly lhs = xi_poly(P, lam1, 2);
            const Poly rhs = detail::mul_linear(xi_nabla_poly(P, lam1, lam0, u1, 1), un);
            r.expect(detail::poly_sub(lhs, rhs).empty(), "xi factorization");
            r.expect(SkewPoly::tau_minus(un, q) * SkewPoly::tau_minus(u1, q) ==
                         annihilator(P, Model::Normalized, lam0, Ideal::Iinf, 0),
                     "(tau - u^nabla)(tau - u) = phi_{I_inf}");

            auto [j0, w1] = detail::j_with_root(P, S, W);
            const FieldElement j1 = next_j(P, w1, 1);
            const FieldElement wn = w_nabla(P, w1, 1);
            r.expect(Xi_eval(P, j1, wn, 1).is_zero(), "w^nabla is a root of Xi at level 1");
            const Poly L2 = Xi_poly(P, j1, 1);
            const Poly R2 = detail::mul_linear(Xi_nabla_poly(P, w1, 1), wn);
            r.expect(detail::poly_sub(L2, R2).empty(), "Xi factorization");
            r.expect(SkewPoly::tau_minus((w1 * j0).inv(), q) * SkewPoly::tau_minus(w1, q) ==
                         annihilator(P, Model::Minimal, j0, Ideal::Iinf, 0),
                     "(tau - 1/(w j))(tau - w) = Phi_{I_inf}");
            r.expect(delta_pow(P, w1, 1) / (wn * w1) == j0, "delta^{q-1} / (w^nabla w) = j0");
        }
    });
}

struct ReconEntry {
    std::string name;
    std::string printed;  // what the display states
    std::string role;     // "derivation" (must hold) or "printed" (status recorded)
    long samples = 0;
    long holds = 0;
    bool status() const { return samples > 0 && holds == samples; }
};

struct ReconReport {
    std::vector<ReconEntry> entries;
    long specializations = 0;

    bool derivation_ok() const {
        for (const auto& e : entries)
            if (e.role == "derivation" && !e.status()) return false;
        return !entries.empty();
    }
};

namespace detail {
inline ReconEntry& entry(ReconReport& R, const std::string& name, const std::string& role, const std::string& printed) {
    for (auto& e : R.entries)
        if (e.name == name) return e;
    R.entries.push_back({name, printed, role, 0, 0});
    return R.entries.back();
}
inline void tally(ReconReport& R, const std::string& name, const std::string& role, const std::string& printed,
                  bool ok) {
    ReconEntry& e = entry(R, name, role, printed);
    ++e.samples;
    if (ok) ++e.holds;
}
}  // namespace detail

/// Printed displays against the derivation-chain forms along random depth-3 chains.
inline ReconReport reconcile_printed_forms(std::uint64_t q, int points, std::uint64_t seed) {
    ReconReport R;
    Sampler S(seed);
    int done = 0;
    while (done < points) {
        const TowerParams P = S.specialized(q);
        const FiniteField& W = P.ambient;
        // Normalized chain lambda0..lambda3.
        auto [lam0, u1] = detail::lambda_with_root(P, S, W);
        std::vector<FieldElement> lam{lam0}, us{u1};
        lam.push_back(next_lambda(P, lam0, u1, 1));
        bool deep = true;
        for (long k = 2; k <= 3 && deep; ++k) {
            const FieldElement un = u_nabla(P, lam[k - 2], us.back(), k - 1);
            deep = false;
            for (const auto& u : xi_roots(P, lam[k - 1], k, W))
                if (u != un) {
                    us.push_back(u);
                    lam.push_back(next_lambda(P, lam[k - 1], u, k));
                    deep = true;
                    break;
                }
        }
        // Minimal chain j0, w1..w3.
        auto [j0, w1] = detail::j_with_root(P, S, W);
        std::vector<FieldElement> ws{w1};
        bool mdeep = true;
        for (long k = 1; k <= 2 && mdeep; ++k) {
            auto rs = poly_roots(Xi_nabla_poly(P, ws.back(), k), W);
            mdeep = !rs.empty();
            if (mdeep) ws.push_back(rs.front());
        }
        if (!deep || !mdeep) continue;
        ++done;

        using detail::tally;
        tally(R, "xi_level_chain", "derivation", "xi^{sigma^{k-1}; lambda_{k-1}}(u_k) = 0 for k = 1..3",
              xi_eval(P, lam[0], us[0], 1).is_zero() && xi_eval(P, lam[1], us[1], 2).is_zero() &&
                  xi_eval(P, lam[2], us[2], 3).is_zero());
        tally(R, "xi_nabla_chain", "derivation", "xi_nabla^{sigma^i; lambda_i}(u_{i+1}) = 0 for i = 1, 2",
              xi_nabla_eval(P, lam[1], lam[0], us[0], us[1], 1).is_zero() &&
                  xi_nabla_eval(P, lam[2], lam[1], us[1], us[2], 2).is_zero());
        tally(R, "lambda_relation_k1_derivation_form", "derivation",
              "lambda relation at k=1 with coefficient (zeta^{1-q}-1)/(zeta T)",
              lambda_relation_k1_derivation(P, lam[0], lam[1]).is_zero());
        tally(R, "lambda_relation_k1_printed", "printed",
              "lambda relation at k=1 with coefficient (zeta^{-q}-zeta^{-1})(t-zeta^q)",
              lambda_relation_k1(P, lam[0], lam[1]).is_zero());
        tally(R, "conlambda_i1", "printed", "lambda-form of xi_nabla at i=1 with (1-zeta^{1-q})^{q+1}",
              conlambda(P, lam[0], lam[1], lam[2], 1).is_zero());
        tally(R, "conlambda_i2", "printed", "lambda-form of xi_nabla at i=2 with (1-zeta^{1-q})^{q+1}",
              conlambda(P, lam[1], lam[2], lam[3], 2).is_zero());
        tally(R, "lambda_relation_display_k2", "printed", "k>=2 lambda display at k=2 (nu^{sigma^k}, nu^{sigma^{k-1}-sigma^{k-2}})",
              lambda_relation_display(P, lam[0], lam[1], lam[2], 2).is_zero());
        tally(R, "lambda_relation_display_k3", "printed", "k>=2 lambda display at k=3",
              lambda_relation_display(P, lam[1], lam[2], lam[3], 3).is_zero());

        const FieldElement j1 = next_j(P, ws[0], 1);
        tally(R, "Xi_chain", "derivation", "Xi^{j0}(w1) = 0 and Xi_nabla^{sigma^k}(w_{k+1}) = 0, k = 1, 2",
              Xi_eval(P, j0, ws[0], 0).is_zero() && Xi_nabla_eval(P, ws[0], ws[1], 1).is_zero() &&
                  Xi_nabla_eval(P, ws[1], ws[2], 2).is_zero());
        tally(R, "j_update_forms", "derivation", "j1 from w1 alone equals T^{q-1} j0^q (1+(1-zeta^{q-1})w1)^{q^2+1}",
              j1 == next_j_from_prev(P, j0, ws[0], 1));
        tally(R, "j0_from_w1_printed", "printed", "j0 = -(1+zeta^{-1}(t-zeta^q)w1)/(w1^{q+1}+(1-zeta^{1-q})^{-1}w1)",
              j_from_w1_alt(P, ws[0]) == j0);
        tally(R, "w_relation_display_as_wk_k2", "printed", "k>=2 w relation at k=2 reading w_2 as w_k",
              w_relation_display(P, ws[0], ws[1], 2).is_zero());
        tally(R, "w_relation_display_as_wk_k3", "printed", "k>=2 w relation at k=3 reading w_2 as w_k",
              w_relation_display(P, ws[1], ws[2], 3).is_zero());
        tally(R, "w_relation_display_literal_w2_k3", "printed", "k>=2 w relation at k=3 with the variable literally w_2",
              w_relation_display(P, ws[1], ws[1], 3).is_zero());
        tally(R, "j1_reduced_display_at_t", "printed", "j1 = j0^q (t-zeta)/(t^q-zeta) (1+(1-zeta^{q-1})w1)^{q^2+1}",
              j1_reduced_display(P, j0, ws[0], j1).is_zero());
        {
            // Omega_2 = delta2 delta1 (delta1^{q-1} tau - w2)(tau - w1) up to the left scalar.
            const FieldElement d1 = delta_pow(P, ws[0], 1);
            const SkewPoly monic = SkewPoly(W, q, {-ws[1], d1}) * SkewPoly::tau_minus(ws[0], q);
            const SkewPoly direct =
                conjugate_by_scalar(SkewPoly::tau_minus(ws[1], q), d1) * SkewPoly::tau_minus(ws[0], q);
            tally(R, "omega_product_form", "derivation",
                  "delta2 (tau-w2) delta1 (tau-w1) = delta2 delta1 (delta1^{q-1} tau - w2)(tau - w1)",
                  monic == SkewPoly::constant(d1, q) * direct || monic == direct);
        }
    }
    R.specializations = done;
    return R;
}

/// Reduced-mode supersingular display comparison over F_{q^4}.
struct SupersingularCompare {
    std::vector<FieldElement> direct, display, simplified;
};

inline SupersingularCompare compare_supersingular(const TowerParams& P) {
    return {supersingular_j_set(P), j_scan(P, supersingular_display), j_scan(P, supersingular_simplified)};
}

/// I_inf torsion size and chain kernels for k = 1..k_max, searching tower points for a split chain.
struct KernelReport {
    std::size_t annihilator_kernel = 0;
    std::uint32_t annihilator_ambient_m = 0;
    std::vector<std::size_t> chain_kernels;  // |ker omega_k|, k = 1..k_max
    bool nested = false;
    std::uint32_t chain_ambient_m = 0;
    std::vector<FieldElement> chain;  // j0, w1..wk of the witness
};

/// (delta_1 ... delta_{k-1})^{q-1} tau - w_k composed down to (tau - w_1); kernel equals that of Omega_k.
inline std::vector<SkewPoly> chain_monic_forms(const TowerParams& P, const std::vector<FieldElement>& ws) {
    std::vector<SkewPoly> out;
    const auto q = P.q();
    const FiniteField& F = ws.front().field();
    SkewPoly acc = SkewPoly::constant(F.one(), q);
    FieldElement dprod = F.one();
    for (std::size_t i = 0; i < ws.size(); ++i) {
        acc = SkewPoly(F, q, {-ws[i], dprod}) * acc;
        out.push_back(acc);
        dprod = dprod * delta_pow(P, ws[i], static_cast<long>(i) + 1);
    }
    return out;
}

inline std::size_t split_size(std::uint64_t q, long deg) {
    std::size_t v = 1;
    for (long i = 0; i < deg; ++i) v *= q;
    return v;
}

/// Smallest F_{q^{4d}} (d = 1, 2, ...) within the bound where f has q^{deg f} kernel elements.
inline std::pair<std::size_t, std::uint32_t> kernel_until_split(const TowerParams& P, const SkewPoly& f) {
    std::size_t best = 0;
    std::uint32_t m = 0;
    for (std::uint32_t d = 1; d <= 8; ++d) {
        const std::uint64_t deg = static_cast<std::uint64_t>(f.field().m()) * d;
        std::uint64_t size = 1;
        for (std::uint64_t i = 0; i < deg && size <= kFieldSizeBound; ++i) size *= P.qs.p;
        if (size > kFieldSizeBound) break;
        const FiniteField F = make_field(P.qs.p, static_cast<std::uint32_t>(deg));
        best = kernel_elements(f, F).size();
        m = F.m();
        if (best == split_size(P.q(), f.degree())) break;
    }
    return {best, m};
}

inline KernelReport kernel_report(const TowerParams& P, long k_max) {
    detail::require_reduced(P);
    KernelReport R;
    const auto ss = supersingular_j_set(P);
    const SkewPoly A = annihilator(P, Model::Minimal, ss.front(), Ideal::Iinf, 0);
    std::tie(R.annihilator_kernel, R.annihilator_ambient_m) = kernel_until_split(P, A);

    const TowerEnumeration E = enumerate_tower(P, k_max);
    const std::size_t target = split_size(P.q(), k_max);
    for (const auto& pt : E.levels.back().points) {
        const auto forms = chain_monic_forms(P, pt.ws);
        // The top kernel decides; the largest field within the bound is the one scanned.
        std::uint32_t m = 0;
        for (std::uint32_t d = 1; d <= 8; ++d) {
            const std::uint64_t deg = static_cast<std::uint64_t>(P.Fq4.m()) * d;
            std::uint64_t size = 1;
            for (std::uint64_t i = 0; i < deg && size <= kFieldSizeBound; ++i) size *= P.qs.p;
            if (size > kFieldSizeBound) break;
            m = static_cast<std::uint32_t>(deg);
        }
        const FiniteField F = make_field(P.qs.p, m);
        const auto top = kernel_elements(forms.back(), F);
        if (top.size() != target) continue;
        R.chain_ambient_m = m;
        R.chain = {pt.j0};
        R.chain.insert(R.chain.end(), pt.ws.begin(), pt.ws.end());
        std::vector<std::vector<FieldElement>> kers;
        for (std::size_t i = 0; i + 1 < forms.size(); ++i) kers.push_back(kernel_elements(forms[i], F));
        kers.push_back(top);
        R.nested = true;
        for (std::size_t i = 0; i < kers.size(); ++i) {
            R.chain_kernels.push_back(kers[i].size());
            if (i > 0) {
                // Strict containment: every element of the lower kernel lies in the upper one.
                for (const auto& x : kers[i - 1])
                    if (!std::binary_search(kers[i].begin(), kers[i].end(), x)) R.nested = false;
                if (kers[i].size() <= kers[i - 1].size()) R.nested = false;
            }
        }
        break;
    }
    return R;
}

}  // namespace dtower

#endif  // DTOWER_SUITES_HPP
