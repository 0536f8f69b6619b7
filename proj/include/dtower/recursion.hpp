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
 * @file recursion.hpp
 * @brief Level-by-level I_inf^k isogenies in lambda/u (normalized) and j/w (minimal) coordinates.
 *
 * Level conventions:
 *  - xi at level k is the equation for u_k; it is the I_inf annihilator of phi^{sigma^{k-1}; lambda_{k-1}} read as
 *    an ordinary polynomial u^{q+1} + alpha u + c0.
 *  - Xi at level k is the annihilator equation of Phi^{sigma^k; j}; its roots are the candidates for w_{k+1}.
 *  - Functions taking w_k or u_k at "level k" use the sigma^{k-1} data.
 *
 * Ordinary polynomials are coefficient vectors, ascending.
 */

#ifndef DTOWER_RECURSION_HPP
#define DTOWER_RECURSION_HPP

#include <optional>
#include <string>
#include <vector>

#include "modules.hpp"

namespace dtower {

using Poly = std::vector<FieldElement>;

namespace detail {

inline void require_nonzero(const FieldElement& a, Errc code, const char* what) {
    if (a.is_zero()) throw Error(code, what);
}

inline FieldElement checked_inv(const FieldElement& a, Errc code, const char* what) {
    if (a.is_zero()) throw Error(code, what);
    return a.inv();
}

/// (x - r) * p
inline Poly mul_linear(const Poly& p, const FieldElement& r) {
    const FiniteField& F = r.field();
    Poly out(p.size() + 1, F.zero());
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i + 1] += p[i];
        out[i] -= p[i] * r;
    }
    return out;
}

inline void trim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

/// The shared shape sum_{s<q} r^s X^{q-s} + c0.
inline Poly nabla_shape(const FieldElement& r, const FieldElement& c0, std::uint64_t q) {
    Poly p(q + 1, r.field().zero());
    p[0] = c0;
    FieldElement rs = r.field().one();
    for (std::uint64_t s = 0; s < q; ++s) {
        p[q - s] += rs;
        rs = rs * r;
    }
    return p;
}

}  // namespace detail

inline FieldElement poly_eval(const Poly& p, const FieldElement& x) { return eval_poly(p, x); }

/// Roots of p in `field` (p is embedded first).
inline std::vector<FieldElement> poly_roots(const Poly& p, const FiniteField& field) {
    Poly e;
    e.reserve(p.size());
    for (const auto& c : p) e.push_back(c.field() == field ? c : embed(c, field));
    return all_roots(e, field);
}

// ---------------------------------------------------------------------------------------------------------------
// Normalized coordinates.

/// xi^{sigma^{k-1}; lambda}(u) = u^{q+1} + alpha u + nu^{sigma^{k-1}} lambda^{q-1}.
inline Poly xi_poly(const TowerParams& P, const FieldElement& lambda_prev, long k) {
    detail::require_nonzero(lambda_prev, Errc::ZeroLambda, "lambda must be nonzero");
    const SkewPoly A = annihilator(P, Model::Normalized, lambda_prev, Ideal::Iinf, k - 1);
    Poly p(P.q() + 2, A.field().zero());
    p[0] = A.coeff(0);
    p[1] = A.coeff(1);
    p[P.q() + 1] = A.field().one();
    return p;
}

inline FieldElement xi_eval(const TowerParams& P, const FieldElement& lambda_prev, const FieldElement& u, long k) {
    const Poly p = xi_poly(P, lambda_prev, k);
    return eval_poly(p, P.lift(u, p[0].field()));
}

inline std::vector<FieldElement> xi_roots(const TowerParams& P, const FieldElement& lambda_prev, long k,
                                          const FiniteField& field) {
    return poly_roots(xi_poly(P, lambda_prev, k), field);
}

/// lambda_k = lambda_{k-1}^q - (zeta^{q^k - q^{k-1}} - 1) u_k
inline FieldElement next_lambda(const TowerParams& P, const FieldElement& lambda_prev, const FieldElement& u, long k) {
    const FiniteField F = TowerParams::join(lambda_prev.field(), u.field());
    const FieldElement c = P.zeta_qdiff(k, k - 1, F) - F.one();
    return P.lift(lambda_prev, F).pow(P.q()) - c * P.lift(u, F);
}

/// u_k^nabla = nu^{sigma^{k-1}} lambda_{k-1}^{q-1} / u_k
inline FieldElement u_nabla(const TowerParams& P, const FieldElement& lambda_prev, const FieldElement& u, long k) {
    detail::require_nonzero(u, Errc::ZeroU, "u must be nonzero");
    const FiniteField F = TowerParams::join(TowerParams::join(lambda_prev.field(), u.field()), P.ambient);
    return P.nu_at(k - 1, F) * P.lift(lambda_prev, F).pow(P.q() - 1) / P.lift(u, F);
}

/// xi_nabla at level i as a polynomial in u_{i+1}:
/// -lambda_i^{q-1} nu^{sigma^i} u_i / (nu^{sigma^{i-1}} lambda_{i-1}^{q-1}) + sum_{s<q} (u_i^nabla)^s u^{q-s}.
inline Poly xi_nabla_poly(const TowerParams& P, const FieldElement& lambda_i, const FieldElement& lambda_prev,
                          const FieldElement& u_i, long i) {
    if (u_i.is_zero() || lambda_i.is_zero() || lambda_prev.is_zero())
        throw Error(Errc::ZeroInput, "xi_nabla needs nonzero u and lambdas");
    const FiniteField F = TowerParams::join(
        TowerParams::join(TowerParams::join(lambda_i.field(), lambda_prev.field()), u_i.field()), P.ambient);
    const auto q = P.q();
    const FieldElement li = P.lift(lambda_i, F), lp = P.lift(lambda_prev, F), u = P.lift(u_i, F);
    const FieldElement c0 = -(li.pow(q - 1) * P.nu_at(i, F) * u) / (P.nu_at(i - 1, F) * lp.pow(q - 1));
    return detail::nabla_shape(u_nabla(P, lp, u, i), c0, q);
}

inline FieldElement xi_nabla_eval(const TowerParams& P, const FieldElement& lambda_i, const FieldElement& lambda_prev,
                                  const FieldElement& u_i, const FieldElement& u_next, long i) {
    const Poly p = xi_nabla_poly(P, lambda_i, lambda_prev, u_i, i);
    return eval_poly(p, P.lift(u_next, p[0].field()));
}

// ---------------------------------------------------------------------------------------------------------------
// Minimal coordinates.

/// Xi^{sigma^k; j}(w) = w^{q+1} + (1/(1 - zeta^{q^k - q^{k+1}}) + 1/(zeta^{q^k} T^{sigma^k} j)) w + 1/j.
inline Poly Xi_poly(const TowerParams& P, const FieldElement& j, long k) {
    detail::require_nonzero(j, Errc::ZeroJ, "j must be nonzero");
    const SkewPoly A = annihilator(P, Model::Minimal, j, Ideal::Iinf, k);
    Poly p(P.q() + 2, A.field().zero());
    p[0] = A.coeff(0);
    p[1] = A.coeff(1);
    p[P.q() + 1] = A.field().one();
    return p;
}

inline FieldElement Xi_eval(const TowerParams& P, const FieldElement& j, const FieldElement& w, long k) {
    const Poly p = Xi_poly(P, j, k);
    return eval_poly(p, P.lift(w, p[0].field()));
}

inline std::vector<FieldElement> Xi_roots(const TowerParams& P, const FieldElement& j, long k,
                                          const FiniteField& field) {
    return poly_roots(Xi_poly(P, j, k), field);
}

/// j_{k-1} recovered from w_k: (zeta^{q^{k-1}-q^k} - 1)(1 + w / (zeta^{q^{k-1}} T^{sigma^{k-1}}))
///                             / (w (1 + (1 - zeta^{q^{k-1}-q^k}) w^q)).
inline FieldElement j_prev_from_w(const TowerParams& P, const FieldElement& w, long k) {
    detail::require_nonzero(w, Errc::ZeroW, "w must be nonzero");
    const FiniteField F = TowerParams::join(w.field(), P.base);
    const FieldElement wf = P.lift(w, F);
    const LevelData L = P.level(k - 1, F);
    const FieldElement r = L.zeta / L.zeta_q;
    const FieldElement den = wf * (F.one() + (F.one() - r) * wf.pow(P.q()));
    if (den.is_zero()) throw Error(Errc::Pole, "w is a pole of the j map");
    const FieldElement num = (r - F.one()) * (F.one() + wf / (L.zeta * L.T));
    if (num.is_zero()) throw Error(Errc::PoleJZero, "w maps to j = 0");
    return num / den;
}

inline FieldElement j_from_w1(const TowerParams& P, const FieldElement& w1) { return j_prev_from_w(P, w1, 1); }

/// The same map in the form -(1 + zeta^{-1}(t - zeta^q) w) / (w^{q+1} + (1 - zeta^{1-q})^{-1} w).
inline FieldElement j_from_w1_alt(const TowerParams& P, const FieldElement& w1) {
    detail::require_nonzero(w1, Errc::ZeroW, "w must be nonzero");
    const FiniteField F = TowerParams::join(w1.field(), P.base);
    const FieldElement w = P.lift(w1, F);
    const LevelData L = P.level(0, F);
    const FieldElement one = F.one();
    const FieldElement den = w.pow(P.q() + 1) + w / (one - L.zeta / L.zeta_q);
    if (den.is_zero()) throw Error(Errc::Pole, "w is a pole of the j map");
    return -(one + (L.t - L.zeta_q) * w / L.zeta) / den;
}

/// delta_k^{q-1} = 1 / (1 + (1 - zeta^{q^{k-1}-q^k}) w_k^q)
inline FieldElement delta_pow(const TowerParams& P, const FieldElement& w, long k) {
    const FiniteField F = TowerParams::join(w.field(), P.base);
    const FieldElement wf = P.lift(w, F);
    const FieldElement d = F.one() + (F.one() - P.zeta_qdiff(k - 1, k, F)) * wf.pow(P.q());
    return detail::checked_inv(d, Errc::Pole, "delta^{q-1} has a pole at this w");
}

/// j_k = (T^{sigma^{k-1}})^{-1} (c - 1)(1 + (1 - c) w_k)((T^{sigma^{k-1}})^q w_k^{-q} + zeta^{-q^k}),
/// c = zeta^{q^k - q^{k-1}}.
inline FieldElement next_j(const TowerParams& P, const FieldElement& w, long k) {
    detail::require_nonzero(w, Errc::ZeroW, "w must be nonzero");
    const FiniteField F = TowerParams::join(w.field(), P.base);
    const FieldElement wf = P.lift(w, F);
    const LevelData L = P.level(k - 1, F);
    const FieldElement one = F.one();
    const FieldElement c = L.zeta_q / L.zeta;
    return (c - one) * (one + (one - c) * wf) * (L.T.pow(P.q()) / wf.pow(P.q()) + L.zeta_q.inv()) / L.T;
}

/// j_k = (T^{sigma^{k-1}})^{q-1} j_{k-1}^q (1 + (1 - zeta^{q^k - q^{k-1}}) w_k)^{q^2+1}
inline FieldElement next_j_from_prev(const TowerParams& P, const FieldElement& j_prev, const FieldElement& w, long k) {
    const FiniteField F = TowerParams::join(TowerParams::join(w.field(), j_prev.field()), P.base);
    const FieldElement wf = P.lift(w, F);
    const LevelData L = P.level(k - 1, F);
    const auto q = P.q();
    const FieldElement one = F.one();
    return L.T.pow(q - 1) * P.lift(j_prev, F).pow(q) * (one + (one - L.zeta_q / L.zeta) * wf).pow(q * q + 1);
}

/// w_k^nabla = 1 / ((zeta^{q^{k-1}-q^k} - 1)(1 + w_k zeta^{-q^{k-1}} / T^{sigma^{k-1}}))
inline FieldElement w_nabla(const TowerParams& P, const FieldElement& w, long k) {
    const FiniteField F = TowerParams::join(w.field(), P.base);
    const FieldElement wf = P.lift(w, F);
    const LevelData L = P.level(k - 1, F);
    const FieldElement one = F.one();
    const FieldElement d = (L.zeta / L.zeta_q - one) * (one + wf / (L.zeta * L.T));
    return detail::checked_inv(d, Errc::Pole, "w^nabla has a pole at this w");
}

/// Xi_nabla at level k as a polynomial in w_{k+1}:
/// -w_k^q / (1 - (zeta^{q^k - q^{k-1}} - 1) w_k) * (w_k^nabla / T^{sigma^{k-1}})^{q-1} + sum_{i<q} (w_k^nabla)^i w^{q-i}.
inline Poly Xi_nabla_poly(const TowerParams& P, const FieldElement& w, long k) {
    detail::require_nonzero(w, Errc::ZeroInput, "w must be nonzero");
    const FiniteField F = TowerParams::join(w.field(), P.base);
    const FieldElement wf = P.lift(w, F);
    const LevelData L = P.level(k - 1, F);
    const auto q = P.q();
    const FieldElement one = F.one();
    const FieldElement wn = w_nabla(P, wf, k);
    const FieldElement den = one - (L.zeta_q / L.zeta - one) * wf;
    const FieldElement c0 =
        -(wf.pow(q) * detail::checked_inv(den, Errc::Pole, "Xi_nabla constant term has a pole")) *
        (wn / L.T).pow(q - 1);
    return detail::nabla_shape(wn, c0, q);
}

inline FieldElement Xi_nabla_eval(const TowerParams& P, const FieldElement& w, const FieldElement& w_next, long k) {
    const Poly p = Xi_nabla_poly(P, w, k);
    return eval_poly(p, P.lift(w_next, p[0].field()));
}

// ---------------------------------------------------------------------------------------------------------------
// Isogenies and chains.

/// omega * src_a == dst_a * omega for a in {x, y}.
inline bool verify_isogeny(const DrinfeldModule& src, const DrinfeldModule& dst, const SkewPoly& omega) {
    if (src.field() != dst.field() || src.field() != omega.field())
        throw Error(Errc::FieldMismatch, "isogeny check across different fields");
    return omega * src.phi_x == dst.phi_x * omega && omega * src.phi_y == dst.phi_y * omega;
}

/// d^{-1} f d for a scalar d known only through d^{q-1}.
inline SkewPoly conjugate_by_scalar(const SkewPoly& f, const FieldElement& d_pow) {
    const auto q = f.twist_q();
    std::vector<FieldElement> c;
    FieldElement acc = f.field().one();
    FieldElement e = d_pow;
    for (const auto& a : f.coeffs()) {
        c.push_back(a * acc);
        acc = acc * e;
        e = e.pow(q);
    }
    return {f.field(), q, std::move(c)};
}

/// d (tau - w) is an isogeny src -> dst, with only d^{q-1} given: (tau - w) src = d^{-1} dst d (tau - w).
inline bool verify_scaled_isogeny(const DrinfeldModule& src, const DrinfeldModule& dst, const FieldElement& w,
                                  const FieldElement& d_pow) {
    const SkewPoly l = SkewPoly::tau_minus(w, src.phi_x.twist_q());
    const SkewPoly dx = conjugate_by_scalar(dst.phi_x, d_pow);
    const SkewPoly dy = conjugate_by_scalar(dst.phi_y, d_pow);
    return l * src.phi_x == dx * l && l * src.phi_y == dy * l;
}

struct NormalizedLevel {
    long k = 0;
    FieldElement lambda;
    std::optional<FieldElement> u;
};

struct MinimalLevel {
    long k = 0;
    FieldElement j;
    std::optional<FieldElement> w;
    std::optional<FieldElement> delta_pow;
    std::optional<FieldElement> delta;
};

struct NormalizedChain {
    std::vector<NormalizedLevel> levels;
    SkewPoly omega;
};

struct MinimalChain {
    std::vector<MinimalLevel> levels;
    SkewPoly omega;  // Omega_k = delta_k (tau - w_k) ... delta_1 (tau - w_1), over `omega.field()`
};

namespace detail {

inline FiniteField common_field(const TowerParams& P, FiniteField F, const std::vector<FieldElement>& xs) {
    for (const auto& x : xs) F = TowerParams::join(F, x.field());
    (void)P;
    return F;
}

/// Smallest F_{p^{m d}} (d = 1, 2, ...) within the bound in which every value has an n-th root.
inline std::optional<FiniteField> root_extension(const std::vector<FieldElement>& values, std::uint64_t n,
                                                 const FiniteField& base) {
    for (std::uint32_t d = 1;; ++d) {
        std::uint64_t size = 1;
        for (std::uint32_t i = 0; i < base.m() * d && size <= kFieldSizeBound; ++i) size *= base.p();
        if (size > kFieldSizeBound) return std::nullopt;
        const FiniteField F = make_field(base.p(), base.m() * d);
        bool ok = true;
        for (const auto& v : values)
            if (nth_roots(embed(v, F), n).empty()) {
                ok = false;
                break;
            }
        if (ok) return F;
    }
}

}  // namespace detail

/// omega_k = (tau - u_k) ... (tau - u_1) with lambda_i updated along the way.
inline NormalizedChain build_chain_normalized(const TowerParams& P, const FieldElement& lambda0,
                                              const std::vector<FieldElement>& choices) {
    FiniteField F = detail::common_field(P, detail::normalized_field(P, lambda0), choices);
    const auto q = P.q();
    NormalizedChain ch;
    ch.levels.push_back({0, P.lift(lambda0, F), std::nullopt});
    ch.omega = SkewPoly::constant(F.one(), q);
    std::optional<FieldElement> prev_nabla;
    for (std::size_t i = 0; i < choices.size(); ++i) {
        const long k = static_cast<long>(i) + 1;
        const FieldElement u = P.lift(choices[i], F);
        const FieldElement lam_prev = ch.levels.back().lambda;
        if (u.is_zero() || !xi_eval(P, lam_prev, u, k).is_zero())
            throw Error(Errc::InvalidChoice, "u_" + std::to_string(k) + " is not a root of its level equation");
        if (prev_nabla && u == *prev_nabla)
            throw Error(Errc::InvalidChoice, "u_" + std::to_string(k) + " is the excluded nabla root");
        prev_nabla = u_nabla(P, lam_prev, u, k);
        ch.levels.push_back({k, next_lambda(P, lam_prev, u, k), u});
        ch.omega = SkewPoly::tau_minus(u, q) * ch.omega;
    }
    return ch;
}

/// Omega_k with explicit delta scalars (canonical smallest (q-1)-th roots), in the smallest extension that holds them.
inline MinimalChain build_chain_minimal(const TowerParams& P, const FieldElement& j0,
                                        const std::vector<FieldElement>& choices) {
    if (j0.is_zero()) throw Error(Errc::ZeroJ, "j must be nonzero");
    FiniteField F = detail::common_field(P, detail::minimal_field(P, j0), choices);
    const auto q = P.q();
    std::vector<MinimalLevel> levels;
    levels.push_back({0, P.lift(j0, F), std::nullopt, std::nullopt, std::nullopt});
    std::optional<FieldElement> prev_nabla;
    std::vector<FieldElement> dpows;
    for (std::size_t i = 0; i < choices.size(); ++i) {
        const long k = static_cast<long>(i) + 1;
        const FieldElement w = P.lift(choices[i], F);
        const FieldElement j_prev = levels.back().j;
        if (w.is_zero() || !Xi_eval(P, j_prev, w, k - 1).is_zero())
            throw Error(Errc::InvalidChoice, "w_" + std::to_string(k) + " is not a root of its level equation");
        if (prev_nabla && w == *prev_nabla)
            throw Error(Errc::InvalidChoice, "w_" + std::to_string(k) + " is the excluded nabla root");
        prev_nabla = w_nabla(P, w, k);
        const FieldElement dp = delta_pow(P, w, k);
        dpows.push_back(dp);
        levels.push_back({k, next_j(P, w, k), w, dp, std::nullopt});
    }
    auto E = detail::root_extension(dpows, q - 1, F);
    if (!E) throw Error(Errc::BoundExceeded, "delta scalars need an extension beyond the size bound");
    MinimalChain ch;
    ch.omega = SkewPoly::constant(E->one(), q);
    for (auto& lv : levels) {
        lv.j = embed(lv.j, *E);
        if (lv.w) {
            lv.w = embed(*lv.w, *E);
            lv.delta_pow = embed(*lv.delta_pow, *E);
            lv.delta = nth_roots(*lv.delta_pow, q - 1).front();
            ch.omega = SkewPoly::constant(*lv.delta, q) * SkewPoly::tau_minus(*lv.w, q) * ch.omega;
        }
    }
    ch.levels = std::move(levels);
    return ch;
}

// ---------------------------------------------------------------------------------------------------------------
// Printed statement forms, evaluated as written.

/// lambda_1^{q+1} - lambda_0^q lambda_1^q - (zeta^{1-q} - 1)/(zeta lambda_0) (t - zeta^q) nu lambda_1
///   + ((zeta^{-q} - zeta^{-1})(t - zeta^q) + (zeta^{q-1} - 1)^{q+1}) nu lambda_0^{q-1}
inline FieldElement lambda_relation_k1(const TowerParams& P, const FieldElement& l0, const FieldElement& l1) {
    const FiniteField& F = l0.field();
    const auto q = P.q();
    const LevelData L = P.level(0, F);
    const FieldElement nu = P.nu_at(0, F), one = F.one();
    const FieldElement r = L.zeta / L.zeta_q;  // zeta^{1-q}
    const FieldElement tz = L.t - L.zeta_q;
    return l1.pow(q + 1) - l0.pow(q) * l1.pow(q) - (r - one) / (L.zeta * l0) * tz * nu * l1 +
           ((L.zeta_q.inv() - L.zeta.inv()) * tz + (L.zeta_q / L.zeta - one).pow(q + 1)) * nu * l0.pow(q - 1);
}

/// The same relation with the coefficient (zeta^{1-q} - 1)/(zeta T).
inline FieldElement lambda_relation_k1_derivation(const TowerParams& P, const FieldElement& l0, const FieldElement& l1) {
    const FiniteField& F = l0.field();
    const auto q = P.q();
    const LevelData L = P.level(0, F);
    const FieldElement nu = P.nu_at(0, F), one = F.one();
    const FieldElement r = L.zeta / L.zeta_q;
    return l1.pow(q + 1) - l0.pow(q) * l1.pow(q) - (r - one) / (L.zeta * L.T * l0) * nu * l1 +
           ((r - one) / (L.zeta * L.T) + (L.zeta_q / L.zeta - one).pow(q + 1)) * nu * l0.pow(q - 1);
}

/// The lambda-form of xi_nabla at level i, with level-independent (1 - zeta^{1-q})^{q+1}:
/// -lambda_i^{q-1} nu^{sigma^i}(lambda_i - lambda_{i-1}^q)/(nu^{sigma^{i-1}} lambda_{i-1}^{q-1})
///   + sum_s (nu^{sigma^{i-1}} lambda_{i-1}^{q-1} (1 - zeta^{1-q})^{q+1} / (lambda_i - lambda_{i-1}^q))^s
///           (lambda_{i+1} - lambda_i^q)^{q-s}
inline FieldElement conlambda(const TowerParams& P, const FieldElement& lp, const FieldElement& li,
                              const FieldElement& ln, long i) {
    const FiniteField& F = li.field();
    const auto q = P.q();
    const FieldElement one = F.one();
    const FieldElement n_prev = P.nu_at(i - 1, F), n_i = P.nu_at(i, F);
    const FieldElement a = (one - P.zeta_pow(1 - static_cast<std::int64_t>(q), F)).pow(q + 1);
    const FieldElement di = li - lp.pow(q);
    const FieldElement r = n_prev * lp.pow(q - 1) * a / di;
    FieldElement s_sum = F.zero(), rs = one;
    const FieldElement dn = ln - li.pow(q);
    for (std::uint64_t s = 0; s < q; ++s) {
        s_sum += rs * dn.pow(q - s);
        rs = rs * r;
    }
    return -(li.pow(q - 1) * n_i * di) / (n_prev * lp.pow(q - 1)) + s_sum;
}

/// The k >= 2 display of the lambda recursion, as printed (nu^{sigma^k} and nu^{sigma^{k-1}} / nu^{sigma^{k-2}}).
inline FieldElement lambda_relation_display(const TowerParams& P, const FieldElement& l2, const FieldElement& l1,
                               const FieldElement& l0, long k) {
    // l2 = lambda_{k-2}, l1 = lambda_{k-1}, l0 = lambda_k
    const FiniteField& F = l0.field();
    const auto q = P.q();
    const FieldElement one = F.one();
    const FieldElement a = (one - P.zeta_pow(1 - static_cast<std::int64_t>(q), F)).pow(q + 1);
    const FieldElement d1 = l1 - l2.pow(q);
    const FieldElement r = P.nu_at(k, F) * a * l2.pow(q - 1) / d1;
    FieldElement s_sum = F.zero(), rs = one;
    const FieldElement dn = l0 - l1.pow(q);
    for (std::uint64_t i = 0; i < q; ++i) {
        s_sum += rs * dn.pow(q - i);
        rs = rs * r;
    }
    return s_sum - P.nu_at(k - 1, F) / P.nu_at(k - 2, F) * d1 / l2.pow(q - 1) * l1.pow(q - 1);
}

/// The k >= 2 relation of the minimal tower as printed, read with variable `w` (the display names it w_2) and
/// previous coordinate w_prev = w_{k-1}; w^nabla_{k-1} as printed with exponents q^k, q^{k+1}.
inline FieldElement w_relation_display(const TowerParams& P, const FieldElement& w_prev, const FieldElement& w, long k) {
    const FiniteField F = TowerParams::join(TowerParams::join(w.field(), w_prev.field()), P.base);
    const FieldElement wp = P.lift(w_prev, F), wk = P.lift(w, F);
    const auto q = P.q();
    const FieldElement one = F.one();
    const FieldElement t = P.lift(P.t, F);
    const FieldElement zk1 = P.zeta_pow(P.qpow(k + 1), F);  // zeta^{q^{k+1}}
    const FieldElement zk = P.zeta_pow(P.qpow(k), F);       // zeta^{q^k}
    const FieldElement wn = (P.zeta_qdiff(k, k + 1, F) - one).inv() * (one + (t - zk1) * wp / zk).inv();
    FieldElement lhs = F.zero(), rs = one;
    for (std::uint64_t i = 0; i < q; ++i) {
        lhs += rs * wk.pow(q - i);
        rs = rs * wn;
    }
    const FieldElement rhs = wp.pow(q) / (one - (P.zeta_qdiff(k + 1, k, F) - one) * wp) * (wn * (t - zk1)).pow(q - 1);
    return lhs - rhs;
}

/// j_1 - j_0^q (t - zeta)/(t^q - zeta) (1 + (1 - zeta^{q-1}) w_1)^{q^2+1}, the reduced display of the j update.
inline FieldElement j1_reduced_display(const TowerParams& P, const FieldElement& j0, const FieldElement& w1,
                                       const FieldElement& j1) {
    const FiniteField F = TowerParams::join(TowerParams::join(w1.field(), j0.field()), P.base);
    const auto q = P.q();
    const FieldElement one = F.one();
    const FieldElement t = P.lift(P.t, F), z = P.lift(P.zeta, F);
    const FieldElement val = P.lift(j0, F).pow(q) * (t - z) / (t.pow(q) - z) *
                             (one + (one - z.pow(q - 1)) * P.lift(w1, F)).pow(q * q + 1);
    return P.lift(j1, F) - val;
}

}  // namespace dtower

#endif  // DTOWER_RECURSION_HPP
