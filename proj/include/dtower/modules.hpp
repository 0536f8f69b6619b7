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
 * @file modules.hpp
 * @brief Rank-two Drinfeld modules: the normalized family phi^lambda and the minimal model Phi^j.
 *
 * Both are given as products (left factor) * (I_inf annihilator). The normalized model needs nu; the minimal model
 * uses only zeta, t, T and j. Twist level k evaluates every coefficient with the sigma^k images of the symbols.
 */

#ifndef DTOWER_MODULES_HPP
#define DTOWER_MODULES_HPP

#include <optional>
#include <string>
#include <vector>

#include "params.hpp"
#include "skew.hpp"

namespace dtower {

enum class Model { Normalized, Minimal };
enum class TypeTag { ZetaQ, Zeta };
enum class Ideal { Iinf, I0 };

inline const char* model_name(Model m) { return m == Model::Normalized ? "normalized" : "minimal"; }
inline const char* type_name(TypeTag t) { return t == TypeTag::ZetaQ ? "zeta_q" : "zeta"; }

struct DrinfeldModule {
    SkewPoly phi_x;
    SkewPoly phi_y;
    Model model = Model::Normalized;
    TypeTag type_tag = TypeTag::ZetaQ;
    FieldElement parameter;
    long twist_level = 0;

    const FiniteField& field() const { return phi_x.field(); }
};

namespace detail {

inline TypeTag type_for_level(long k) { return k % 2 == 0 ? TypeTag::ZetaQ : TypeTag::Zeta; }

inline SkewPoly cst(const FieldElement& a, std::uint64_t q) { return SkewPoly::constant(a, q); }

struct NormalizedCoeffs {
    FieldElement c0, alpha, alpha_bar, beta_bar;
};

inline NormalizedCoeffs normalized_coeffs(const TowerParams& P, const FieldElement& lam, long k) {
    const auto q = P.q();
    const FiniteField& F = lam.field();
    const LevelData L = P.level(k, F);
    const FieldElement nu = P.nu_at(k, F);
    const FieldElement one = F.one();
    const FieldElement Texp = L.T_sigma.pow(q) / (L.T.pow(q) * L.T_sigma);
    const FieldElement lq2 = lam.pow(q * q);
    const FieldElement head = -(nu * Texp) / (L.zeta * lq2);
    NormalizedCoeffs c;
    c.c0 = nu * lam.pow(q - 1);
    c.alpha = lq2 / (one - L.zeta / L.zeta_q) + nu / (L.zeta * L.T * lam);
    c.alpha_bar = head + L.zeta_q * lam / (L.zeta - L.zeta_q);
    c.beta_bar = head + L.zeta * lam / (L.zeta - L.zeta_q);
    return c;
}

inline FiniteField normalized_field(const TowerParams& P, const FieldElement& lam) {
    return TowerParams::join(lam.field(), P.ambient);
}

inline FiniteField minimal_field(const TowerParams& P, const FieldElement& j) {
    return TowerParams::join(j.field(), P.base);
}

}  // namespace detail

/// The normalized module phi^{sigma^k; lambda}. Works in the larger of lambda's field and the nu field.
inline DrinfeldModule build_normalized(const TowerParams& P, const FieldElement& lambda, long k = 0) {
    if (lambda.is_zero()) throw Error(Errc::ZeroLambda, "lambda must be nonzero");
    const FiniteField F = detail::normalized_field(P, lambda);
    const FieldElement lam = P.lift(lambda, F);
    const auto q = P.q();
    const LevelData L = P.level(k, F);
    const auto c = detail::normalized_coeffs(P, lam, k);
    const FieldElement one = F.one();
    const SkewPoly R(F, q, {c.c0, c.alpha, one});
    DrinfeldModule M;
    M.phi_x = SkewPoly(F, q, {L.x / c.c0, c.alpha_bar, one}) * R;
    M.phi_y = detail::cst(L.zeta_q, q) * SkewPoly(F, q, {L.y / (L.zeta_q * c.c0), c.beta_bar, one}) * R;
    M.model = Model::Normalized;
    M.type_tag = detail::type_for_level(k);
    M.parameter = lam;
    M.twist_level = k;
    return M;
}

/// The minimal model Phi^{sigma^k; j}. Works in the larger of j's field and the base field; never touches nu.
inline DrinfeldModule build_minimal(const TowerParams& P, const FieldElement& jv, long k = 0) {
    if (jv.is_zero()) throw Error(Errc::ZeroJ, "j must be nonzero");
    const FiniteField F = detail::minimal_field(P, jv);
    const FieldElement j = P.lift(jv, F);
    const auto q = P.q();
    const LevelData L = P.level(k, F);
    const FieldElement one = F.one();
    const FieldElement a = one - L.zeta / L.zeta_q;
    const SkewPoly R(F, q, {j.inv(), one / a + (L.zeta * L.T * j).inv(), one});
    const FieldElement Tsq = L.T_sigma * L.T.pow(q);
    const FieldElement lead = -(j.pow(q * (q + 1)) * Tsq.pow(q));
    const FieldElement lx1 = L.T_sigma.pow(q) * j.pow(q) / L.zeta + j.pow(q + 1) * Tsq / a;
    const FieldElement ly1 =
        (L.zeta_q / L.zeta) * j.pow(q) * L.T_sigma.pow(q) - L.zeta_q * Tsq * j.pow(q + 1) / (one - L.zeta_q / L.zeta);
    DrinfeldModule M;
    M.phi_x = SkewPoly(F, q, {L.x * j, lx1, lead}) * R;
    M.phi_y = SkewPoly(F, q, {L.y * j, ly1, lead * L.zeta_q}) * R;
    M.model = Model::Minimal;
    M.type_tag = detail::type_for_level(k);
    M.parameter = j;
    M.twist_level = k;
    return M;
}

/// Closed-form monic degree-2 annihilators of I_inf = (x, y) and I_0 = (x - 1/zeta^{q+1}, y).
inline SkewPoly annihilator(const TowerParams& P, Model model, const FieldElement& param, Ideal ideal, long k = 0) {
    const auto q = P.q();
    if (model == Model::Normalized) {
        if (param.is_zero()) throw Error(Errc::ZeroLambda, "lambda must be nonzero");
        const FiniteField F = detail::normalized_field(P, param);
        const FieldElement lam = P.lift(param, F);
        const LevelData L = P.level(k, F);
        const FieldElement nu = P.nu_at(k, F);
        const auto c = detail::normalized_coeffs(P, lam, k);
        SkewPoly A(F, q, {c.c0, c.alpha, F.one()});
        if (ideal == Ideal::Iinf) return A;
        const FieldElement zqT = L.zeta_q * L.T;
        return A + SkewPoly(F, q, {c.c0 / zqT, (F.one() - L.zeta_q / L.zeta) * nu / (zqT * lam)});
    }
    if (param.is_zero()) throw Error(Errc::ZeroJ, "j must be nonzero");
    const FiniteField F = detail::minimal_field(P, param);
    const FieldElement j = P.lift(param, F);
    const LevelData L = P.level(k, F);
    const FieldElement one = F.one();
    const FieldElement a = one - L.zeta / L.zeta_q;
    if (ideal == Ideal::Iinf) return SkewPoly(F, q, {j.inv(), one / a + (L.zeta * L.T * j).inv(), one});
    return SkewPoly(F, q, {(one / (L.zeta_q * L.T) + one) / j, one / a + (L.zeta_q * L.T * j).inv(), one});
}

inline SkewPoly annihilator(const TowerParams& P, const DrinfeldModule& M, Ideal ideal) {
    return annihilator(P, M.model, M.parameter, ideal, M.twist_level);
}

/// j(phi^{sigma^k; lambda}) = lambda^{q^2+1} / nu^{sigma^k}.
inline FieldElement j_invariant(const TowerParams& P, const FieldElement& lambda, long k = 0) {
    if (lambda.is_zero()) throw Error(Errc::ZeroLambda, "lambda must be nonzero");
    const FiniteField F = detail::normalized_field(P, lambda);
    const FieldElement lam = P.lift(lambda, F);
    return lam.pow(P.q() * P.q() + 1) / P.nu_at(k, F);
}

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ModuleReport {
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

/// Degree, leading terms, algebra relation, commutation, constant terms and both gcd-vs-annihilator oracles.
inline ModuleReport verify_module(const TowerParams& P, const DrinfeldModule& M) {
    ModuleReport rep;
    const auto q = P.q();
    const FiniteField& F = M.field();
    const LevelData L = P.level(M.twist_level, F);
    const SkewPoly& px = M.phi_x;
    const SkewPoly& py = M.phi_y;
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    add("degree", px.degree() == 4 && py.degree() == 4,
        "deg phi_x = " + std::to_string(px.degree()) + ", deg phi_y = " + std::to_string(py.degree()));
    if (px.degree() != 4 || py.degree() != 4) return rep;

    const FieldElement ratio = py.lead() / px.lead();
    const FieldElement z = P.lift(P.zeta, F);
    const FieldElement want = M.type_tag == TypeTag::ZetaQ ? z.pow(q) : z;
    add("leading_type", ratio == want, "LT(y)/LT(x) = " + ratio.str());
    if (M.model == Model::Normalized) add("normalized_lead", px.lead().is_one(), "LT(x) = " + px.lead().str());

    const SkewPoly rel = py * py - detail::cst(L.zeta + L.zeta_q, q) * px * py +
                         detail::cst(L.zeta * L.zeta_q, q) * px * px - px;
    add("algebra_relation", rel.is_zero(), rel.is_zero() ? "" : "residual degree " + std::to_string(rel.degree()));
    const SkewPoly com = px * py - py * px;
    add("commutation", com.is_zero(), com.is_zero() ? "" : "residual degree " + std::to_string(com.degree()));
    add("constant_terms", px.coeff(0) == L.x && py.coeff(0) == L.y);

    const SkewPoly g = right_gcd_monic(px, py);
    add("gcd_Iinf", g == annihilator(P, M, Ideal::Iinf), g.str());
    const FieldElement c0 = (L.zeta * L.zeta_q).inv();
    const SkewPoly g0 = right_gcd_monic(px - detail::cst(c0, q), py);
    add("gcd_I0", g0 == annihilator(P, M, Ideal::I0), g0.str());
    return rep;
}

/// Solves (tau + A) phi_y - (zeta tau + B) phi_x = C * phi_{I_inf} for the scalar C, with
/// A = zeta lambda^q / (zeta - zeta^q) and B = zeta^2 lambda^q / (zeta - zeta^q). Empty if no such scalar exists.
inline std::optional<FieldElement> solve_rep_scalar(const TowerParams& P, const FieldElement& lambda, long k = 0) {
    const DrinfeldModule N = build_normalized(P, lambda, k);
    const FiniteField& F = N.field();
    const auto q = P.q();
    const LevelData L = P.level(k, F);
    const FieldElement lam = N.parameter;
    const FieldElement A = L.zeta / (L.zeta - L.zeta_q) * lam.pow(q);
    const FieldElement B = L.zeta * L.zeta / (L.zeta - L.zeta_q) * lam.pow(q);
    const SkewPoly comb = SkewPoly(F, q, {A, F.one()}) * N.phi_y - SkewPoly(F, q, {B, L.zeta}) * N.phi_x;
    const auto [quo, rem] = right_divmod(comb, annihilator(P, N, Ideal::Iinf));
    if (!rem.is_zero() || quo.degree() != 0) return std::nullopt;
    return quo.coeff(0);
}

}  // namespace dtower

#endif  // DTOWER_MODULES_HPP
