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

#include <gtest/gtest.h>

#include "dtower/dtower.hpp"
#include "oracles.hpp"

using namespace dtower;

namespace {

// x y relation y^2 - (zeta + zeta^q) x y + zeta^{q+1} x^2 = x, checked pointwise on additive maps.
bool relation_holds_pointwise(const TowerParams& P, const DrinfeldModule& M, Sampler& S) {
    const auto q = P.q();
    const FiniteField& F = M.field();
    const LevelData L = P.level(M.twist_level, F);
    for (int i = 0; i < 8; ++i) {
        const FieldElement a = S.element(F);
        auto X = [&](const FieldElement& v) { return oracle::eval_additive(M.phi_x.coeffs(), v, q); };
        auto Y = [&](const FieldElement& v) { return oracle::eval_additive(M.phi_y.coeffs(), v, q); };
        const FieldElement lhs = Y(Y(a)) - (L.zeta + L.zeta_q) * X(Y(a)) + L.zeta * L.zeta_q * X(X(a)) - X(a);
        if (!lhs.is_zero() || X(Y(a)) != Y(X(a))) return false;
    }
    return true;
}

}  // namespace

class ModulesSpecialized : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(ModulesSpecialized, BothModelsBothParities) {
    const std::uint64_t q = GetParam();
    Sampler S(100 + q);
    for (int i = 0; i < 4; ++i) {
        const TowerParams P = S.specialized(q);
        for (long k : {0L, 1L}) {
            const FieldElement lam = S.nonzero(P.ambient);
            const DrinfeldModule N = build_normalized(P, lam, k);
            const ModuleReport rn = verify_module(P, N);
            EXPECT_TRUE(rn.all_pass());
            EXPECT_TRUE(relation_holds_pointwise(P, N, S));
            EXPECT_EQ(N.type_tag, k == 0 ? TypeTag::ZetaQ : TypeTag::Zeta);

            const FieldElement j = S.nonzero(P.base);
            const DrinfeldModule M = build_minimal(P, j, k);
            EXPECT_TRUE(verify_module(P, M).all_pass());
            EXPECT_TRUE(relation_holds_pointwise(P, M, S));
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Q, ModulesSpecialized, ::testing::Values(2u, 3u));

TEST(Modules, ReducedMode) {
    const FiniteField F9 = make_field(3, 2);
    const TowerParams P = build_params(3, F9.gen(), F9.from_coeffs(std::vector<std::int64_t>{1, 2}));
    Sampler S(5);
    for (int i = 0; i < 5; ++i) {
        const DrinfeldModule N = build_normalized(P, S.nonzero(P.ambient));
        EXPECT_TRUE(verify_module(P, N).all_pass());
        const DrinfeldModule M = build_minimal(P, S.nonzero(P.Fq4));
        EXPECT_TRUE(verify_module(P, M).all_pass());
        EXPECT_EQ(M.field(), P.Fq4);
    }
}

TEST(Modules, PerturbationIsDetected) {
    Sampler S(8);
    const TowerParams P = S.specialized(3);
    DrinfeldModule N = build_normalized(P, S.nonzero(P.ambient));
    auto c = N.phi_x.coeffs();
    c[1] = c[1] + N.field().one();
    N.phi_x = SkewPoly(N.field(), 3, c);
    const ModuleReport r = verify_module(P, N);
    EXPECT_FALSE(r.all_pass());
    EXPECT_FALSE(r.find("algebra_relation")->pass);
    EXPECT_TRUE(r.find("degree")->pass);
}

TEST(Modules, AnnihilatorKernelIsCommonTorsion) {
    const FiniteField F9 = make_field(3, 2);
    const TowerParams P = build_params(3, F9.gen(), F9.from_coeffs(std::vector<std::int64_t>{1, 2}));
    const FieldElement j = P.Fq4.element(7);
    const DrinfeldModule M = build_minimal(P, j);
    const FiniteField E = make_field(3, 8);
    const auto K = kernel_elements(annihilator(P, M, Ideal::Iinf), E);
    for (const auto& a : K) {
        EXPECT_TRUE(evaluate(embed(M.phi_x, E), a).is_zero());
        EXPECT_TRUE(evaluate(embed(M.phi_y, E), a).is_zero());
    }
    EXPECT_EQ(K.size() % 3, 0u);
}

TEST(Modules, JInvariant) {
    Sampler S(12);
    const TowerParams P = S.specialized(3);
    const FieldElement lam = S.nonzero(P.ambient);
    EXPECT_EQ(j_invariant(P, lam), lam.pow(10) / P.nu);
    EXPECT_EQ(j_invariant(P, lam, 1), lam.pow(10) * P.nu / -P.x);
}

TEST(Modules, RepresentationScalarIsAQuotient) {
    Sampler S(21);
    int found = 0;
    for (int i = 0; i < 5; ++i) {
        const TowerParams P = S.specialized(3);
        if (solve_rep_scalar(P, S.nonzero(P.ambient))) ++found;
    }
    EXPECT_EQ(found, 5);
}

TEST(Modules, ZeroParametersRejected) {
    Sampler S(2);
    const TowerParams P = S.specialized(3);
    EXPECT_THROW(build_normalized(P, P.ambient.zero()), Error);
    EXPECT_THROW(build_minimal(P, P.base.zero()), Error);
}
