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

using namespace dtower;

namespace {

FieldElement lit(const FiniteField& F, std::int64_t a, std::int64_t b) {
    const std::vector<std::int64_t> c{a, b};
    return F.from_coeffs(c);
}

}  // namespace

TEST(Params, DecomposeQ) {
    EXPECT_EQ(decompose_q(9).p, 3u);
    EXPECT_EQ(decompose_q(9).e, 2u);
    EXPECT_EQ(decompose_q(2).e, 1u);
    EXPECT_THROW(decompose_q(6), Error);
    EXPECT_THROW(decompose_q(1), Error);
}

TEST(Params, VerificationFieldIsLargestEvenDegreeWithinBound) {
    EXPECT_EQ(verification_field(3).m(), 12u);
    EXPECT_EQ(verification_field(2).m(), 20u);
    EXPECT_EQ(verification_field(3).p(), 3u);
}

TEST(Params, ReducedValuesAtEtaOnePlusTwoI) {
    const FiniteField F9 = make_field(3, 2);
    const FieldElement zeta = F9.gen(), eta = lit(F9, 1, 2);
    const TowerParams P = build_params(3, zeta, eta);
    // x = 1/((eta - zeta)(eta - zeta^3)), y = eta x, T = 1/(eta - zeta^3), by hand in F_9.
    const FieldElement x = ((eta - zeta) * (eta - zeta.pow(3))).inv();
    EXPECT_EQ(P.x, x);
    EXPECT_EQ(P.x, lit(F9, 2, 1));
    EXPECT_EQ(P.y, lit(F9, 0, 2));
    EXPECT_EQ(P.T, F9.one());
    EXPECT_EQ(P.nu_extension, 2u);
    EXPECT_EQ(P.ambient.m(), 8u);
    const FieldElement target = -(embed((eta - zeta) * (eta.pow(3) - zeta), P.ambient)).inv();
    EXPECT_EQ(P.nu.pow(4), target);
}

TEST(Params, SigmaRuleOnNu) {
    const FiniteField F9 = make_field(3, 2);
    const TowerParams P = build_params(3, F9.gen(), lit(F9, 1, 2));
    // sigma(nu) nu = -x, so applying the rule twice returns nu.
    const FieldElement s = P.sigma_nu();
    EXPECT_EQ(s * P.nu, -embed(P.x, P.ambient));
    EXPECT_EQ(P.sigma_nu_of_twisted(s), P.nu);
    EXPECT_EQ(P.nu_at(1, P.ambient), s);
}

TEST(Params, ReducedErrors) {
    const FiniteField F9 = make_field(3, 2);
    const FieldElement zeta = F9.gen();
    EXPECT_THROW(build_params(3, zeta, F9.one()), Error);         // eta in F_q
    EXPECT_THROW(build_params(3, zeta, zeta), Error);             // eta = zeta
    EXPECT_THROW(build_params(3, F9.from_int(2), lit(F9, 1, 2)), Error);  // zeta in F_q
    const FiniteField F4 = make_field(2, 2);
    try {
        build_params(2, F4.gen(), F4.gen());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NoValidEta);
    }
}

TEST(Params, SpecializedBuildsNuInVerificationField) {
    for (std::uint64_t q : {2u, 3u}) {
        Sampler S(17);
        const TowerParams P = S.specialized(q);
        EXPECT_EQ(P.base, verification_field(q));
        EXPECT_EQ(P.nu.pow(q + 1), -((P.t - P.zeta) * (P.t.pow(q) - P.zeta)).inv());
        EXPECT_EQ(P.y, P.t * P.x);
    }
}

TEST(Params, NuChoiceCyclesThroughRoots) {
    const FiniteField F9 = make_field(3, 2);
    const TowerParams a = build_params(3, F9.gen(), lit(F9, 1, 2), 0);
    const TowerParams b = build_params(3, F9.gen(), lit(F9, 1, 2), 1);
    EXPECT_NE(a.nu, b.nu);
    EXPECT_EQ(a.nu.pow(4), b.nu.pow(4));
}
