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

#include <algorithm>
#include <cstdlib>

#include "dtower/dtower.hpp"
#include "oracles.hpp"

using namespace dtower;

namespace {

FieldElement f9(std::int64_t a, std::int64_t b) {
    return make_field(3, 2).from_coeffs(std::vector<std::int64_t>{a, b});
}

TowerParams reduced3(std::size_t nu_choice = 0) { return build_params(3, f9(0, 1), f9(1, 2), nu_choice); }

std::vector<FieldElement> sorted(std::vector<FieldElement> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// tau^2 coefficient of a Phi_x + b Phi_y + c, from the module directly.
std::vector<FieldElement> ss_scan_oracle(const TowerParams& P) {
    const auto z = P.z_eta_coeffs();
    std::vector<FieldElement> out;
    for (const auto& j : P.Fq4.elements()) {
        if (j.is_zero()) continue;
        const DrinfeldModule M = build_minimal(P, j);
        const FieldElement a = embed(z[0], P.Fq4), b = embed(z[1], P.Fq4);
        const FieldElement c2 = a * M.phi_x.coeff(2) + b * M.phi_y.coeff(2);
        if (c2.is_zero()) out.push_back(j);
    }
    return out;
}

}  // namespace

TEST(Tower, SupersingularSetQ3) {
    const TowerParams P = reduced3();
    const auto ss = supersingular_j_set(P);
    std::vector<FieldElement> in_f9;
    for (const auto& j : ss) {
        const auto r = restrict_to(j, P.Fq2);
        ASSERT_TRUE(r.has_value());
        in_f9.push_back(*r);
    }
    EXPECT_EQ(sorted(in_f9), sorted({f9(1, 0), f9(1, 1), f9(0, 2), f9(2, 2)}));
    EXPECT_EQ(sorted(ss), sorted(ss_scan_oracle(P)));
    EXPECT_EQ(sorted(ss), sorted(j_scan(P, supersingular_display)));
}

TEST(Tower, SupersingularSetInvariantUnderNuChoice) {
    const auto a = supersingular_j_set(reduced3(0));
    for (std::size_t c = 1; c < 4; ++c) EXPECT_EQ(supersingular_j_set(reduced3(c)), a);
}

TEST(Tower, SupersingularSetConjugatesWithZetaAndEta) {
    const TowerParams P = reduced3();
    const TowerParams Q = build_params(3, f9(0, 1).pow(3), f9(1, 2).pow(3));
    std::vector<FieldElement> conj;
    for (const auto& j : supersingular_j_set(P)) conj.push_back(j.pow(3));
    EXPECT_EQ(sorted(conj), sorted(supersingular_j_set(Q)));
}

TEST(Tower, CountsThroughLevelThree) {
    for (std::size_t c : {0u, 1u}) {
        const TowerEnumeration E = enumerate_tower(reduced3(c), 3);
        ASSERT_EQ(E.levels.size(), 3u);
        for (const auto& L : E.levels) {
            EXPECT_EQ(L.count, oracle::tower_count(3, L.k));
            EXPECT_EQ(L.invalid, 0u);
            for (const auto& pt : L.points) EXPECT_TRUE(validate_point(reduced3(c), pt));
        }
        EXPECT_TRUE(E.warnings.empty());
        EXPECT_TRUE(E.all_match());
    }
}

TEST(Tower, EnumerationIndependentOfWorkerCount) {
    const TowerParams P = reduced3();
    const TowerEnumeration a = enumerate_tower(P, 3, 1);
    const TowerEnumeration b = enumerate_tower(P, 3, 4);
    for (std::size_t i = 0; i < a.levels.size(); ++i) EXPECT_EQ(a.levels[i].points, b.levels[i].points);
}

TEST(Tower, GenusClosedForm) {
    EXPECT_EQ(genus(3, 1), 0);
    EXPECT_EQ(genus(3, 2), 2);
    EXPECT_EQ(genus(3, 3), 12);
    for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 9u}) {
        EXPECT_EQ(genus(q, 1), 0);
        for (long k = 1; k <= 10; ++k) {
            EXPECT_EQ(genus(q, k), oracle::genus_closed(static_cast<long>(q), k)) << q << " " << k;
            EXPECT_EQ(genus(q, k), genus_general(q, 2, 1, 1, 1, {{{1, k}}})) << q << " " << k;
            if (k >= 3) EXPECT_GT(genus(q, k), genus(q, k - 1));
        }
    }
}

TEST(Tower, EpsilonKappa) {
    const EpsKappa ek = epsilon_kappa({{{1, 3}}}, 3);
    EXPECT_EQ(static_cast<long>(ek.epsilon), 36);
    EXPECT_EQ(static_cast<long>(ek.kappa), 6);
    const EpsKappa two = epsilon_kappa({{{1, 2}, {2, 1}}}, 2);
    EXPECT_EQ(static_cast<long>(two.epsilon), 2 * 3 * 5);
    EXPECT_EQ(static_cast<long>(two.kappa), 3 * 2);
}

TEST(Tower, GenusGeneralRejectsNonIntegers) {
    EXPECT_THROW(genus_general(5, 1, 1, 2, 1, {{{1, 1}}}), Error);
}

TEST(Tower, IharaRows) {
    const IharaTable t = ihara_table(3, 30);
    EXPECT_EQ(t.rows.front().k, 2);
    EXPECT_EQ(t.rows.back().k, 30);
    EXPECT_TRUE(t.above_bound);
    EXPECT_TRUE(t.decreasing);
    const GenusRow& r6 = t.rows[4];
    EXPECT_EQ(r6.ss_count, 3888);
    EXPECT_EQ(r6.genus, 450);
    EXPECT_TRUE(r6.ratio == Rational(3888, 450));
    const GenusRow& r10 = t.rows[8];
    EXPECT_EQ(r10.ss_count, 314928);
    EXPECT_EQ(r10.genus, 39042);
    EXPECT_LT(t.rows.back().ratio.to_double() - 8.0, 0.01);
    EXPECT_TRUE(t.min_ratio == t.rows.back().ratio);
}

TEST(Tower, ExpectedCount) {
    for (long k = 1; k <= 6; ++k) EXPECT_EQ(expected_count(3, k), oracle::tower_count(3, k));
    EXPECT_EQ(expected_count(2, 1), 9u);
}

TEST(Tower, KernelCardinalities) {
    const KernelReport R = kernel_report(reduced3(), 2);
    EXPECT_EQ(R.annihilator_kernel, 9u);
    ASSERT_EQ(R.chain_kernels.size(), 2u);
    EXPECT_EQ(R.chain_kernels[0], 3u);
    EXPECT_EQ(R.chain_kernels[1], 9u);
    EXPECT_TRUE(R.nested);
}
