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

// Independent reference computations used as test oracles.

#ifndef DTOWER_TESTS_ORACLES_HPP
#define DTOWER_TESTS_ORACLES_HPP

#include <cstdint>
#include <vector>

#include "dtower/dtower.hpp"

namespace oracle {

using Coeffs = std::vector<std::int64_t>;

inline Coeffs coeffs_of(std::uint32_t code, std::uint32_t p, std::uint32_t m) {
    Coeffs c(m, 0);
    for (std::uint32_t i = 0; i < m; ++i) {
        c[i] = code % p;
        code /= p;
    }
    return c;
}

inline std::uint32_t code_of(const Coeffs& c, std::uint32_t p) {
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * p + static_cast<std::uint32_t>(((c[i] % p) + p) % p);
    return v;
}

/// Schoolbook product of two residues modulo the field's modulus.
inline std::uint32_t mul(const dtower::FiniteField& F, std::uint32_t a, std::uint32_t b) {
    const std::uint32_t p = F.p(), m = F.m();
    const Coeffs x = coeffs_of(a, p, m), y = coeffs_of(b, p, m);
    Coeffs prod(2 * m, 0);
    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    const auto& mod = F.modulus();
    for (std::size_t d = prod.size(); d-- > m;) {
        const std::int64_t c = prod[d] % p;
        if (c == 0) continue;
        for (std::uint32_t i = 0; i <= m; ++i) prod[d - m + i] = ((prod[d - m + i] - c * mod[i]) % p + p) % p;
    }
    prod.resize(m);
    return code_of(prod, p);
}

inline std::uint32_t add(const dtower::FiniteField& F, std::uint32_t a, std::uint32_t b) {
    const Coeffs x = coeffs_of(a, F.p(), F.m()), y = coeffs_of(b, F.p(), F.m());
    Coeffs s(F.m());
    for (std::uint32_t i = 0; i < F.m(); ++i) s[i] = x[i] + y[i];
    return code_of(s, F.p());
}

inline std::uint32_t pow(const dtower::FiniteField& F, std::uint32_t a, std::uint64_t e) {
    std::uint32_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(F, r, a);
    return r;
}

/// Sum of c_i a^{q^i}, with each Frobenius power built by repeated multiplication.
inline dtower::FieldElement eval_additive(const std::vector<dtower::FieldElement>& cs, const dtower::FieldElement& a,
                                          std::uint64_t q) {
    dtower::FieldElement acc = a.field().zero();
    dtower::FieldElement fr = a;
    for (const auto& c : cs) {
        acc = acc + c * fr;
        dtower::FieldElement next = fr.field().one();
        for (std::uint64_t i = 0; i < q; ++i) next = next * fr;
        fr = next;
    }
    return acc;
}

/// (q+1)^2 q^{k-1}
inline std::uint64_t tower_count(std::uint64_t q, long k) {
    std::uint64_t c = (q + 1) * (q + 1);
    for (long i = 1; i < k; ++i) c *= q;
    return c;
}

/// Genus from the explicit closed form, in plain integer arithmetic: (q-1)(g+1) = q^{k-1}(q+1) - 2(q^a + q^b - 1).
inline long genus_closed(long q, long k) {
    long qk1 = 1;
    for (long i = 1; i < k; ++i) qk1 *= q;
    long qa = 1, qb = 1;
    for (long i = 0; i < k / 2; ++i) qa *= q;
    for (long i = 0; i < k - k / 2 - 1; ++i) qb *= q;
    const long num = qk1 * (q + 1) - 2 * (qa + qb - 1);
    return num / (q - 1) - 1;
}

}  // namespace oracle

#endif  // DTOWER_TESTS_ORACLES_HPP
