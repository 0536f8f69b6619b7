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
 * @file params.hpp
 * @brief The fixed arithmetic context of the tower: q, zeta, eta, t, T, nu, x, y and the sigma action.
 *
 * Two modes exist. In reduced mode t is set to eta in F_{q^2} and everything except nu lives in F_{q^2}; nu is found
 * in the smallest F_{q^{4m}} containing a (q+1)-th root of -1/((t - zeta)(t^q - zeta)). In specialized mode t is a
 * point of a large verification field (the biggest even-degree extension of F_q under the size bound); identities
 * in the transcendental t are checked by exact evaluation at many such points.
 *
 * sigma acts on the Galois data by zeta -> zeta^q, t -> t and nu -> T^{1-q} nu^q = -x / nu. Because t is fixed,
 * sigma is not the Frobenius of the ambient field, so every formula takes a twist level k and is evaluated with
 * the sigma^k images of the symbols (see LevelData). sigma^2 is the identity.
 */

#ifndef DTOWER_PARAMS_HPP
#define DTOWER_PARAMS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ff.hpp"

namespace dtower {

enum class Mode { Reduced, Specialized };

/// q = p^e.
struct QSpec {
    std::uint32_t p = 0;
    std::uint32_t e = 0;
    std::uint64_t q = 0;
};

inline QSpec decompose_q(std::uint64_t q) {
    if (q < 2) throw Error(Errc::InvalidParams, "q must be a prime power >= 2");
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    std::uint64_t v = 1;
    std::uint32_t e = 0;
    while (v < q) {
        v *= p;
        ++e;
    }
    if (v != q) throw Error(Errc::InvalidParams, std::to_string(q) + " is not a prime power");
    return {static_cast<std::uint32_t>(p), e, q};
}

/// F_{q^n} as an extension of the prime field.
inline FiniteField field_q_pow(const QSpec& qs, std::uint32_t n) { return make_field(qs.p, qs.e * n); }

/// Largest F_{q^{2n}} within the enumeration bound; the home of specialization points.
inline FiniteField verification_field(std::uint64_t q) {
    const QSpec qs = decompose_q(q);
    std::uint32_t best = 0;
    std::uint64_t size = q * q;
    for (std::uint32_t n = 2; size <= kFieldSizeBound; n += 2, size *= q * q) best = n;
    if (best == 0) throw Error(Errc::BoundExceeded, "F_{q^2} exceeds the enumeration bound");
    return field_q_pow(qs, best);
}

/// sigma^k images of the Galois data, evaluated in one field.
struct LevelData {
    FieldElement zeta;     // zeta^{q^k}
    FieldElement zeta_q;   // zeta^{q^{k+1}}
    FieldElement T;        // T^{sigma^k} = 1 / (t - zeta^{q^{k+1}})
    FieldElement T_sigma;  // T^{sigma^{k+1}} = 1 / (t - zeta^{q^k})
    FieldElement t;
    FieldElement x;
    FieldElement y;
};

class TowerParams {
   public:
    Mode mode = Mode::Reduced;
    QSpec qs;
    FiniteField Fq, Fq2, Fq4;
    FiniteField base;     // field holding zeta, t, T, x, y
    FiniteField ambient;  // field holding nu
    std::uint32_t nu_extension = 0;  // ambient = F_{q^{4m}} in reduced mode; 0 in specialized mode
    std::size_t nu_choice = 0;

    FieldElement zeta2;  // zeta in F_{q^2}
    FieldElement eta2;   // eta in F_{q^2} (reduced mode only)

    // In `base`.
    FieldElement zeta, t, T, T_sigma, x, y;
    // In `ambient`.
    FieldElement nu;

    std::uint64_t q() const { return qs.q; }

    /// zeta^e for any integer e (zeta has order dividing q^2 - 1).
    FieldElement zeta_pow(std::int64_t e, const FiniteField& target) const {
        const auto m = static_cast<std::int64_t>(qs.q * qs.q - 1);
        e %= m;
        if (e < 0) e += m;
        return lift(zeta, target).pow(static_cast<std::uint64_t>(e));
    }

    /// q^k reduced modulo q^2 - 1 (that is, q^{k mod 2}); exponent bookkeeping for zeta^{q^a - q^b}.
    std::int64_t qpow(long k) const {
        return (k % 2 == 0) ? 1 : static_cast<std::int64_t>(qs.q);
    }

    /// zeta^{q^a - q^b}
    FieldElement zeta_qdiff(long a, long b, const FiniteField& target) const { return zeta_pow(qpow(a) - qpow(b), target); }

    LevelData level(long k, const FiniteField& target) const {
        LevelData d;
        const FieldElement z = lift(zeta, target);
        const FieldElement zq = z.pow(qs.q);
        d.zeta = (k % 2 == 0) ? z : zq;
        d.zeta_q = (k % 2 == 0) ? zq : z;
        d.t = lift(t, target);
        d.x = lift(x, target);
        d.y = lift(y, target);
        d.T = (d.t - d.zeta_q).inv();
        d.T_sigma = (d.t - d.zeta).inv();
        return d;
    }

    /// nu^{sigma^k}: nu for even k and -x / nu for odd k.
    FieldElement nu_at(long k, const FiniteField& target) const {
        const FieldElement n = lift(nu, target);
        if (k % 2 == 0) return n;
        return -lift(x, target) / n;
    }

    /// sigma on F_{q^2} data: a -> a^q.
    FieldElement sigma(const FieldElement& a) const {
        if (!restrict_to_q2(a)) throw Error(Errc::InvalidParams, "sigma is only defined here on F_{q^2} data");
        return a.pow(qs.q);
    }

    /// sigma(nu) by its declared rule T^{1-q} nu^q.
    FieldElement sigma_nu() const {
        const FieldElement Ta = lift(T, ambient);
        return Ta * Ta.pow(qs.q).inv() * nu.pow(qs.q);
    }

    /// Applies the declared sigma rule to nu^{sigma} = v, i.e. (T^sigma)^{1-q} v^q.
    FieldElement sigma_nu_of_twisted(const FieldElement& v) const {
        const FieldElement Ts = lift(T_sigma, v.field());
        return Ts * Ts.pow(qs.q).inv() * v.pow(qs.q);
    }

    /// z_eta = a x + b y + c with a = eta^{q+1} - zeta^{q+1}, b = -(eta + eta^q - zeta - zeta^q), c = 1.
    std::vector<FieldElement> z_eta_coeffs() const {
        if (mode != Mode::Reduced) throw Error(Errc::InvalidParams, "z_eta needs reduced mode");
        const auto q = qs.q;
        return {eta2.pow(q + 1) - zeta2.pow(q + 1), -(eta2 + eta2.pow(q) - zeta2 - zeta2.pow(q)), Fq2.one()};
    }

    /// Embeds a base or ambient value into `target`.
    FieldElement lift(const FieldElement& a, const FiniteField& target) const {
        if (a.field() == target) return a;
        if (!embeds(a.field(), target))
            throw Error(Errc::AmbientTooSmall, "value does not embed into the requested field");
        return embed(a, target);
    }

    /// The smallest field containing both `a`'s field and `need`, among the two.
    static FiniteField join(const FiniteField& a, const FiniteField& need) {
        if (embeds(need, a)) return a;
        if (embeds(a, need)) return need;
        throw Error(Errc::AmbientTooSmall, "no common field among the candidates");
    }

   private:
    bool restrict_to_q2(const FieldElement& a) const {
        return a.pow(qs.q * qs.q) == a;
    }
};

namespace detail {

inline void check_zeta(const QSpec& qs, const FieldElement& zeta2) {
    if (zeta2.pow(qs.q) == zeta2) throw Error(Errc::InvalidParams, "zeta must lie in F_{q^2} \\ F_q");
}

inline void fill_base(TowerParams& P) {
    const auto q = P.qs.q;
    if ((P.t - P.zeta).is_zero() || (P.t - P.zeta.pow(q)).is_zero())
        throw Error(Errc::InvalidParams, "t must avoid zeta and zeta^q");
    P.T = (P.t - P.zeta.pow(q)).inv();
    P.T_sigma = (P.t - P.zeta).inv();
    P.x = ((P.t - P.zeta) * (P.t - P.zeta.pow(q))).inv();
    P.y = P.t * P.x;
}

/// -1 / ((t - zeta)(t^q - zeta)), the value nu^{q+1} must take.
inline FieldElement nu_target(const TowerParams& P) {
    const auto q = P.qs.q;
    return -((P.t - P.zeta) * (P.t.pow(q) - P.zeta)).inv();
}

}  // namespace detail

/// Reduced mode: t = eta. zeta and eta are elements of F_{q^2}.
inline TowerParams build_params(std::uint64_t q, const FieldElement& zeta2, const FieldElement& eta2,
                                std::size_t nu_choice = 0) {
    TowerParams P;
    P.mode = Mode::Reduced;
    P.qs = decompose_q(q);
    if (q < 3)
        throw Error(Errc::NoValidEta, "q = 2 leaves no eta in F_4 outside F_2 and {zeta, zeta^q}");
    P.Fq = field_q_pow(P.qs, 1);
    P.Fq2 = field_q_pow(P.qs, 2);
    P.Fq4 = field_q_pow(P.qs, 4);
    if (zeta2.field() != P.Fq2 || eta2.field() != P.Fq2)
        throw Error(Errc::FieldMismatch, "zeta and eta must be given in F_{q^2}");
    detail::check_zeta(P.qs, zeta2);
    if (eta2.pow(q) == eta2) throw Error(Errc::InvalidParams, "eta must not lie in F_q");
    if (eta2 == zeta2 || eta2 == zeta2.pow(q)) throw Error(Errc::InvalidParams, "eta must avoid zeta and zeta^q");
    P.zeta2 = zeta2;
    P.eta2 = eta2;
    P.base = P.Fq2;
    P.zeta = zeta2;
    P.t = eta2;
    detail::fill_base(P);

    const FieldElement target = detail::nu_target(P);
    for (std::uint32_t m = 1; m <= q + 1; ++m) {
        const std::uint64_t degree = static_cast<std::uint64_t>(P.qs.e) * 4 * m;
        std::uint64_t size = 1;
        bool fits = true;
        for (std::uint64_t i = 0; i < degree; ++i) {
            size *= P.qs.p;
            if (size > kFieldSizeBound) {
                fits = false;
                break;
            }
        }
        if (!fits) break;
        const FiniteField F = field_q_pow(P.qs, 4 * m);
        auto roots = nth_roots(embed(target, F), q + 1);
        if (!roots.empty()) {
            P.ambient = F;
            P.nu_extension = m;
            P.nu_choice = nu_choice % roots.size();
            P.nu = roots[P.nu_choice];
            return P;
        }
    }
    throw Error(Errc::NuNotFound, "no (q+1)-th root of -1/((t-zeta)(t^q-zeta)) within the extension cap");
}

/// Specialized mode: t is a point of verification_field(q).
inline TowerParams build_params_specialized(std::uint64_t q, const FieldElement& zeta2, const FieldElement& t_point,
                                            std::size_t nu_choice = 0) {
    TowerParams P;
    P.mode = Mode::Specialized;
    P.qs = decompose_q(q);
    P.Fq = field_q_pow(P.qs, 1);
    P.Fq2 = field_q_pow(P.qs, 2);
    P.Fq4 = field_q_pow(P.qs, 4);
    const FiniteField W = verification_field(q);
    if (zeta2.field() != P.Fq2) throw Error(Errc::FieldMismatch, "zeta must be given in F_{q^2}");
    if (t_point.field() != W) throw Error(Errc::FieldMismatch, "t_point must lie in the verification field");
    detail::check_zeta(P.qs, zeta2);
    P.zeta2 = zeta2;
    P.base = W;
    P.ambient = W;
    P.zeta = embed(zeta2, W);
    P.t = t_point;
    detail::fill_base(P);
    auto roots = nth_roots(detail::nu_target(P), q + 1);
    if (roots.empty()) throw Error(Errc::NuNotFound, "nu does not exist in the verification field at this t");
    P.nu_choice = nu_choice % roots.size();
    P.nu = roots[P.nu_choice];
    return P;
}

/// Default zeta: the canonical generator of F_{q^2}, which never lies in F_q.
inline FieldElement default_zeta(std::uint64_t q) { return field_q_pow(decompose_q(q), 2).gen(); }

}  // namespace dtower

#endif  // DTOWER_PARAMS_HPP
