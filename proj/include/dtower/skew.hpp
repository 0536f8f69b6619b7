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
 * @file skew.hpp
 * @brief Twisted polynomials L{tau} with tau * a = a^q * tau.
 *
 * Coefficients are stored ascending in tau. Only right division and right gcd are provided: annihilators and
 * isogeny kernels are right divisors.
 */

#ifndef DTOWER_SKEW_HPP
#define DTOWER_SKEW_HPP

#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ff.hpp"

namespace dtower {

class SkewPoly {
   public:
    SkewPoly() = default;

    /// The zero polynomial of L{tau} with L = `field` and twist a -> a^q.
    SkewPoly(FiniteField field, std::uint64_t twist_q) : field_(field), q_(twist_q) { check_twist(); }

    SkewPoly(FiniteField field, std::uint64_t twist_q, std::vector<FieldElement> coeffs)
        : field_(field), q_(twist_q), c_(std::move(coeffs)) {
        check_twist();
        for (const auto& c : c_)
            if (c.field() != field_) throw Error(Errc::FieldMismatch, "coefficient outside the ring's field");
        trim();
    }

    static SkewPoly constant(const FieldElement& c, std::uint64_t twist_q) { return {c.field(), twist_q, {c}}; }

    /// c * tau^n
    static SkewPoly monomial(const FieldElement& c, std::size_t n, std::uint64_t twist_q) {
        std::vector<FieldElement> v(n + 1, c.field().zero());
        v[n] = c;
        return {c.field(), twist_q, std::move(v)};
    }

    /// tau - u
    static SkewPoly tau_minus(const FieldElement& u, std::uint64_t twist_q) {
        return {u.field(), twist_q, {-u, u.field().one()}};
    }

    const FiniteField& field() const { return field_; }
    std::uint64_t twist_q() const { return q_; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    FieldElement coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
    FieldElement lead() const { return c_.empty() ? field_.zero() : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

    /// a^{q^i} for a coefficient a.
    FieldElement twist(const FieldElement& a, std::size_t i) const { return frobenius_iter(a, q_, i); }

    SkewPoly operator+(const SkewPoly& o) const {
        compatible(o);
        std::vector<FieldElement> r(std::max(c_.size(), o.c_.size()), field_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return {field_, q_, std::move(r)};
    }

    SkewPoly operator-(const SkewPoly& o) const { return *this + (-o); }

    SkewPoly operator-() const {
        std::vector<FieldElement> r;
        r.reserve(c_.size());
        for (const auto& c : c_) r.push_back(-c);
        return {field_, q_, std::move(r)};
    }

    SkewPoly operator*(const SkewPoly& o) const {
        compatible(o);
        if (is_zero() || o.is_zero()) return {field_, q_};
        std::vector<FieldElement> r(c_.size() + o.c_.size() - 1, field_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * twist(o.c_[j], i);
        }
        return {field_, q_, std::move(r)};
    }

    SkewPoly& operator+=(const SkewPoly& o) { return *this = *this + o; }
    SkewPoly& operator-=(const SkewPoly& o) { return *this = *this - o; }
    SkewPoly& operator*=(const SkewPoly& o) { return *this = *this * o; }

    /// Left scalar multiplication c * f.
    friend SkewPoly operator*(const FieldElement& c, const SkewPoly& f) {
        std::vector<FieldElement> r;
        r.reserve(f.c_.size());
        for (const auto& a : f.c_) r.push_back(c * a);
        return {f.field_, f.q_, std::move(r)};
    }

    friend bool operator==(const SkewPoly& a, const SkewPoly& b) {
        return a.field_ == b.field_ && a.q_ == b.q_ && a.c_ == b.c_;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << '(' << c_[i].str() << ')';
            if (i > 0) os << "*tau" << (i > 1 ? "^" + std::to_string(i) : "");
        }
        return os.str();
    }

   private:
    void check_twist() const {
        if (!field_.valid()) throw Error(Errc::InvalidParams, "skew polynomial without a field");
        std::uint64_t v = 1;
        std::uint32_t e = 0;
        while (v < q_) {
            v *= field_.p();
            ++e;
        }
        if (v != q_ || e == 0 || field_.m() % e != 0)
            throw Error(Errc::InvalidParams, "twist q must be a power of p with F_q inside the coefficient field");
    }

    void compatible(const SkewPoly& o) const {
        if (field_ != o.field_) throw Error(Errc::FieldMismatch, "skew polynomials over different fields");
        if (q_ != o.q_) throw Error(Errc::FieldMismatch, "skew polynomials with different twists");
    }

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    FiniteField field_;
    std::uint64_t q_ = 0;
    std::vector<FieldElement> c_;
};

inline SkewPoly skew_mul(const SkewPoly& f, const SkewPoly& g) { return f * g; }

/// f = quotient * g + remainder with deg remainder < deg g.
inline std::pair<SkewPoly, SkewPoly> right_divmod(const SkewPoly& f, const SkewPoly& g) {
    if (g.is_zero()) throw Error(Errc::DivisionByZero, "right division by the zero skew polynomial");
    if (f.field() != g.field() || f.twist_q() != g.twist_q())
        throw Error(Errc::FieldMismatch, "right_divmod operands differ in field or twist");
    const auto& F = f.field();
    const std::size_t dg = static_cast<std::size_t>(g.degree());
    std::vector<FieldElement> r = f.coeffs();
    std::vector<FieldElement> quo;
    if (r.size() > dg) quo.assign(r.size() - dg, F.zero());
    const auto& gc = g.coeffs();
    for (std::size_t top = r.size(); top-- > dg;) {
        if (r[top].is_zero()) continue;
        const std::size_t shift = top - dg;
        const FieldElement c = r[top] / g.twist(gc[dg], shift);
        quo[shift] = c;
        for (std::size_t j = 0; j <= dg; ++j) r[shift + j] -= c * g.twist(gc[j], shift);
    }
    r.resize(std::min(r.size(), dg), F.zero());
    return {SkewPoly(F, f.twist_q(), std::move(quo)), SkewPoly(F, f.twist_q(), std::move(r))};
}

inline SkewPoly make_monic(const SkewPoly& f) {
    if (f.is_zero()) return f;
    return f.lead().inv() * f;
}

/// Greatest common monic right divisor.
inline SkewPoly right_gcd_monic(const SkewPoly& f, const SkewPoly& g) {
    if (f.is_zero() && g.is_zero()) throw Error(Errc::BothZero, "right gcd of two zero polynomials");
    SkewPoly a = f, b = g;
    while (!b.is_zero()) {
        SkewPoly r = right_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

/// True iff g right-divides f.
inline bool right_divides(const SkewPoly& g, const SkewPoly& f) { return right_divmod(f, g).second.is_zero(); }

/// sum a_i c^{q^i}; c must lie in the polynomial's field (embed first otherwise).
inline FieldElement evaluate(const SkewPoly& f, const FieldElement& c) {
    if (c.field() != f.field()) throw Error(Errc::FieldMismatch, "evaluation point outside the coefficient field");
    FieldElement acc = f.field().zero();
    FieldElement power = c;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        acc += f.coeffs()[i] * power;
        power = power.pow(f.twist_q());
    }
    return acc;
}

/// Coefficient-wise image under a field map.
inline SkewPoly coeff_sigma(const SkewPoly& f, const std::function<FieldElement(const FieldElement&)>& map) {
    std::vector<FieldElement> r;
    r.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) r.push_back(map(c));
    return {f.field(), f.twist_q(), std::move(r)};
}

/// The same polynomial with coefficients embedded in `sup`.
inline SkewPoly embed(const SkewPoly& f, const FiniteField& sup) {
    if (f.field() == sup) return f;
    std::vector<FieldElement> r;
    r.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) r.push_back(embed(c, sup));
    return {sup, f.twist_q(), std::move(r)};
}

/// All roots of the additive polynomial f in `ambient`, in code order.
inline std::vector<FieldElement> kernel_elements(const SkewPoly& f, const FiniteField& ambient) {
    if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "kernel of the zero skew polynomial");
    const SkewPoly g = embed(f, ambient);
    std::vector<FieldElement> out;
    for (std::uint32_t code = 0; code < ambient.size(); ++code) {
        const FieldElement c = ambient.element(code);
        if (evaluate(g, c).is_zero()) out.push_back(c);
    }
    return out;
}

}  // namespace dtower

#endif  // DTOWER_SKEW_HPP
