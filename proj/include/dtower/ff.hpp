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
 * @file ff.hpp
 * @brief Small finite fields F_{p^m} with table-driven arithmetic.
 *
 * A field is built once per (p, m) on the lexicographically smallest monic irreducible modulus of degree m over
 * F_p and lives for the rest of the process; FiniteField is a cheap handle to it. Elements are stored as the
 * integer code sum c_i p^i of their coefficient vector over the canonical basis 1, g, ..., g^{m-1}, where g is the
 * class of the polynomial variable. Code order is the canonical element order used everywhere for deterministic
 * output.
 *
 * Multiplication goes through discrete log/exp tables, addition in odd characteristic through Zech logarithms,
 * so every operation is O(1). Fields are capped at 2^20 elements.
 *
 * @code{.cpp}
 * auto F9 = dtower::make_field(3, 2);            // F_3[t]/(t^2 + 1)
 * auto i = F9.gen();
 * auto a = F9.one() + i;
 * auto b = dtower::frobenius_iter(a, 3, 1);      // (1+i)^3 = 1 + 2i
 * auto F81 = dtower::make_field(3, 4);
 * auto c = dtower::embed(i, F81);                // c * c == -1 in F_81
 * @endcode
 */

#ifndef DTOWER_FF_HPP
#define DTOWER_FF_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace dtower {

inline constexpr std::uint64_t kFieldSizeBound = std::uint64_t{1} << 20;

struct PrimePower {
    std::uint32_t p = 0;
    std::uint32_t m = 0;

    std::uint64_t value() const {
        std::uint64_t v = 1;
        for (std::uint32_t i = 0; i < m; ++i) v *= p;
        return v;
    }
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Dense polynomials over F_p, ascending coefficients. Only used while building fields.
class PolyFp {
   public:
    using Coeffs = std::vector<std::uint64_t>;

    explicit PolyFp(std::uint64_t p) : p_(p) {}

    static void trim(Coeffs& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }

    Coeffs mul(const Coeffs& a, const Coeffs& b) const {
        if (a.empty() || b.empty()) return {};
        Coeffs r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
        }
        trim(r);
        return r;
    }

    Coeffs mod(Coeffs a, const Coeffs& f) const {
        trim(a);
        const std::size_t df = f.size() - 1;
        const std::uint64_t inv_lead = inv(f.back());
        while (a.size() > df) {
            const std::uint64_t c = a.back() * inv_lead % p_;
            const std::size_t shift = a.size() - 1 - df;
            for (std::size_t i = 0; i <= df; ++i) a[shift + i] = (a[shift + i] + (p_ - c) * f[i]) % p_;
            trim(a);
        }
        return a;
    }

    Coeffs sub(Coeffs a, const Coeffs& b) const {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p_ - b[i]) % p_;
        trim(a);
        return a;
    }

    Coeffs gcd(Coeffs a, Coeffs b) const {
        trim(a);
        trim(b);
        while (!b.empty()) {
            Coeffs r = mod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    Coeffs powmod(Coeffs base, std::uint64_t e, const Coeffs& f) const {
        Coeffs result{1};
        base = mod(base, f);
        while (e > 0) {
            if (e & 1) result = mod(mul(result, base), f);
            base = mod(mul(base, base), f);
            e >>= 1;
        }
        return result;
    }

    /// Rabin's test: f of degree m is irreducible iff x^{p^m} = x mod f and gcd(x^{p^{m/r}} - x, f) = 1 for every
    /// prime r dividing m.
    bool irreducible(const Coeffs& f) const {
        const std::size_t m = f.size() - 1;
        if (m == 1) return true;
        const Coeffs x{0, 1};
        auto x_pow_p_iter = [&](std::size_t k) {
            Coeffs h = x;
            for (std::size_t i = 0; i < k; ++i) h = powmod(h, p_, f);
            return h;
        };
        if (sub(x_pow_p_iter(m), x) != Coeffs{}) return false;
        for (std::uint64_t r : prime_divisors(m)) {
            Coeffs g = gcd(f, sub(x_pow_p_iter(m / r), x));
            if (g.size() != 1) return false;
        }
        return true;
    }

    std::uint64_t inv(std::uint64_t a) const {
        std::uint64_t r = 1, e = p_ - 2;
        a %= p_;
        while (e > 0) {
            if (e & 1) r = r * a % p_;
            a = a * a % p_;
            e >>= 1;
        }
        return r;
    }

   private:
    std::uint64_t p_;
};

struct FieldData {
    std::uint32_t p = 0;
    std::uint32_t m = 0;
    std::uint32_t size = 0;
    std::uint32_t order = 0;  // size - 1
    std::vector<std::uint32_t> modulus;  // m + 1 ascending coefficients, monic
    std::uint32_t primitive = 0;         // code of the smallest multiplicative generator
    std::vector<std::uint32_t> exp;      // 2 * order entries
    std::vector<std::uint32_t> log;      // size entries, log[0] unused
    std::vector<std::int32_t> zech;      // log(1 + g^k), -1 when 1 + g^k = 0

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (p == 2) return a ^ b;
        if (m == 1) return (a + b) % p;
        if (a == 0) return b;
        if (b == 0) return a;
        const std::uint32_t la = log[a], lb = log[b];
        const std::uint32_t k = lb >= la ? lb - la : lb + order - la;
        const std::int32_t z = zech[k];
        return z < 0 ? 0 : exp[la + static_cast<std::uint32_t>(z)];
    }

    std::uint32_t neg(std::uint32_t a) const {
        if (p == 2 || a == 0) return a;
        if (m == 1) return p - a;
        return exp[log[a] + order / 2];
    }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp[log[a] + log[b]];
    }

    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
        return exp[(order - log[a]) % order];
    }

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        if (e == 0) return 1;
        if (a == 0) return 0;
        const std::uint64_t l = (static_cast<std::uint64_t>(log[a]) * (e % order)) % order;
        return exp[l];
    }

    std::vector<std::uint32_t> digits(std::uint32_t code) const {
        std::vector<std::uint32_t> d(m, 0);
        for (std::uint32_t i = 0; i < m; ++i) {
            d[i] = code % p;
            code /= p;
        }
        return d;
    }

    std::uint32_t encode(std::span<const std::uint32_t> d) const {
        std::uint32_t code = 0;
        for (std::size_t i = d.size(); i-- > 0;) code = code * p + d[i] % p;
        return code;
    }
};

/// Slow multiplication of codes modulo the field modulus, used before the tables exist.
inline std::uint32_t slow_mul(const FieldData& fd, std::uint32_t a, std::uint32_t b) {
    PolyFp ring(fd.p);
    auto to_poly = [&](std::uint32_t c) {
        PolyFp::Coeffs out;
        for (auto d : fd.digits(c)) out.push_back(d);
        PolyFp::trim(out);
        return out;
    };
    PolyFp::Coeffs f(fd.modulus.begin(), fd.modulus.end());
    auto r = ring.mod(ring.mul(to_poly(a), to_poly(b)), f);
    std::vector<std::uint32_t> d(fd.m, 0);
    for (std::size_t i = 0; i < r.size(); ++i) d[i] = static_cast<std::uint32_t>(r[i]);
    return fd.encode(d);
}

inline std::uint32_t slow_pow(const FieldData& fd, std::uint32_t a, std::uint64_t e) {
    std::uint32_t r = 1;
    while (e > 0) {
        if (e & 1) r = slow_mul(fd, r, a);
        a = slow_mul(fd, a, a);
        e >>= 1;
    }
    return r;
}

inline std::unique_ptr<FieldData> build_field(std::uint32_t p, std::uint32_t m) {
    auto fd = std::make_unique<FieldData>();
    fd->p = p;
    fd->m = m;
    fd->size = static_cast<std::uint32_t>(PrimePower{p, m}.value());
    fd->order = fd->size - 1;

    // Smallest monic irreducible: scan the lower coefficients in code order.
    PolyFp ring(p);
    const std::uint64_t lower_count = fd->size;
    for (std::uint64_t c = 0; c < lower_count; ++c) {
        PolyFp::Coeffs f(m + 1, 0);
        std::uint64_t rest = c;
        for (std::uint32_t i = 0; i < m; ++i) {
            f[i] = rest % p;
            rest /= p;
        }
        f[m] = 1;
        if (m > 1 && f[0] == 0) continue;
        if (ring.irreducible(f)) {
            fd->modulus.assign(f.begin(), f.end());
            break;
        }
    }

    // Smallest primitive element.
    const auto divisors = prime_divisors(fd->order);
    for (std::uint32_t g = 1; g < fd->size; ++g) {
        bool ok = true;
        for (auto r : divisors) {
            if (slow_pow(*fd, g, fd->order / r) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            fd->primitive = g;
            break;
        }
    }

    fd->exp.assign(2 * static_cast<std::size_t>(fd->order), 0);
    fd->log.assign(fd->size, 0);
    const auto gdig = fd->digits(fd->primitive);
    std::vector<std::uint32_t> cur(m, 0), next(m, 0);
    cur[0] = 1;
    for (std::uint32_t k = 0; k < fd->order; ++k) {
        const std::uint32_t code = fd->encode(cur);
        fd->exp[k] = code;
        fd->exp[k + fd->order] = code;
        fd->log[code] = k;
        // cur <- cur * g mod modulus, digit by digit.
        std::vector<std::uint64_t> prod(2 * m, 0);
        for (std::uint32_t i = 0; i < m; ++i) {
            if (cur[i] == 0) continue;
            for (std::uint32_t j = 0; j < m; ++j)
                if (gdig[j] != 0) prod[i + j] = (prod[i + j] + static_cast<std::uint64_t>(cur[i]) * gdig[j]) % p;
        }
        for (std::size_t i = prod.size(); i-- > m;) {
            const std::uint64_t c = prod[i];
            if (c == 0) continue;
            for (std::uint32_t t = 0; t <= m; ++t)
                prod[i - m + t] = (prod[i - m + t] + (p - c) * fd->modulus[t]) % p;
        }
        for (std::uint32_t i = 0; i < m; ++i) next[i] = static_cast<std::uint32_t>(prod[i]);
        std::swap(cur, next);
    }

    fd->zech.assign(fd->order, -1);
    for (std::uint32_t k = 0; k < fd->order; ++k) {
        const std::uint32_t v = fd->exp[k];
        const std::uint32_t d0 = v % p;
        const std::uint32_t w = v - d0 + (d0 + 1) % p;
        fd->zech[k] = w == 0 ? -1 : static_cast<std::int32_t>(fd->log[w]);
    }
    return fd;
}

class Registry {
   public:
    static Registry& instance() {
        static Registry r;
        return r;
    }

    const FieldData* get(std::uint32_t p, std::uint32_t m) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(p, m);
        auto it = fields_.find(key);
        if (it != fields_.end()) return it->second.get();
        auto fd = build_field(p, m);
        const FieldData* raw = fd.get();
        fields_.emplace(key, std::move(fd));
        return raw;
    }

    /// Image table of every element of `sub` in `sup`; built once per pair.
    const std::vector<std::uint32_t>& embedding(const FieldData* sub, const FieldData* sup);
    /// Inverse of the embedding table, -1 for elements outside the image.
    const std::vector<std::int32_t>& restriction(const FieldData* sub, const FieldData* sup);

   private:
    std::mutex mu_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<FieldData>> fields_;
    std::map<std::pair<const FieldData*, const FieldData*>, std::vector<std::uint32_t>> embeddings_;
    std::map<std::pair<const FieldData*, const FieldData*>, std::vector<std::int32_t>> restrictions_;

    std::vector<std::uint32_t> build_embedding(const FieldData* sub, const FieldData* sup) const {
        std::vector<std::uint32_t> image(sub->size, 0);
        if (sub == sup) {
            std::iota(image.begin(), image.end(), 0u);
            return image;
        }
        std::uint32_t gamma = 0;
        if (sub->m > 1) {
            bool found = false;
            for (std::uint32_t c = 0; c < sup->size && !found; ++c) {
                std::uint32_t acc = 0;
                for (std::size_t i = sub->modulus.size(); i-- > 0;) acc = sup->add(sup->mul(acc, c), sub->modulus[i]);
                if (acc == 0) {
                    gamma = c;
                    found = true;
                }
            }
            if (!found) throw Error(Errc::NoEmbedding, "modulus has no root in the target field");
        }
        for (std::uint32_t n = 1; n < sub->size; ++n) {
            const std::uint32_t d0 = n % sub->p;
            image[n] = sup->add(sup->mul(gamma, image[n / sub->p]), d0);
        }
        return image;
    }
};

inline const std::vector<std::uint32_t>& Registry::embedding(const FieldData* sub, const FieldData* sup) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(sub, sup);
    auto it = embeddings_.find(key);
    if (it != embeddings_.end()) return it->second;
    return embeddings_.emplace(key, build_embedding(sub, sup)).first->second;
}

inline const std::vector<std::int32_t>& Registry::restriction(const FieldData* sub, const FieldData* sup) {
    const auto& image = embedding(sub, sup);
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(sub, sup);
    auto it = restrictions_.find(key);
    if (it != restrictions_.end()) return it->second;
    std::vector<std::int32_t> inv(sup->size, -1);
    for (std::uint32_t c = 0; c < image.size(); ++c) inv[image[c]] = static_cast<std::int32_t>(c);
    return restrictions_.emplace(key, std::move(inv)).first->second;
}

}  // namespace detail

class FieldElement;

/// Handle to an immutable, process-lifetime field. Two handles are equal iff they name the same (p, m).
class FiniteField {
   public:
    FiniteField() = default;
    explicit FiniteField(const detail::FieldData* d) : d_(d) {}

    std::uint32_t p() const { return d_->p; }
    std::uint32_t m() const { return d_->m; }
    std::uint32_t size() const { return d_->size; }
    PrimePower prime_power() const { return {d_->p, d_->m}; }
    const std::vector<std::uint32_t>& modulus() const { return d_->modulus; }
    bool valid() const { return d_ != nullptr; }
    const detail::FieldData* data() const { return d_; }

    FieldElement zero() const;
    FieldElement one() const;
    /// The class of the polynomial variable (for m = 1 this is 0).
    FieldElement gen() const;
    FieldElement primitive() const;
    FieldElement element(std::uint32_t code) const;
    FieldElement from_int(std::int64_t v) const;
    FieldElement from_coeffs(std::span<const std::int64_t> coeffs) const;
    std::vector<FieldElement> elements() const;

    friend bool operator==(const FiniteField& a, const FiniteField& b) { return a.d_ == b.d_; }

   private:
    const detail::FieldData* d_ = nullptr;
};

class FieldElement {
   public:
    FieldElement() = default;
    FieldElement(const detail::FieldData* f, std::uint32_t code) : f_(f), v_(code) {}

    FiniteField field() const { return FiniteField(f_); }
    std::uint32_t code() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    std::vector<std::uint32_t> coeffs() const { return f_->digits(v_); }

    FieldElement operator+(const FieldElement& o) const { return {same(o), f_->add(v_, o.v_)}; }
    FieldElement operator-(const FieldElement& o) const { return {same(o), f_->add(v_, f_->neg(o.v_))}; }
    FieldElement operator*(const FieldElement& o) const { return {same(o), f_->mul(v_, o.v_)}; }
    FieldElement operator/(const FieldElement& o) const { return {same(o), f_->mul(v_, f_->inv(o.v_))}; }
    FieldElement operator-() const { return {f_, f_->neg(v_)}; }
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
    FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

    FieldElement inv() const { return {f_, f_->inv(v_)}; }
    FieldElement pow(std::uint64_t e) const { return {f_, f_->pow(v_, e)}; }
    /// a^{-e}
    FieldElement pow_neg(std::uint64_t e) const { return inv().pow(e); }

    friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.f_ == b.f_ && a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
        if (a.f_ != b.f_) return std::less<const void*>()(a.f_, b.f_) ? std::strong_ordering::less
                                                                       : std::strong_ordering::greater;
        return a.v_ <=> b.v_;
    }

    /// Human-readable form "c0+c1*g+c2*g^2" (zero coefficients omitted).
    std::string str() const {
        auto d = coeffs();
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] == 0) continue;
            if (!first) os << '+';
            first = false;
            if (i == 0) {
                os << d[i];
            } else {
                if (d[i] != 1) os << d[i] << '*';
                os << 'g';
                if (i > 1) os << '^' << i;
            }
        }
        if (first) os << '0';
        return os.str();
    }

   private:
    const detail::FieldData* same(const FieldElement& o) const {
        if (f_ != o.f_) throw Error(Errc::FieldMismatch, "operands live in different fields");
        return f_;
    }

    const detail::FieldData* f_ = nullptr;
    std::uint32_t v_ = 0;
};

inline FieldElement FiniteField::zero() const { return {d_, 0}; }
inline FieldElement FiniteField::one() const { return {d_, 1}; }
inline FieldElement FiniteField::gen() const { return {d_, d_->m > 1 ? d_->p : 0}; }
inline FieldElement FiniteField::primitive() const { return {d_, d_->primitive}; }
inline FieldElement FiniteField::element(std::uint32_t code) const {
    if (code >= d_->size) throw Error(Errc::InvalidParams, "element code out of range");
    return {d_, code};
}
inline FieldElement FiniteField::from_int(std::int64_t v) const {
    const auto p = static_cast<std::int64_t>(d_->p);
    return {d_, static_cast<std::uint32_t>(((v % p) + p) % p)};
}
inline FieldElement FiniteField::from_coeffs(std::span<const std::int64_t> coeffs) const {
    if (coeffs.size() > d_->m) throw Error(Errc::InvalidParams, "too many coefficients for the field degree");
    std::vector<std::uint32_t> d(d_->m, 0);
    const auto p = static_cast<std::int64_t>(d_->p);
    for (std::size_t i = 0; i < coeffs.size(); ++i) d[i] = static_cast<std::uint32_t>(((coeffs[i] % p) + p) % p);
    return {d_, d_->encode(d)};
}
inline std::vector<FieldElement> FiniteField::elements() const {
    std::vector<FieldElement> out;
    out.reserve(d_->size);
    for (std::uint32_t c = 0; c < d_->size; ++c) out.emplace_back(d_, c);
    return out;
}

/// Builds (or fetches) F_{p^m}. Throws CompositeModulus if p is not prime and BoundExceeded above `bound`.
inline FiniteField make_field(std::uint32_t p, std::uint32_t m, std::uint64_t bound = kFieldSizeBound) {
    if (!detail::is_prime(p)) throw Error(Errc::CompositeModulus, std::to_string(p) + " is not prime");
    if (m == 0) throw Error(Errc::InvalidParams, "extension degree must be positive");
    std::uint64_t size = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        size *= p;
        if (size > bound || size > kFieldSizeBound)
            throw Error(Errc::BoundExceeded,
                        std::to_string(p) + "^" + std::to_string(m) + " exceeds the enumeration bound");
    }
    return FiniteField(detail::Registry::instance().get(p, m));
}

/// a^{q^i}.
inline FieldElement frobenius_iter(const FieldElement& a, std::uint64_t q, std::uint64_t i) {
    if (a.is_zero()) return a;
    const std::uint64_t order = a.field().size() - 1;
    std::uint64_t e = 1 % order;
    const std::uint64_t qm = q % order;
    for (std::uint64_t k = 0; k < i; ++k) e = e * qm % order;
    // a^{q^i} = a^{q^i mod order} for a != 0; exponent 0 stands for a^{order} = 1.
    return a.pow(e);
}

/// Horner evaluation of an ordinary polynomial with ascending coefficients.
inline FieldElement eval_poly(std::span<const FieldElement> poly, const FieldElement& x) {
    FieldElement acc = x.field().zero();
    for (std::size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
    return acc;
}

/// Every root of `poly` (ascending coefficients in `field`) lying in `field`, by exhaustive scan, in code order.
inline std::vector<FieldElement> all_roots(std::span<const FieldElement> poly, const FiniteField& field) {
    bool nonzero = false;
    for (const auto& c : poly) {
        if (c.field() != field) throw Error(Errc::FieldMismatch, "coefficient outside the scanned field");
        nonzero = nonzero || !c.is_zero();
    }
    if (!nonzero) throw Error(Errc::ZeroPolynomial, "all_roots of the zero polynomial");
    const auto* fd = field.data();
    struct Term {
        std::uint64_t degree;
        std::uint64_t log_coeff;
    };
    std::vector<Term> terms;
    for (std::size_t i = 1; i < poly.size(); ++i)
        if (!poly[i].is_zero()) terms.push_back({i, fd->log[poly[i].code()]});
    const std::uint32_t c0 = poly[0].code();
    std::vector<FieldElement> roots;
    if (c0 == 0) roots.push_back(field.zero());
    for (std::uint32_t c = 1; c < field.size(); ++c) {
        const std::uint64_t lx = fd->log[c];
        std::uint32_t acc = c0;
        for (const Term& t : terms) acc = fd->add(acc, fd->exp[(t.log_coeff + t.degree * lx) % fd->order]);
        if (acc == 0) roots.push_back(field.element(c));
    }
    return roots;
}

/// All x in a's field with x^n = a, in code order.
inline std::vector<FieldElement> nth_roots(const FieldElement& a, std::uint64_t n) {
    if (a.is_zero()) throw Error(Errc::ZeroInput, "nth_roots of zero");
    if (n == 0) throw Error(Errc::InvalidParams, "root index must be positive");
    const auto* fd = a.field().data();
    const std::uint64_t order = fd->order;
    const std::uint64_t e = fd->log[a.code()];
    const std::uint64_t d = std::gcd(n, order);
    std::vector<FieldElement> out;
    if (e % d != 0) return out;
    // Solve (n/d) y = e/d mod order/d, then lift.
    const std::uint64_t mod = order / d;
    const std::uint64_t nn = (n / d) % mod;
    std::uint64_t y0 = 0;
    if (mod > 1) {
        // Extended Euclid for the inverse of nn modulo mod.
        std::int64_t t0 = 0, t1 = 1;
        std::int64_t r0 = static_cast<std::int64_t>(mod), r1 = static_cast<std::int64_t>(nn);
        while (r1 != 0) {
            const std::int64_t qq = r0 / r1;
            std::tie(t0, t1) = std::make_pair(t1, t0 - qq * t1);
            std::tie(r0, r1) = std::make_pair(r1, r0 - qq * r1);
        }
        const std::uint64_t inv = static_cast<std::uint64_t>((t0 % static_cast<std::int64_t>(mod) +
                                                              static_cast<std::int64_t>(mod)) %
                                                             static_cast<std::int64_t>(mod));
        y0 = static_cast<std::uint64_t>((static_cast<unsigned __int128>(e / d % mod) * inv) % mod);
    }
    for (std::uint64_t k = 0; k < d; ++k) out.emplace_back(fd, fd->exp[(y0 + k * mod) % order]);
    std::sort(out.begin(), out.end());
    return out;
}

/// True iff F_{p^a} embeds in F_{p^b}.
inline bool embeds(const FiniteField& sub, const FiniteField& sup) {
    return sub.p() == sup.p() && sup.m() % sub.m() == 0;
}

/// Ring embedding sub -> sup sending the generator of `sub` to the smallest root of its modulus in `sup`.
inline FieldElement embed(const FieldElement& a, const FiniteField& sup) {
    const FiniteField sub = a.field();
    if (!embeds(sub, sup))
        throw Error(Errc::NoEmbedding, "F_" + std::to_string(sub.p()) + "^" + std::to_string(sub.m()) +
                                           " does not embed in F_" + std::to_string(sup.p()) + "^" +
                                           std::to_string(sup.m()));
    const auto& table = detail::Registry::instance().embedding(sub.data(), sup.data());
    return sup.element(table[a.code()]);
}

inline FieldElement embed(const FieldElement& a, const FiniteField& sub, const FiniteField& sup) {
    if (a.field() != sub) throw Error(Errc::FieldMismatch, "element is not in the declared subfield");
    return embed(a, sup);
}

/// Preimage of `a` under the embedding sub -> a.field(), if there is one.
inline std::optional<FieldElement> restrict_to(const FieldElement& a, const FiniteField& sub) {
    const FiniteField sup = a.field();
    if (!embeds(sub, sup)) throw Error(Errc::NoEmbedding, "restriction target does not embed");
    const auto& inv = detail::Registry::instance().restriction(sub.data(), sup.data());
    const std::int32_t c = inv[a.code()];
    if (c < 0) return std::nullopt;
    return sub.element(static_cast<std::uint32_t>(c));
}

/// The image of `sub` inside `sup`, ordered by the code of the preimage.
inline std::vector<FieldElement> subfield_image(const FiniteField& sub, const FiniteField& sup) {
    if (!embeds(sub, sup)) throw Error(Errc::NoEmbedding, "subfield does not embed");
    const auto& table = detail::Registry::instance().embedding(sub.data(), sup.data());
    std::vector<FieldElement> out;
    out.reserve(table.size());
    for (auto c : table) out.push_back(sup.element(c));
    return out;
}

}  // namespace dtower

#endif  // DTOWER_FF_HPP
