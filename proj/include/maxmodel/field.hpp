#pragma once

// Finite fields F_q = F_p[s]/(modulus), q = p^e.
//
// Elements are encoded as integers in [0, q): the base-p digits are the
// coordinates over the prime field (digit i is the coefficient of s^i).
// Extension fields use log/antilog tables, so q is limited to 2^16.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "maxmodel/errors.hpp"

namespace maxmodel {

struct FieldElement {
    std::uint32_t code = 0;
    friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Dense polynomials over F_p, low degree first, no trailing zeros.
using PrimePoly = std::vector<std::uint64_t>;

inline void trim(PrimePoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

inline PrimePoly poly_mulmod(const PrimePoly& a, const PrimePoly& b, const PrimePoly& f,
                             std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PrimePoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    const std::size_t n = f.size() - 1;
    const std::uint64_t lead_inv = pow_mod(f.back(), p - 2, p);
    for (std::size_t k = r.size(); k-- > n;) {
        const std::uint64_t c = r[k] * lead_inv % p;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= n; ++j) r[k - n + j] = (r[k - n + j] + (p - c) * f[j] % p) % p;
    }
    r.resize(std::min(r.size(), n));
    trim(r);
    return r;
}

inline PrimePoly poly_mod(PrimePoly a, const PrimePoly& f, std::uint64_t p) {
    return poly_mulmod(a, PrimePoly{1}, f, p);
}

inline PrimePoly poly_gcd(PrimePoly a, PrimePoly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = poly_mod(a, b, p);
        std::swap(a, b);
    }
    return a;
}

// Rabin: f of degree e is irreducible iff gcd(f, x^{p^k} - x) = 1 for k <= e/2.
inline bool is_irreducible(const PrimePoly& f, std::uint64_t p) {
    const std::size_t e = f.size() - 1;
    if (e == 0) return false;
    if (e == 1) return true;
    PrimePoly x{0, 1};
    PrimePoly xp = x;
    for (std::size_t k = 1; k <= e / 2; ++k) {
        PrimePoly acc{1};
        PrimePoly base = xp;
        for (std::uint64_t ex = p; ex; ex >>= 1) {
            if (ex & 1) acc = poly_mulmod(acc, base, f, p);
            base = poly_mulmod(base, base, f, p);
        }
        xp = acc;
        PrimePoly diff = xp;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        if (diff.empty()) return false;
        if (poly_gcd(f, diff, p).size() > 1) return false;
    }
    return true;
}

inline std::optional<PrimePoly> conway_modulus(std::uint64_t p, unsigned e) {
    struct Entry {
        std::uint64_t p;
        unsigned e;
        PrimePoly coeffs;
    };
    static const std::vector<Entry> table = {
        {2, 2, {1, 1, 1}}, {2, 3, {1, 1, 0, 1}}, {3, 2, {2, 2, 1}}, {3, 3, {1, 2, 0, 1}},
        {5, 2, {2, 4, 1}}, {5, 3, {3, 3, 0, 1}}, {7, 2, {3, 6, 1}}, {7, 3, {4, 0, 6, 1}},
    };
    for (const auto& entry : table)
        if (entry.p == p && entry.e == e) return entry.coeffs;
    return std::nullopt;
}

}  // namespace detail

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

/// F_q with q = p^e. Immutable; share through FieldPtr.
class FieldSpec {
public:
    /// Builds F_{p^e}. For e > 1 without an explicit modulus a built-in
    /// Conway polynomial is used when known, else the first irreducible
    /// monic polynomial in lexicographic order.
    static FieldPtr make(std::uint64_t p, unsigned e = 1,
                         std::optional<std::vector<std::uint64_t>> modulus = std::nullopt) {
        if (!detail::is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
        if (p >= (1ULL << 31)) throw DomainError("p too large");
        if (e == 0) throw DomainError("extension degree must be >= 1");
        auto spec = std::shared_ptr<FieldSpec>(new FieldSpec());
        spec->p_ = p;
        spec->e_ = e;
        std::uint64_t q = 1;
        for (unsigned i = 0; i < e; ++i) {
            q *= p;
            if (q > (1ULL << 31)) throw DomainError("field too large");
        }
        spec->q_ = q;
        if (e == 1) {
            if (modulus && modulus->size() != 2)
                throw DomainError("a modulus for e = 1 must have degree 1");
            return spec;
        }
        if (q > (1ULL << 16)) throw DomainError("extension fields are limited to q <= 65536");
        detail::PrimePoly f;
        if (modulus) {
            f = *modulus;
            for (auto& c : f) c %= p;
            detail::trim(f);
            if (f.size() != e + 1 || f.back() != 1)
                throw DomainError("modulus must be monic of degree e");
            if (!detail::is_irreducible(f, p)) throw DomainError("modulus is not irreducible");
        } else if (auto conway = detail::conway_modulus(p, e)) {
            f = *conway;
        } else {
            f = first_irreducible(p, e);
        }
        spec->modulus_ = f;
        spec->build_tables();
        return spec;
    }

    std::uint64_t p() const { return p_; }
    unsigned e() const { return e_; }
    std::uint64_t q() const { return q_; }
    /// Monic modulus, low degree first; empty for prime fields.
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }

    bool same_as(const FieldSpec& other) const {
        return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
    }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }

    FieldElement from_int(std::int64_t v) const {
        const auto pp = static_cast<std::int64_t>(p_);
        return {static_cast<std::uint32_t>(((v % pp) + pp) % pp)};
    }

    FieldElement from_digits(const std::vector<std::int64_t>& digits) const {
        if (digits.size() > e_) throw ParseError("too many coordinates for F_q element");
        std::uint64_t code = 0;
        for (std::size_t i = digits.size(); i-- > 0;) {
            const auto pp = static_cast<std::int64_t>(p_);
            code = code * p_ + static_cast<std::uint64_t>(((digits[i] % pp) + pp) % pp);
        }
        return {static_cast<std::uint32_t>(code)};
    }

    std::vector<std::uint64_t> digits(FieldElement x) const {
        std::vector<std::uint64_t> d(e_);
        std::uint64_t c = x.code;
        for (unsigned i = 0; i < e_; ++i) {
            d[i] = c % p_;
            c /= p_;
        }
        return d;
    }

    bool in_prime_field(FieldElement x) const { return x.code < p_; }

    FieldElement add(FieldElement a, FieldElement b) const {
        if (e_ == 1) return {static_cast<std::uint32_t>((std::uint64_t{a.code} + b.code) % p_)};
        std::uint64_t r = 0, mul = 1, x = a.code, y = b.code;
        for (unsigned i = 0; i < e_; ++i) {
            r += ((x % p_ + y % p_) % p_) * mul;
            x /= p_;
            y /= p_;
            mul *= p_;
        }
        return {static_cast<std::uint32_t>(r)};
    }

    FieldElement neg(FieldElement a) const {
        if (e_ == 1) return {static_cast<std::uint32_t>((p_ - a.code) % p_)};
        std::uint64_t r = 0, mul = 1, x = a.code;
        for (unsigned i = 0; i < e_; ++i) {
            r += ((p_ - x % p_) % p_) * mul;
            x /= p_;
            mul *= p_;
        }
        return {static_cast<std::uint32_t>(r)};
    }

    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

    FieldElement mul(FieldElement a, FieldElement b) const {
        if (e_ == 1) return {static_cast<std::uint32_t>(std::uint64_t{a.code} * b.code % p_)};
        if (a.code == 0 || b.code == 0) return {0};
        return {antilog_[(log_[a.code] + log_[b.code]) % (q_ - 1)]};
    }

    FieldElement inv(FieldElement a) const {
        if (a.code == 0) throw DomainError("division by zero in F_q");
        if (e_ == 1) return {static_cast<std::uint32_t>(detail::pow_mod(a.code, p_ - 2, p_))};
        return {antilog_[(q_ - 1 - log_[a.code]) % (q_ - 1)]};
    }

    FieldElement pow(FieldElement a, std::uint64_t n) const {
        FieldElement r = one();
        while (n) {
            if (n & 1) r = mul(r, a);
            a = mul(a, a);
            n >>= 1;
        }
        return r;
    }

    /// Frobenius x -> x^p.
    FieldElement frobenius(FieldElement a) const { return pow(a, p_); }

    /// Unique y with y^p = x (x^{q/p}, since Frobenius has order e).
    FieldElement pth_root(FieldElement a) const { return pow(a, q_ / p_); }

    /// Absolute trace to F_p; its kernel is the image of y -> y^p - y.
    FieldElement trace(FieldElement a) const {
        FieldElement acc = zero();
        FieldElement x = a;
        for (unsigned i = 0; i < e_; ++i) {
            acc = add(acc, x);
            x = frobenius(x);
        }
        return acc;
    }

    std::string to_string(FieldElement x) const {
        if (e_ == 1) return std::to_string(x.code);
        std::string s = "[";
        const auto d = digits(x);
        for (unsigned i = 0; i < e_; ++i) {
            if (i) s += ",";
            s += std::to_string(d[i]);
        }
        return s + "]";
    }

    std::string name() const {
        return e_ == 1 ? "F_" + std::to_string(p_) : "F_" + std::to_string(q_);
    }

private:
    FieldSpec() = default;

    static detail::PrimePoly first_irreducible(std::uint64_t p, unsigned e) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < e; ++i) count *= p;
        for (std::uint64_t c = 0; c < count; ++c) {
            detail::PrimePoly f(e + 1, 0);
            std::uint64_t x = c;
            for (unsigned i = 0; i < e; ++i) {
                f[i] = x % p;
                x /= p;
            }
            f[e] = 1;
            if (detail::is_irreducible(f, p)) return f;
        }
        throw DomainError("no irreducible polynomial found");
    }

    std::uint32_t encode(const detail::PrimePoly& poly) const {
        std::uint64_t code = 0;
        for (std::size_t i = poly.size(); i-- > 0;) code = code * p_ + poly[i];
        return static_cast<std::uint32_t>(code);
    }

    void build_tables() {
        log_.assign(q_, 0);
        antilog_.assign(q_, 0);
        for (std::uint64_t g = 2; g < q_; ++g) {
            detail::PrimePoly gen;
            for (std::uint64_t c = g; c; c /= p_) gen.push_back(c % p_);
            detail::PrimePoly x{1};
            std::vector<bool> seen(q_, false);
            bool primitive = true;
            for (std::uint64_t k = 0; k + 1 < q_; ++k) {
                const auto code = encode(x);
                if (seen[code]) {
                    primitive = false;
                    break;
                }
                seen[code] = true;
                antilog_[k] = code;
                log_[code] = static_cast<std::uint32_t>(k);
                x = detail::poly_mulmod(x, gen, modulus_, p_);
            }
            if (primitive) return;
        }
        throw DomainError("no primitive element found");
    }

    std::uint64_t p_ = 2;
    unsigned e_ = 1;
    std::uint64_t q_ = 2;
    std::vector<std::uint64_t> modulus_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> antilog_;
};

}  // namespace maxmodel
