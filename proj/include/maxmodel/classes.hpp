#pragma once

// Canonical representatives of torsor classes over K = F_q((t)) under the
// order-p group schemes Z/pZ, mu_p, alpha_p and H_lambda.
//
//   mu_p:     K^x / (K^x)^p      f ~ f * y^p
//   alpha_p:  K / K^p            f ~ f + y^p
//   Z/pZ:     K / (y^p - y)(K)   f ~ f + y^p - y
//   H_lambda: f taken as given (optionally with negative K^p terms removed)

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>

#include "maxmodel/series.hpp"

namespace maxmodel {

enum class GroupKind { ZmodP, MuP, AlphaP, HLambda };

inline std::string group_kind_name(GroupKind k) {
    switch (k) {
        case GroupKind::ZmodP: return "z_mod_p";
        case GroupKind::MuP: return "mu_p";
        case GroupKind::AlphaP: return "alpha_p";
        case GroupKind::HLambda: return "h_lambda";
    }
    return "?";
}

inline GroupKind parse_group_kind(const std::string& s) {
    if (s == "z_mod_p") return GroupKind::ZmodP;
    if (s == "mu_p") return GroupKind::MuP;
    if (s == "alpha_p") return GroupKind::AlphaP;
    if (s == "h_lambda") return GroupKind::HLambda;
    throw ParseError("unknown group kind '" + s + "' (expected z_mod_p, mu_p, alpha_p, h_lambda)");
}

struct GroupSchemeSpec {
    GroupKind kind = GroupKind::MuP;
    std::optional<LaurentSeries> lambda;  // HLambda only

    static GroupSchemeSpec make(GroupKind kind, std::optional<LaurentSeries> lambda = std::nullopt) {
        if (kind == GroupKind::HLambda) {
            if (!lambda) throw DomainError("h_lambda needs a lambda series");
            if (!lambda->known_nonzero())
                throw DomainError("lambda must be nonzero (0 < v(lambda) < infinity)");
            if (lambda->valuation() < 1) throw DomainError("lambda must have valuation >= 1");
        } else if (lambda) {
            throw DomainError("lambda is only meaningful for h_lambda");
        }
        return GroupSchemeSpec{kind, std::move(lambda)};
    }

    friend bool operator==(const GroupSchemeSpec& a, const GroupSchemeSpec& b) {
        return a.kind == b.kind && a.lambda.has_value() == b.lambda.has_value() &&
               (!a.lambda || *a.lambda == *b.lambda);
    }
};

namespace cls {

struct Trivial {
    friend bool operator==(const Trivial&, const Trivial&) = default;
};
/// mu_p with f a unit: the unit is canonically reduced modulo (R^x)^p.
struct UnitKummer {
    LaurentSeries u;
    friend bool operator==(const UnitKummer&, const UnitKummer&) = default;
};
/// f ~ u * t^i (mu_p: 1 <= i <= p-1; alpha_p: p does not divide i).
struct Ramified {
    LaurentSeries u;
    int i = 0;
    friend bool operator==(const Ramified&, const Ramified&) = default;
};
/// Z/pZ with integral representative; c is the transversal constant.
struct UnramifiedAS {
    FieldElement c;
    friend bool operator==(const UnramifiedAS&, const UnramifiedAS&) = default;
};
/// Z/pZ with reduced representative u * t^{-m}, p not dividing m.
struct RamifiedAS {
    LaurentSeries u;
    int m = 0;
    friend bool operator==(const RamifiedAS&, const RamifiedAS&) = default;
};
/// H_lambda with v(f) >= 0.
struct HExtendable {
    LaurentSeries f;
    friend bool operator==(const HExtendable&, const HExtendable&) = default;
};
/// H_lambda with f = delta * t^{-i}, i > 0.
struct HRamified {
    LaurentSeries delta;
    int i = 0;
    friend bool operator==(const HRamified&, const HRamified&) = default;
};

}  // namespace cls

using NormalizedClass = std::variant<cls::Trivial, cls::UnitKummer, cls::Ramified,
                                     cls::UnramifiedAS, cls::RamifiedAS, cls::HExtendable,
                                     cls::HRamified>;

struct TorsorClass {
    GroupSchemeSpec group;
    LaurentSeries raw;
    NormalizedClass normalized;

    const FieldPtr& field() const { return raw.field(); }
    std::uint64_t p() const { return raw.field()->p(); }
};

inline std::string class_kind_name(const NormalizedClass& c) {
    static const char* names[] = {"Trivial",  "UnitKummer",  "Ramified", "UnramifiedAS",
                                  "RamifiedAS", "HExtendable", "HRamified"};
    return names[c.index()];
}

/// e.g. "Ramified(u = 1, i = -1)".
inline std::string describe_class(const NormalizedClass& c, const FieldSpec& f) {
    return std::visit(
        [&f](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, cls::Trivial>)
                return "Trivial";
            else if constexpr (std::is_same_v<T, cls::UnitKummer>)
                return "UnitKummer(u = " + x.u.to_string() + ")";
            else if constexpr (std::is_same_v<T, cls::Ramified>)
                return "Ramified(u = " + x.u.to_string() + ", i = " + std::to_string(x.i) + ")";
            else if constexpr (std::is_same_v<T, cls::UnramifiedAS>)
                return "UnramifiedAS(c = " + f.to_string(x.c) + ")";
            else if constexpr (std::is_same_v<T, cls::RamifiedAS>)
                return "RamifiedAS(u = " + x.u.to_string() + ", m = " + std::to_string(x.m) + ")";
            else if constexpr (std::is_same_v<T, cls::HExtendable>)
                return "HExtendable(f = " + x.f.to_string() + ")";
            else
                return "HRamified(delta = " + x.delta.to_string() + ", i = " + std::to_string(x.i) + ")";
        },
        c);
}

/// Same kind and integer data, and every series agrees on the common window.
inline bool agree_on_window(const NormalizedClass& a, const NormalizedClass& b) {
    if (a.index() != b.index()) return false;
    return std::visit(
        [&b](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b);
            if constexpr (std::is_same_v<T, cls::Trivial>) {
                return true;
            } else if constexpr (std::is_same_v<T, cls::UnitKummer>) {
                return agree_on_window(x.u, y.u);
            } else if constexpr (std::is_same_v<T, cls::Ramified>) {
                return x.i == y.i && agree_on_window(x.u, y.u);
            } else if constexpr (std::is_same_v<T, cls::UnramifiedAS>) {
                return x.c == y.c;
            } else if constexpr (std::is_same_v<T, cls::RamifiedAS>) {
                return x.m == y.m && agree_on_window(x.u, y.u);
            } else if constexpr (std::is_same_v<T, cls::HExtendable>) {
                return agree_on_window(x.f, y.f);
            } else {
                return x.i == y.i && agree_on_window(x.delta, y.delta);
            }
        },
        a);
}

/// Smallest precision among the series carried by a normalized class.
inline int class_precision(const NormalizedClass& c) {
    return std::visit(
        [](const auto& x) -> int {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, cls::UnitKummer> || std::is_same_v<T, cls::Ramified> ||
                          std::is_same_v<T, cls::RamifiedAS>)
                return x.u.precision();
            else if constexpr (std::is_same_v<T, cls::HExtendable>)
                return x.f.precision();
            else if constexpr (std::is_same_v<T, cls::HRamified>)
                return x.delta.precision();
            else
                return kExact;
        },
        c);
}

struct NormalizeOptions {
    int precision = 40;   // working cap for expansions
    bool reduce = false;  // H_lambda: drop negative p-divisible exponents
};

namespace detail {

/// Multiplies a unit by c^{-1} and by p-th powers of 1-units until its
/// constant term is 1 and no exponent divisible by p survives. Two units
/// differ by a p-th power iff their reduced forms agree.
inline LaurentSeries reduce_unit_mod_pth_powers(const LaurentSeries& unit, int cap) {
    const auto& f = unit.field();
    const auto p = static_cast<int>(f->p());
    LaurentSeries u = unit.scaled(f->inv(unit.leading_coefficient()));
    for (int k = p; k < std::min(cap, u.precision()); k += p) {
        const FieldElement b = u.coeff(k);
        if (b.code == 0) continue;
        const LaurentSeries factor =
            LaurentSeries::one(f) + LaurentSeries::monomial(f, b, k);  // (1 + b^{1/p} t^{k/p})^p
        u = LaurentSeries::divide(u, factor, cap);
    }
    return u;
}

/// Fixed element w of F_q with Tr(w) = 1 (w = 1 over F_p).
inline FieldElement trace_one_element(const FieldSpec& f) {
    for (std::uint32_t code = 1; code < f.q(); ++code)
        if (f.trace(FieldElement{code}) == f.one()) return FieldElement{code};
    throw DomainError("no trace-one element");
}

}  // namespace detail

/// Representative of c in F_q / (y^p - y)(F_q): Tr(c) * w.
inline FieldElement as_constant_transversal(const FieldSpec& f, FieldElement c) {
    const FieldElement tr = f.trace(c);
    return f.mul(tr, detail::trace_one_element(f));
}

/// mu_p classes: f ~ f * y^p.
inline TorsorClass normalize_mu(const LaurentSeries& f, const NormalizeOptions& opts = {}) {
    const auto& field = f.field();
    const auto p = static_cast<int>(field->p());
    if (f.is_exact_zero()) throw DomainError("mu_p class needs f != 0");
    if (!f.known_nonzero())
        throw PrecisionError("f is indistinguishable from 0 at precision " +
                             std::to_string(f.precision()));
    const int v = f.valuation();
    const int i = ((v % p) + p) % p;
    const LaurentSeries unit = f.shifted(-v);
    TorsorClass out{GroupSchemeSpec::make(GroupKind::MuP), f, cls::Trivial{}};
    // an exact polynomial is a p-th power iff its support is
    if (i == 0 && unit.is_exact() && unit.is_pth_power()) return out;
    const LaurentSeries u = detail::reduce_unit_mod_pth_powers(unit, opts.precision) +
                            LaurentSeries::zero(field, opts.precision);
    if (i != 0) {
        out.normalized = cls::Ramified{u, i};
        return out;
    }
    const LaurentSeries rest = u - LaurentSeries::one(field);
    if (rest.is_exact_zero()) return out;
    if (!rest.known_nonzero())
        throw PrecisionError("triviality undecidable at precision " +
                             std::to_string(rest.precision()));
    out.normalized = cls::UnitKummer{u};
    return out;
}

/// alpha_p classes: f ~ f + y^p. Monomials with p | exponent lie in K^p.
inline TorsorClass normalize_alpha(const LaurentSeries& f, const NormalizeOptions& = {}) {
    const auto& field = f.field();
    const auto p = static_cast<int>(field->p());
    std::vector<LaurentSeries::Term> kept;
    for (const auto& t : f.terms())
        if (t.first % p != 0) kept.push_back(t);
    const LaurentSeries reduced = LaurentSeries::from_terms(field, kept, f.precision());
    TorsorClass out{GroupSchemeSpec::make(GroupKind::AlphaP), f, cls::Trivial{}};
    if (reduced.is_exact_zero()) return out;
    if (!reduced.known_nonzero())
        throw PrecisionError("triviality undecidable at precision " +
                             std::to_string(f.precision()));
    const int i = reduced.valuation();
    out.normalized = cls::Ramified{reduced.shifted(-i), i};
    return out;
}

/// Z/pZ classes: f ~ f + y^p - y.
inline TorsorClass normalize_as(const LaurentSeries& f, const NormalizeOptions& = {}) {
    const auto& field = f.field();
    const auto p = static_cast<int>(field->p());
    if (f.precision() < 1)
        throw PrecisionError("Artin-Schreier class needs every non-positive exponent (precision " +
                             std::to_string(f.precision()) + ")");
    std::map<int, FieldElement> g;
    for (const auto& [k, c] : f.terms())
        if (k <= 0) g[k] = c;
    // Replace c t^{k} (p | k < 0) by c^{1/p} t^{k/p}: they differ by (c^{1/p} t^{k/p})^p - c^{1/p} t^{k/p}.
    while (true) {
        auto it = std::find_if(g.begin(), g.end(), [p](const auto& kv) {
            return kv.first < 0 && kv.first % p == 0 && kv.second.code != 0;
        });
        if (it == g.end()) break;
        const int k = it->first;
        const FieldElement root = field->pth_root(it->second);
        g.erase(it);
        auto& slot = g[k / p];
        slot = field->add(slot, root);
        if (slot.code == 0) g.erase(k / p);
    }
    FieldElement c0 = field->zero();
    if (auto it = g.find(0); it != g.end()) {
        c0 = it->second;
        g.erase(it);
    }
    const FieldElement c = as_constant_transversal(*field, c0);
    TorsorClass out{GroupSchemeSpec::make(GroupKind::ZmodP), f, cls::Trivial{}};
    if (g.empty()) {
        if (c.code != 0) out.normalized = cls::UnramifiedAS{c};
        return out;
    }
    std::vector<LaurentSeries::Term> terms(g.begin(), g.end());
    if (c.code != 0) terms.push_back({0, c});
    const LaurentSeries rep = LaurentSeries::from_terms(field, terms);
    const int m = -rep.valuation();
    out.normalized = cls::RamifiedAS{rep.shifted(m), m};
    return out;
}

/// y with y^p - y = f for v(f) > 0: y = -(f + f^p + f^{p^2} + ...).
inline LaurentSeries artin_schreier_tail_root(const LaurentSeries& f, int cap) {
    if (!f.known_nonzero() && !f.is_exact_zero() && f.precision() < 1)
        throw PrecisionError("tail undetermined");
    if (f.known_nonzero() && f.valuation() < 1)
        throw DomainError("tail recursion needs positive valuation");
    LaurentSeries acc = LaurentSeries::zero(f.field());
    LaurentSeries power = f.truncated(cap);
    while (power.known_nonzero() && power.valuation() < cap) {
        acc += power;
        power = power.frobenius().truncated(cap);
    }
    acc += LaurentSeries::zero(f.field(), std::min(cap, power.precision()));
    return -acc.truncated(cap);
}

/// H_lambda classes. f is taken as given unless opts.reduce is set, which
/// removes negative monomials with p | exponent (each lies in K^p).
inline TorsorClass normalize_hlambda(const LaurentSeries& f, const GroupSchemeSpec& spec,
                                     const NormalizeOptions& opts = {}) {
    if (spec.kind != GroupKind::HLambda) throw DomainError("normalize_hlambda needs an H_lambda spec");
    const auto& field = f.field();
    const auto p = static_cast<int>(field->p());
    TorsorClass out{spec, f, cls::Trivial{}};
    LaurentSeries g = f;
    if (opts.reduce) {
        std::vector<LaurentSeries::Term> kept;
        for (const auto& t : f.terms())
            if (!(t.first < 0 && t.first % p == 0)) kept.push_back(t);
        g = LaurentSeries::from_terms(field, kept, f.precision());
    }
    if (g.is_exact_zero()) return out;
    if (!g.known_nonzero())
        throw PrecisionError("f is indistinguishable from 0 at precision " +
                             std::to_string(g.precision()));
    const int v = g.valuation();
    if (v >= 0)
        out.normalized = cls::HExtendable{g};
    else
        out.normalized = cls::HRamified{g.shifted(-v), -v};
    return out;
}

/// Dispatch on the group kind.
inline TorsorClass normalize(const LaurentSeries& f, const GroupSchemeSpec& spec,
                             const NormalizeOptions& opts = {}) {
    switch (spec.kind) {
        case GroupKind::MuP: return normalize_mu(f, opts);
        case GroupKind::AlphaP: return normalize_alpha(f, opts);
        case GroupKind::ZmodP: return normalize_as(f, opts);
        case GroupKind::HLambda: return normalize_hlambda(f, spec, opts);
    }
    throw DomainError("unknown group kind");
}

}  // namespace maxmodel
