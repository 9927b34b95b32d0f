#pragma once

// Different exponents of maximal models, the torsor criterion, base change
// to a regular model ring and two-stage towers.
//
// Infinitesimal groups: v_X(D(T)) with D the invariant derivation
// (d/da at 0 for alpha_p and H_lambda, z d/dz at z = 1 for mu_p).
// Z/pZ: v_L(g'(pi_L)).

#include <optional>
#include <string>
#include <vector>

#include "maxmodel/models.hpp"

namespace maxmodel {

enum class DifferentMethod { InvariantDerivation, EtaleMinPolyDerivative };

inline std::string different_method_name(DifferentMethod m) {
    return m == DifferentMethod::InvariantDerivation ? "InvariantDerivation"
                                                     : "EtaleMinPolyDerivative";
}

struct DifferentReport {
    int exponent = 0;
    std::string derivation_value;
    DifferentMethod method = DifferentMethod::InvariantDerivation;
    bool is_torsor_consistent = false;
};

/// (p - 1)(m + 1).
inline int classical_as_different(int p, int m) {
    if (m < 1 || m % p == 0)
        throw DomainError("classical_as_different needs m >= 1 prime to p");
    return (p - 1) * (m + 1);
}

/// Valuation of x in a DVR model, normalized so the uniformizer has
/// valuation 1. Models that are not DVRs only answer for units (0).
inline int model_valuation(const ModelPresentation& model, const QElement& x) {
    const auto& f = model.algebra->field();
    if (!model.uniformizer) {
        const Matrix mm = multiplication_matrix(x);
        const Poly chi = characteristic_polynomial(mm, model.precision);
        const LaurentSeries norm = chi.coeff(0);
        if (norm.is_unit()) return 0;
        if (!norm.known_nonzero())
            throw PrecisionError("degenerate derivation at precision " +
                                 std::to_string(model.precision));
        throw DomainError("valuation of a non-unit in a model that is not a DVR");
    }
    const auto& u = *model.uniformizer;
    const int e = u.ramification;
    QElement y = x;
    if (!u.shift.is_exact_zero() || !(u.relation == model.relation())) {
        const RingPtr yr = monogenic(f, "Y", u.relation);
        const QElement shifted = QElement::variable(yr, 0) + QElement::constant(yr, u.shift);
        y = x.eval_hom({shifted}).truncated(model.precision);
    }
    int best = kExact;
    int bound = kExact;
    for (int k = 0; k < y.ring()->dim(0); ++k) {
        const auto& c = y.coeff_at(static_cast<std::size_t>(k));
        const int kk = e == 1 ? 0 : k;
        if (c.known_nonzero())
            best = std::min(best, detail::sat_add(detail::sat_mul(c.valuation(), e), kk));
        else if (!c.is_exact())
            bound = std::min(bound, detail::sat_add(detail::sat_mul(c.precision(), e), kk));
    }
    if (best == kExact || best >= bound)
        throw PrecisionError("degenerate derivation at precision " +
                             std::to_string(model.precision));
    return best;
}

/// D(T): the derivative of sigma(T) along the group coordinate at the identity.
inline QElement invariant_derivation(const ModelPresentation& model) {
    const auto& ring = model.bialgebra;
    const int dg = ring->dim(0);
    const int dm = ring->dim(1);
    const auto& f = ring->field();
    QElement d = QElement::zero(model.algebra);
    for (int l = 0; l < dm; ++l) {
        LaurentSeries c = LaurentSeries::zero(f);
        if (model.group.kind == GroupKind::MuP) {
            for (int k = 1; k < dg; ++k)
                c += model.coaction.coeff({k, l}).scaled(f->from_int(k));
        } else {
            c = model.coaction.coeff({1, l});
        }
        d = d.with_coeff({l}, c);
    }
    return d;
}

inline DifferentReport different_exponent(const ModelPresentation& model) {
    DifferentReport r;
    if (model.group.kind == GroupKind::ZmodP) {
        r.method = DifferentMethod::EtaleMinPolyDerivative;
        const Poly dg = model.relation().derivative();
        QElement val = QElement::zero(model.algebra);
        const QElement z = QElement::variable(model.algebra, 0);
        QElement zk = QElement::one(model.algebra);
        for (int k = 0; k <= dg.degree(); ++k) {
            val += zk.scaled(dg.coeff(k));
            zk = zk * z;
        }
        r.derivation_value = "g'(" + model.variable() + ") = " + val.to_string();
        r.exponent = model_valuation(model, val);
    } else {
        r.method = DifferentMethod::InvariantDerivation;
        const QElement d = invariant_derivation(model);
        if (d.vanishes_to_precision())
            throw PrecisionError("degenerate derivation at precision " +
                                 std::to_string(model.precision));
        r.derivation_value = "D(" + model.variable() + ") = " + d.to_string();
        r.exponent = model_valuation(model, d);
    }
    r.is_torsor_consistent = (r.exponent == 0) == model.is_torsor;
    return r;
}

/// t as a series in the uniformizer Y of a totally ramified DVR model,
/// from the Eisenstein relation h(Y) = Y^p + sum c_k(t) Y^k with
/// c_0 = t w(t): t = -(Y^p + sum_{k>=1} c_k(t) Y^k) / w(t), iterated.
inline LaurentSeries base_uniformizer_in_model(const ModelPresentation& stage, int cap) {
    if (!stage.is_regular || !stage.uniformizer)
        throw StageError("stage model " + case_label_name(stage.label) + " is not a DVR");
    const auto& u = *stage.uniformizer;
    if (u.ramification != static_cast<int>(stage.p()) || !u.relation.is_eisenstein())
        throw StageError("stage model " + case_label_name(stage.label) +
                         " is not totally ramified");
    const auto& f = stage.algebra->field();
    const Poly& h = u.relation;
    const int p = h.degree();
    const LaurentSeries w = h.coeff(0).shifted(-1);
    auto rhs = [&](const LaurentSeries& t) {
        LaurentSeries acc = LaurentSeries::t_power(f, p);
        for (int k = 1; k < p; ++k) {
            const LaurentSeries ck = h.coeff(k);
            if (!ck.is_exact_zero()) acc += ck.substitute(t, cap).shifted(k);
        }
        return acc;
    };
    // Each pass fixes at least one more coefficient.
    LaurentSeries t = LaurentSeries::zero(f, 1);
    for (int iter = 0; iter < cap + 2; ++iter) {
        const LaurentSeries wt = w.substitute(t, cap);
        const LaurentSeries next = (-LaurentSeries::divide(rhs(t), wt, cap)).truncated(cap);
        if (next == t) break;
        t = next;
    }
    if (t.precision() < cap || !t.known_nonzero() || t.valuation() != p)
        throw VerificationError("fixpoint for t failed to gain valuation");
    const LaurentSeries check = rhs(t) + h.coeff(0).substitute(t, cap);
    if (check.truncated(cap - p).known_nonzero())
        throw VerificationError("t(Y) does not satisfy the stage relation");
    return t;
}

/// A class given in the base variable t, re-expressed over the stage model
/// ring F_q((Y)).
inline LaurentSeries base_change_to_model(const LaurentSeries& f2, const ModelPresentation& stage,
                                          int cap) {
    const LaurentSeries t_in_y = base_uniformizer_in_model(stage, cap);
    return f2.substitute(t_in_y, cap);
}

struct TowerStage {
    GroupSchemeSpec group;
    LaurentSeries f;          // class over the previous stage
    bool native = false;      // f already written in the stage uniformizer
    NormalizeOptions normalize;
};

struct TowerSpec {
    std::vector<TowerStage> stages;
    int precision = 80;
};

struct TowerStageReport {
    ModelPresentation model;
    DifferentReport different;
    int ramification = 1;
    LaurentSeries class_over_base;
};

struct TowerReport {
    std::vector<TowerStageReport> stages;
    int formula_total = 0;
    std::optional<int> direct_total;  // étale mode
    bool verified = false;
    std::string mode;  // "etale, verified directly" or "formula-derived, not independently verified"
};

namespace detail {

/// Element of L2 = L1[y]/(y^p - y - f2) as coefficients (in L1) of y^j.
struct TowerElement {
    std::vector<QElement> c;
};

inline TowerElement tower_mul_y(const TowerElement& x, const QElement& f2) {
    const std::size_t p = x.c.size();
    TowerElement r{std::vector<QElement>(p, QElement::zero(f2.ring()))};
    for (std::size_t j = 0; j + 1 < p; ++j) r.c[j + 1] = x.c[j];
    r.c[1] += x.c[p - 1];
    r.c[0] += x.c[p - 1] * f2;
    return r;
}

inline TowerElement tower_mul(const TowerElement& x, const QElement& s) {
    TowerElement r = x;
    for (auto& c : r.c) c = c * s;
    return r;
}

/// x in L1 = K[Z]/(g) with x = Y^k, Y = Z, k possibly negative.
inline QElement z_power(const RingPtr& l1, int k, int cap) {
    const QElement z = QElement::variable(l1, 0);
    if (k >= 0) return z.pow(k);
    // Z^{-1} = -(Z^{p-1} + c_{p-1} Z^{p-2} + ... + c_1) / c_0
    const Poly& g = l1->relation(0).poly;
    QElement num = QElement::zero(l1);
    QElement zk = QElement::one(l1);
    for (int j = 1; j <= g.degree(); ++j) {
        num += zk.scaled(g.coeff(j));
        zk = zk * z;
    }
    const QElement zinv = (-num).scaled(g.coeff(0).invert(cap)).truncated(cap);
    return zinv.pow(-k, cap);
}

/// Direct different of a two-stage Artin-Schreier tower over K.
inline int etale_tower_different(const ModelPresentation& m1, const cls::RamifiedAS& c2, int cap) {
    const auto& f = m1.algebra->field();
    const int p = static_cast<int>(f->p());
    const RingPtr l1 = m1.algebra;
    // f2 = u2(Z) Z^{-m2} as an element of L1.
    QElement f2 = QElement::zero(l1);
    const LaurentSeries shifted = c2.u.shifted(-c2.m);
    for (const auto& [k, c] : shifted.terms())
        f2 += z_power(l1, k, cap).scaled(LaurentSeries::constant(f, c));
    f2 = f2.truncated(cap);
    int a = 1;
    while (((a * c2.m) % p + 1) % p != 0) ++a;
    const int b = (1 + a * c2.m) / p;
    const QElement zb = QElement::variable(l1, 0).pow(b);
    auto mul_pi = [&](TowerElement x) {
        for (int i = 0; i < a; ++i) x = tower_mul_y(x, f2);
        x = tower_mul(x, zb);
        for (auto& c : x.c) c = c.truncated(cap);
        return x;
    };
    const std::size_t n = static_cast<std::size_t>(p * p);
    Matrix mm(f, n, n);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            TowerElement basis{std::vector<QElement>(static_cast<std::size_t>(p), QElement::zero(l1))};
            basis.c[static_cast<std::size_t>(j)] = QElement::variable(l1, 0).pow(i);
            const TowerElement img = mul_pi(basis);
            for (int jj = 0; jj < p; ++jj)
                for (int ii = 0; ii < p; ++ii)
                    mm(static_cast<std::size_t>(jj * p + ii), static_cast<std::size_t>(j * p + i)) =
                        img.c[static_cast<std::size_t>(jj)].coeff_at(static_cast<std::size_t>(ii));
        }
    const Poly g = characteristic_polynomial(mm, cap);
    if (!g.is_eisenstein())
        throw PrecisionError("tower minimal polynomial is not Eisenstein at precision " +
                             std::to_string(cap));
    const RingPtr l2 = monogenic(f, "P", g);
    const Poly dg = g.derivative();
    QElement val = QElement::zero(l2);
    const QElement pi = QElement::variable(l2, 0);
    QElement pk = QElement::one(l2);
    for (int k = 0; k <= dg.degree(); ++k) {
        val += pk.scaled(dg.coeff(k));
        pk = pk * pi;
    }
    const int e = static_cast<int>(n);
    int best = kExact, bound = kExact;
    for (int k = 0; k < static_cast<int>(n); ++k) {
        const auto& c = val.coeff_at(static_cast<std::size_t>(k));
        if (c.known_nonzero())
            best = std::min(best, c.valuation() * e + k);
        else if (!c.is_exact())
            bound = std::min(bound, detail::sat_add(detail::sat_mul(c.precision(), e), k));
    }
    if (best == kExact || best >= bound)
        throw PrecisionError("tower different undecidable at precision " + std::to_string(cap));
    return best;
}

}  // namespace detail

/// v(total) = d2 + e2 * d1, checked directly when both stages are Z/pZ.
inline TowerReport verify_tower_transitivity(const TowerSpec& tower) {
    if (tower.stages.size() != 2) throw DomainError("a tower needs exactly two stages");
    const int cap = tower.precision;
    TowerReport rep;
    const auto& s1 = tower.stages[0];
    const auto& s2 = tower.stages[1];
    ModelOptions mo;
    mo.precision = cap;
    const TorsorClass c1 = normalize(s1.f, s1.group, s1.normalize);
    ModelPresentation m1 = build_model(c1, mo);
    const DifferentReport d1 = different_exponent(m1);
    if (!m1.is_regular || !m1.uniformizer || m1.uniformizer->ramification != static_cast<int>(m1.p()))
        throw StageError("intermediate stage " + case_label_name(m1.label) +
                         " is not a totally ramified DVR");
    rep.stages.push_back({m1, d1, m1.uniformizer->ramification, s1.f});

    LaurentSeries f2 = s2.native ? s2.f : base_change_to_model(s2.f, m1, cap);
    const TorsorClass c2 = normalize(f2, s2.group, s2.normalize);
    ModelPresentation m2 = build_model(c2, mo);
    const DifferentReport d2 = different_exponent(m2);
    const int e2 = m2.uniformizer ? m2.uniformizer->ramification : 1;
    rep.stages.push_back({m2, d2, e2, f2});
    rep.formula_total = d2.exponent + e2 * d1.exponent;

    const bool etale = s1.group.kind == GroupKind::ZmodP && s2.group.kind == GroupKind::ZmodP;
    if (etale) {
        rep.mode = "etale, verified directly";
        if (const auto* r2 = std::get_if<cls::RamifiedAS>(&c2.normalized)) {
            rep.direct_total = detail::etale_tower_different(m1, *r2, cap);
        } else {
            // Unramified or split top stage: L2/L1 is étale and the total is the
            // different of the first stage read in L2.
            rep.direct_total = e2 * d1.exponent;
        }
        rep.verified = *rep.direct_total == rep.formula_total;
    } else {
        rep.mode = "formula-derived, not independently verified";
        rep.verified = true;
    }
    return rep;
}

}  // namespace maxmodel
