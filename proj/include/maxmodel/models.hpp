#pragma once

// Maximal integral models of torsors under order-p group schemes over
// R = F_q[[t]]. Every model is monogenic, A = R[T]/(g(T)), and the extended
// action is stored as the coaction sigma(T) in O_G (x) A, fully expanded in
// normal form.

#include <optional>
#include <string>
#include <vector>

#include "maxmodel/classes.hpp"
#include "maxmodel/matrix.hpp"

namespace maxmodel {

enum class CaseLabel {
    MuCaseI,
    MuCaseII,
    AlphaCaseI,
    AlphaCaseII,
    ASUnramified,
    ASRamified,
    ASTrivial,
    HTorsor,
    HRamified,
    TrivialTorsor
};

inline std::string case_label_name(CaseLabel c) {
    switch (c) {
        case CaseLabel::MuCaseI: return "MuCaseI";
        case CaseLabel::MuCaseII: return "MuCaseII";
        case CaseLabel::AlphaCaseI: return "AlphaCaseI";
        case CaseLabel::AlphaCaseII: return "AlphaCaseII";
        case CaseLabel::ASUnramified: return "ASUnramified";
        case CaseLabel::ASRamified: return "ASRamified";
        case CaseLabel::ASTrivial: return "ASTrivial";
        case CaseLabel::HTorsor: return "HTorsor";
        case CaseLabel::HRamified: return "HRamified";
        case CaseLabel::TrivialTorsor: return "TrivialTorsor";
    }
    return "?";
}

/// The torsor flag each case must carry.
inline bool case_is_torsor(CaseLabel c) {
    switch (c) {
        case CaseLabel::MuCaseII:
        case CaseLabel::AlphaCaseII:
        case CaseLabel::ASRamified:
        case CaseLabel::HRamified: return false;
        default: return true;
    }
}

struct BezoutPair {
    int m = 0;
    int n = 0;
    friend bool operator==(const BezoutPair&, const BezoutPair&) = default;
};

/// Least m > 0 with m|i| = 1 + np.
inline BezoutPair bezout_mp(int i, int p) {
    const int a = i < 0 ? -i : i;
    if (a == 0 || a % p == 0)
        throw DomainError("bezout_mp: p = " + std::to_string(p) + " divides i = " + std::to_string(i));
    for (int m = 1; m < p + 1; ++m)
        if ((static_cast<long long>(m) * a) % p == 1 % p) return {m, (m * a - 1) / p};
    throw DomainError("bezout_mp: no solution");
}

/// u = alpha^p + t^r beta with r maximal (so p does not divide r) and beta a unit.
struct PthPowerPart {
    LaurentSeries alpha;
    int r = 0;
    LaurentSeries beta;
};

namespace detail {

// nullopt when u is exactly a p-th power.
inline std::optional<PthPowerPart> pth_power_split(const LaurentSeries& u) {
    if (!u.is_unit()) throw DomainError("extract_pth_power_part needs a unit");
    const auto& f = u.field();
    const auto p = static_cast<int>(f->p());
    LaurentSeries alpha = LaurentSeries::constant(f, f->pth_root(u.coeff(0)));
    while (true) {
        const LaurentSeries w = u - alpha.frobenius();
        if (w.is_exact_zero()) return std::nullopt;
        if (!w.known_nonzero())
            throw PrecisionError("triviality undecidable at precision " +
                                 std::to_string(w.precision()));
        const int k = w.valuation();
        if (k % p != 0) return PthPowerPart{alpha, k, w.shifted(-k)};
        alpha += LaurentSeries::monomial(f, f->pth_root(w.leading_coefficient()), k / p);
    }
}

}  // namespace detail

inline PthPowerPart extract_pth_power_part(const LaurentSeries& u) {
    auto split = detail::pth_power_split(u);
    if (!split) throw PrecisionError("triviality undecidable: u is a p-th power");
    return *split;
}

/// Characteristic polynomial of multiplication by expr on K[y]/(relation),
/// i.e. Res_y(relation(y), Z - expr(y)). For a uniformizer of a totally
/// ramified extension it is Eisenstein.
inline Poly minimal_polynomial_via_resultant(const QElement& expr, int cap = kExact) {
    const auto& ring = expr.ring();
    if (ring->arity() != 1) throw DomainError("minimal polynomial needs a monogenic algebra");
    const auto& rel = ring->relation(0).poly;
    if (rel.is_integral() && rel.degree() == static_cast<int>(ring->field()->p())) {
        bool as_type = true;
        for (int k = 2; k < rel.degree(); ++k)
            if (!rel.coeff(k).is_exact_zero()) as_type = false;
        if (as_type && rel.coeff(1) == -LaurentSeries::one(ring->field()))
            throw DomainError("relation is unramified (integral Artin-Schreier class): wrong branch");
    }
    Poly g = characteristic_polynomial(multiplication_matrix(expr), cap);
    if (!g.is_integral() || !g.is_eisenstein())
        throw VerificationError("minimal polynomial " + g.to_string("Z") + " is not Eisenstein");
    return g;
}

/// A uniformizer Y = T - shift of a DVR model together with its relation.
struct UniformizerData {
    LaurentSeries shift;  // Y = T - shift
    Poly relation;        // satisfied by Y; Eisenstein when ramification = p
    int ramification = 1;

    std::string describe(const std::string& var) const {
        std::string y = shift.is_exact_zero() ? var : var + " - (" + shift.to_string() + ")";
        return "uniformizer " + y + ", e = " + std::to_string(ramification);
    }
};

struct ModelPresentation {
    GroupSchemeSpec group;
    TorsorClass torsor_class;
    CaseLabel label = CaseLabel::TrivialTorsor;
    RingPtr algebra;    // R[T]/(g)
    RingPtr bialgebra;  // O_G (x) A, group variable first
    QElement coaction;  // sigma(T)
    bool is_torsor = true;
    bool is_regular = false;
    std::optional<BezoutPair> bezout;
    std::optional<UniformizerData> uniformizer;  // set iff A is a DVR
    QElement generic_coordinate;                 // X with X^p = f (or y for Z/pZ) in A (x) K
    int precision = 40;

    const Poly& relation() const { return algebra->relation(0).poly; }
    const std::string& variable() const { return algebra->relation(0).var; }
    const std::string& group_variable() const { return bialgebra->relation(0).var; }
    std::uint64_t p() const { return algebra->field()->p(); }

    /// The model generator inside the bialgebra.
    QElement model_generator() const { return QElement::variable(bialgebra, 1); }
    QElement group_coordinate() const { return QElement::variable(bialgebra, 0); }
};

inline std::string group_variable_name(GroupKind k) {
    switch (k) {
        case GroupKind::ZmodP: return "e";
        case GroupKind::MuP: return "z";
        case GroupKind::AlphaP: return "a";
        case GroupKind::HLambda: return "x";
    }
    return "g";
}

/// O_G = R[g]/(relation): e^p - e, z^p - 1, a^p, x^p.
inline Relation group_relation(const FieldPtr& f, const GroupSchemeSpec& spec) {
    const auto p = static_cast<std::size_t>(f->p());
    std::vector<LaurentSeries> lower(p, LaurentSeries::zero(f));
    if (spec.kind == GroupKind::ZmodP) lower[1] = -LaurentSeries::one(f);
    if (spec.kind == GroupKind::MuP) lower[0] = -LaurentSeries::one(f);
    return Relation{group_variable_name(spec.kind), Poly::monic(f, std::move(lower))};
}

/// Value of the group coordinate at the identity section.
inline LaurentSeries group_identity(const FieldPtr& f, GroupKind k) {
    return k == GroupKind::MuP ? LaurentSeries::one(f) : LaurentSeries::zero(f);
}

/// The group law on coordinates, g1 * g2, for elements of any common ring.
inline QElement group_law(const GroupSchemeSpec& spec, const QElement& g1, const QElement& g2) {
    switch (spec.kind) {
        case GroupKind::MuP: return g1 * g2;
        case GroupKind::AlphaP:
        case GroupKind::ZmodP: return g1 + g2;
        case GroupKind::HLambda: return g1 + g2 + (g1 * g2).scaled(*spec.lambda);
    }
    throw DomainError("unknown group kind");
}

/// The generic action on X: zX, X + a, X + e, x + X + lambda x X.
inline QElement generic_action(const GroupSchemeSpec& spec, const QElement& g, const QElement& x) {
    switch (spec.kind) {
        case GroupKind::MuP: return g * x;
        case GroupKind::AlphaP:
        case GroupKind::ZmodP: return x + g;
        case GroupKind::HLambda: return g + x + (g * x).scaled(*spec.lambda);
    }
    throw DomainError("unknown group kind");
}

struct ModelOptions {
    int precision = 40;
};

namespace detail {

inline Poly binomial_relation(const FieldPtr& f, const LaurentSeries& c) {
    // T^p - c
    const auto p = static_cast<std::size_t>(f->p());
    std::vector<LaurentSeries> lower(p, LaurentSeries::zero(f));
    lower[0] = -c;
    return Poly::monic(f, std::move(lower));
}

/// (1 + y)^{-m} when y^p = 0.
inline QElement one_plus_nilpotent_inverse_pow(const QElement& y, int m, int p, int cap) {
    QElement inv = QElement::one(y.ring());
    QElement term = inv;
    for (int k = 1; k < p; ++k) {
        term = (term * -y).truncated(cap);
        inv += term;
    }
    return inv.pow(m, cap);
}

/// T^{-1} in R[T]/(T^p - c) with c != 0: T^{p-1} / c.
inline QElement binomial_inverse(const RingPtr& a, const LaurentSeries& c, int cap) {
    const int p = a->dim(0);
    return QElement::variable(a, 0).pow(p - 1).scaled(c.invert(cap));
}

struct Builder {
    const TorsorClass& cls;
    const FieldPtr& f;
    int p;
    int cap;
    ModelPresentation out;

    Builder(const TorsorClass& c, const ModelOptions& opts)
        : cls(c), f(c.field()), p(static_cast<int>(c.field()->p())), cap(opts.precision) {
        out.group = c.group;
        out.torsor_class = c;
        out.precision = opts.precision;
    }

    void rings(const std::string& var, Poly g) {
        out.algebra = monogenic(f, var, g);
        out.bialgebra = QuotientRing::make(f, {group_relation(f, cls.group), Relation{var, g}});
        out.generic_coordinate = QElement::variable(out.algebra, 0);
    }

    QElement grp() const { return QElement::variable(out.bialgebra, 0); }
    QElement gen() const { return QElement::variable(out.bialgebra, 1); }
    QElement scalar(const LaurentSeries& s) const { return QElement::constant(out.bialgebra, s); }

    void eisenstein_dvr(const LaurentSeries& shift, const Poly& rel) {
        out.uniformizer = UniformizerData{shift, rel, p};
    }

    void trivial() {
        const auto kind = cls.group.kind;
        out.label = kind == GroupKind::ZmodP ? CaseLabel::ASTrivial : CaseLabel::TrivialTorsor;
        out.is_torsor = true;
        std::vector<LaurentSeries> lower(static_cast<std::size_t>(p), LaurentSeries::zero(f));
        if (kind == GroupKind::ZmodP) lower[1] = -LaurentSeries::one(f);
        if (kind == GroupKind::MuP) lower[0] = -LaurentSeries::one(f);
        rings(kind == GroupKind::HLambda ? "W" : "T", Poly::monic(f, std::move(lower)));
        out.coaction = generic_action(cls.group, grp(), gen());
        out.is_regular = kind == GroupKind::ZmodP;  // a product of copies of R
        if (kind == GroupKind::ZmodP) out.generic_coordinate = QElement::variable(out.algebra, 0);
    }

    void mu_case_one(const cls::UnitKummer& c) {
        out.label = CaseLabel::MuCaseI;
        out.is_torsor = true;
        rings("T", binomial_relation(f, c.u));
        out.coaction = grp() * gen();
        const PthPowerPart part = extract_pth_power_part(c.u);
        out.is_regular = part.r == 1;
        if (out.is_regular)
            eisenstein_dvr(part.alpha, binomial_relation(f, c.u - part.alpha.frobenius()));
    }

    void mu_case_two(const cls::Ramified& c) {
        out.label = CaseLabel::MuCaseII;
        out.is_torsor = false;
        out.is_regular = true;
        const BezoutPair b = bezout_mp(c.i, p);
        out.bezout = b;
        const LaurentSeries c0 = c.u.pow(b.m, cap).shifted(1);
        rings("T", binomial_relation(f, c0));
        out.coaction = grp().pow(b.m) * gen();
        eisenstein_dvr(LaurentSeries::zero(f), out.relation());
        // X = u^{-n} T^i
        const QElement tau = QElement::variable(out.algebra, 0);
        out.generic_coordinate = tau.pow(c.i).scaled(c.u.pow(-b.n, cap));
    }

    void alpha_case_one(const cls::Ramified& c) {
        out.label = CaseLabel::AlphaCaseI;
        out.is_torsor = true;
        out.is_regular = c.i == 1;
        rings("T", binomial_relation(f, c.u.shifted(c.i)));
        out.coaction = gen() + grp();
        if (out.is_regular) eisenstein_dvr(LaurentSeries::zero(f), out.relation());
    }

    void alpha_case_two(const cls::Ramified& c) {
        out.label = CaseLabel::AlphaCaseII;
        out.is_torsor = false;
        out.is_regular = true;
        const int j = -c.i;
        const BezoutPair b = bezout_mp(j, p);
        out.bezout = b;
        const LaurentSeries c0 = c.u.pow(-b.m, cap).shifted(1);
        rings("T", binomial_relation(f, c0));
        // T (1 + a u^n T^j)^{-m}
        const QElement y = (grp() * gen().pow(j)).scaled(c.u.pow(b.n, cap)).truncated(cap);
        out.coaction = (gen() * one_plus_nilpotent_inverse_pow(y, b.m, p, cap)).truncated(cap);
        eisenstein_dvr(LaurentSeries::zero(f), out.relation());
        // X = u^{-n} T^{-j}
        const QElement tinv = binomial_inverse(out.algebra, c0, cap);
        out.generic_coordinate = tinv.pow(j, cap).scaled(c.u.pow(-b.n, cap)).truncated(cap);
    }

    void as_unramified(const cls::UnramifiedAS& c) {
        out.label = CaseLabel::ASUnramified;
        out.is_torsor = true;
        out.is_regular = true;
        std::vector<LaurentSeries> lower(static_cast<std::size_t>(p), LaurentSeries::zero(f));
        lower[0] = -LaurentSeries::constant(f, c.c);
        lower[1] = -LaurentSeries::one(f);
        rings("T", Poly::monic(f, std::move(lower)));
        out.coaction = gen() + grp();
        out.uniformizer = UniformizerData{LaurentSeries::zero(f), out.relation(), 1};
    }

    void as_ramified(const cls::RamifiedAS& c) {
        out.label = CaseLabel::ASRamified;
        out.is_torsor = false;
        out.is_regular = true;
        // pi_L = y^a t^b with -a m + b p = 1.
        int a = 1;
        while (((a * c.m) % p + 1) % p != 0) ++a;
        const int b = (1 + a * c.m) / p;
        const LaurentSeries frep = c.u.shifted(-c.m);
        std::vector<LaurentSeries> lower(static_cast<std::size_t>(p), LaurentSeries::zero(f));
        lower[0] = -frep;
        lower[1] = -LaurentSeries::one(f);
        const RingPtr lring = monogenic(f, "y", Poly::monic(f, std::move(lower)));
        const QElement y = QElement::variable(lring, 0);
        const QElement pi = y.pow(a).scaled(LaurentSeries::t_power(f, b));
        const Poly g = minimal_polynomial_via_resultant(pi, cap);
        rings("Z", g);
        eisenstein_dvr(LaurentSeries::zero(f), g);
        // y in the Z-basis: columns of M are pi^k in the y-basis.
        const int work = cap + 2 * p * (c.m + 1);
        Matrix m(f, static_cast<std::size_t>(p), static_cast<std::size_t>(p));
        QElement col = QElement::one(lring);
        for (int k = 0; k < p; ++k) {
            for (int r = 0; r < p; ++r)
                m(static_cast<std::size_t>(r), static_cast<std::size_t>(k)) = col.coeff_at(static_cast<std::size_t>(r));
            col = col * pi;
        }
        std::vector<LaurentSeries> rhs(static_cast<std::size_t>(p), LaurentSeries::zero(f));
        rhs[1] = LaurentSeries::one(f);
        const auto coords = solve(m, rhs, work);
        QElement ya = QElement::zero(out.algebra);
        const QElement z = QElement::variable(out.algebra, 0);
        QElement zk = QElement::one(out.algebra);
        for (int k = 0; k < p; ++k) {
            ya += zk.scaled(coords[static_cast<std::size_t>(k)]);
            zk = zk * z;
        }
        out.generic_coordinate = ya;
        // sigma(Z) = t^b (y + e)^a
        const QElement yb = ya.eval_hom({gen()});
        out.coaction = (yb + grp()).pow(a, work).scaled(LaurentSeries::t_power(f, b)).truncated(cap);
        if (out.coaction.min_valuation() < 0)
            throw PrecisionError("coaction not integral at precision " + std::to_string(cap));
    }

    void h_torsor(const cls::HExtendable& c) {
        out.label = CaseLabel::HTorsor;
        out.is_torsor = true;
        rings("W", binomial_relation(f, c.f));
        out.coaction = generic_action(cls.group, grp(), gen());
        if (!c.f.known_nonzero())
            throw PrecisionError("f is indistinguishable from 0 at precision " +
                                 std::to_string(c.f.precision()));
        const int v = c.f.valuation();
        if (v == 1) {
            out.is_regular = true;
            eisenstein_dvr(LaurentSeries::zero(f), out.relation());
        } else if (v == 0) {
            const auto split = pth_power_split(c.f);
            out.is_regular = split && split->r == 1;
            if (out.is_regular)
                eisenstein_dvr(split->alpha, binomial_relation(f, c.f - split->alpha.frobenius()));
        } else {
            out.is_regular = false;
        }
    }

    void h_ramified(const cls::HRamified& c) {
        out.label = CaseLabel::HRamified;
        out.is_torsor = false;
        out.is_regular = true;
        if (c.i % p == 0)
            throw DomainError("h_lambda class with p | i = " + std::to_string(c.i) +
                              " has no Eisenstein model as given; normalize with reduce");
        const BezoutPair b = bezout_mp(c.i, p);
        out.bezout = b;
        const LaurentSeries c0 = c.delta.pow(-b.m, cap).shifted(1);
        rings("T", binomial_relation(f, c0));
        // T (1 + delta^n T^i x + lambda x)^{-m}
        const QElement x = grp();
        const QElement y =
            ((x * gen().pow(c.i)).scaled(c.delta.pow(b.n, cap)) + x.scaled(*cls.group.lambda))
                .truncated(cap);
        out.coaction = (gen() * one_plus_nilpotent_inverse_pow(y, b.m, p, cap)).truncated(cap);
        eisenstein_dvr(LaurentSeries::zero(f), out.relation());
        // W = delta^{-n} T^{-i}
        const QElement tinv = binomial_inverse(out.algebra, c0, cap);
        out.generic_coordinate = tinv.pow(c.i, cap).scaled(c.delta.pow(-b.n, cap)).truncated(cap);
    }
};

}  // namespace detail

/// The maximal model of a normalized class.
inline ModelPresentation build_model(const TorsorClass& cls, const ModelOptions& opts = {}) {
    detail::Builder b(cls, opts);
    const auto kind = cls.group.kind;
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            auto wrong = [&] {
                throw DomainError("class " + class_kind_name(cls.normalized) +
                                  " does not belong to group " + group_kind_name(kind));
            };
            if constexpr (std::is_same_v<T, cls::Trivial>) {
                b.trivial();
            } else if constexpr (std::is_same_v<T, cls::UnitKummer>) {
                if (kind != GroupKind::MuP) wrong();
                b.mu_case_one(c);
            } else if constexpr (std::is_same_v<T, cls::Ramified>) {
                if (kind == GroupKind::MuP) {
                    if (c.i < 1 || c.i >= b.p) throw DomainError("mu_p class is not normalized");
                    b.mu_case_two(c);
                } else if (kind == GroupKind::AlphaP) {
                    if (c.i % b.p == 0) throw DomainError("alpha_p class is not normalized");
                    if (c.i > 0)
                        b.alpha_case_one(c);
                    else
                        b.alpha_case_two(c);
                } else {
                    wrong();
                }
            } else if constexpr (std::is_same_v<T, cls::UnramifiedAS>) {
                if (kind != GroupKind::ZmodP) wrong();
                b.as_unramified(c);
            } else if constexpr (std::is_same_v<T, cls::RamifiedAS>) {
                if (kind != GroupKind::ZmodP) wrong();
                if (c.m % b.p == 0) throw DomainError("Artin-Schreier class is not normalized");
                b.as_ramified(c);
            } else if constexpr (std::is_same_v<T, cls::HExtendable>) {
                if (kind != GroupKind::HLambda) wrong();
                b.h_torsor(c);
            } else {
                if (kind != GroupKind::HLambda) wrong();
                b.h_ramified(c);
            }
        },
        cls.normalized);
    return std::move(b.out);
}

/// The action map A (x) A -> O_G (x) A, T1 -> sigma(T), T2 -> T, as a
/// matrix over R in the monomial bases.
inline Matrix action_matrix(const ModelPresentation& model) {
    const auto& f = model.algebra->field();
    const int d = model.algebra->dim(0);
    const int cap = model.precision;
    const auto n = model.bialgebra->size();
    Matrix m(f, n, static_cast<std::size_t>(d * d));
    std::vector<QElement> spow{QElement::one(model.bialgebra)};
    std::vector<QElement> tpow{QElement::one(model.bialgebra)};
    for (int k = 1; k < d; ++k) {
        spow.push_back((spow.back() * model.coaction).truncated(cap));
        tpow.push_back(tpow.back() * model.model_generator());
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const QElement img = (spow[static_cast<std::size_t>(i)] * tpow[static_cast<std::size_t>(j)]).truncated(cap);
            for (std::size_t r = 0; r < n; ++r)
                m(r, static_cast<std::size_t>(i * d + j)) = img.coeff_at(r);
        }
    return m;
}

/// True iff the action map is an isomorphism over R: every Smith
/// elementary divisor of the action matrix is a unit.
inline bool torsor_test(const ModelPresentation& model) {
    const Matrix m = action_matrix(model);
    SmithOptions opts;
    opts.cap = model.precision;
    const SmithForm s = smith_normal_form(m, opts);
    if (s.rank != m.cols()) return false;
    for (int e : s.exponents)
        if (e != 0) return false;
    return true;
}

/// The inverse of the H_lambda action map when v(f) >= 0:
/// W1 -> sigma(W), W2 -> W is inverted by x -> (W1 - W2) / (1 + lambda W2),
/// W -> W2. Returns true when both composites are the identity mod t^cap.
inline bool hlambda_inverse_check(const ModelPresentation& model, int cap = 50) {
    if (model.label != CaseLabel::HTorsor &&
        !(model.label == CaseLabel::TrivialTorsor && model.group.kind == GroupKind::HLambda))
        throw DomainError("explicit inverse applies to H_lambda torsor models");
    const auto& f = model.algebra->field();
    const auto& lambda = *model.group.lambda;
    const int p = static_cast<int>(f->p());
    const Relation rel = model.algebra->relation(0);
    const RingPtr aa = QuotientRing::make(f, {Relation{"W1", rel.poly}, Relation{"W2", rel.poly}});
    const QElement w1 = QElement::variable(aa, 0);
    const QElement w2 = QElement::variable(aa, 1);
    // 1/(1 + lambda W2) = sum (-lambda W2)^k; converges since v(lambda) >= 1 and W2 is integral.
    QElement inv = QElement::one(aa);
    QElement term = inv;
    const QElement step = -w2.scaled(lambda);
    for (int k = 1; k <= cap; ++k) {
        term = (term * step).truncated(cap);
        if (term.vanishes_to_precision() && term.min_valuation() >= cap) break;
        inv += term;
    }
    const QElement x_img = ((w1 - w2) * inv).truncated(cap);
    // x_img must satisfy the group relation x^p = 0 mod t^cap.
    if (!x_img.pow(p, cap).truncated(cap).vanishes_to_precision()) return false;
    // Composite O_G (x) A -> A (x) A -> O_G (x) A is the identity on x and W.
    const QElement back_x = x_img.eval_hom({model.coaction, model.model_generator()}).truncated(cap);
    if (!(back_x - model.group_coordinate()).truncated(cap).vanishes_to_precision()) return false;
    // Composite A (x) A -> O_G (x) A -> A (x) A sends W1 -> sigma(x_img, W2) and W2 -> W2.
    const QElement sigma_back = model.coaction.eval_hom({x_img, w2}).truncated(cap);
    return (sigma_back - w1).truncated(cap).vanishes_to_precision();
}

}  // namespace maxmodel
