#pragma once

// Structural checks: coaction axioms and generic-fiber agreement for
// models, morphisms between integral models, and the descent equalizer
// A -> A' => A' (x)_A A' for finite free R-algebras.

#include <optional>
#include <string>
#include <vector>

#include "maxmodel/different.hpp"
#include "maxmodel/random.hpp"

namespace maxmodel {

// ---------------------------------------------------------------- coactions

struct CoactionReport {
    bool relation = false;
    bool counit = false;
    bool coassociativity = false;
    bool generic_fiber = false;
    int precision = kExact;  // smallest precision any identity was checked at

    bool all() const { return relation && counit && coassociativity && generic_fiber; }
};

namespace detail {

inline bool zero_on_window(const QElement& x, int cap, int& seen) {
    const QElement y = x.truncated(cap);
    seen = std::min(seen, y.precision());
    return y.vanishes_to_precision();
}

inline QElement eval_poly(const Poly& g, const QElement& x, int cap) {
    QElement acc = QElement::zero(x.ring());
    for (int k = g.degree(); k >= 0; --k) acc = (acc * x + QElement::constant(x.ring(), g.coeff(k))).truncated(cap);
    return acc;
}

}  // namespace detail

/// An integral model with an action: A = R[T]/(g), sigma: A -> O_G (x) A,
/// and the coordinate of the generic torsor inside A (x) K.
struct IntegralModel {
    GroupSchemeSpec group;
    RingPtr algebra;
    RingPtr bialgebra;
    QElement coaction;
    QElement generic_coordinate;
    int precision = 40;

    static IntegralModel from(const ModelPresentation& m) {
        return {m.group, m.algebra, m.bialgebra, m.coaction, m.generic_coordinate, m.precision};
    }
};

inline CoactionReport check_coaction_axioms(const IntegralModel& m) {
    CoactionReport r;
    const int cap = m.precision;
    const auto& f = m.algebra->field();
    const QElement g = QElement::variable(m.bialgebra, 0);
    const QElement tb = QElement::variable(m.bialgebra, 1);
    // (i) g(sigma(T)) = 0
    r.relation = detail::zero_on_window(
        detail::eval_poly(m.algebra->relation(0).poly, m.coaction, cap), cap, r.precision);
    // (ii) sigma at the identity is T
    const QElement at_id = m.coaction.eval_hom(
        {QElement::constant(m.algebra, group_identity(f, m.group.kind)), QElement::variable(m.algebra, 0)});
    r.counit = detail::zero_on_window(at_id - QElement::variable(m.algebra, 0), cap, r.precision);
    // (iii) (g1 g2) T = g1 (g2 T) in O_G (x) O_G (x) A
    const Relation grel = m.bialgebra->relation(0);
    const RingPtr c = QuotientRing::make(
        f, {Relation{grel.var + "1", grel.poly}, Relation{grel.var + "2", grel.poly}, m.algebra->relation(0)});
    const QElement g1 = QElement::variable(c, 0);
    const QElement g2 = QElement::variable(c, 1);
    const QElement tc = QElement::variable(c, 2);
    const QElement lhs = m.coaction.eval_hom({group_law(m.group, g1, g2), tc}).truncated(cap);
    const QElement inner = m.coaction.eval_hom({g2, tc}).truncated(cap);
    const QElement rhs = m.coaction.eval_hom({g1, inner}).truncated(cap);
    r.coassociativity = detail::zero_on_window(lhs - rhs, cap, r.precision);
    // (iv) sigma(X) equals the defining action on the generic coordinate X
    const QElement x_sigma = m.generic_coordinate.eval_hom({m.coaction}).truncated(cap);
    const QElement x_b = m.generic_coordinate.eval_hom({tb});
    const QElement expected = generic_action(m.group, g, x_b).truncated(cap);
    r.generic_fiber = detail::zero_on_window(x_sigma - expected, cap, r.precision);
    return r;
}

inline CoactionReport check_coaction_axioms(const ModelPresentation& m) {
    return check_coaction_axioms(IntegralModel::from(m));
}

// --------------------------------------------------------- model morphisms

/// An R-algebra map from the target model's algebra into the source's,
/// given by the image of the target generator.
struct ModelMorphismCandidate {
    IntegralModel source;
    IntegralModel target;
    QElement image;  // element of source.algebra
};

struct MorphismReport {
    bool relation = false;
    bool equivariant = false;
    bool generic_identity = false;
    bool ok() const { return relation && equivariant && generic_identity; }
};

inline MorphismReport check_model_morphism_report(const ModelMorphismCandidate& c) {
    MorphismReport r;
    const int cap = std::min(c.source.precision, c.target.precision);
    int seen = kExact;
    if (c.source.group.kind != c.target.group.kind) return r;
    r.relation = detail::zero_on_window(
        detail::eval_poly(c.target.algebra->relation(0).poly, c.image, cap), cap, seen);
    if (!r.relation) return r;
    // (1 (x) phi) sigma_target = sigma_source phi
    const QElement gs = QElement::variable(c.source.bialgebra, 0);
    const QElement img_b = c.image.eval_hom({QElement::variable(c.source.bialgebra, 1)});
    const QElement left = c.target.coaction.eval_hom({gs, img_b}).truncated(cap);
    const QElement right = c.image.eval_hom({c.source.coaction}).truncated(cap);
    r.equivariant = detail::zero_on_window(left - right, cap, seen);
    // phi(X_target) = X_source after inverting t
    const QElement mapped = c.target.generic_coordinate.eval_hom({c.image}).truncated(cap);
    r.generic_identity = detail::zero_on_window(mapped - c.source.generic_coordinate, cap, seen);
    return r;
}

inline bool check_model_morphism(const ModelMorphismCandidate& c) {
    return check_model_morphism_report(c).ok();
}

/// The non-maximal Z/pZ-model Spec R[a]/(a^p - t^{p-1} a) with a -> a + t e;
/// its generic coordinate is a / t.
inline IntegralModel katz_mazur_model(const FieldPtr& f, int precision = 40) {
    const auto p = static_cast<std::size_t>(f->p());
    std::vector<LaurentSeries> lower(p, LaurentSeries::zero(f));
    lower[1] = -LaurentSeries::t_power(f, static_cast<int>(p) - 1);
    const Poly g = Poly::monic(f, std::move(lower));
    const GroupSchemeSpec spec = GroupSchemeSpec::make(GroupKind::ZmodP);
    IntegralModel m;
    m.group = spec;
    m.algebra = monogenic(f, "a", g);
    m.bialgebra = QuotientRing::make(f, {group_relation(f, spec), Relation{"a", g}});
    m.coaction = QElement::variable(m.bialgebra, 1) +
                 QElement::variable(m.bialgebra, 0).scaled(LaurentSeries::t_power(f, 1));
    m.generic_coordinate = QElement::variable(m.algebra, 0).scaled(LaurentSeries::t_power(f, -1));
    m.precision = precision;
    return m;
}

/// The candidate a -> t T from the maximal (split) model R[T]/(T^p - T).
inline ModelMorphismCandidate katz_mazur_candidate(const FieldPtr& f, int precision = 40) {
    const TorsorClass trivial = normalize_as(LaurentSeries::zero(f));
    ModelOptions mo;
    mo.precision = precision;
    const ModelPresentation split = build_model(trivial, mo);
    ModelMorphismCandidate c{IntegralModel::from(split), katz_mazur_model(f, precision), {}};
    c.image = QElement::variable(split.algebra, 0).scaled(LaurentSeries::t_power(f, 1));
    return c;
}

/// Adds c t^j to one coefficient of the image; never a no-op.
inline ModelMorphismCandidate mutate_candidate(const ModelMorphismCandidate& c, Rng& rng,
                                               std::string* what = nullptr) {
    const auto& ring = c.image.ring();
    const auto& f = ring->field();
    const auto idx = static_cast<std::size_t>(random_int(rng, 0, static_cast<int>(ring->size()) - 1));
    const int j = random_int(rng, 0, 3);
    const LaurentSeries delta = LaurentSeries::monomial(f, random_element(*f, rng, true), j);
    ModelMorphismCandidate out = c;
    const auto exps = ring->exponents(idx);
    out.image = c.image.with_coeff(exps, c.image.coeff_at(idx) + delta);
    if (what) *what = "image coefficient " + std::to_string(idx) + " += " + delta.to_string();
    return out;
}

// ------------------------------------------------------ finite free algebras

/// A finite free R-algebra: e_i e_j = sum_k table[i][j][k] e_k.
struct FiniteFreeAlgebra {
    FieldPtr field;
    std::vector<std::string> labels;
    std::vector<std::vector<std::vector<LaurentSeries>>> table;
    std::vector<LaurentSeries> unit;

    std::size_t rank() const { return labels.size(); }

    /// Structure constants of a quotient ring in its monomial basis.
    static FiniteFreeAlgebra from_ring(const RingPtr& ring) {
        FiniteFreeAlgebra a;
        a.field = ring->field();
        const std::size_t n = ring->size();
        std::vector<QElement> basis;
        for (std::size_t i = 0; i < n; ++i) {
            const auto e = ring->exponents(i);
            std::string lab;
            for (std::size_t v = 0; v < e.size(); ++v) {
                if (e[v] == 0) continue;
                if (!lab.empty()) lab += "*";
                lab += ring->relation(v).var + (e[v] > 1 ? "^" + std::to_string(e[v]) : "");
            }
            a.labels.push_back(lab.empty() ? "1" : lab);
            basis.push_back(QElement::monomial(ring, LaurentSeries::one(a.field), e));
        }
        a.table.assign(n, std::vector<std::vector<LaurentSeries>>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const QElement prod = basis[i] * basis[j];
                for (std::size_t k = 0; k < n; ++k) a.table[i][j].push_back(prod.coeff_at(k));
            }
        a.unit.assign(n, LaurentSeries::zero(a.field));
        a.unit[0] = LaurentSeries::one(a.field);
        return a;
    }

    std::vector<LaurentSeries> multiply(const std::vector<LaurentSeries>& x,
                                        const std::vector<LaurentSeries>& y) const {
        const std::size_t n = rank();
        std::vector<LaurentSeries> r(n, LaurentSeries::zero(field));
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i].is_exact_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (y[j].is_exact_zero()) continue;
                const LaurentSeries c = x[i] * y[j];
                for (std::size_t k = 0; k < n; ++k)
                    if (!table[i][j][k].is_exact_zero()) r[k] += c * table[i][j][k];
            }
        }
        return r;
    }

    std::vector<LaurentSeries> basis_vector(std::size_t i) const {
        std::vector<LaurentSeries> v(rank(), LaurentSeries::zero(field));
        v[i] = LaurentSeries::one(field);
        return v;
    }

    /// Integral structure constants, associative, commutative and unital
    /// (checked over all basis pairs and triples).
    bool is_valid() const {
        const std::size_t n = rank();
        if (table.size() != n || unit.size() != n) return false;
        for (std::size_t i = 0; i < n; ++i) {
            if (table[i].size() != n) return false;
            for (std::size_t j = 0; j < n; ++j) {
                if (table[i][j].size() != n) return false;
                for (const auto& c : table[i][j])
                    if (c.known_nonzero() && c.valuation() < 0) return false;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            const auto ei = basis_vector(i);
            if (!same(multiply(unit, ei), ei)) return false;
            for (std::size_t j = 0; j < n; ++j) {
                const auto ej = basis_vector(j);
                const auto ij = multiply(ei, ej);
                if (!same(ij, multiply(ej, ei))) return false;
                for (std::size_t k = 0; k < n; ++k) {
                    const auto ek = basis_vector(k);
                    if (!same(multiply(ij, ek), multiply(ei, multiply(ej, ek)))) return false;
                }
            }
        }
        return true;
    }

private:
    static bool same(const std::vector<LaurentSeries>& a, const std::vector<LaurentSeries>& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if ((a[i] - b[i]).known_nonzero()) return false;
        return true;
    }
};

/// R-algebra map; column j holds the image of the j-th source basis vector.
struct AlgebraMap {
    FiniteFreeAlgebra source;
    FiniteFreeAlgebra target;
    Matrix matrix;

    std::vector<LaurentSeries> apply(const std::vector<LaurentSeries>& x) const {
        std::vector<LaurentSeries> r(target.rank(), LaurentSeries::zero(target.field));
        for (std::size_t j = 0; j < source.rank(); ++j) {
            if (x[j].is_exact_zero()) continue;
            for (std::size_t i = 0; i < target.rank(); ++i)
                if (!matrix(i, j).is_exact_zero()) r[i] += matrix(i, j) * x[j];
        }
        return r;
    }

    /// Unital and multiplicative on basis pairs.
    bool is_homomorphism() const {
        auto same = [](const std::vector<LaurentSeries>& a, const std::vector<LaurentSeries>& b) {
            for (std::size_t i = 0; i < a.size(); ++i)
                if ((a[i] - b[i]).known_nonzero()) return false;
            return true;
        };
        if (!same(apply(source.unit), target.unit)) return false;
        for (std::size_t i = 0; i < source.rank(); ++i)
            for (std::size_t j = 0; j < source.rank(); ++j) {
                const auto ei = source.basis_vector(i);
                const auto ej = source.basis_vector(j);
                if (!same(apply(source.multiply(ei, ej)), target.multiply(apply(ei), apply(ej))))
                    return false;
            }
        return true;
    }

    /// Map between quotient rings given by the images of the generators.
    static AlgebraMap from_generators(const RingPtr& src, const RingPtr& dst,
                                      const std::vector<QElement>& images) {
        AlgebraMap m{FiniteFreeAlgebra::from_ring(src), FiniteFreeAlgebra::from_ring(dst),
                     Matrix(src->field(), dst->size(), src->size())};
        for (std::size_t j = 0; j < src->size(); ++j) {
            const QElement b = QElement::monomial(src, LaurentSeries::one(src->field()), src->exponents(j));
            const QElement img = b.eval_hom(images);
            for (std::size_t i = 0; i < dst->size(); ++i) m.matrix(i, j) = img.coeff_at(i);
        }
        return m;
    }
};

// ---------------------------------------------------------------- Smith form

struct SmithCheck {
    bool product_ok = false;      // U M V = D on the window
    bool unit_determinants = false;
    bool diagonal_sorted = false;
    bool ok() const { return product_ok && unit_determinants && diagonal_sorted; }
};

inline LaurentSeries determinant(const Matrix& m, int cap) {
    const Poly chi = characteristic_polynomial(m, cap);
    return m.rows() % 2 ? -chi.coeff(0) : chi.coeff(0);
}

inline SmithCheck check_smith(const Matrix& m, const SmithForm& s, int cap) {
    SmithCheck c;
    const Matrix prod = (s.u * m * s.v).truncated(cap);
    bool ok = true;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if ((prod(i, j) - s.d(i, j)).truncated(cap).known_nonzero()) ok = false;
    c.product_ok = ok;
    c.unit_determinants = determinant(s.u, cap).is_unit() && determinant(s.v, cap).is_unit();
    c.diagonal_sorted = std::is_sorted(s.exponents.begin(), s.exponents.end());
    return c;
}

// -------------------------------------------------------------- descent

struct EqualizerOptions {
    int precision = 40;
    int margin = 5;
};

struct EqualizerReport {
    bool equalizer_is_image = false;
    std::vector<int> divisors;  // nonzero elementary divisors of the inclusion
    std::size_t generic_dimension = 0;  // dim_K of the equalizer after inverting t
    std::size_t socle_dimension = 0;    // dim of (A' cap A_K) / A killed by t
    SmithForm smith;                   // of the inclusion matrix
    SmithCheck smith_check;
};

namespace detail {

/// Rank over F_q of a small matrix over F_q.
inline std::size_t field_rank(const FieldSpec& f, std::vector<std::vector<FieldElement>> m) {
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t r = rank; r < rows; ++r)
            if (m[r][c].code) {
                piv = r;
                break;
            }
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        const FieldElement inv = f.inv(m[rank][c]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || !m[r][c].code) continue;
            const FieldElement k = f.mul(m[r][c], inv);
            for (std::size_t j = 0; j < cols; ++j) m[r][j] = f.sub(m[r][j], f.mul(k, m[rank][j]));
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

/// Decides whether A -> A' => A' (x)_A A' is exact at A'. The equalizer E
/// always contains A; E = A iff E has the right dimension over K and no
/// element of (A' cap A_K) / A killed by t lies in E.
inline EqualizerReport equalizer_check(const AlgebraMap& incl, const EqualizerOptions& opts = {}) {
    const auto& ap = incl.target;
    const auto& f = ap.field;
    const std::size_t n = ap.rank();
    const std::size_t m = incl.source.rank();
    const int cap = opts.precision;
    if (!incl.matrix.all_exact()) throw DomainError("descent check needs exact structure data");
    if (exact_rank(incl.matrix) != m) throw DomainError("inclusion is not schematically dominant (not injective)");
    EqualizerReport rep;
    SmithOptions so;
    so.cap = cap;
    so.margin = opts.margin;
    so.known_rank = m;
    rep.smith = smith_normal_form(incl.matrix, so);
    rep.smith_check = check_smith(incl.matrix, rep.smith, cap);
    for (std::size_t k = 0; k < m; ++k)
        if (rep.smith.exponents[k] != 0) rep.divisors.push_back(rep.smith.exponents[k]);

    // Generators of N in A' (x) A' (index i*n + j): (b (x) 1 - 1 (x) b)(e_j (x) e_k).
    auto tensor_index = [n](std::size_t i, std::size_t j) { return i * n + j; };
    std::vector<std::vector<LaurentSeries>> gens;
    for (std::size_t col = 0; col < m; ++col) {
        std::vector<LaurentSeries> b(n);
        for (std::size_t i = 0; i < n; ++i) b[i] = incl.matrix(i, col);
        for (std::size_t j = 0; j < n; ++j) {
            const auto bj = ap.multiply(b, ap.basis_vector(j));
            for (std::size_t k = 0; k < n; ++k) {
                const auto bk = ap.multiply(b, ap.basis_vector(k));
                std::vector<LaurentSeries> v(n * n, LaurentSeries::zero(f));
                for (std::size_t r = 0; r < n; ++r) {
                    v[tensor_index(r, k)] += bj[r];
                    v[tensor_index(j, r)] -= bk[r];
                }
                bool nonzero = false;
                for (const auto& e : v)
                    if (!e.is_exact_zero()) nonzero = true;
                if (nonzero) gens.push_back(std::move(v));
            }
        }
    }
    Matrix nmat(f, n * n, std::max<std::size_t>(gens.size(), 1));
    for (std::size_t c = 0; c < gens.size(); ++c)
        for (std::size_t r = 0; r < n * n; ++r) nmat(r, c) = gens[c][r];
    // delta(e_i) = e_i (x) 1 - 1 (x) e_i
    Matrix delta(f, n * n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = 0; r < n; ++r) {
            if (ap.unit[r].is_exact_zero()) continue;
            delta(tensor_index(i, r), i) += ap.unit[r];
            delta(tensor_index(r, i), i) -= ap.unit[r];
        }
    const std::size_t rank_n = gens.empty() ? 0 : exact_rank(nmat);
    Matrix joined(f, n * n, nmat.cols() + n);
    for (std::size_t r = 0; r < n * n; ++r) {
        for (std::size_t c = 0; c < nmat.cols(); ++c) joined(r, c) = nmat(r, c);
        for (std::size_t c = 0; c < n; ++c) joined(r, nmat.cols() + c) = delta(r, c);
    }
    rep.generic_dimension = n - (exact_rank(joined) - rank_n);
    if (rep.generic_dimension != m) return rep;

    // Socle of (A' cap A_K) / A: x_c = c t^{a_j - 1} f_j with f_j the columns of U^{-1}.
    SmithOptions sn;
    sn.cap = cap;
    sn.margin = opts.margin;
    sn.known_rank = rank_n;
    const SmithForm snf = gens.empty() ? SmithForm{} : smith_normal_form(nmat, sn);
    std::vector<std::vector<FieldElement>> images;  // one row per socle generator
    for (std::size_t j = 0; j < m; ++j) {
        const int a = rep.smith.exponents[j];
        if (a == 0) continue;
        ++rep.socle_dimension;
        std::vector<LaurentSeries> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = (rep.smith.u_inv(i, j).shifted(a - 1)).truncated(cap);
        std::vector<LaurentSeries> dx(n * n, LaurentSeries::zero(f));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t r = 0; r < n; ++r) {
                if (ap.unit[r].is_exact_zero()) continue;
                dx[tensor_index(i, r)] += x[i] * ap.unit[r];
                dx[tensor_index(r, i)] -= x[i] * ap.unit[r];
            }
        std::vector<LaurentSeries> y(n * n, LaurentSeries::zero(f));
        if (!gens.empty()) {
            for (std::size_t r = 0; r < n * n; ++r)
                for (std::size_t c = 0; c < n * n; ++c)
                    if (!snf.u(r, c).is_exact_zero() && !dx[c].is_exact_zero())
                        y[r] += snf.u(r, c) * dx[c];
        } else {
            y = dx;
        }
        // Coefficients of t^{D_r - 1} in y_r; free components vanish already,
        // since t x_c lies in A. delta is F_q-linear, so one row per generator.
        std::vector<FieldElement> row;
        for (std::size_t r = 0; r < n * n; ++r) {
            const int dr = r < rank_n ? snf.exponents[r] : 0;
            if (dr > 0) {
                if (y[r].precision() <= dr - 1)
                    throw PrecisionError("socle image undecidable at precision " + std::to_string(cap));
                row.push_back(y[r].coeff(dr - 1));
            }
        }
        images.push_back(std::move(row));
    }
    std::size_t width = 0;
    for (const auto& r : images) width = std::max(width, r.size());
    for (auto& r : images) r.resize(width, f->zero());
    rep.equalizer_is_image = detail::field_rank(*f, images) == rep.socle_dimension;
    return rep;
}

// ----------------------------------------------------- random inclusions

struct RandomInclusion {
    AlgebraMap incl;
    std::string description;
    int family = 0;
    int k = 0;         // A is generated by t^k X
    int h_degree = 0;  // degree of the relation of X
};

namespace detail {

inline Poly random_monic(const FieldPtr& f, Rng& rng, int degree, int max_t_degree) {
    std::vector<LaurentSeries> lower;
    for (int k = 0; k < degree; ++k) lower.push_back(random_polynomial(f, rng, 0, max_t_degree));
    return Poly::monic(f, std::move(lower));
}

/// t^{dk} h(Y / t^k): the relation of Y = t^k X.
inline Poly scaled_relation(const Poly& h, int k) {
    const int d = h.degree();
    std::vector<LaurentSeries> c;
    for (int j = 0; j < d; ++j) c.push_back(h.coeff(j).shifted((d - j) * k));
    return Poly::monic(h.field(), std::move(c));
}

}  // namespace detail

/// A seeded schematically dominant inclusion A -> A' of rank <= 4. Families:
/// R[t^k X] inside R[X]/(h); A inside A (x) R[Z]/(q); and R[t^k X] inside
/// R[X, Z]/(h, q).
inline RandomInclusion random_inclusion(const FieldPtr& f, Rng& rng) {
    const int family = random_int(rng, 0, 2);
    const int k = random_int(rng, 0, 2);
    if (family == 0) {
        const int d = random_int(rng, 1, 4);
        const Poly h = detail::random_monic(f, rng, d, 2);
        const RingPtr ap = monogenic(f, "X", h);
        const RingPtr a = monogenic(f, "Y", detail::scaled_relation(h, k));
        const QElement img = QElement::variable(ap, 0).scaled(LaurentSeries::t_power(f, k));
        return {AlgebraMap::from_generators(a, ap, {img}),
                "R[t^" + std::to_string(k) + "X] in R[X]/(" + h.to_string("X") + ")", 0, k, d};
    }
    const int d1 = random_int(rng, 1, 2);
    const int d2 = random_int(rng, 2, 4 / d1);
    const Poly h = detail::random_monic(f, rng, d1, 2);
    const Poly q = detail::random_monic(f, rng, d2, 2);
    const RingPtr ap = QuotientRing::make(f, {Relation{"X", h}, Relation{"Z", q}});
    if (family == 1) {
        const RingPtr a = monogenic(f, "X", h);
        return {AlgebraMap::from_generators(a, ap, {QElement::variable(ap, 0)}),
                "R[X]/(" + h.to_string("X") + ") in A[Z]/(" + q.to_string("Z") + ")", 1, 0, d1};
    }
    const RingPtr a = monogenic(f, "Y", detail::scaled_relation(h, k));
    const QElement img = QElement::variable(ap, 0).scaled(LaurentSeries::t_power(f, k));
    return {AlgebraMap::from_generators(a, ap, {img}),
            "R[t^" + std::to_string(k) + "X] in R[X,Z]/(" + h.to_string("X") + ", " + q.to_string("Z") + ")",
            2, k, d1};
}

}  // namespace maxmodel
