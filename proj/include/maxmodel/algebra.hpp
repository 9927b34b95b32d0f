#pragma once

// Quotients K[x_1..x_k]/(g_1(x_1), ..., g_k(x_k)) by monic univariate
// relations, one per variable. With k = 1 this is a monogenic algebra
// R[T]/(g(T)); with k = 2 it is the bialgebra O_G (x) O_X that carries
// coactions; k = 3 appears in coassociativity checks.
//
// Elements are dense coefficient arrays over the monomial basis with
// exponents below the relation degrees, which is a normal form.

#include <memory>
#include <string>
#include <vector>

#include "maxmodel/poly.hpp"

namespace maxmodel {

struct Relation {
    std::string var;
    Poly poly;  // monic
};

class QuotientRing;
using RingPtr = std::shared_ptr<const QuotientRing>;

class QuotientRing {
public:
    static RingPtr make(FieldPtr field, std::vector<Relation> relations) {
        if (relations.empty()) throw DomainError("a quotient ring needs at least one relation");
        auto ring = std::shared_ptr<QuotientRing>(new QuotientRing());
        ring->field_ = std::move(field);
        std::size_t size = 1;
        for (const auto& rel : relations) {
            if (!rel.poly.is_monic() || rel.poly.degree() < 1)
                throw DomainError("relation for " + rel.var + " must be monic of degree >= 1");
            ring->dims_.push_back(rel.poly.degree());
            size *= static_cast<std::size_t>(rel.poly.degree());
        }
        ring->relations_ = std::move(relations);
        ring->size_ = size;
        return ring;
    }

    const FieldPtr& field() const { return field_; }
    const std::vector<Relation>& relations() const { return relations_; }
    const Relation& relation(std::size_t i) const { return relations_[i]; }
    std::size_t arity() const { return relations_.size(); }
    int dim(std::size_t i) const { return dims_[i]; }
    std::size_t size() const { return size_; }

    std::size_t index(const std::vector<int>& exps) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < dims_.size(); ++i)
            idx = idx * static_cast<std::size_t>(dims_[i]) + static_cast<std::size_t>(exps[i]);
        return idx;
    }

    std::vector<int> exponents(std::size_t idx) const {
        std::vector<int> e(dims_.size());
        for (std::size_t i = dims_.size(); i-- > 0;) {
            e[i] = static_cast<int>(idx % static_cast<std::size_t>(dims_[i]));
            idx /= static_cast<std::size_t>(dims_[i]);
        }
        return e;
    }

    bool same_as(const QuotientRing& o) const {
        if (relations_.size() != o.relations_.size()) return false;
        for (std::size_t i = 0; i < relations_.size(); ++i)
            if (!(relations_[i].poly == o.relations_[i].poly)) return false;
        return true;
    }

private:
    QuotientRing() = default;

    FieldPtr field_;
    std::vector<Relation> relations_;
    std::vector<int> dims_;
    std::size_t size_ = 0;
};

class QElement {
public:
    QElement() = default;

    static QElement zero(RingPtr ring) {
        QElement x;
        x.coef_.assign(ring->size(), LaurentSeries::zero(ring->field()));
        x.ring_ = std::move(ring);
        return x;
    }

    static QElement constant(RingPtr ring, const LaurentSeries& c) {
        QElement x = zero(std::move(ring));
        x.coef_[0] = c;
        return x;
    }

    static QElement one(RingPtr ring) {
        auto f = ring->field();
        return constant(std::move(ring), LaurentSeries::one(f));
    }

    /// The generator x_i.
    static QElement variable(RingPtr ring, std::size_t i) {
        std::vector<int> e(ring->arity(), 0);
        QElement x = zero(ring);
        if (ring->dim(i) == 1) {
            // x_i = -g_0 when the relation is linear.
            x.coef_[0] = -ring->relation(i).poly.coeff(0);
            return x;
        }
        e[i] = 1;
        x.coef_[ring->index(e)] = LaurentSeries::one(ring->field());
        return x;
    }

    /// c * x^exps (exponents reduced through the relations).
    static QElement monomial(RingPtr ring, const LaurentSeries& c, const std::vector<int>& exps) {
        QElement x = constant(ring, c);
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (exps[i] > 0) x = x * variable(ring, i).pow(exps[i]);
        return x;
    }

    /// Builds an element from unreduced coefficients; `wide_dims` gives the
    /// exponent bound per variable of the input array (row-major).
    static QElement reduce(RingPtr ring, std::vector<LaurentSeries> wide,
                           std::vector<int> wide_dims) {
        const std::size_t k = ring->arity();
        for (std::size_t v = 0; v < k; ++v) {
            const int d = ring->dim(v);
            const auto& rel = ring->relation(v).poly;
            if (wide_dims[v] <= d) continue;
            std::size_t outer = 1, inner = 1;
            for (std::size_t i = 0; i < v; ++i) outer *= static_cast<std::size_t>(wide_dims[i]);
            for (std::size_t i = v + 1; i < k; ++i) inner *= static_cast<std::size_t>(wide_dims[i]);
            const auto wv = static_cast<std::size_t>(wide_dims[v]);
            for (std::size_t o = 0; o < outer; ++o) {
                for (std::size_t in = 0; in < inner; ++in) {
                    auto at = [&](std::size_t e) -> LaurentSeries& {
                        return wide[(o * wv + e) * inner + in];
                    };
                    for (std::size_t e = wv; e-- > static_cast<std::size_t>(d);) {
                        LaurentSeries c = at(e);
                        if (c.is_exact_zero()) continue;
                        at(e) = LaurentSeries::zero(ring->field());
                        for (int j = 0; j < d; ++j) {
                            const auto& r = rel.coeff(j);
                            if (r.is_exact_zero()) continue;
                            at(e - static_cast<std::size_t>(d) + static_cast<std::size_t>(j)) -= c * r;
                        }
                    }
                }
            }
            // Compact dimension v down to d.
            std::vector<int> new_dims = wide_dims;
            new_dims[v] = d;
            std::size_t new_size = 1;
            for (int nd : new_dims) new_size *= static_cast<std::size_t>(nd);
            std::vector<LaurentSeries> compact(new_size, LaurentSeries::zero(ring->field()));
            for (std::size_t o = 0; o < outer; ++o)
                for (std::size_t e = 0; e < static_cast<std::size_t>(d); ++e)
                    for (std::size_t in = 0; in < inner; ++in)
                        compact[(o * static_cast<std::size_t>(d) + e) * inner + in] =
                            std::move(wide[(o * wv + e) * inner + in]);
            wide = std::move(compact);
            wide_dims = std::move(new_dims);
        }
        QElement x;
        x.ring_ = std::move(ring);
        x.coef_ = std::move(wide);
        return x;
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<LaurentSeries>& coefficients() const { return coef_; }
    const LaurentSeries& coeff(const std::vector<int>& exps) const {
        return coef_[ring_->index(exps)];
    }
    const LaurentSeries& coeff_at(std::size_t idx) const { return coef_[idx]; }

    QElement with_coeff(const std::vector<int>& exps, LaurentSeries c) const {
        QElement x = *this;
        x.coef_[ring_->index(exps)] = std::move(c);
        return x;
    }

    bool is_exact_zero() const {
        for (const auto& c : coef_)
            if (!c.is_exact_zero()) return false;
        return true;
    }

    /// Zero on every coefficient's known window.
    bool vanishes_to_precision() const {
        for (const auto& c : coef_)
            if (c.known_nonzero()) return false;
        return true;
    }

    /// Smallest coefficient precision.
    int precision() const {
        int p = kExact;
        for (const auto& c : coef_) p = std::min(p, c.precision());
        return p;
    }

    /// Minimal t-adic valuation over the coefficients.
    int min_valuation() const {
        int v = kExact;
        for (const auto& c : coef_) v = std::min(v, c.valuation());
        return v;
    }

    QElement truncated(int cap) const {
        QElement x = *this;
        for (auto& c : x.coef_) c = c.truncated(cap);
        return x;
    }

    QElement scaled(const LaurentSeries& s) const {
        QElement x = *this;
        for (auto& c : x.coef_)
            if (!c.is_exact_zero()) c = c * s;
        return x;
    }

    QElement operator-() const {
        QElement x = *this;
        for (auto& c : x.coef_) c = -c;
        return x;
    }

    friend QElement operator+(const QElement& a, const QElement& b) {
        a.check_ring(b);
        QElement x = a;
        for (std::size_t i = 0; i < x.coef_.size(); ++i) x.coef_[i] += b.coef_[i];
        return x;
    }

    friend QElement operator-(const QElement& a, const QElement& b) { return a + (-b); }

    friend QElement operator*(const QElement& a, const QElement& b) {
        a.check_ring(b);
        const auto& ring = a.ring_;
        const std::size_t k = ring->arity();
        std::vector<int> wide_dims(k);
        std::size_t wide_size = 1;
        for (std::size_t i = 0; i < k; ++i) {
            wide_dims[i] = 2 * ring->dim(i) - 1;
            wide_size *= static_cast<std::size_t>(wide_dims[i]);
        }
        std::vector<LaurentSeries> wide(wide_size, LaurentSeries::zero(ring->field()));
        std::vector<std::pair<std::size_t, std::vector<int>>> nz_a, nz_b;
        for (std::size_t i = 0; i < a.coef_.size(); ++i)
            if (!a.coef_[i].is_exact_zero()) nz_a.push_back({i, ring->exponents(i)});
        for (std::size_t i = 0; i < b.coef_.size(); ++i)
            if (!b.coef_[i].is_exact_zero()) nz_b.push_back({i, ring->exponents(i)});
        for (const auto& [ia, ea] : nz_a) {
            for (const auto& [ib, eb] : nz_b) {
                std::size_t idx = 0;
                for (std::size_t v = 0; v < k; ++v)
                    idx = idx * static_cast<std::size_t>(wide_dims[v]) +
                          static_cast<std::size_t>(ea[v] + eb[v]);
                wide[idx] += a.coef_[ia] * b.coef_[ib];
            }
        }
        return reduce(ring, std::move(wide), std::move(wide_dims));
    }

    QElement& operator+=(const QElement& o) { return *this = *this + o; }
    QElement& operator-=(const QElement& o) { return *this = *this - o; }
    QElement& operator*=(const QElement& o) { return *this = *this * o; }

    QElement pow(long long n) const {
        if (n < 0) throw DomainError("negative power in a quotient ring");
        QElement result = one(ring_);
        QElement base = *this;
        while (n) {
            if (n & 1) result = result * base;
            n >>= 1;
            if (n) base = base * base;
        }
        return result;
    }

    /// Powers truncated at cap after each step.
    QElement pow(long long n, int cap) const {
        QElement result = one(ring_);
        QElement base = truncated(cap);
        while (n) {
            if (n & 1) result = (result * base).truncated(cap);
            n >>= 1;
            if (n) base = (base * base).truncated(cap);
        }
        return result;
    }

    /// Image under the ring map sending x_i to images[i]. The caller
    /// guarantees that the images satisfy the relations.
    QElement eval_hom(const std::vector<QElement>& images) const {
        if (images.size() != ring_->arity()) throw DomainError("eval_hom: wrong number of images");
        const auto& target = images.front().ring();
        std::vector<std::vector<QElement>> powers(images.size());
        for (std::size_t v = 0; v < images.size(); ++v) {
            powers[v].push_back(one(target));
            for (int j = 1; j < ring_->dim(v); ++j) powers[v].push_back(powers[v].back() * images[v]);
        }
        return eval_rec(powers, 0, 0);
    }

    friend bool operator==(const QElement& a, const QElement& b) { return a.coef_ == b.coef_; }

    friend bool agree_on_window(const QElement& a, const QElement& b) {
        if (a.coef_.size() != b.coef_.size()) return false;
        for (std::size_t i = 0; i < a.coef_.size(); ++i)
            if (!agree_on_window(a.coef_[i], b.coef_[i])) return false;
        return true;
    }

    /// Renders as a sum of `coef*x^i*y^j` terms, later variables outermost,
    /// highest exponents first.
    std::string to_string(const std::string& base = "t") const {
        std::string out;
        const auto& f = ring_->field();
        for (std::size_t idx = coef_.size(); idx-- > 0;) {
            const auto& c = coef_[idx];
            if (!c.known_nonzero()) continue;
            const auto e = ring_->exponents(idx);
            std::string mono;
            for (std::size_t v = 0; v < e.size(); ++v) {
                if (e[v] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += ring_->relation(v).var;
                if (e[v] != 1) mono += "^" + std::to_string(e[v]);
            }
            std::string coef;
            if (c == LaurentSeries::one(f)) {
                coef = mono.empty() ? "1" : "";
            } else {
                coef = c.to_string(base);
                if (c.terms().size() + (c.is_exact() ? 0 : 1) > 1) coef = "(" + coef + ")";
            }
            std::string piece = mono.empty() ? coef : (coef.empty() ? mono : coef + "*" + mono);
            if (!out.empty()) out += " + ";
            out += piece;
        }
        return out.empty() ? "0" : out;
    }

private:
    // Sum over the exponent block of variables >= v with offset `base`.
    QElement eval_rec(const std::vector<std::vector<QElement>>& powers, std::size_t v,
                      std::size_t base) const {
        const std::size_t k = ring_->arity();
        const auto& target = powers.front().front().ring();
        QElement acc = zero(target);
        const auto d = static_cast<std::size_t>(ring_->dim(v));
        std::size_t stride = 1;
        for (std::size_t i = v + 1; i < k; ++i) stride *= static_cast<std::size_t>(ring_->dim(i));
        for (std::size_t j = 0; j < d; ++j) {
            const std::size_t off = base + j * stride;
            if (v + 1 == k) {
                const auto& c = coef_[off];
                if (c.is_exact_zero()) continue;
                acc += powers[v][j].scaled(c);
            } else {
                bool any = false;
                for (std::size_t i = off; i < off + stride; ++i)
                    if (!coef_[i].is_exact_zero()) {
                        any = true;
                        break;
                    }
                if (!any) continue;
                QElement inner = eval_rec(powers, v + 1, off);
                acc += j == 0 ? inner : inner * powers[v][j];
            }
        }
        return acc;
    }

    void check_ring(const QElement& o) const {
        if (ring_ != o.ring_ && !ring_->same_as(*o.ring_))
            throw DomainError("elements of different quotient rings");
    }

    RingPtr ring_;
    std::vector<LaurentSeries> coef_;
};

using MonogenicAlgebra = RingPtr;

/// R[x]/(g) with one relation.
inline RingPtr monogenic(FieldPtr field, std::string var, Poly g) {
    return QuotientRing::make(std::move(field), {Relation{std::move(var), std::move(g)}});
}

}  // namespace maxmodel
