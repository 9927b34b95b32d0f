#pragma once

// Univariate polynomials with Laurent series coefficients, used for
// relations such as T^p - u^m t. An RPolynomial is one whose coefficients
// are all integral.

#include <string>
#include <vector>

#include "maxmodel/series.hpp"

namespace maxmodel {

class Poly {
public:
    Poly() = default;
    explicit Poly(FieldPtr field) : field_(std::move(field)) {}
    Poly(FieldPtr field, std::vector<LaurentSeries> coeffs)
        : field_(std::move(field)), coeffs_(std::move(coeffs)) {
        trim();
    }

    /// T^d + sum of lower coefficients (given low degree first).
    static Poly monic(FieldPtr field, std::vector<LaurentSeries> lower) {
        lower.push_back(LaurentSeries::one(field));
        return Poly(std::move(field), std::move(lower));
    }

    const FieldPtr& field() const { return field_; }
    const std::vector<LaurentSeries>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    LaurentSeries coeff(int k) const {
        if (k < 0 || k > degree()) return LaurentSeries::zero(field_);
        return coeffs_[static_cast<std::size_t>(k)];
    }

    bool is_monic() const {
        return !coeffs_.empty() && coeffs_.back() == LaurentSeries::one(field_);
    }

    /// All coefficients have valuation >= 0.
    bool is_integral() const {
        for (const auto& c : coeffs_)
            if (c.known_nonzero() && c.valuation() < 0) return false;
        return true;
    }

    /// Monic, lower coefficients in tR, constant term of valuation exactly 1.
    bool is_eisenstein() const {
        if (!is_monic() || degree() < 1) return false;
        for (int k = 0; k < degree(); ++k)
            if (coeffs_[static_cast<std::size_t>(k)].valuation() < 1) return false;
        return coeffs_[0].known_nonzero() && coeffs_[0].valuation() == 1;
    }

    Poly derivative() const {
        std::vector<LaurentSeries> d;
        for (int k = 1; k <= degree(); ++k)
            d.push_back(coeffs_[static_cast<std::size_t>(k)].scaled(field_->from_int(k)));
        if (d.empty()) d.push_back(LaurentSeries::zero(field_));
        return Poly(field_, std::move(d));
    }

    Poly truncated(int cap) const {
        Poly r = *this;
        for (auto& c : r.coeffs_) c = c.truncated(cap);
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    friend bool agree_on_window(const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return false;
        for (int k = 0; k <= a.degree(); ++k)
            if (!agree_on_window(a.coeff(k), b.coeff(k))) return false;
        return true;
    }

    /// Renders highest degree first, e.g. "T^2 + t*T + t".
    std::string to_string(const std::string& var = "T", const std::string& base = "t") const {
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const auto& c = coeffs_[static_cast<std::size_t>(k)];
            if (!c.known_nonzero()) continue;
            std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
            std::string coef;
            if (c == LaurentSeries::one(field_)) {
                coef = mono.empty() ? "1" : "";
            } else {
                coef = c.to_string(base);
                if (c.terms().size() + (c.is_exact() ? 0 : 1) > 1) coef = "(" + coef + ")";
            }
            std::string piece = coef;
            if (!mono.empty()) piece = coef.empty() ? mono : coef + "*" + mono;
            if (!out.empty()) out += " + ";
            out += piece;
        }
        return out.empty() ? "0" : out;
    }

private:
    void trim() {
        while (coeffs_.size() > 1 && coeffs_.back().is_exact_zero()) coeffs_.pop_back();
    }

    FieldPtr field_;
    std::vector<LaurentSeries> coeffs_;
};

}  // namespace maxmodel
